#include "ccma/core.hpp"

#include <algorithm>

#include "ccma/errors.hpp"

namespace ccma {

EvalVec embed(const CcmaInstance& inst, const ExtElem& x) {
    if (int(x.size()) != inst.n()) throw ValidationError("embed: wrong coordinate count");
    EvalVec v(inst.dim(), 0);
    std::copy(x.begin(), x.end(), v.begin());
    return v;
}

ExtElem project(const CcmaInstance& inst, const EvalVec& v) {
    if (int(v.size()) != inst.dim()) throw ValidationError("project: wrong vector length");
    return ExtElem(v.begin(), v.begin() + inst.n());
}

EvalVec hadamard(const EvalVec& u, const EvalVec& v, CostLedger* ledger) {
    if (u.size() != v.size()) throw ValidationError("hadamard: length mismatch");
    EvalVec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = gf16::mul(u[i], v[i]);
    if (ledger) ledger->charge_bilinear(u.size());
    return out;
}

ExtElem mul(const CcmaInstance& inst, const ExtElem& x, const ExtElem& y, CostLedger* ledger) {
    if (int(x.size()) != inst.n() || int(y.size()) != inst.n())
        throw ValidationError("mul: wrong coordinate count");
    EvalVec zx = mat_vec_prefix_cols(inst.T(), x, ledger);
    EvalVec zy = mat_vec_prefix_cols(inst.T(), y, ledger);
    if (ledger) ledger->begin_round(1);
    EvalVec u = hadamard(zx, zy, ledger);
    return mat_vec_top_rows(inst.T_inv(), inst.n(), u, ledger);
}

ExtElem mul3(const CcmaInstance& inst, const ExtElem& x, const ExtElem& y, const ExtElem& z,
             CostLedger* ledger) {
    if (int(x.size()) != inst.n() || int(y.size()) != inst.n() || int(z.size()) != inst.n())
        throw ValidationError("mul3: wrong coordinate count");
    EvalVec zx = mat_vec_prefix_cols(inst.T(), x, ledger);
    EvalVec zy = mat_vec_prefix_cols(inst.T(), y, ledger);
    EvalVec zz = mat_vec_prefix_cols(inst.T(), z, ledger);
    if (ledger) ledger->begin_round(1);
    EvalVec u = hadamard(zx, zy, ledger);
    EvalVec t = mat_vec(inst.T1(), u, ledger);
    if (ledger) ledger->begin_round(1);
    EvalVec w = hadamard(t, zz, ledger);
    return mat_vec_top_rows(inst.T_inv(), inst.n(), w, ledger);
}

ExtElem frobenius(const ExtElem& x, unsigned shifts) {
    std::size_t n = x.size();
    ExtElem out(n);
    unsigned s = shifts % n;
    for (std::size_t j = 0; j < n; ++j) out[(j + s) % n] = x[j];
    return out;
}

ExtElem add(const ExtElem& x, const ExtElem& y) {
    if (x.size() != y.size()) throw ValidationError("add: length mismatch");
    ExtElem out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = gf16::add(x[i], y[i]);
    return out;
}

std::vector<ExtElem> batch_mul(const CcmaInstance& inst,
                               const std::vector<std::pair<ExtElem, ExtElem>>& pairs,
                               MulStrategy strategy, CostLedger* ledger) {
    int dim = inst.dim();
    std::size_t m = pairs.size();
    if (m == 0) return {};

    // 1. stack the 2m embedded operands, pair members adjacent, as columns of
    //    square matrices
    std::size_t total_cols = 2 * m;
    std::size_t num_mats = (total_cols + dim - 1) / dim;
    std::vector<Matrix> stacked(num_mats, Matrix(dim, dim));
    for (std::size_t j = 0; j < total_cols; ++j) {
        const ExtElem& operand = (j % 2 == 0) ? pairs[j / 2].first : pairs[j / 2].second;
        if (int(operand.size()) != inst.n())
            throw ValidationError("batch_mul: wrong coordinate count");
        Matrix& mat = stacked[j / dim];
        for (int r = 0; r < inst.n(); ++r) mat.at(r, int(j % dim)) = operand[r];
    }

    // 2. forward products T * B_i
    for (auto& mat : stacked) mat = mat_mul(inst.T(), mat, strategy, ledger);

    // 3. the m bilinear products on adjacent column pairs
    if (ledger) ledger->begin_round(std::uint32_t(m));
    std::vector<EvalVec> products(m);
    for (std::size_t p = 0; p < m; ++p) {
        std::size_t ja = 2 * p, jb = 2 * p + 1;
        EvalVec u(dim), v(dim);
        for (int r = 0; r < dim; ++r) {
            u[r] = stacked[ja / dim].at(r, int(ja % dim));
            v[r] = stacked[jb / dim].at(r, int(jb % dim));
        }
        products[p] = hadamard(u, v, ledger);
    }

    // 4. restack the results
    std::size_t num_out = (m + dim - 1) / dim;
    std::vector<Matrix> restacked(num_out, Matrix(dim, dim));
    for (std::size_t p = 0; p < m; ++p)
        for (int r = 0; r < dim; ++r) restacked[p / dim].at(r, int(p % dim)) = products[p][r];

    // 5. back products T^-1 * B'_i, then keep the first n rows of each column
    std::vector<ExtElem> out(m);
    for (auto& mat : restacked) mat = mat_mul(inst.T_inv(), mat, strategy, ledger);
    for (std::size_t p = 0; p < m; ++p) {
        ExtElem r(inst.n());
        for (int i = 0; i < inst.n(); ++i) r[i] = restacked[p / dim].at(i, int(p % dim));
        out[p] = std::move(r);
    }
    return out;
}

std::string format_element(const ExtElem& x) {
    std::string out;
    out.reserve(x.size());
    for (auto c : x) out += gf16::to_string(c);
    return out;
}

ExtElem parse_element(const CcmaInstance& inst, const std::string& text) {
    if (int(text.size()) != inst.n())
        throw ValidationError("element must have exactly " + std::to_string(inst.n()) +
                              " nibbles, got " + std::to_string(text.size()));
    ExtElem out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i)
        out[i] = gf16::parse(std::string(1, text[i]));
    return out;
}

bool is_zero(const ExtElem& x) {
    for (auto c : x)
        if (c) return false;
    return true;
}

}  // namespace ccma
