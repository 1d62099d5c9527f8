#include "ccma/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ccma/errors.hpp"
#include "ccma/instance_data.hpp"

namespace ccma {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

gf16::Elem parse_nibble(const std::string& tok, int line_no) {
    try {
        return gf16::parse(tok);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

BasePoly parse_poly_tokens(const std::vector<std::string>& toks, std::size_t from, std::size_t to,
                           int line_no) {
    std::vector<gf16::Elem> coeffs;
    for (std::size_t i = from; i < to; ++i) coeffs.push_back(parse_nibble(toks[i], line_no));
    return BasePoly::from_coeffs(std::move(coeffs));
}

int parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected integer, got '" + tok + "'");
    }
}

Matrix mat_xor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = gf16::add(a.e[i], b.e[i]);
    return out;
}

Matrix cut(const Matrix& m, int r0, int c0, int rows, int cols) {
    Matrix out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.at(r, c) = m.at(r0 + r, c0 + c);
    return out;
}

}  // namespace

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string VerifyReport::render() const {
    std::ostringstream os;
    int passed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        os << "check " << (i + 1) << " " << c.name << ": " << (c.pass ? "PASS" : "FAIL");
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << '\n';
        passed += c.pass ? 1 : 0;
    }
    os << "checks passed: " << passed << "/" << checks.size() << '\n';
    return os.str();
}

CcmaInstance CcmaInstance::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load(ss.str());
}

CcmaInstance CcmaInstance::load(const std::string& text) {
    CcmaInstance inst;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    std::vector<int> ld_seen, ker_seen;

    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto toks = tokenize(raw);
        if (toks.empty()) continue;

        if (!saw_header) {
            if (toks.size() != 2 || toks[0] != "ccma-instance" || toks[1] != "v1")
                throw ParseError(line_no, "expected header 'ccma-instance v1'");
            saw_header = true;
            continue;
        }

        const std::string& key = toks[0];
        if (key == "q") {
            if (toks.size() != 2) throw ParseError(line_no, "q takes one value");
            inst.q_ = parse_int(toks[1], line_no);
        } else if (key == "base-poly") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                inst.base_poly_bits_.push_back(parse_nibble(toks[i], line_no));
        } else if (key == "n") {
            inst.n_ = parse_int(toks[1], line_no);
        } else if (key == "g") {
            inst.g_ = parse_int(toks[1], line_no);
        } else if (key == "curve") {
            if (toks.size() != 2 || toks[1] != "y2+y=x^5")
                throw ParseError(line_no, "unsupported curve");
        } else if (key == "Q") {
            inst.q_poly_ = parse_poly_tokens(toks, 1, toks.size(), line_no);
        } else if (key == "D") {
            inst.d_poly_ = parse_poly_tokens(toks, 1, toks.size(), line_no);
        } else if (key == "beta") {
            inst.beta_poly_ = parse_poly_tokens(toks, 1, toks.size(), line_no);
        } else if (key == "point") {
            if (toks.size() != 3) throw ParseError(line_no, "point takes x and y");
            RationalPoint p;
            p.x = parse_nibble(toks[1], line_no);
            p.y = parse_nibble(toks[2], line_no);
            inst.points_.push_back(p);
        } else if (key == "point-inf") {
            RationalPoint p;
            p.y = 1;
            p.at_infinity = true;
            inst.points_.push_back(p);
        } else if (key == "eval-points") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                inst.eval_points_.push_back(parse_int(toks[i], line_no));
        } else if (key == "LD" || key == "KER") {
            if (toks.size() < 3) throw ParseError(line_no, key + " line too short");
            int idx = parse_int(toks[1], line_no);
            auto bar = std::find(toks.begin(), toks.end(), "|");
            if (bar == toks.end()) throw ParseError(line_no, "missing '|' separator");
            std::size_t bar_pos = std::size_t(bar - toks.begin());
            BasisFunction f;
            f.num_y = parse_poly_tokens(toks, 2, bar_pos, line_no);
            f.num_c = parse_poly_tokens(toks, bar_pos + 1, toks.size(), line_no);
            f.denom_power = (key == "LD") ? 1 : 2;
            if (key == "LD") {
                ld_seen.push_back(idx);
                inst.ld_basis_.push_back(std::move(f));
            } else {
                ker_seen.push_back(idx);
                inst.ker_basis_.push_back(std::move(f));
            }
        } else {
            throw ParseError(line_no, "unknown directive '" + key + "'");
        }
    }

    if (!saw_header) throw ParseError(1, "empty instance");

    // structural validation
    auto fail = [](const std::string& what) { throw ValidationError(what); };
    if (inst.q_ != 16) fail("base field size: only q=16 is supported");
    if (inst.base_poly_bits_ != std::vector<gf16::Elem>{1, 1, 0, 0, 1})
        fail("base polynomial: only X^4+X+1 is supported");
    if (inst.n_ < 2) fail("extension degree n must be at least 2");
    if (inst.g_ < 0) fail("genus must be nonnegative");
    if (inst.q_poly_.degree() != inst.n_ || inst.q_poly_.coeffs.back() != 1)
        fail("Q polynomial must be monic of degree n");
    if (inst.d_poly_.degree() != inst.n_ + inst.g_ - 1 || inst.d_poly_.coeffs.back() != 1)
        fail("D polynomial must be monic of degree n+g-1");
    if (inst.beta_poly_.degree() >= inst.n_) fail("beta polynomial degree must be below n");

    for (std::size_t i = 0; i < inst.points_.size(); ++i)
        if (!on_curve(inst.points_[i]))
            fail("point " + std::to_string(i + 1) + " is not on the curve");

    int dim = inst.dim();
    if (int(inst.ld_basis_.size()) != inst.n_)
        fail("expected n=" + std::to_string(inst.n_) + " LD basis functions, got " +
             std::to_string(inst.ld_basis_.size()));
    if (int(inst.ker_basis_.size()) != inst.n_ + inst.g_ - 1)
        fail("expected n+g-1=" + std::to_string(inst.n_ + inst.g_ - 1) +
             " kernel basis functions, got " + std::to_string(inst.ker_basis_.size()));
    for (int i = 0; i < int(ld_seen.size()); ++i)
        if (ld_seen[i] != i + 1) fail("LD indices must run 1..n in order");
    for (int i = 0; i < int(ker_seen.size()); ++i)
        if (ker_seen[i] != inst.n_ + 1 + i) fail("KER indices must run n+1..2n+g-1 in order");

    int d_deg = inst.d_poly_.degree();
    for (const auto& f : inst.ld_basis_)
        if (f.num_y.degree() > d_deg - 3 || f.num_c.degree() > d_deg)
            fail("LD basis function degree bound exceeded");
    for (const auto& f : inst.ker_basis_)
        if (f.num_y.degree() > 2 * d_deg - 3 || f.num_c.degree() > 2 * d_deg)
            fail("kernel basis function degree bound exceeded");

    if (int(inst.eval_points_.size()) != dim)
        fail("expected " + std::to_string(dim) + " evaluation points, got " +
             std::to_string(inst.eval_points_.size()));
    std::set<int> seen;
    for (int idx : inst.eval_points_) {
        if (idx < 1 || idx > int(inst.points_.size()))
            fail("evaluation point index " + std::to_string(idx) + " out of range");
        if (!seen.insert(idx).second)
            fail("repeated evaluation point index " + std::to_string(idx));
        if (inst.points_[idx - 1].at_infinity)
            fail("evaluation points must be affine");
    }
    return inst;
}

bool CcmaInstance::try_build_t(const std::vector<int>& selection, Matrix& t_out) const {
    int dim = this->dim();
    Matrix t(dim, dim);
    for (int row = 0; row < dim; ++row) {
        const RationalPoint& p = points_[selection[row] - 1];
        for (int col = 0; col < n_; ++col) t.at(row, col) = eval_basis(ld_basis_[col], p, d_poly_);
        for (int col = 0; col < n_ + g_ - 1; ++col)
            t.at(row, n_ + col) = eval_basis(ker_basis_[col], p, d_poly_);
    }
    try {
        invert(t);
    } catch (const SingularError&) {
        return false;
    }
    t_out = std::move(t);
    return true;
}

void CcmaInstance::setup() {
    int dim = this->dim();

    Matrix t;
    if (!try_build_t(eval_points_, t)) {
        // deterministic fallback: 27-subsets of the affine points in
        // lexicographic order of their indices
        std::vector<int> affine;
        for (int i = 0; i < int(points_.size()); ++i)
            if (!points_[i].at_infinity) affine.push_back(i + 1);
        if (int(affine.size()) < dim)
            throw SingularError(0, "not enough affine points for the evaluation map");

        std::vector<int> pick(dim);
        for (int i = 0; i < dim; ++i) pick[i] = i;
        bool found = false;
        while (true) {
            std::vector<int> selection(dim);
            for (int i = 0; i < dim; ++i) selection[i] = affine[pick[i]];
            if (selection != eval_points_ && try_build_t(selection, t)) {
                eval_points_ = selection;
                found = true;
                break;
            }
            // next combination
            int i = dim - 1;
            while (i >= 0 && pick[i] == int(affine.size()) - dim + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < dim; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!found)
            throw SingularError(0, "no evaluation-point subset yields an invertible matrix");
    }

    t_ = std::move(t);
    t_inv_ = invert(t_, &setup_ledger_);

    Matrix projector(dim, dim);
    for (int i = 0; i < n_; ++i) projector.at(i, i) = 1;
    t1_ = mat_mul(mat_mul(t_, projector, MulStrategy::Schoolbook, &setup_ledger_), t_inv_,
                  MulStrategy::Schoolbook, &setup_ledger_);

    oracle_ = std::make_shared<OracleField>(q_poly_);
    try {
        normal_map_ = std::make_shared<NormalBasisMap>(*oracle_, q_);
        identity_ = normal_map_->to_normal(oracle_->one());
    } catch (const ValidationError&) {
        // leave the conversion unavailable; verify() reports the normality
        // failure instead of setup refusing to produce a report at all
        normal_map_.reset();
    }
    ready_ = true;
}

void CcmaInstance::require_ready() const {
    if (!ready_) throw ValidationError("instance setup() has not been run");
}

const Matrix& CcmaInstance::T() const {
    require_ready();
    return t_;
}
const Matrix& CcmaInstance::T_inv() const {
    require_ready();
    return t_inv_;
}
const Matrix& CcmaInstance::T1() const {
    require_ready();
    return t1_;
}
const std::vector<gf16::Elem>& CcmaInstance::identity() const {
    require_ready();
    if (!normal_map_) throw ValidationError("instance modulus is not normal");
    return identity_;
}
const OracleField& CcmaInstance::oracle() const {
    require_ready();
    return *oracle_;
}
const NormalBasisMap& CcmaInstance::normal_map() const {
    require_ready();
    if (!normal_map_) throw ValidationError("instance modulus is not normal");
    return *normal_map_;
}

const CcmaInstance& CcmaInstance::embedded() {
    static const CcmaInstance inst = [] {
        CcmaInstance i = load(embedded_instance_text());
        i.setup();
        return i;
    }();
    return inst;
}

void CcmaInstance::replace_q_poly(const BasePoly& q) {
    if (ready_) throw ValidationError("cannot mutate an instance after setup");
    q_poly_ = q;
}

void CcmaInstance::replace_beta_poly(const BasePoly& beta) {
    if (ready_) throw ValidationError("cannot mutate an instance after setup");
    beta_poly_ = beta;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

}  // namespace

VerifyReport CcmaInstance::verify() const {
    require_ready();
    VerifyReport report;
    const OracleField& field = *oracle_;
    auto run = [&report](const std::string& name, auto&& body) {
        VerifyCheck check;
        check.name = name;
        try {
            body(check);
        } catch (const std::exception& e) {
            check.pass = false;
            check.detail = e.what();
        }
        report.checks.push_back(std::move(check));
    };

    OracleField::Elem alpha = field.gen();
    OracleField::Elem beta = field.eval_poly(beta_poly_, alpha);

    run("trace condition Tr(b^5)=0", [&](VerifyCheck& c) {
        OracleField::Elem z = field.pow(alpha, 5);
        OracleField::Elem acc = z;
        OracleField::Elem cur = z;
        int bits = 4 * n_;  // |F| = 2^(4n)
        for (int i = 1; i < bits; ++i) {
            cur = field.mul(cur, cur);
            acc = field.add(acc, cur);
        }
        c.pass = field.is_zero(acc);
        if (!c.pass) c.detail = "trace is nonzero";
    });

    run("normality of Q", [&](VerifyCheck& c) {
        NormalBasisMap probe(field, q_);  // throws when the conjugates are dependent
        (void)probe;
        c.pass = true;
    });

    run("primitivity of Q", [&](VerifyCheck& c) {
        std::uint64_t order = field.group_order();
        if (!field.is_zero(field.add(field.pow(alpha, order), field.one()))) {
            c.pass = false;
            c.detail = "b^(q^n-1) != 1";
            return;
        }
        for (std::uint64_t p : prime_factors(order)) {
            if (field.is_zero(field.add(field.pow(alpha, order / p), field.one()))) {
                c.pass = false;
                c.detail = "order divides (q^n-1)/" + std::to_string(p);
                return;
            }
        }
        c.pass = true;
    });

    run("residue evaluation f_i(Q) = normal basis", [&](VerifyCheck& c) {
        std::uint64_t e = 1;
        for (int i = 0; i < n_; ++i) {
            OracleField::Elem got = field.eval_basis(ld_basis_[i], alpha, beta, d_poly_);
            OracleField::Elem want = field.pow(alpha, e);
            if (got != want) {
                c.pass = false;
                c.detail = "f_" + std::to_string(i + 1) + " misses alpha^(q^" +
                           std::to_string(i) + ")";
                return;
            }
            e *= std::uint64_t(q_);
        }
        c.pass = true;
    });

    run("kernel functions vanish at Q", [&](VerifyCheck& c) {
        for (int i = 0; i < int(ker_basis_.size()); ++i) {
            OracleField::Elem got = field.eval_basis(ker_basis_[i], alpha, beta, d_poly_);
            if (!field.is_zero(got)) {
                c.pass = false;
                c.detail = "g_" + std::to_string(n_ + 1 + i) + " does not vanish";
                return;
            }
        }
        c.pass = true;
    });

    run("curve equation at (alpha, beta)", [&](VerifyCheck& c) {
        OracleField::Elem lhs = field.add(field.mul(beta, beta), beta);
        c.pass = lhs == field.pow(alpha, 5);
        if (!c.pass) c.detail = "beta^2 + beta != alpha^5";
    });

    return report;
}

BlockDecomposition CcmaInstance::block_decompose() const {
    require_ready();
    int m = n_ + g_ - 1;

    BlockDecomposition b;
    b.u1 = cut(t_, 0, 0, n_, n_);
    b.u3 = cut(t_, 0, n_, n_, m);
    b.u2 = cut(t_, n_, 0, m, n_);
    b.u4 = cut(t_, n_, n_, m, m);
    b.v1 = cut(t_inv_, 0, 0, n_, n_);
    b.v3 = cut(t_inv_, 0, n_, n_, m);
    b.v2 = cut(t_inv_, n_, 0, m, n_);
    b.v4 = cut(t_inv_, n_, n_, m, m);

    auto expect = [](const Matrix& got, const Matrix& want, const std::string& what) {
        if (!(got == want))
            throw ValidationError("internal consistency: " + what + " does not hold");
    };
    expect(mat_xor(mat_mul(b.u1, b.v1), mat_mul(b.u3, b.v2)), Matrix::identity(n_),
           "U1 V1 + U3 V2 = I_n");
    expect(mat_xor(mat_mul(b.u1, b.v3), mat_mul(b.u3, b.v4)), Matrix(n_, m),
           "U1 V3 + U3 V4 = 0");
    expect(mat_xor(mat_mul(b.u2, b.v1), mat_mul(b.u4, b.v2)), Matrix(m, n_),
           "U2 V1 + U4 V2 = 0");
    expect(mat_xor(mat_mul(b.u2, b.v3), mat_mul(b.u4, b.v4)), Matrix::identity(m),
           "U2 V3 + U4 V4 = I_{n+g-1}");

    expect(cut(t1_, 0, 0, n_, n_), mat_mul(b.u1, b.v1), "T1 upper-left = U1 V1");
    expect(cut(t1_, 0, n_, n_, m), mat_mul(b.u1, b.v3), "T1 upper-right = U1 V3");
    expect(cut(t1_, n_, 0, m, n_), mat_mul(b.u2, b.v1), "T1 lower-left = U2 V1");
    expect(cut(t1_, n_, n_, m, m), mat_mul(b.u2, b.v3), "T1 lower-right = U2 V3");

    return b;
}

}  // namespace ccma
