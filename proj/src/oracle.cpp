#include "ccma/oracle.hpp"

#include <stdexcept>

#include "ccma/errors.hpp"

namespace ccma {

OracleField::OracleField(const BasePoly& modulus) : modulus_(modulus) {
    n_ = modulus.degree();
    if (n_ < 2) throw ValidationError("oracle modulus must have degree >= 2");
    if (modulus.coeffs.back() != 1) throw ValidationError("oracle modulus must be monic");
    reduction_.assign(modulus.coeffs.begin(), modulus.coeffs.end() - 1);
}

OracleField::Elem OracleField::one() const {
    Elem e(n_, 0);
    e[0] = 1;
    return e;
}

OracleField::Elem OracleField::gen() const {
    Elem e(n_, 0);
    e[1] = 1;
    return e;
}

bool OracleField::is_zero(const Elem& x) const {
    for (auto c : x)
        if (c) return false;
    return true;
}

OracleField::Elem OracleField::add(const Elem& x, const Elem& y) const {
    Elem out(n_);
    for (int i = 0; i < n_; ++i) out[i] = gf16::add(x[i], y[i]);
    return out;
}

OracleField::Elem OracleField::mul(const Elem& x, const Elem& y) const {
    std::vector<gf16::Elem> prod(2 * n_ - 1, 0);
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n_; ++j)
            prod[i + j] = gf16::add(prod[i + j], gf16::mul(x[i], y[j]));
    }
    for (int d = 2 * n_ - 2; d >= n_; --d) {
        gf16::Elem c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int k = 0; k < n_; ++k)
            prod[d - n_ + k] = gf16::add(prod[d - n_ + k], gf16::mul(c, reduction_[k]));
    }
    prod.resize(n_);
    return prod;
}

OracleField::Elem OracleField::pow(const Elem& x, std::uint64_t k) const {
    Elem result = one();
    Elem base = x;
    while (k) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::uint64_t OracleField::group_order() const {
    if (n_ > 15) throw std::overflow_error("group order exceeds 64 bits");
    std::uint64_t order = 1;
    for (int i = 0; i < n_; ++i) order *= 16;
    return order - 1;
}

OracleField::Elem OracleField::inv(const Elem& x) const {
    if (is_zero(x)) throw std::domain_error("inversion of zero");
    return pow(x, group_order() - 1);
}

OracleField::Elem OracleField::eval_poly(const BasePoly& p, const Elem& at) const {
    Elem acc = zero();
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        acc = mul(acc, at);
        acc[0] = gf16::add(acc[0], *it);
    }
    return acc;
}

OracleField::Elem OracleField::eval_basis(const BasisFunction& f, const Elem& at_x,
                                          const Elem& at_y, const BasePoly& d_poly) const {
    Elem num = add(mul(eval_poly(f.num_y, at_x), at_y), eval_poly(f.num_c, at_x));
    Elem den = eval_poly(d_poly, at_x);
    if (is_zero(den)) throw std::domain_error("denominator vanishes in the extension field");
    Elem den_inv = inv(den);
    Elem out = num;
    for (int i = 0; i < f.denom_power; ++i) out = mul(out, den_inv);
    return out;
}

NormalBasisMap::NormalBasisMap(const OracleField& field, int q) {
    int n = field.degree();
    nc_ = Matrix(n, n);
    OracleField::Elem conj = field.gen();
    for (int col = 0; col < n; ++col) {
        for (int row = 0; row < n; ++row) nc_.at(row, col) = conj[row];
        if (col + 1 < n) conj = field.pow(conj, std::uint64_t(q));
    }
    try {
        nc_inv_ = invert(nc_);
    } catch (const SingularError&) {
        throw ValidationError("modulus is not normal: conjugates are linearly dependent");
    }
}

std::vector<gf16::Elem> NormalBasisMap::to_normal(const OracleField::Elem& x) const {
    return mat_vec(nc_inv_, x);
}

OracleField::Elem NormalBasisMap::from_normal(const std::vector<gf16::Elem>& coords) const {
    return mat_vec(nc_, coords);
}

}  // namespace ccma
