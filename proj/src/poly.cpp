#include "ccma/poly.hpp"

#include "ccma/errors.hpp"

namespace ccma {

BasePoly BasePoly::from_coeffs(std::vector<gf16::Elem> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    BasePoly p;
    p.coeffs = std::move(c);
    return p;
}

gf16::Elem eval_poly(const BasePoly& p, gf16::Elem x0) {
    gf16::Elem acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = gf16::add(gf16::mul(acc, x0), *it);
    return acc;
}

bool on_curve(const RationalPoint& p) {
    if (p.at_infinity) return true;
    gf16::Elem lhs = gf16::add(gf16::mul(p.y, p.y), p.y);
    return lhs == gf16::pow(p.x, 5);
}

gf16::Elem eval_basis(const BasisFunction& f, const RationalPoint& p, const BasePoly& d_poly) {
    if (p.at_infinity)
        throw ValidationError("basis functions are evaluated at affine points only");
    gf16::Elem den = eval_poly(d_poly, p.x);
    gf16::Elem num = gf16::add(gf16::mul(eval_poly(f.num_y, p.x), p.y), eval_poly(f.num_c, p.x));
    gf16::Elem inv_den = gf16::inv(den);
    gf16::Elem result = num;
    for (int i = 0; i < f.denom_power; ++i) result = gf16::mul(result, inv_den);
    return result;
}

}  // namespace ccma
