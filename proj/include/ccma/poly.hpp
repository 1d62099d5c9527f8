#pragma once

#include <string>
#include <vector>

#include "ccma/gf16.hpp"

namespace ccma {

// Univariate polynomial over F16, coefficients degree-ascending, no trailing
// zeros; the zero polynomial has an empty coefficient list.
struct BasePoly {
    std::vector<gf16::Elem> coeffs;

    BasePoly() = default;
    static BasePoly from_coeffs(std::vector<gf16::Elem> c);

    int degree() const { return int(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    gf16::Elem coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : gf16::Elem(0); }

    bool operator==(const BasePoly&) const = default;
};

// Horner evaluation.
gf16::Elem eval_poly(const BasePoly& p, gf16::Elem x0);

// A point of the plane model y^2 + y = x^5; (0:1:0) is the point at infinity.
struct RationalPoint {
    gf16::Elem x = 0;
    gf16::Elem y = 0;
    bool at_infinity = false;
};

bool on_curve(const RationalPoint& p);

// The function (num_y(x)*y + num_c(x)) / d(x)^denom_power on the curve,
// where d is the degree-(n+g-1) place polynomial of the construction.
struct BasisFunction {
    BasePoly num_y;
    BasePoly num_c;
    int denom_power = 1;
};

// Evaluates at an affine point; throws ValidationError for the point at
// infinity (only affine evaluation points are supported).
gf16::Elem eval_basis(const BasisFunction& f, const RationalPoint& p, const BasePoly& d_poly);

}  // namespace ccma
