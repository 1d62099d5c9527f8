#pragma once

#include <cstdint>
#include <vector>

#include "ccma/matrix.hpp"
#include "ccma/poly.hpp"

namespace ccma {

// Reference implementation of F_16^n as F16[X]/(Q(X)) in the power basis
// (1, b, ..., b^{n-1}), b the class of X.  This is the ground truth the
// interpolation pipeline is checked against; the two paths share nothing
// but the base-field tables.
class OracleField {
public:
    // Power-basis coordinate vector of length n.
    using Elem = std::vector<gf16::Elem>;

    explicit OracleField(const BasePoly& modulus);  // monic, degree >= 2

    int degree() const { return n_; }
    const BasePoly& modulus() const { return modulus_; }

    Elem zero() const { return Elem(n_, 0); }
    Elem one() const;
    Elem gen() const;  // b

    bool is_zero(const Elem& x) const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem mul(const Elem& x, const Elem& y) const;  // schoolbook, reduced mod Q
    Elem pow(const Elem& x, std::uint64_t k) const;
    Elem inv(const Elem& x) const;  // via x^(q^n - 2); requires x != 0

    // q^n - 1 (group order); only valid while 16^n fits in 64 bits (n <= 15).
    std::uint64_t group_order() const;

    // Evaluate a base-field polynomial at an extension element.
    Elem eval_poly(const BasePoly& p, const Elem& at) const;

    // Evaluate (num_y(x)*y + num_c(x)) / d(x)^denom_power at extension
    // coordinates (at_x, at_y).
    Elem eval_basis(const BasisFunction& f, const Elem& at_x, const Elem& at_y,
                    const BasePoly& d_poly) const;

private:
    int n_;
    BasePoly modulus_;
    std::vector<gf16::Elem> reduction_;  // X^n = sum reduction_[k] X^k
};

// Change of basis between the power basis and the normal basis
// (b, b^q, b^{q^2}, ...).  Construction fails with ValidationError when the
// conjugates are linearly dependent (the modulus is not normal).
class NormalBasisMap {
public:
    NormalBasisMap(const OracleField& field, int q);

    // Column i holds the power-basis coordinates of b^(q^i).
    const Matrix& conversion() const { return nc_; }

    std::vector<gf16::Elem> to_normal(const OracleField::Elem& x) const;
    OracleField::Elem from_normal(const std::vector<gf16::Elem>& coords) const;

private:
    Matrix nc_;
    Matrix nc_inv_;
};

}  // namespace ccma
