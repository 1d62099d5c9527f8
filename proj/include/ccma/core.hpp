#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccma/instance.hpp"

namespace ccma {

// Normal-basis coordinate vector of length n (coordinate i multiplies the
// conjugate alpha^(q^i)).
using ExtElem = std::vector<gf16::Elem>;

// Vector in the evaluation space, length 2n+g-1.
using EvalVec = std::vector<gf16::Elem>;

EvalVec embed(const CcmaInstance& inst, const ExtElem& x);
ExtElem project(const CcmaInstance& inst, const EvalVec& v);

// Componentwise product; charges one bilinear multiplication per entry.
EvalVec hadamard(const EvalVec& u, const EvalVec& v, CostLedger* ledger = nullptr);

// Product through evaluation/interpolation: project(T^-1(T(x) . T(y))).
// The forward products touch only the first n columns of T and the back
// product only the first n rows of T^-1, so one call costs exactly
// 2n+g-1 bilinear and 3n(2n+g-1) constant multiplications.
ExtElem mul(const CcmaInstance& inst, const ExtElem& x, const ExtElem& y,
            CostLedger* ledger = nullptr);

// Three-operand product with a single re-evaluation through T1.
ExtElem mul3(const CcmaInstance& inst, const ExtElem& x, const ExtElem& y, const ExtElem& z,
             CostLedger* ledger = nullptr);

// x^(q^i): a right cyclic rotation of the coordinates, no arithmetic.
ExtElem frobenius(const ExtElem& x, unsigned shifts);

// Coordinatewise sum.
ExtElem add(const ExtElem& x, const ExtElem& y);

// Elementwise products of many pairs, with the forward and backward linear
// maps grouped into square-matrix products so a fast matrix-multiplication
// strategy can amortize them.
std::vector<ExtElem> batch_mul(const CcmaInstance& inst,
                               const std::vector<std::pair<ExtElem, ExtElem>>& pairs,
                               MulStrategy strategy = MulStrategy::Schoolbook,
                               CostLedger* ledger = nullptr);

// n hex nibbles, coordinate 1 first.
std::string format_element(const ExtElem& x);
ExtElem parse_element(const CcmaInstance& inst, const std::string& text);

bool is_zero(const ExtElem& x);

}  // namespace ccma
