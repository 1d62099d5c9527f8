#pragma once

#include <cstdint>
#include <string>

namespace ccma::gf16 {

// One element of F16 = F2[a]/(a^4 + a + 1), stored in the low nibble as
// c3c2c1c0 for c3*a^3 + c2*a^2 + c1*a + c0.  The primitive root a is 0x2.
using Elem = std::uint8_t;

inline constexpr Elem kGen = 0x2;
inline constexpr int kOrder = 15;  // order of the multiplicative group

// exp[k] = a^k for k = 0..14; log[e] = k for nonzero e, log[0] = -1
extern const Elem exp_table[kOrder];
extern const int log_table[16];

inline Elem add(Elem x, Elem y) { return Elem((x ^ y) & 0xF); }

inline Elem mul(Elem x, Elem y) {
    if (x == 0 || y == 0) return 0;
    return exp_table[(log_table[x] + log_table[y]) % kOrder];
}

// Throws std::domain_error on x == 0.
Elem inv(Elem x);

// pow(0, 0) == 1 by convention; pow(0, k) == 0 for k >= 1.
Elem pow(Elem x, std::uint64_t k);

// Single lowercase hex digit.
std::string to_string(Elem x);

// Accepts a hex digit, "a", or "a^k" with 0 <= k <= 14.
Elem parse(const std::string& text);

}  // namespace ccma::gf16
