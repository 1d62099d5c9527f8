#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccma/core.hpp"

namespace ccma {

// Recoding parameters: q-ary digits are grouped into s = ceil(n/r) blocks of
// r digits, each block split into t = ceil(r/u) chunks of u digits.
struct ExponentParams {
    int r = 1;
    int u = 1;
};

// The published parameter formulas, clamped to u >= 1 and r >= u (at small n
// the raw formulas go nonpositive).
ExponentParams default_params(int q, int n);

struct ExponentPlan {
    std::uint64_t k = 0;  // reduced exponent
    int q = 0, n = 0, r = 0, u = 0, s = 0, t = 0;
    // digits[i][j] in [0, q^u): k = sum_i (sum_j digits[i][j] q^(u j)) q^(r i)
    std::vector<std::vector<std::uint32_t>> digits;

    std::uint64_t recompose_mod(std::uint64_t modulus) const;
};

// Reduces k modulo q^n - 1 first (when q^n - 1 fits in 64 bits), then splits
// the base-q digits.  Throws std::invalid_argument when u > r or u < 1.
ExponentPlan recode(std::uint64_t k, int q, int r, int u, int n);

enum class RoundKind { Hadamard, MatVec };

struct TraceRound {
    RoundKind op = RoundKind::Hadamard;
    std::uint32_t lanes = 0;

    bool operator==(const TraceRound&) const = default;
};

// Round-by-round record of a schedule.  Depth counts only the rounds that
// perform bilinear products; the entry/exit matrix-vector rounds are listed
// but free of Hadamard work.
struct ScheduleTrace {
    std::vector<TraceRound> rounds;
    std::uint64_t bilinear = 0;

    std::size_t depth() const;
    std::uint32_t width() const;
    std::string render() const;

    bool operator==(const ScheduleTrace&) const = default;
};

enum class PowAlgorithm { SquareMultiply, VonZurGathen };

PowAlgorithm parse_algorithm(const std::string& name);

// Right-to-left square and multiply kept in the evaluation domain: the
// running vectors only return to normal-basis coordinates at the end.
// The schedule uses two lane sets, one squaring and one accumulating.
ExtElem pow_square_multiply(const CcmaInstance& inst, const ExtElem& x, std::uint64_t k,
                            CostLedger* ledger = nullptr, ScheduleTrace* trace = nullptr);

inline constexpr std::size_t kPowTableCap = std::size_t(1) << 20;

// Level-parallel binary multiplication tree for x^d, 2 <= d < q^u.  The
// returned table is indexed by d and also holds x^0 and x^1.
std::vector<ExtElem> vzg_precompute(const CcmaInstance& inst, const ExtElem& x, int u,
                                    CostLedger* ledger = nullptr, ScheduleTrace* trace = nullptr,
                                    std::size_t max_entries = kPowTableCap);

// Parallel exponentiation: precompute small powers, shift them onto their
// digit positions (free in a normal basis), combine each block sequentially
// and the blocks with a binary tree.
ExtElem pow_vzg(const CcmaInstance& inst, const ExtElem& x, std::uint64_t k,
                ExponentParams params, CostLedger* ledger = nullptr,
                ScheduleTrace* trace = nullptr);

// The schedule an execution with the same inputs would produce, without any
// field data; usable for extension degrees far beyond the instantiated field.
ScheduleTrace simulate_trace(int q, int n, int g, std::uint64_t k, PowAlgorithm algorithm,
                             ExponentParams params);

// Four-term depth bound for the parallel exponentiation at extension degree n
// (meaningful once log_q n - 2 log_q log_q n > 1).
double vzg_depth_bound(int q, int n);

// Parses a nonnegative decimal of any length and reduces it mod `modulus`.
std::uint64_t reduce_exponent_decimal(const std::string& text, std::uint64_t modulus);

}  // namespace ccma
