#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ccma {

// NS counts bilinear multiplications only, S1 all multiplications,
// S2 all multiplications and additions.
enum class CostModel { NS, S1, S2 };

CostModel parse_model(const std::string& name);
std::string model_name(CostModel m);

// Operation counters plus the lane count of every multiplication round.
// Counters never decrease; merging ledgers sums everything.
struct CostLedger {
    std::uint64_t bilinear = 0;
    std::uint64_t scalar_mul = 0;
    std::uint64_t add = 0;
    std::vector<std::uint32_t> rounds;

    void charge_bilinear(std::uint64_t c) { bilinear += c; }
    void charge_scalar_mul(std::uint64_t c) { scalar_mul += c; }
    void charge_add(std::uint64_t c) { add += c; }
    void begin_round(std::uint32_t lanes) { rounds.push_back(lanes); }

    void merge(const CostLedger& other);

    // Sums the counters only; used when the caller owns the round structure.
    void merge_counters(const CostLedger& other);

    std::uint64_t total(CostModel m) const;
    std::size_t depth() const { return rounds.size(); }
    std::uint32_t width() const;

    // "model=<m> total=<t> depth=<d> width=<w> bilinear=<b>"
    std::string report(CostModel m) const;
};

}  // namespace ccma
