#include "ccma/costmodel.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccma {

CostModel parse_model(const std::string& name) {
    if (name == "NS") return CostModel::NS;
    if (name == "S1") return CostModel::S1;
    if (name == "S2") return CostModel::S2;
    throw std::invalid_argument("unknown cost model: '" + name + "'");
}

std::string model_name(CostModel m) {
    switch (m) {
        case CostModel::NS: return "NS";
        case CostModel::S1: return "S1";
        default: return "S2";
    }
}

void CostLedger::merge(const CostLedger& other) {
    merge_counters(other);
    rounds.insert(rounds.end(), other.rounds.begin(), other.rounds.end());
}

void CostLedger::merge_counters(const CostLedger& other) {
    bilinear += other.bilinear;
    scalar_mul += other.scalar_mul;
    add += other.add;
}

std::uint64_t CostLedger::total(CostModel m) const {
    switch (m) {
        case CostModel::NS: return bilinear;
        case CostModel::S1: return bilinear + scalar_mul;
        default: return bilinear + scalar_mul + add;
    }
}

std::uint32_t CostLedger::width() const {
    std::uint32_t w = 0;
    for (auto lanes : rounds) w = std::max(w, lanes);
    return w;
}

std::string CostLedger::report(CostModel m) const {
    return "model=" + model_name(m) + " total=" + std::to_string(total(m)) +
           " depth=" + std::to_string(depth()) + " width=" + std::to_string(width()) +
           " bilinear=" + std::to_string(bilinear);
}

}  // namespace ccma
