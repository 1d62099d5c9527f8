#include <doctest.h>

#include <random>

#include "ccma/exponent.hpp"

using namespace ccma;

namespace {

constexpr std::uint64_t kOrder = (std::uint64_t(1) << 52) - 1;

ExtElem random_elem(std::mt19937_64& rng) {
    ExtElem e(13);
    for (auto& c : e) c = gf16::Elem(rng() & 0xF);
    return e;
}

ExtElem oracle_pow(const CcmaInstance& inst, const ExtElem& x, std::uint64_t k) {
    const auto& nm = inst.normal_map();
    return nm.to_normal(inst.oracle().pow(nm.from_normal(x), k));
}

}  // namespace

TEST_CASE("recoding basics") {
    ExponentPlan zero = recode(0, 16, 2, 1, 13);
    for (const auto& block : zero.digits)
        for (auto d : block) CHECK(d == 0);

    // 37 = 5 + 2*16
    ExponentPlan p = recode(37, 16, 2, 1, 13);
    CHECK(p.s == 7);
    CHECK(p.t == 2);
    CHECK(p.digits[0][0] == 5);
    CHECK(p.digits[0][1] == 2);
    for (int i = 1; i < p.s; ++i)
        for (int j = 0; j < p.t; ++j) CHECK(p.digits[i][j] == 0);

    CHECK_THROWS_AS(recode(1, 16, 1, 2, 13), std::invalid_argument);  // u > r
    CHECK_THROWS_AS(recode(1, 16, 2, 0, 13), std::invalid_argument);
}

TEST_CASE("recoding round-trips modulo the group order") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        std::uint64_t k = rng();
        int u = 1 + int(rng() % 3);
        int r = u + int(rng() % 5);
        ExponentPlan p = recode(k, 16, r, u, 13);
        CHECK(p.recompose_mod(kOrder) == k % kOrder);
        for (const auto& block : p.digits)
            for (auto d : block) CHECK(d < std::uint32_t(1) << (4 * u));
    }
}

TEST_CASE("default parameters") {
    ExponentParams p16 = default_params(16, 13);
    CHECK(p16.r == 1);
    CHECK(p16.u == 1);

    ExponentParams p2 = default_params(2, 1024);
    CHECK(p2.r == 34);
    CHECK(p2.u == 3);

    for (int n : {2, 3, 13, 64, 256, 1024, 4096})
        for (int q : {2, 4, 16}) {
            ExponentParams p = default_params(q, n);
            CHECK(p.u >= 1);
            CHECK(p.r >= p.u);
        }
}

TEST_CASE("square-and-multiply fixed points") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(42);
    ExtElem x = random_elem(rng);

    CHECK(pow_square_multiply(inst, x, 1) == x);
    CHECK(pow_square_multiply(inst, x, 0) == inst.identity());
    CHECK(pow_square_multiply(inst, ExtElem(13, 0), 5) == ExtElem(13, 0));
    CHECK(pow_square_multiply(inst, x, 16) == frobenius(x, 1));
}

TEST_CASE("the x^15 two-lane schedule has four product rounds") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(43);
    ExtElem x = random_elem(rng);
    CostLedger ledger;
    ScheduleTrace trace;
    ExtElem got = pow_square_multiply(inst, x, 15, &ledger, &trace);
    CHECK(got == oracle_pow(inst, x, 15));

    CHECK(trace.depth() == 4);
    CHECK(trace.width() == 2);
    REQUIRE(trace.rounds.size() == 6);
    CHECK(trace.rounds.front().op == RoundKind::MatVec);
    CHECK(trace.rounds.back().op == RoundKind::MatVec);
    // squaring lane only, then both lanes twice, then the final accumulation
    CHECK(trace.rounds[1].lanes == 1);
    CHECK(trace.rounds[2].lanes == 2);
    CHECK(trace.rounds[3].lanes == 2);
    CHECK(trace.rounds[4].lanes == 1);
    CHECK(trace.bilinear == 6 * 27);
    CHECK(ledger.bilinear == trace.bilinear);
    CHECK(ledger.depth() == 4);
}

TEST_CASE("precomputation table of small powers") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(44);
    ExtElem x = random_elem(rng);

    ScheduleTrace trace;
    auto table = vzg_precompute(inst, x, 1, nullptr, &trace);
    REQUIRE(table.size() == 16);
    CHECK(trace.depth() == 4);  // ceil(log2 15)
    for (std::uint64_t d = 2; d < 16; ++d) CHECK(table[d] == oracle_pow(inst, x, d));

    auto id_table = vzg_precompute(inst, inst.identity(), 1);
    for (const auto& e : id_table) CHECK(e == inst.identity());

    CHECK_THROWS_AS(vzg_precompute(inst, x, 13), std::invalid_argument);  // cap exceeded
}

TEST_CASE("parallel exponentiation fixed points") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(45);
    ExtElem x = random_elem(rng);
    ExponentParams params = default_params(16, 13);

    CHECK(pow_vzg(inst, x, 16, params) == frobenius(x, 1));
    CHECK(pow_vzg(inst, x, 0, params) == inst.identity());
    if (!is_zero(x)) CHECK(pow_vzg(inst, x, kOrder, params) == inst.identity());
    CHECK(pow_vzg(inst, ExtElem(13, 0), 123, params) == ExtElem(13, 0));
}

TEST_CASE("both exponentiation routes agree with the reference field") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(46);
    ExponentParams params = default_params(16, 13);
    for (int t = 0; t < 60; ++t) {
        ExtElem x = random_elem(rng);
        std::uint64_t k = rng() % kOrder;
        ExtElem want = oracle_pow(inst, x, k);
        REQUIRE(pow_square_multiply(inst, x, k) == want);
        REQUIRE(pow_vzg(inst, x, k, params) == want);
    }
    // nondefault recoding parameters
    for (int t = 0; t < 20; ++t) {
        ExtElem x = random_elem(rng);
        std::uint64_t k = rng() % kOrder;
        REQUIRE(pow_vzg(inst, x, k, {5, 2}) == oracle_pow(inst, x, k));
        REQUIRE(pow_vzg(inst, x, k, {3, 3}) == oracle_pow(inst, x, k));
    }
}

TEST_CASE("power laws") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(47);
    for (int t = 0; t < 30; ++t) {
        ExtElem x = random_elem(rng);
        std::uint64_t j = rng() % 100000, l = rng() % 100000;
        CHECK(mul(inst, pow_square_multiply(inst, x, j), pow_square_multiply(inst, x, l)) ==
              pow_square_multiply(inst, x, j + l));
    }
}

TEST_CASE("executed traces equal simulated traces") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(48);
    ExponentParams params = default_params(16, 13);
    for (int t = 0; t < 50; ++t) {
        ExtElem x = random_elem(rng);
        if (is_zero(x)) continue;
        std::uint64_t k = rng() % kOrder;

        ScheduleTrace run_sm, run_vzg;
        pow_square_multiply(inst, x, k, nullptr, &run_sm);
        pow_vzg(inst, x, k, params, nullptr, &run_vzg);
        CHECK(run_sm == simulate_trace(16, 13, 2, k, PowAlgorithm::SquareMultiply, params));
        CHECK(run_vzg == simulate_trace(16, 13, 2, k, PowAlgorithm::VonZurGathen, params));
    }

    CHECK(simulate_trace(16, 13, 2, 0, PowAlgorithm::SquareMultiply, params).depth() == 0);
    CHECK(simulate_trace(16, 13, 2, 0, PowAlgorithm::VonZurGathen, params).depth() == 0);
    CHECK(simulate_trace(16, 13, 2, 15, PowAlgorithm::SquareMultiply, params).depth() == 4);
}

TEST_CASE("vzg lane width never exceeds the structural bound") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(49);
    ExponentParams params = default_params(16, 13);
    for (int t = 0; t < 20; ++t) {
        ExtElem x = random_elem(rng);
        if (is_zero(x)) continue;
        std::uint64_t k = 1 + rng() % (kOrder - 1);
        ScheduleTrace trace;
        pow_vzg(inst, x, k, params, nullptr, &trace);
        ExponentPlan plan = recode(k, 16, params.r, params.u, 13);

        std::uint64_t top = 1;
        for (int i = 0; i < plan.u; ++i) top *= 16;
        top -= 1;
        // widest precompute level
        std::uint32_t tree_width = 0;
        std::uint64_t lo = 2, hi = 2;
        while (lo <= top) {
            tree_width = std::max(tree_width, std::uint32_t(std::min(hi, top) - lo + 1));
            lo = hi + 1;
            hi *= 2;
        }
        std::uint32_t bound = std::max({tree_width, std::uint32_t(plan.s),
                                        std::uint32_t(plan.s / 2)});
        CHECK(trace.width() <= bound);
    }
}

TEST_CASE("every product round charges dim bilinear multiplications per lane") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(50);
    ExtElem x = random_elem(rng);
    CostLedger ledger;
    ScheduleTrace trace;
    pow_vzg(inst, x, 123456789, default_params(16, 13), &ledger, &trace);
    std::uint64_t lanes_total = 0;
    for (const auto& r : trace.rounds)
        if (r.op == RoundKind::Hadamard) lanes_total += r.lanes;
    CHECK(ledger.bilinear == lanes_total * 27);
    CHECK(trace.bilinear == lanes_total * 27);
}

TEST_CASE("synthetic-degree schedules respect the printed depth bound") {
    for (int n : {256, 1024, 4096}) {
        ExponentParams params = default_params(16, n);
        ScheduleTrace trace =
            simulate_trace(16, n, 2, 0xDEADBEEFCAFEull, PowAlgorithm::VonZurGathen, params);
        CHECK(double(trace.depth()) <= vzg_depth_bound(16, n));
    }
}

TEST_CASE("decimal exponent reduction") {
    CHECK(reduce_exponent_decimal("0", kOrder) == 0);
    CHECK(reduce_exponent_decimal("15", kOrder) == 15);
    CHECK(reduce_exponent_decimal("4503599627370495", kOrder) == 0);  // the order itself
    CHECK(reduce_exponent_decimal("4503599627370496", kOrder) == 1);
    // 2^200 mod (2^52 - 1): since 2^52 = 1 here, this is 2^(200 mod 52) = 2^44
    CHECK(reduce_exponent_decimal(
              "1606938044258990275541962092341162602522202993782792835301376", kOrder) ==
          (std::uint64_t(1) << 44));
    CHECK_THROWS_AS(reduce_exponent_decimal("12x", kOrder), std::invalid_argument);
    CHECK_THROWS_AS(reduce_exponent_decimal("", kOrder), std::invalid_argument);
}
