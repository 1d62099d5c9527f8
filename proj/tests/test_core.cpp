#include <doctest.h>

#include <random>

#include "ccma/core.hpp"
#include "ccma/errors.hpp"

using namespace ccma;

namespace {

ExtElem random_elem(std::mt19937_64& rng, int n = 13) {
    ExtElem e(n);
    for (auto& c : e) c = gf16::Elem(rng() & 0xF);
    return e;
}

ExtElem oracle_mul(const CcmaInstance& inst, const ExtElem& x, const ExtElem& y) {
    const auto& nm = inst.normal_map();
    return nm.to_normal(inst.oracle().mul(nm.from_normal(x), nm.from_normal(y)));
}

}  // namespace

TEST_CASE("embed and project") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    ExtElem zero(13, 0);
    CHECK(embed(inst, zero) == EvalVec(27, 0));

    ExtElem e1(13, 0);
    e1[0] = 1;
    EvalVec v = embed(inst, e1);
    CHECK(v.size() == 27);
    CHECK(v[0] == 1);
    for (int i = 1; i < 27; ++i) CHECK(v[i] == 0);

    std::mt19937_64 rng(31);
    ExtElem x = random_elem(rng);
    CHECK(project(inst, embed(inst, x)) == x);

    EvalVec w(27);
    for (int i = 0; i < 27; ++i) w[i] = gf16::Elem(i & 0xF);
    CHECK(project(inst, w) == ExtElem(w.begin(), w.begin() + 13));
}

TEST_CASE("hadamard product") {
    EvalVec u{1, 2, 3}, ones{1, 1, 1}, zero{0, 0, 0};
    CHECK(hadamard(u, ones) == u);
    CHECK(hadamard(u, zero) == zero);

    CostLedger ledger;
    hadamard(EvalVec(27, 1), EvalVec(27, 1), &ledger);
    CHECK(ledger.bilinear == 27);
}

TEST_CASE("multiplication matches the appendix example operands") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    // (a, 1, 0, ...) * (1, a, a, 0, ...) with a = 0x2
    ExtElem x = parse_element(inst, "2100000000000");
    ExtElem y = parse_element(inst, "1220000000000");
    ExtElem got = mul(inst, x, y);
    CHECK(format_element(got) == "9ac3f80134d47");  // frozen from the reference field
    CHECK(got == oracle_mul(inst, x, y));
}

TEST_CASE("multiplication special elements") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(32);
    ExtElem x = random_elem(rng);
    CHECK(mul(inst, x, inst.identity()) == x);
    CHECK(mul(inst, x, ExtElem(13, 0)) == ExtElem(13, 0));
}

TEST_CASE("multiplication equals the reference field everywhere sampled") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(33);
    for (int t = 0; t < 500; ++t) {
        ExtElem x = random_elem(rng), y = random_elem(rng);
        REQUIRE(mul(inst, x, y) == oracle_mul(inst, x, y));
    }
}

TEST_CASE("one product charges 27 bilinear and 1080 total multiplications") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(34);
    CostLedger ledger;
    mul(inst, random_elem(rng), random_elem(rng), &ledger);
    CHECK(ledger.bilinear == 27);
    CHECK(ledger.scalar_mul == 1053);
    CHECK(ledger.total(CostModel::S1) == 1080);
    CHECK(ledger.depth() == 1);
}

TEST_CASE("three-operand product") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(35);

    ExtElem x = random_elem(rng);
    CHECK(mul3(inst, x, inst.identity(), inst.identity()) == x);

    for (int t = 0; t < 100; ++t) {
        ExtElem a = random_elem(rng), b = random_elem(rng), c = random_elem(rng);
        REQUIRE(mul3(inst, a, b, c) == mul(inst, mul(inst, a, b), c));
    }

    CostLedger ledger;
    mul3(inst, x, x, x, &ledger);
    CHECK(ledger.bilinear == 54);
    CHECK(ledger.total(CostModel::S1) == 2187);
    CHECK(ledger.depth() == 2);
}

TEST_CASE("frobenius is a free rotation agreeing with q-th powers") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(36);
    ExtElem x = random_elem(rng);
    CHECK(frobenius(x, 0) == x);
    CHECK(frobenius(x, 13) == x);

    ExtElem once = frobenius(x, 1);
    for (int j = 0; j < 13; ++j) CHECK(once[(j + 1) % 13] == x[j]);

    const auto& nm = inst.normal_map();
    for (int t = 0; t < 100; ++t) {
        ExtElem y = random_elem(rng);
        CHECK(frobenius(y, 1) == nm.to_normal(inst.oracle().pow(nm.from_normal(y), 16)));
    }

    // compatibility with multiplication
    for (int t = 0; t < 100; ++t) {
        ExtElem a = random_elem(rng), b = random_elem(rng);
        CHECK(mul(inst, frobenius(a, 1), frobenius(b, 1)) == frobenius(mul(inst, a, b), 1));
    }
}

TEST_CASE("field axioms through the interpolation pipeline") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(37);
    for (int t = 0; t < 1000; ++t) {
        ExtElem x = random_elem(rng), y = random_elem(rng), z = random_elem(rng);
        REQUIRE(mul(inst, x, y) == mul(inst, y, x));
        REQUIRE(mul(inst, mul(inst, x, y), z) == mul(inst, x, mul(inst, y, z)));
        REQUIRE(mul(inst, x, add(y, z)) == add(mul(inst, x, y), mul(inst, x, z)));
    }
}

TEST_CASE("batch multiplication equals elementwise multiplication") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(38);

    for (auto strategy : {MulStrategy::Schoolbook, MulStrategy::Strassen}) {
        for (std::size_t count : {std::size_t(1), std::size_t(5), std::size_t(27),
                                  std::size_t(30)}) {
            std::vector<std::pair<ExtElem, ExtElem>> pairs;
            for (std::size_t i = 0; i < count; ++i)
                pairs.emplace_back(random_elem(rng), random_elem(rng));
            CostLedger ledger;
            auto results = batch_mul(inst, pairs, strategy, &ledger);
            REQUIRE(results.size() == count);
            for (std::size_t i = 0; i < count; ++i)
                REQUIRE(results[i] == mul(inst, pairs[i].first, pairs[i].second));
            CHECK(ledger.bilinear == 27 * count);  // batching never adds bilinear work
        }
    }

    CHECK(batch_mul(inst, {}, MulStrategy::Schoolbook).empty());
}

TEST_CASE("element text form") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    std::mt19937_64 rng(39);
    ExtElem x = random_elem(rng);
    CHECK(parse_element(inst, format_element(x)) == x);
    CHECK_THROWS_AS(parse_element(inst, "123"), ValidationError);
    CHECK_THROWS_AS(parse_element(inst, "210000000000g"), std::invalid_argument);
}
