#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "ccma/core.hpp"
#include "ccma/errors.hpp"
#include "ccma/instance.hpp"
#include "ccma/instance_data.hpp"

using namespace ccma;

TEST_CASE("the bundled instance loads with the expected shape") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    CHECK(inst.n() == 13);
    CHECK(inst.g() == 2);
    CHECK(inst.q() == 16);
    CHECK(inst.dim() == 27);
    CHECK(inst.points().size() == 33);
    CHECK(inst.ld_basis().size() == 13);
    CHECK(inst.ker_basis().size() == 14);
    CHECK(inst.eval_points().size() == 27);
    CHECK(inst.T().rows == 27);
    CHECK(inst.T().cols == 27);
}

TEST_CASE("load rejects malformed and invalid input") {
    std::string text = embedded_instance_text();

    SUBCASE("bad header") {
        CHECK_THROWS_AS(CcmaInstance::load("not-an-instance\n"), ParseError);
    }
    SUBCASE("bad nibble reports its line") {
        auto pos = text.find("point 0 0");
        std::string broken = text;
        broken.replace(pos, 9, "point z 0");
        try {
            CcmaInstance::load(broken);
            CHECK(false);
        } catch (const ParseError& e) {
            CHECK(e.line() > 1);
        }
    }
    SUBCASE("point off the curve") {
        auto pos = text.find("point 0 0");
        std::string broken = text;
        broken.replace(pos, 9, "point 1 1");
        CHECK_THROWS_AS(CcmaInstance::load(broken), ValidationError);
    }
    SUBCASE("wrong kernel basis count") {
        auto pos = text.find("KER 27");
        std::string broken = text.substr(0, pos);  // drop the last kernel function
        CHECK_THROWS_AS(CcmaInstance::load(broken), ValidationError);
    }
    SUBCASE("unknown directive") {
        CHECK_THROWS_AS(CcmaInstance::load(text + "wibble 3\n"), ParseError);
    }
    SUBCASE("repeated evaluation point") {
        auto pos = text.find("eval-points");
        auto end = text.find('\n', pos);
        std::string broken = text.substr(0, pos) +
                             "eval-points 2 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 "
                             "21 22 23 24 25 26 27" +
                             text.substr(end);
        CHECK_THROWS_AS(CcmaInstance::load(broken), ValidationError);
    }
    SUBCASE("evaluation point at infinity") {
        auto pos = text.find("eval-points");
        auto end = text.find('\n', pos);
        std::string broken = text.substr(0, pos) +
                             "eval-points 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 "
                             "21 22 23 24 25 26 27" +
                             text.substr(end);
        CHECK_THROWS_AS(CcmaInstance::load(broken), ValidationError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(CcmaInstance::load_file("/nonexistent/foo.instance"), IoError);
    }
}

TEST_CASE("setup produces an invertible evaluation matrix and a projection") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    CHECK(mat_mul(inst.T(), inst.T_inv()) == Matrix::identity(27));

    // T1 is conjugate to a projector, so it is idempotent
    CHECK(mat_mul(inst.T1(), inst.T1()) == inst.T1());

    // identity element: one is Frobenius-fixed, so all coordinates agree
    const auto& id = inst.identity();
    REQUIRE(id.size() == 13);
    for (auto c : id) CHECK(c == id[0]);
    CHECK(format_element(id) == "aaaaaaaaaaaaa");
}

TEST_CASE("setup is deterministic") {
    CcmaInstance a = CcmaInstance::load(embedded_instance_text());
    CcmaInstance b = CcmaInstance::load(embedded_instance_text());
    a.setup();
    b.setup();
    CHECK(a.T() == b.T());
    CHECK(a.T_inv() == b.T_inv());
    CHECK(a.T1() == b.T1());
    CHECK(a.eval_points() == b.eval_points());
}

TEST_CASE("T maps unit coordinate vectors to evaluation columns") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    for (int i : {0, 5, 20}) {
        Vec ei(27, 0);
        ei[i] = 1;
        Vec col = mat_vec(inst.T(), ei);
        const auto& f = i < 13 ? inst.ld_basis()[i] : inst.ker_basis()[i - 13];
        for (int j = 0; j < 27; ++j) {
            const RationalPoint& p = inst.points()[inst.eval_points()[j] - 1];
            CHECK(col[j] == eval_basis(f, p, inst.d_poly()));
        }
    }
}

TEST_CASE("all six construction checks pass on the bundled data") {
    VerifyReport report = CcmaInstance::embedded().verify();
    REQUIRE(report.checks.size() == 6);
    for (const auto& c : report.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
    CHECK(report.all_pass());
    CHECK(report.render().find("checks passed: 6/6") != std::string::npos);
}

TEST_CASE("replacing beta with its conjugate breaks the residue check only") {
    CcmaInstance inst = CcmaInstance::load(embedded_instance_text());
    std::vector<gf16::Elem> coeffs = inst.beta_poly().coeffs;
    coeffs[0] = gf16::add(coeffs[0], 1);  // beta + 1, the second place over Q
    inst.replace_beta_poly(BasePoly::from_coeffs(coeffs));
    inst.setup();
    VerifyReport report = inst.verify();
    REQUIRE(report.checks.size() == 6);
    CHECK(!report.checks[3].pass);  // residue evaluation
    CHECK(report.checks[5].pass);   // curve equation still holds
}

TEST_CASE("a reducible modulus fails the primitivity check") {
    CcmaInstance inst = CcmaInstance::load(embedded_instance_text());
    // x^13 + x = x (x^12 + 1), monic of the right degree but reducible
    std::vector<gf16::Elem> coeffs(14, 0);
    coeffs[1] = 1;
    coeffs[13] = 1;
    inst.replace_q_poly(BasePoly::from_coeffs(coeffs));
    inst.setup();
    VerifyReport report = inst.verify();
    REQUIRE(report.checks.size() == 6);
    CHECK(!report.checks[2].pass);  // primitivity
    CHECK(!report.checks[1].pass);  // conjugates collapse, so normality fails too
    CHECK_THROWS_AS(inst.identity(), ValidationError);
}

TEST_CASE("block decomposition satisfies the four relations") {
    const CcmaInstance& inst = CcmaInstance::embedded();
    BlockDecomposition b = inst.block_decompose();  // throws if any relation fails

    CHECK(b.u1.rows == 13);
    CHECK(b.u1.cols == 13);
    CHECK(b.u2.rows == 14);
    CHECK(b.u2.cols == 13);
    CHECK(b.u3.rows == 13);
    CHECK(b.u3.cols == 14);
    CHECK(b.u4.rows == 14);
    CHECK(b.u4.cols == 14);

    // spot-check one relation and one block identity independently
    Matrix lhs = mat_mul(b.u1, b.v1);
    Matrix rhs = mat_mul(b.u3, b.v2);
    for (int r = 0; r < 13; ++r)
        for (int c = 0; c < 13; ++c)
            CHECK(gf16::add(lhs.at(r, c), rhs.at(r, c)) == (r == c ? 1 : 0));

    Matrix t1_top_left(13, 13);
    for (int r = 0; r < 13; ++r)
        for (int c = 0; c < 13; ++c) t1_top_left.at(r, c) = inst.T1().at(r, c);
    CHECK(t1_top_left == mat_mul(b.u1, b.v1));
}

TEST_CASE("accessors demand setup") {
    CcmaInstance inst = CcmaInstance::load(embedded_instance_text());
    CHECK(!inst.ready());
    CHECK_THROWS_AS(inst.T(), ValidationError);
    CHECK_THROWS_AS(inst.identity(), ValidationError);
    inst.setup();
    CHECK(inst.ready());
}

TEST_CASE("the data file and the embedded text agree") {
    // the data file lives relative to the source tree; resolved by ctest
    const char* root = std::getenv("CCMA_SOURCE_DIR");
    if (!root) return;  // skipped outside ctest
    CcmaInstance from_file = CcmaInstance::load_file(std::string(root) + "/data/f16_13.instance");
    from_file.setup();
    CHECK(from_file.T() == CcmaInstance::embedded().T());
}
