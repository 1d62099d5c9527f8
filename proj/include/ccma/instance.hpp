#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ccma/matrix.hpp"
#include "ccma/oracle.hpp"
#include "ccma/poly.hpp"

namespace ccma {

// n leading blocks of T and T^-1: U1 (n x n), U2 ((n+g-1) x n),
// U3 (n x (n+g-1)), U4 ((n+g-1) x (n+g-1)); V1..V4 the same cut of T^-1.
struct BlockDecomposition {
    Matrix u1, u2, u3, u4;
    Matrix v1, v2, v3, v4;
};

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
    std::string render() const;  // one line per check plus a summary line
};

// A full multiplication-by-interpolation construction: the curve data, the
// printed bases of L(D) and L(2D), and after setup() the evaluation matrix T,
// its inverse, the re-evaluation matrix T1 = T P T^-1, and the identity
// element in normal-basis coordinates.
class CcmaInstance {
public:
    // An empty instance; every accessor throws until load()+setup() ran.
    CcmaInstance() = default;

    // Parses and structurally validates instance text (see data/*.instance
    // for the format).  Derived matrices are not built yet.
    static CcmaInstance load(const std::string& text);
    static CcmaInstance load_file(const std::string& path);

    // The bundled F_16^13 instance with setup() already run (shared, immutable).
    static const CcmaInstance& embedded();

    // Builds T, T^-1, T1 and the identity element.  If the configured
    // evaluation points give a singular T, advances through 27-subsets of the
    // affine points in lexicographic order until one works.
    void setup();
    bool ready() const { return ready_; }

    int n() const { return n_; }
    int g() const { return g_; }
    int q() const { return q_; }
    int dim() const { return 2 * n_ + g_ - 1; }

    const BasePoly& q_poly() const { return q_poly_; }
    const BasePoly& d_poly() const { return d_poly_; }
    const BasePoly& beta_poly() const { return beta_poly_; }
    const std::vector<RationalPoint>& points() const { return points_; }
    const std::vector<int>& eval_points() const { return eval_points_; }  // 1-based
    const std::vector<BasisFunction>& ld_basis() const { return ld_basis_; }
    const std::vector<BasisFunction>& ker_basis() const { return ker_basis_; }

    const Matrix& T() const;
    const Matrix& T_inv() const;
    const Matrix& T1() const;
    const std::vector<gf16::Elem>& identity() const;

    const OracleField& oracle() const;
    const NormalBasisMap& normal_map() const;

    CostLedger& setup_ledger() { return setup_ledger_; }
    const CostLedger& setup_ledger() const { return setup_ledger_; }

    // Runs the six construction checks against the reference field.
    VerifyReport verify() const;

    // Splits T and T^-1 into the eight blocks, checking the four identities
    // and that T1 = [[U1V1, U1V3], [U2V1, U2V3]].  A failure here means the
    // setup produced inconsistent matrices and raises ValidationError.
    BlockDecomposition block_decompose() const;

    // Testing hooks: mutate construction data before setup().
    void replace_q_poly(const BasePoly& q);
    void replace_beta_poly(const BasePoly& beta);

private:
    void require_ready() const;
    bool try_build_t(const std::vector<int>& selection, Matrix& t_out) const;

    int n_ = 0, g_ = 0, q_ = 0;
    std::vector<gf16::Elem> base_poly_bits_;
    BasePoly q_poly_, d_poly_, beta_poly_;
    std::vector<RationalPoint> points_;
    std::vector<int> eval_points_;
    std::vector<BasisFunction> ld_basis_, ker_basis_;

    bool ready_ = false;
    Matrix t_, t_inv_, t1_;
    std::vector<gf16::Elem> identity_;
    std::shared_ptr<OracleField> oracle_;
    std::shared_ptr<NormalBasisMap> normal_map_;
    CostLedger setup_ledger_;
};

}  // namespace ccma
