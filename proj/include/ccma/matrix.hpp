#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccma/costmodel.hpp"
#include "ccma/gf16.hpp"

namespace ccma {

using Vec = std::vector<gf16::Elem>;

// Dense row-major matrix over F16.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<gf16::Elem> e;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), e(std::size_t(r) * std::size_t(c), 0) {}

    gf16::Elem& at(int r, int c) { return e[std::size_t(r) * cols + c]; }
    gf16::Elem at(int r, int c) const { return e[std::size_t(r) * cols + c]; }

    static Matrix identity(int n);
    bool operator==(const Matrix&) const = default;
};

enum class MulStrategy { Schoolbook, Strassen };

MulStrategy parse_strategy(const std::string& name);

// Charges rows*cols scalar multiplications and rows*(cols-1) additions.
Vec mat_vec(const Matrix& m, const Vec& v, CostLedger* ledger = nullptr);

// m * (v_1..v_k, 0, ..., 0): touches and charges only the first k = v.size()
// columns (rows*k multiplications, rows*(k-1) additions).
Vec mat_vec_prefix_cols(const Matrix& m, const Vec& v, CostLedger* ledger = nullptr);

// First rows_out rows of m * v.
Vec mat_vec_top_rows(const Matrix& m, int rows_out, const Vec& v, CostLedger* ledger = nullptr);

Matrix mat_mul(const Matrix& a, const Matrix& b, MulStrategy strategy = MulStrategy::Schoolbook,
               CostLedger* ledger = nullptr);

// Strassen recursion cutoff (matrices of this size or smaller go schoolbook).
inline constexpr int kStrassenCutoff = 16;

// Gauss-Jordan inverse; throws SingularError carrying the rank found.
Matrix invert(const Matrix& m, CostLedger* ledger = nullptr);

// a * b computed over an L x L block partition (inputs zero-padded up to
// multiples of L); every block product uses `strategy`.
Matrix block_mul(const Matrix& a, const Matrix& b, int block_size,
                 MulStrategy strategy = MulStrategy::Schoolbook, CostLedger* ledger = nullptr);

// Precomputed products of a fixed matrix with every value of l-coordinate
// chunks of the first input_len coordinates.  Applying them costs no
// multiplications, only table lookups and vector additions.
struct WindowTables {
    int window = 0;     // chunk width l
    int input_len = 0;  // number of leading coordinates covered
    int out_len = 0;
    std::vector<std::vector<Vec>> tables;  // tables[i][chunk] = m * embed(chunk at offset i*l)
};

inline constexpr std::size_t kWindowEntryCap = std::size_t(1) << 24;

WindowTables build_window_tables(const Matrix& m, int window, int input_len,
                                 std::size_t max_entries = kWindowEntryCap);

// Equals mat_vec(m, x padded with zeros); charges only additions.
Vec apply_window_tables(const WindowTables& t, const Vec& x, CostLedger* ledger = nullptr);

// Text form: "matrix <rows> <cols>" then one line of hex nibbles per row.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

}  // namespace ccma
