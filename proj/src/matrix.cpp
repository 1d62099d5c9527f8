#include "ccma/matrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ccma/errors.hpp"

namespace ccma {

using gf16::Elem;

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MulStrategy parse_strategy(const std::string& name) {
    if (name == "schoolbook") return MulStrategy::Schoolbook;
    if (name == "strassen") return MulStrategy::Strassen;
    throw std::invalid_argument("unknown strategy: '" + name + "'");
}

Vec mat_vec(const Matrix& m, const Vec& v, CostLedger* ledger) {
    if (int(v.size()) != m.cols)
        throw ValidationError("mat_vec dimension mismatch: " + std::to_string(m.cols) +
                              " cols vs vector of " + std::to_string(v.size()));
    Vec out(m.rows, 0);
    for (int r = 0; r < m.rows; ++r) {
        Elem acc = 0;
        const Elem* row = &m.e[std::size_t(r) * m.cols];
        for (int c = 0; c < m.cols; ++c) acc = gf16::add(acc, gf16::mul(row[c], v[c]));
        out[r] = acc;
    }
    if (ledger) {
        ledger->charge_scalar_mul(std::uint64_t(m.rows) * m.cols);
        ledger->charge_add(std::uint64_t(m.rows) * (m.cols - 1));
    }
    return out;
}

Vec mat_vec_prefix_cols(const Matrix& m, const Vec& v, CostLedger* ledger) {
    int k = int(v.size());
    if (k > m.cols) throw ValidationError("mat_vec_prefix_cols: vector longer than column count");
    Vec out(m.rows, 0);
    for (int r = 0; r < m.rows; ++r) {
        Elem acc = 0;
        const Elem* row = &m.e[std::size_t(r) * m.cols];
        for (int c = 0; c < k; ++c) acc = gf16::add(acc, gf16::mul(row[c], v[c]));
        out[r] = acc;
    }
    if (ledger) {
        ledger->charge_scalar_mul(std::uint64_t(m.rows) * k);
        if (k > 0) ledger->charge_add(std::uint64_t(m.rows) * (k - 1));
    }
    return out;
}

Vec mat_vec_top_rows(const Matrix& m, int rows_out, const Vec& v, CostLedger* ledger) {
    if (int(v.size()) != m.cols) throw ValidationError("mat_vec_top_rows dimension mismatch");
    if (rows_out > m.rows) throw ValidationError("mat_vec_top_rows: more rows than available");
    Vec out(rows_out, 0);
    for (int r = 0; r < rows_out; ++r) {
        Elem acc = 0;
        const Elem* row = &m.e[std::size_t(r) * m.cols];
        for (int c = 0; c < m.cols; ++c) acc = gf16::add(acc, gf16::mul(row[c], v[c]));
        out[r] = acc;
    }
    if (ledger) {
        ledger->charge_scalar_mul(std::uint64_t(rows_out) * m.cols);
        ledger->charge_add(std::uint64_t(rows_out) * (m.cols - 1));
    }
    return out;
}

namespace {

Matrix schoolbook_mul(const Matrix& a, const Matrix& b, CostLedger* ledger) {
    Matrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            Elem aik = a.at(i, k);
            for (int j = 0; j < b.cols; ++j)
                out.at(i, j) = gf16::add(out.at(i, j), gf16::mul(aik, b.at(k, j)));
        }
    if (ledger) {
        ledger->charge_scalar_mul(std::uint64_t(a.rows) * a.cols * b.cols);
        ledger->charge_add(std::uint64_t(a.rows) * b.cols * (a.cols - 1));
    }
    return out;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

Matrix pad_to(const Matrix& m, int size) {
    Matrix out(size, size);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out.at(r, c) = m.at(r, c);
    return out;
}

Matrix sub_block(const Matrix& m, int r0, int c0, int size) {
    Matrix out(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) out.at(r, c) = m.at(r0 + r, c0 + c);
    return out;
}

// In characteristic 2 addition and subtraction coincide.
Matrix mat_add(const Matrix& a, const Matrix& b, CostLedger* ledger) {
    Matrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = gf16::add(a.e[i], b.e[i]);
    if (ledger) ledger->charge_add(a.e.size());
    return out;
}

Matrix strassen_square(const Matrix& a, const Matrix& b, CostLedger* ledger) {
    int n = a.rows;
    if (n <= kStrassenCutoff) return schoolbook_mul(a, b, ledger);
    int h = n / 2;
    Matrix a11 = sub_block(a, 0, 0, h), a12 = sub_block(a, 0, h, h);
    Matrix a21 = sub_block(a, h, 0, h), a22 = sub_block(a, h, h, h);
    Matrix b11 = sub_block(b, 0, 0, h), b12 = sub_block(b, 0, h, h);
    Matrix b21 = sub_block(b, h, 0, h), b22 = sub_block(b, h, h, h);

    Matrix p1 = strassen_square(mat_add(a11, a22, ledger), mat_add(b11, b22, ledger), ledger);
    Matrix p2 = strassen_square(mat_add(a21, a22, ledger), b11, ledger);
    Matrix p3 = strassen_square(a11, mat_add(b12, b22, ledger), ledger);
    Matrix p4 = strassen_square(a22, mat_add(b21, b11, ledger), ledger);
    Matrix p5 = strassen_square(mat_add(a11, a12, ledger), b22, ledger);
    Matrix p6 = strassen_square(mat_add(a21, a11, ledger), mat_add(b11, b12, ledger), ledger);
    Matrix p7 = strassen_square(mat_add(a12, a22, ledger), mat_add(b21, b22, ledger), ledger);

    Matrix c11 = mat_add(mat_add(p1, p4, ledger), mat_add(p5, p7, ledger), ledger);
    Matrix c12 = mat_add(p3, p5, ledger);
    Matrix c21 = mat_add(p2, p4, ledger);
    Matrix c22 = mat_add(mat_add(p1, p2, ledger), mat_add(p3, p6, ledger), ledger);

    Matrix out(n, n);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < h; ++c) {
            out.at(r, c) = c11.at(r, c);
            out.at(r, c + h) = c12.at(r, c);
            out.at(r + h, c) = c21.at(r, c);
            out.at(r + h, c + h) = c22.at(r, c);
        }
    return out;
}

}  // namespace

Matrix mat_mul(const Matrix& a, const Matrix& b, MulStrategy strategy, CostLedger* ledger) {
    if (a.cols != b.rows)
        throw ValidationError("mat_mul dimension mismatch: " + std::to_string(a.cols) + " vs " +
                              std::to_string(b.rows));
    if (strategy == MulStrategy::Schoolbook) return schoolbook_mul(a, b, ledger);

    int size = next_pow2(std::max({a.rows, a.cols, b.cols}));
    if (size <= kStrassenCutoff) return schoolbook_mul(a, b, ledger);
    Matrix pa = pad_to(a, size);
    Matrix pb = pad_to(b, size);
    Matrix pc = strassen_square(pa, pb, ledger);
    Matrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < b.cols; ++c) out.at(r, c) = pc.at(r, c);
    return out;
}

Matrix invert(const Matrix& m, CostLedger* ledger) {
    if (m.rows != m.cols) throw ValidationError("invert: matrix is not square");
    int n = m.rows;
    Matrix work = m;
    Matrix inv = Matrix::identity(n);
    int rank = 0;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (work.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw SingularError(rank, "singular matrix");
        if (pivot != rank) {
            for (int c = 0; c < n; ++c) {
                std::swap(work.e[std::size_t(pivot) * n + c], work.e[std::size_t(rank) * n + c]);
                std::swap(inv.e[std::size_t(pivot) * n + c], inv.e[std::size_t(rank) * n + c]);
            }
        }
        Elem scale = gf16::inv(work.at(rank, col));
        if (scale != 1) {
            for (int c = 0; c < n; ++c) {
                work.at(rank, c) = gf16::mul(work.at(rank, c), scale);
                inv.at(rank, c) = gf16::mul(inv.at(rank, c), scale);
            }
            if (ledger) ledger->charge_scalar_mul(2u * n);
        }
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            Elem f = work.at(r, col);
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                work.at(r, c) = gf16::add(work.at(r, c), gf16::mul(f, work.at(rank, c)));
                inv.at(r, c) = gf16::add(inv.at(r, c), gf16::mul(f, inv.at(rank, c)));
            }
            if (ledger) {
                ledger->charge_scalar_mul(2u * n);
                ledger->charge_add(2u * n);
            }
        }
        ++rank;
    }
    return inv;
}

Matrix block_mul(const Matrix& a, const Matrix& b, int block_size, MulStrategy strategy,
                 CostLedger* ledger) {
    if (a.cols != b.rows) throw ValidationError("block_mul dimension mismatch");
    if (block_size < 1) throw std::invalid_argument("block_mul: block size must be positive");
    int L = block_size;
    auto round_up = [L](int v) { return (v + L - 1) / L * L; };
    int pr = round_up(a.rows), pk = round_up(a.cols), pc = round_up(b.cols);

    Matrix pa(pr, pk), pb(pk, pc);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c) pa.at(r, c) = a.at(r, c);
    for (int r = 0; r < b.rows; ++r)
        for (int c = 0; c < b.cols; ++c) pb.at(r, c) = b.at(r, c);

    Matrix acc(pr, pc);
    for (int bi = 0; bi < pr / L; ++bi)
        for (int bj = 0; bj < pc / L; ++bj)
            for (int bk = 0; bk < pk / L; ++bk) {
                Matrix prod =
                    mat_mul(sub_block(pa, bi * L, bk * L, L), sub_block(pb, bk * L, bj * L, L),
                            strategy, ledger);
                for (int r = 0; r < L; ++r)
                    for (int c = 0; c < L; ++c)
                        acc.at(bi * L + r, bj * L + c) =
                            gf16::add(acc.at(bi * L + r, bj * L + c), prod.at(r, c));
                if (ledger) ledger->charge_add(std::uint64_t(L) * L);
            }

    Matrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < b.cols; ++c) out.at(r, c) = acc.at(r, c);
    return out;
}

WindowTables build_window_tables(const Matrix& m, int window, int input_len,
                                 std::size_t max_entries) {
    if (window < 1 || window > input_len)
        throw std::invalid_argument("window must satisfy 1 <= l <= input length");
    if (input_len > m.cols) throw ValidationError("window tables: input length exceeds columns");

    int num_tables = (input_len + window - 1) / window;
    std::size_t total = 0;
    for (int i = 0; i < num_tables; ++i) {
        int len = std::min(window, input_len - i * window);
        std::size_t entries = 1;
        for (int j = 0; j < len; ++j) {
            entries *= 16;
            if (entries > max_entries) break;
        }
        total += entries;
        if (total > max_entries)
            throw std::invalid_argument("window table size exceeds the memory cap");
    }

    WindowTables t;
    t.window = window;
    t.input_len = input_len;
    t.out_len = m.rows;
    t.tables.resize(num_tables);
    for (int i = 0; i < num_tables; ++i) {
        int offset = i * window;
        int len = std::min(window, input_len - offset);
        std::size_t entries = std::size_t(1) << (4 * len);
        t.tables[i].resize(entries);
        for (std::size_t v = 0; v < entries; ++v) {
            Vec col(m.rows, 0);
            std::size_t rem = v;
            for (int j = 0; j < len; ++j) {
                Elem digit = Elem(rem & 0xF);
                rem >>= 4;
                if (digit == 0) continue;
                for (int r = 0; r < m.rows; ++r)
                    col[r] = gf16::add(col[r], gf16::mul(m.at(r, offset + j), digit));
            }
            t.tables[i][v] = std::move(col);
        }
    }
    return t;
}

Vec apply_window_tables(const WindowTables& t, const Vec& x, CostLedger* ledger) {
    if (int(x.size()) != t.input_len)
        throw ValidationError("apply_window_tables: input length mismatch");
    Vec out(t.out_len, 0);
    for (std::size_t i = 0; i < t.tables.size(); ++i) {
        int offset = int(i) * t.window;
        int len = std::min(t.window, t.input_len - offset);
        std::size_t chunk = 0;
        for (int j = len - 1; j >= 0; --j) chunk = (chunk << 4) | x[offset + j];
        const Vec& entry = t.tables[i][chunk];
        for (int r = 0; r < t.out_len; ++r) out[r] = gf16::add(out[r], entry[r]);
    }
    if (ledger && t.tables.size() > 1)
        ledger->charge_add(std::uint64_t(t.tables.size() - 1) * t.out_len);
    return out;
}

void write_matrix(std::ostream& os, const Matrix& m) {
    os << "matrix " << m.rows << ' ' << m.cols << '\n';
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) os << gf16::to_string(m.at(r, c));
        os << '\n';
    }
}

Matrix read_matrix(std::istream& is) {
    std::string tag;
    int rows = 0, cols = 0;
    if (!(is >> tag >> rows >> cols) || tag != "matrix" || rows < 0 || cols < 0)
        throw ValidationError("bad matrix header");
    Matrix m(rows, cols);
    std::string line;
    std::getline(is, line);
    for (int r = 0; r < rows; ++r) {
        if (!std::getline(is, line) || int(line.size()) < cols)
            throw ValidationError("truncated matrix row " + std::to_string(r + 1));
        for (int c = 0; c < cols; ++c) m.at(r, c) = gf16::parse(std::string(1, line[c]));
    }
    return m;
}

}  // namespace ccma
