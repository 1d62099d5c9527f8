#include "ccma/exponent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ccma/errors.hpp"

namespace ccma {

namespace {

// q^n - 1 when it fits in 64 bits, otherwise 0 (no reduction possible or needed).
std::uint64_t group_modulus(int q, int n) {
    std::uint64_t acc = 1;
    for (int i = 0; i < n; ++i) {
        if (acc > UINT64_MAX / std::uint64_t(q)) return 0;
        acc *= std::uint64_t(q);
    }
    return acc - 1;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)(a) * b % m);
}

int ceil_log2(std::uint64_t v) {
    int bits = 0;
    std::uint64_t p = 1;
    while (p < v) {
        p <<= 1;
        ++bits;
    }
    return bits;
}

}  // namespace

ExponentParams default_params(int q, int n) {
    if (n < 2) throw std::invalid_argument("default_params requires n >= 2");
    if (q < 2) throw std::invalid_argument("default_params requires q >= 2");
    double lq = std::log(double(n)) / std::log(double(q));
    double llq = std::log(lq) / std::log(double(q));
    ExponentParams p;
    int u = int(std::floor(lq - 2.0 * llq));
    int r = int(std::ceil(lq * lq - 2.0 * lq * llq));
    p.u = std::max(u, 1);
    p.r = std::max(r, p.u);
    return p;
}

std::uint64_t ExponentPlan::recompose_mod(std::uint64_t modulus) const {
    std::uint64_t qu = 1;
    for (int i = 0; i < u; ++i) qu = mulmod(qu, std::uint64_t(q), modulus);
    std::uint64_t qr = 1;
    for (int i = 0; i < r; ++i) qr = mulmod(qr, std::uint64_t(q), modulus);

    std::uint64_t acc = 0;
    std::uint64_t outer = 1;  // q^(r i) mod modulus
    for (int i = 0; i < s; ++i) {
        std::uint64_t inner_acc = 0;
        std::uint64_t inner = 1;  // q^(u j) mod modulus
        for (int j = 0; j < t; ++j) {
            inner_acc = (inner_acc + mulmod(digits[i][j] % modulus, inner, modulus)) % modulus;
            inner = mulmod(inner, qu, modulus);
        }
        acc = (acc + mulmod(inner_acc, outer, modulus)) % modulus;
        outer = mulmod(outer, qr, modulus);
    }
    return acc;
}

ExponentPlan recode(std::uint64_t k, int q, int r, int u, int n) {
    if (u < 1) throw std::invalid_argument("recode: u must be at least 1");
    if (r < u) throw std::invalid_argument("recode: u must not exceed r");
    if (q < 2 || n < 1) throw std::invalid_argument("recode: bad field parameters");

    ExponentPlan plan;
    plan.q = q;
    plan.n = n;
    plan.r = r;
    plan.u = u;
    plan.s = (n + r - 1) / r;
    plan.t = (r + u - 1) / u;

    std::uint64_t modulus = group_modulus(q, n);
    plan.k = modulus ? k % modulus : k;

    // base-q digits, least significant first
    std::vector<std::uint32_t> base_digits(std::size_t(n), 0);
    std::uint64_t rest = plan.k;
    for (int m = 0; m < n && rest; ++m) {
        base_digits[m] = std::uint32_t(rest % std::uint64_t(q));
        rest /= std::uint64_t(q);
    }
    if (rest) throw std::invalid_argument("recode: exponent does not fit in n digits");

    plan.digits.assign(std::size_t(plan.s), std::vector<std::uint32_t>(std::size_t(plan.t), 0));
    for (int i = 0; i < plan.s; ++i)
        for (int j = 0; j < plan.t; ++j) {
            std::uint32_t value = 0;
            std::uint32_t scale = 1;
            for (int m = 0; m < u; ++m) {
                int in_block = u * j + m;
                int global = r * i + in_block;
                if (in_block >= r || global >= n) break;
                value += base_digits[global] * scale;
                scale *= std::uint32_t(q);
            }
            plan.digits[i][j] = value;
        }
    return plan;
}

std::size_t ScheduleTrace::depth() const {
    std::size_t d = 0;
    for (const auto& r : rounds) d += (r.op == RoundKind::Hadamard) ? 1 : 0;
    return d;
}

std::uint32_t ScheduleTrace::width() const {
    std::uint32_t w = 0;
    for (const auto& r : rounds) w = std::max(w, r.lanes);
    return w;
}

std::string ScheduleTrace::render() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rounds.size(); ++i)
        os << "round " << i << ": lanes=" << rounds[i].lanes
           << " op=" << (rounds[i].op == RoundKind::Hadamard ? "hadamard" : "matvec") << '\n';
    os << "depth=" << depth() << " width=" << width() << " bilinear=" << bilinear << '\n';
    return os.str();
}

PowAlgorithm parse_algorithm(const std::string& name) {
    if (name == "sm") return PowAlgorithm::SquareMultiply;
    if (name == "vzg") return PowAlgorithm::VonZurGathen;
    throw std::invalid_argument("unknown algorithm: '" + name + "' (expected sm or vzg)");
}

namespace {

void note_round(RoundKind op, std::uint32_t lanes, int dim, CostLedger* ledger,
                ScheduleTrace* trace) {
    if (op == RoundKind::Hadamard && ledger) ledger->begin_round(lanes);
    if (trace) {
        trace->rounds.push_back({op, lanes});
        if (op == RoundKind::Hadamard) trace->bilinear += std::uint64_t(lanes) * dim;
    }
}

}  // namespace

ExtElem pow_square_multiply(const CcmaInstance& inst, const ExtElem& x, std::uint64_t k,
                            CostLedger* ledger, ScheduleTrace* trace) {
    if (int(x.size()) != inst.n()) throw ValidationError("pow: wrong coordinate count");
    if (is_zero(x)) return k == 0 ? inst.identity() : ExtElem(x.size(), 0);

    std::uint64_t modulus = group_modulus(inst.q(), inst.n());
    if (modulus) k %= modulus;
    if (k == 0) return inst.identity();

    int dim = inst.dim();
    EvalVec squares = mat_vec_prefix_cols(inst.T(), x, ledger);
    note_round(RoundKind::MatVec, 1, dim, ledger, trace);

    EvalVec acc;
    bool acc_set = false;
    int top = 63;
    while (!((k >> top) & 1)) --top;

    for (int i = 0; i <= top; ++i) {
        bool bit = (k >> i) & 1;
        bool do_acc = bit && acc_set;
        bool do_square = i < top;
        std::uint32_t lanes = std::uint32_t(do_acc) + std::uint32_t(do_square);
        if (lanes) note_round(RoundKind::Hadamard, lanes, dim, ledger, trace);

        EvalVec next_acc;
        if (do_acc) next_acc = mat_vec(inst.T1(), hadamard(acc, squares, ledger), ledger);
        EvalVec next_squares;
        if (do_square)
            next_squares = mat_vec(inst.T1(), hadamard(squares, squares, ledger), ledger);

        if (do_acc)
            acc = std::move(next_acc);
        else if (bit) {
            acc = squares;
            acc_set = true;
        }
        if (do_square) squares = std::move(next_squares);
    }

    ExtElem out = mat_vec_top_rows(inst.T_inv(), inst.n(), acc, ledger);
    note_round(RoundKind::MatVec, 1, dim, ledger, trace);
    return out;
}

namespace {

// Multiplication without the per-call round marker: exponentiation schedules
// own the round log.
ExtElem mul_counted(const CcmaInstance& inst, const ExtElem& a, const ExtElem& b,
                    CostLedger* ledger) {
    if (!ledger) return mul(inst, a, b);
    CostLedger sub;
    ExtElem out = mul(inst, a, b, &sub);
    ledger->merge_counters(sub);
    return out;
}

std::uint64_t checked_pow_u64(int q, int u, std::size_t cap) {
    std::uint64_t acc = 1;
    for (int i = 0; i < u; ++i) {
        if (acc > cap / std::uint64_t(q))
            throw std::invalid_argument("power table exceeds the entry cap");
        acc *= std::uint64_t(q);
    }
    return acc;
}

}  // namespace

std::vector<ExtElem> vzg_precompute(const CcmaInstance& inst, const ExtElem& x, int u,
                                    CostLedger* ledger, ScheduleTrace* trace,
                                    std::size_t max_entries) {
    if (u < 1) throw std::invalid_argument("vzg_precompute: u must be at least 1");
    std::uint64_t size = checked_pow_u64(inst.q(), u, max_entries);

    std::vector<ExtElem> table(size);
    table[0] = inst.identity();
    if (size > 1) table[1] = x;

    std::uint64_t top = size - 1;  // highest power computed
    int levels = ceil_log2(top);
    int dim = inst.dim();
    for (int level = 1; level <= levels; ++level) {
        std::uint64_t from = (std::uint64_t(1) << (level - 1)) + 1;
        std::uint64_t to = std::min(std::uint64_t(1) << level, top);
        if (to < from) continue;
        note_round(RoundKind::Hadamard, std::uint32_t(to - from + 1), dim, ledger, trace);
        for (std::uint64_t j = from; j <= to; ++j)
            table[j] = mul_counted(inst, table[(j + 1) / 2], table[j / 2], ledger);
    }
    return table;
}

ExtElem pow_vzg(const CcmaInstance& inst, const ExtElem& x, std::uint64_t k,
                ExponentParams params, CostLedger* ledger, ScheduleTrace* trace) {
    if (int(x.size()) != inst.n()) throw ValidationError("pow: wrong coordinate count");
    if (is_zero(x)) return k == 0 ? inst.identity() : ExtElem(x.size(), 0);

    ExponentPlan plan = recode(k, inst.q(), params.r, params.u, inst.n());
    if (plan.k == 0) return inst.identity();

    int dim = inst.dim();
    std::vector<ExtElem> table = vzg_precompute(inst, x, plan.u, ledger, trace);

    // steps 2-3: shift the digit powers into place (free) and fold each block
    // sequentially, all blocks in parallel lanes
    std::vector<ExtElem> blocks(std::size_t(plan.s));
    for (int i = 0; i < plan.s; ++i) blocks[i] = table[plan.digits[i][0]];
    for (int j = 1; j < plan.t; ++j) {
        note_round(RoundKind::Hadamard, std::uint32_t(plan.s), dim, ledger, trace);
        for (int i = 0; i < plan.s; ++i) {
            ExtElem shifted = frobenius(table[plan.digits[i][j]], unsigned(plan.u) * unsigned(j));
            blocks[i] = mul_counted(inst, blocks[i], shifted, ledger);
        }
    }

    // step 4: rotate each block to its position (free)
    for (int i = 0; i < plan.s; ++i)
        blocks[i] = frobenius(blocks[i], unsigned(plan.r) * unsigned(i));

    // step 5: left-balanced binary multiplication tree
    while (blocks.size() > 1) {
        std::size_t pairs = blocks.size() / 2;
        note_round(RoundKind::Hadamard, std::uint32_t(pairs), dim, ledger, trace);
        std::vector<ExtElem> next;
        next.reserve(pairs + 1);
        for (std::size_t p = 0; p < pairs; ++p)
            next.push_back(mul_counted(inst, blocks[2 * p], blocks[2 * p + 1], ledger));
        if (blocks.size() % 2) next.push_back(blocks.back());
        blocks = std::move(next);
    }
    return blocks[0];
}

ScheduleTrace simulate_trace(int q, int n, int g, std::uint64_t k, PowAlgorithm algorithm,
                             ExponentParams params) {
    ScheduleTrace trace;
    int dim = 2 * n + g - 1;

    if (algorithm == PowAlgorithm::SquareMultiply) {
        std::uint64_t modulus = group_modulus(q, n);
        if (modulus) k %= modulus;
        if (k == 0) return trace;
        note_round(RoundKind::MatVec, 1, dim, nullptr, &trace);
        int top = 63;
        while (!((k >> top) & 1)) --top;
        bool acc_set = false;
        for (int i = 0; i <= top; ++i) {
            bool bit = (k >> i) & 1;
            std::uint32_t lanes = std::uint32_t(bit && acc_set) + std::uint32_t(i < top);
            if (lanes) note_round(RoundKind::Hadamard, lanes, dim, nullptr, &trace);
            if (bit) acc_set = true;
        }
        note_round(RoundKind::MatVec, 1, dim, nullptr, &trace);
        return trace;
    }

    ExponentPlan plan = recode(k, q, params.r, params.u, n);
    if (plan.k == 0) return trace;

    std::uint64_t top = 1;
    for (int i = 0; i < plan.u; ++i) top *= std::uint64_t(q);
    top -= 1;
    int levels = ceil_log2(top);
    for (int level = 1; level <= levels; ++level) {
        std::uint64_t from = (std::uint64_t(1) << (level - 1)) + 1;
        std::uint64_t to = std::min(std::uint64_t(1) << level, top);
        if (to < from) continue;
        note_round(RoundKind::Hadamard, std::uint32_t(to - from + 1), dim, nullptr, &trace);
    }
    for (int j = 1; j < plan.t; ++j)
        note_round(RoundKind::Hadamard, std::uint32_t(plan.s), dim, nullptr, &trace);
    std::size_t count = std::size_t(plan.s);
    while (count > 1) {
        note_round(RoundKind::Hadamard, std::uint32_t(count / 2), dim, nullptr, &trace);
        count = count / 2 + count % 2;
    }
    return trace;
}

double vzg_depth_bound(int q, int n) {
    double lq = std::log(double(n)) / std::log(double(q));
    double lq2 = lq * lq;
    double llq = std::log(lq) / std::log(double(q));
    double t1 = std::ceil(std::log2(double(n) / lq2));
    double t2 = std::ceil((lq + 1.0) / (lq - 2.0 * llq - 1.0));
    double t3 = std::ceil(lq);
    double inner = std::log(double(n) / lq2) / std::log(double(q));
    double t4 = std::ceil(std::log2(double(n) / (inner * lq) + 1.0));
    return t1 + t2 + t3 + t4;
}

std::uint64_t reduce_exponent_decimal(const std::string& text, std::uint64_t modulus) {
    if (text.empty()) throw std::invalid_argument("empty exponent");
    if (modulus == 0) throw std::invalid_argument("zero modulus");
    unsigned __int128 acc = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("exponent must be a nonnegative decimal");
        acc = (acc * 10 + unsigned(c - '0')) % modulus;
    }
    return std::uint64_t(acc);
}

}  // namespace ccma
