#include "ccma/gf16.hpp"

#include <stdexcept>

namespace ccma::gf16 {

namespace {

struct Tables {
    Elem exp[kOrder];
    int log[16];
    constexpr Tables() : exp{}, log{} {
        for (int i = 0; i < 16; ++i) log[i] = -1;
        unsigned v = 1;
        for (int k = 0; k < kOrder; ++k) {
            exp[k] = Elem(v);
            log[v] = k;
            v <<= 1;
            if (v & 0x10) v = (v ^ 0x13) & 0xF;  // reduce by a^4 = a + 1
        }
    }
};

constexpr Tables kTables{};

}  // namespace

const Elem exp_table[kOrder] = {
    kTables.exp[0],  kTables.exp[1],  kTables.exp[2],  kTables.exp[3],
    kTables.exp[4],  kTables.exp[5],  kTables.exp[6],  kTables.exp[7],
    kTables.exp[8],  kTables.exp[9],  kTables.exp[10], kTables.exp[11],
    kTables.exp[12], kTables.exp[13], kTables.exp[14]};

const int log_table[16] = {
    kTables.log[0],  kTables.log[1],  kTables.log[2],  kTables.log[3],
    kTables.log[4],  kTables.log[5],  kTables.log[6],  kTables.log[7],
    kTables.log[8],  kTables.log[9],  kTables.log[10], kTables.log[11],
    kTables.log[12], kTables.log[13], kTables.log[14], kTables.log[15]};

Elem inv(Elem x) {
    if (x == 0) throw std::domain_error("inversion of zero");
    return exp_table[(kOrder - log_table[x]) % kOrder];
}

Elem pow(Elem x, std::uint64_t k) {
    if (k == 0) return 1;
    if (x == 0) return 0;
    return exp_table[std::uint64_t(log_table[x]) * (k % kOrder) % kOrder];
}

std::string to_string(Elem x) {
    static const char* digits = "0123456789abcdef";
    return std::string(1, digits[x & 0xF]);
}

Elem parse(const std::string& text) {
    if (text.size() == 1) {
        // a single hex digit is always the nibble, so "a" is 0xA, not the
        // generator; use "a^1" for the generator
        char c = text[0];
        if (c >= '0' && c <= '9') return Elem(c - '0');
        if (c >= 'a' && c <= 'f') return Elem(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return Elem(c - 'A' + 10);
    } else if (text.size() >= 3 && text[0] == 'a' && text[1] == '^') {
        int k = 0;
        for (std::size_t i = 2; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') k = -1;
            if (k < 0) break;
            k = k * 10 + (text[i] - '0');
        }
        if (k >= 0 && k <= 14) return exp_table[k];
    }
    throw std::invalid_argument("not an F16 element: '" + text + "'");
}

}  // namespace ccma::gf16
