#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "ccma/core.hpp"
#include "ccma/errors.hpp"
#include "ccma/exponent.hpp"
#include "ccma/instance.hpp"

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;

struct Options {
    std::string instance_path;
    std::string out_dir;
    std::string model;
    std::string algorithm = "sm";
    std::string strategy = "schoolbook";
    std::string exponent = "0";
    std::vector<std::string> elements;
    bool show_trace = false;
    int r = 0, u = 0;
    int window = 0;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
};

const ccma::CcmaInstance& resolve_instance(const Options& opt, ccma::CcmaInstance& storage) {
    if (opt.instance_path.empty()) return ccma::CcmaInstance::embedded();
    storage = ccma::CcmaInstance::load_file(opt.instance_path);
    storage.setup();
    return storage;
}

void print_bench(const ccma::CostLedger& ledger, const std::string& model) {
    if (!model.empty()) std::cout << ledger.report(ccma::parse_model(model)) << '\n';
}

int cmd_build(const Options& opt) {
    ccma::CcmaInstance storage;
    const ccma::CcmaInstance& inst = resolve_instance(opt, storage);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    auto dump = [&](const std::string& name, const ccma::Matrix& m) {
        fs::path path = fs::path(opt.out_dir) / name;
        std::ofstream os(path);
        if (!os) throw ccma::IoError("cannot write " + path.string());
        ccma::write_matrix(os, m);
        if (!os.flush()) throw ccma::IoError("write failed for " + path.string());
    };
    dump("T.mat", inst.T());
    dump("T_inv.mat", inst.T_inv());
    dump("T1.mat", inst.T1());

    ccma::VerifyReport report = inst.verify();
    std::cout << report.render();
    return report.all_pass() ? 0 : kExitVerifyFailure;
}

int cmd_mul(const Options& opt) {
    ccma::CcmaInstance storage;
    const ccma::CcmaInstance& inst = resolve_instance(opt, storage);
    ccma::CostLedger ledger;
    auto x = ccma::parse_element(inst, opt.elements.at(0));
    auto y = ccma::parse_element(inst, opt.elements.at(1));
    ccma::ExtElem result;
    if (opt.window > 0) {
        // table-driven forward maps: lookups and additions only
        ccma::WindowTables tabs = ccma::build_window_tables(inst.T(), opt.window, inst.n());
        ccma::EvalVec zx = ccma::apply_window_tables(tabs, x, &ledger);
        ccma::EvalVec zy = ccma::apply_window_tables(tabs, y, &ledger);
        ledger.begin_round(1);
        ccma::EvalVec u = ccma::hadamard(zx, zy, &ledger);
        result = ccma::mat_vec_top_rows(inst.T_inv(), inst.n(), u, &ledger);
    } else {
        result = ccma::mul(inst, x, y, &ledger);
    }
    std::cout << ccma::format_element(result) << '\n';
    print_bench(ledger, opt.model);
    return 0;
}

int cmd_mul3(const Options& opt) {
    ccma::CcmaInstance storage;
    const ccma::CcmaInstance& inst = resolve_instance(opt, storage);
    ccma::CostLedger ledger;
    auto x = ccma::parse_element(inst, opt.elements.at(0));
    auto y = ccma::parse_element(inst, opt.elements.at(1));
    auto z = ccma::parse_element(inst, opt.elements.at(2));
    std::cout << ccma::format_element(ccma::mul3(inst, x, y, z, &ledger)) << '\n';
    print_bench(ledger, opt.model);
    return 0;
}

int cmd_pow(const Options& opt) {
    ccma::CcmaInstance storage;
    const ccma::CcmaInstance& inst = resolve_instance(opt, storage);
    ccma::CostLedger ledger;
    ccma::ScheduleTrace trace;

    std::uint64_t modulus = 0;
    {
        std::uint64_t acc = 1;
        for (int i = 0; i < inst.n(); ++i) acc *= std::uint64_t(inst.q());
        modulus = acc - 1;
    }
    std::uint64_t k = ccma::reduce_exponent_decimal(opt.exponent, modulus);
    // distinguish "multiple of the group order" from zero
    if (k == 0 && opt.exponent.find_first_not_of('0') != std::string::npos) k = modulus;

    auto x = ccma::parse_element(inst, opt.elements.at(0));
    ccma::ExtElem result;
    if (ccma::parse_algorithm(opt.algorithm) == ccma::PowAlgorithm::SquareMultiply) {
        result = ccma::pow_square_multiply(inst, x, k, &ledger, &trace);
    } else {
        ccma::ExponentParams params = (opt.r > 0 && opt.u > 0)
                                          ? ccma::ExponentParams{opt.r, opt.u}
                                          : ccma::default_params(inst.q(), inst.n());
        result = ccma::pow_vzg(inst, x, k, params, &ledger, &trace);
    }
    std::cout << ccma::format_element(result) << '\n';
    if (opt.show_trace) std::cout << trace.render();
    print_bench(ledger, opt.model);
    return 0;
}

int cmd_batch(const Options& opt) {
    ccma::CcmaInstance storage;
    const ccma::CcmaInstance& inst = resolve_instance(opt, storage);
    if (opt.elements.size() < 2 || opt.elements.size() % 2 != 0)
        throw ccma::ValidationError("batch needs an even number of elements (x1 y1 x2 y2 ...)");
    std::vector<std::pair<ccma::ExtElem, ccma::ExtElem>> pairs;
    for (std::size_t i = 0; i < opt.elements.size(); i += 2)
        pairs.emplace_back(ccma::parse_element(inst, opt.elements[i]),
                           ccma::parse_element(inst, opt.elements[i + 1]));
    ccma::CostLedger ledger;
    auto results = ccma::batch_mul(inst, pairs, ccma::parse_strategy(opt.strategy), &ledger);
    for (const auto& r : results) std::cout << ccma::format_element(r) << '\n';
    print_bench(ledger, opt.model);
    return 0;
}

int cmd_verify(const Options& opt) {
    ccma::CcmaInstance storage;
    const ccma::CcmaInstance& inst = resolve_instance(opt, storage);
    bool all_ok = true;
    std::mt19937_64 rng(opt.seed);
    auto random_elem = [&]() {
        ccma::ExtElem e(inst.n());
        for (auto& c : e) c = ccma::gf16::Elem(rng() & 0xF);
        return e;
    };
    auto suite = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << "suite " << name << ": " << (ok ? "PASS" : "FAIL");
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << '\n';
        all_ok = all_ok && ok;
    };

    ccma::VerifyReport report = inst.verify();
    std::cout << report.render();
    suite("instance checks", report.all_pass());

    const auto& field = inst.oracle();
    const auto& nm = inst.normal_map();
    std::uint64_t order = field.group_order();

    if (opt.trials > 0) {
        bool ok = true;
        std::string detail;
        for (std::uint64_t t = 0; t < opt.trials && ok; ++t) {
            auto x = random_elem(), y = random_elem();
            auto got = ccma::mul(inst, x, y);
            auto want = nm.to_normal(field.mul(nm.from_normal(x), nm.from_normal(y)));
            if (got != want) {
                ok = false;
                detail = "mismatch at trial " + std::to_string(t);
            }
        }
        suite("oracle equivalence", ok, detail);

        ok = true;
        for (std::uint64_t t = 0; t < opt.trials && ok; ++t) {
            auto x = random_elem(), y = random_elem(), z = random_elem();
            ok = ccma::mul(inst, x, y) == ccma::mul(inst, y, x);
            ok = ok && ccma::mul(inst, ccma::mul(inst, x, y), z) ==
                           ccma::mul(inst, x, ccma::mul(inst, y, z));
            ok = ok && ccma::mul(inst, x, ccma::add(y, z)) ==
                           ccma::add(ccma::mul(inst, x, y), ccma::mul(inst, x, z));
            ok = ok && ccma::mul(inst, x, inst.identity()) == x;
        }
        suite("field axioms", ok);

        ok = true;
        for (std::uint64_t t = 0; t < opt.trials && ok; ++t) {
            auto x = random_elem();
            ok = ccma::pow_square_multiply(inst, x, std::uint64_t(inst.q())) ==
                 ccma::frobenius(x, 1);
            auto y = random_elem();
            ok = ok && ccma::mul(inst, ccma::frobenius(x, 1), ccma::frobenius(y, 1)) ==
                           ccma::frobenius(ccma::mul(inst, x, y), 1);
        }
        suite("frobenius shift law", ok);
    }

    {
        ccma::CostLedger one_mul;
        ccma::mul(inst, inst.identity(), inst.identity(), &one_mul);
        ccma::CostLedger one_mul3;
        ccma::mul3(inst, inst.identity(), inst.identity(), inst.identity(), &one_mul3);
        std::uint64_t dim = std::uint64_t(inst.dim());
        std::uint64_t n = std::uint64_t(inst.n()), g = std::uint64_t(inst.g());
        bool ok = one_mul.bilinear == dim &&
                  one_mul.total(ccma::CostModel::S1) == 6 * n * n + n * (3 * g - 1) + g - 1 &&
                  one_mul3.bilinear == 2 * dim &&
                  one_mul3.total(ccma::CostModel::S1) ==
                      12 * n * n + n * (8 * g - 4) + g * g - 1;
        std::cout << "  mul:  " << one_mul.report(ccma::CostModel::S1) << '\n';
        std::cout << "        breakdown: forward 2x" << n * dim << ", hadamard " << dim
                  << ", back " << n * dim << '\n';
        std::cout << "  mul3: " << one_mul3.report(ccma::CostModel::S1) << '\n';
        std::cout << "        breakdown: forward 3x" << n * dim << ", hadamard 2x" << dim
                  << ", reevaluation " << dim * dim << ", back " << n * dim << '\n';
        suite("operation counts", ok);
    }

    (void)order;
    return all_ok ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-field arithmetic in F_16^13 via curve interpolation"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--instance", opt.instance_path,
                   "instance file (default: the bundled F_16^13 instance)");

    auto* build = app.add_subcommand("build", "run setup, write T/T_inv/T1, verify");
    build->add_option("--out", opt.out_dir, "output directory")->required();

    auto* mul = app.add_subcommand("mul", "multiply two elements");
    mul->add_option("elements", opt.elements, "two elements as hex nibbles")
        ->expected(2)
        ->required();
    mul->add_option("--bench", opt.model, "append a cost report (NS|S1|S2)");
    mul->add_option("--window", opt.window,
                    "apply the forward maps through width-l lookup tables");

    auto* mul3 = app.add_subcommand("mul3", "multiply three elements");
    mul3->add_option("elements", opt.elements, "three elements as hex nibbles")
        ->expected(3)
        ->required();
    mul3->add_option("--bench", opt.model, "append a cost report (NS|S1|S2)");

    auto* pow = app.add_subcommand("pow", "raise an element to a power");
    pow->add_option("elements", opt.elements, "base element as hex nibbles")
        ->expected(1)
        ->required();
    pow->add_option("--k", opt.exponent, "exponent (decimal, any size)")->required();
    pow->add_option("--algo", opt.algorithm, "sm|vzg (default sm)");
    pow->add_option("--r", opt.r, "block width for vzg");
    pow->add_option("--u", opt.u, "chunk width for vzg");
    pow->add_flag("--trace", opt.show_trace, "print the round schedule");
    pow->add_option("--bench", opt.model, "append a cost report (NS|S1|S2)");

    auto* batch = app.add_subcommand("batch", "multiply many pairs at once");
    batch->add_option("elements", opt.elements, "x1 y1 x2 y2 ...")->required();
    batch->add_option("--strategy", opt.strategy, "schoolbook|strassen");
    batch->add_option("--bench", opt.model, "append a cost report (NS|S1|S2)");

    auto* verify = app.add_subcommand("verify", "construction checks and property suites");
    verify->add_option("--trials", opt.trials, "randomized trials per suite");
    verify->add_option("--seed", opt.seed, "seed for the randomized suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(opt);
        if (mul->parsed()) return cmd_mul(opt);
        if (mul3->parsed()) return cmd_mul3(opt);
        if (pow->parsed()) return cmd_pow(opt);
        if (batch->parsed()) return cmd_batch(opt);
        if (verify->parsed()) return cmd_verify(opt);
    } catch (const ccma::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ccma::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const ccma::SingularError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return 0;
}
