#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccma/core.hpp"
#include "ccma/exponent.hpp"
#include "ccma/instance.hpp"
#include "ccma/instance_data.hpp"

namespace py = pybind11;

namespace {

ccma::ExponentParams params_or_default(const ccma::CcmaInstance& inst, int r, int u) {
    if (r > 0 && u > 0) return {r, u};
    return ccma::default_params(inst.q(), inst.n());
}

py::dict trace_to_dict(const ccma::ScheduleTrace& trace) {
    py::list rounds;
    for (const auto& r : trace.rounds) {
        py::dict d;
        d["op"] = (r.op == ccma::RoundKind::Hadamard) ? "hadamard" : "matvec";
        d["lanes"] = r.lanes;
        rounds.append(d);
    }
    py::dict out;
    out["rounds"] = rounds;
    out["depth"] = trace.depth();
    out["width"] = trace.width();
    out["bilinear"] = trace.bilinear;
    return out;
}

}  // namespace

PYBIND11_MODULE(_ccma, m) {
    m.doc() = "Multiplication and exponentiation in F_16^13 by interpolation on a genus-2 curve";

    py::class_<ccma::CostLedger>(m, "Ledger")
        .def(py::init<>())
        .def_readonly("bilinear", &ccma::CostLedger::bilinear)
        .def_readonly("scalar_mul", &ccma::CostLedger::scalar_mul)
        .def_readonly("add", &ccma::CostLedger::add)
        .def_property_readonly("depth", &ccma::CostLedger::depth)
        .def_property_readonly("width", &ccma::CostLedger::width)
        .def("total", [](const ccma::CostLedger& l, const std::string& model) {
            return l.total(ccma::parse_model(model));
        })
        .def("report", [](const ccma::CostLedger& l, const std::string& model) {
            return l.report(ccma::parse_model(model));
        });

    py::class_<ccma::CcmaInstance>(m, "Instance")
        .def_static("embedded", [] { return ccma::CcmaInstance::embedded(); })
        .def_static("load",
                    [](const std::string& text) {
                        ccma::CcmaInstance inst = ccma::CcmaInstance::load(text);
                        inst.setup();
                        return inst;
                    })
        .def_static("load_file",
                    [](const std::string& path) {
                        ccma::CcmaInstance inst = ccma::CcmaInstance::load_file(path);
                        inst.setup();
                        return inst;
                    })
        .def_property_readonly("n", &ccma::CcmaInstance::n)
        .def_property_readonly("g", &ccma::CcmaInstance::g)
        .def_property_readonly("q", &ccma::CcmaInstance::q)
        .def_property_readonly("dim", &ccma::CcmaInstance::dim)
        .def_property_readonly("identity", &ccma::CcmaInstance::identity)
        .def("parse", [](const ccma::CcmaInstance& inst,
                         const std::string& text) { return ccma::parse_element(inst, text); })
        .def("format", [](const ccma::CcmaInstance&, const ccma::ExtElem& x) {
            return ccma::format_element(x);
        })
        .def(
            "mul",
            [](const ccma::CcmaInstance& inst, const ccma::ExtElem& x, const ccma::ExtElem& y,
               ccma::CostLedger* ledger) { return ccma::mul(inst, x, y, ledger); },
            py::arg("x"), py::arg("y"), py::arg("ledger") = nullptr)
        .def(
            "mul3",
            [](const ccma::CcmaInstance& inst, const ccma::ExtElem& x, const ccma::ExtElem& y,
               const ccma::ExtElem& z, ccma::CostLedger* ledger) {
                return ccma::mul3(inst, x, y, z, ledger);
            },
            py::arg("x"), py::arg("y"), py::arg("z"), py::arg("ledger") = nullptr)
        .def(
            "batch_mul",
            [](const ccma::CcmaInstance& inst,
               const std::vector<std::pair<ccma::ExtElem, ccma::ExtElem>>& pairs,
               const std::string& strategy, ccma::CostLedger* ledger) {
                return ccma::batch_mul(inst, pairs, ccma::parse_strategy(strategy), ledger);
            },
            py::arg("pairs"), py::arg("strategy") = "schoolbook", py::arg("ledger") = nullptr)
        .def(
            "pow",
            [](const ccma::CcmaInstance& inst, const ccma::ExtElem& x, std::uint64_t k,
               const std::string& algo, int r, int u, ccma::CostLedger* ledger) {
                if (ccma::parse_algorithm(algo) == ccma::PowAlgorithm::SquareMultiply)
                    return ccma::pow_square_multiply(inst, x, k, ledger);
                return ccma::pow_vzg(inst, x, k, params_or_default(inst, r, u), ledger);
            },
            py::arg("x"), py::arg("k"), py::arg("algo") = "sm", py::arg("r") = 0,
            py::arg("u") = 0, py::arg("ledger") = nullptr)
        .def("verify",
             [](const ccma::CcmaInstance& inst) {
                 py::list out;
                 for (const auto& check : inst.verify().checks) {
                     py::dict d;
                     d["name"] = check.name;
                     d["pass"] = check.pass;
                     d["detail"] = check.detail;
                     out.append(d);
                 }
                 return out;
             })
        .def("verify_ok",
             [](const ccma::CcmaInstance& inst) { return inst.verify().all_pass(); });

    m.def("frobenius", &ccma::frobenius, py::arg("x"), py::arg("shifts") = 1);
    m.def("default_params", [](int q, int n) {
        auto p = ccma::default_params(q, n);
        return py::make_tuple(p.r, p.u);
    });
    m.def(
        "simulate_trace",
        [](int q, int n, int g, std::uint64_t k, const std::string& algo, int r, int u) {
            ccma::ExponentParams params{r, u};
            return trace_to_dict(
                ccma::simulate_trace(q, n, g, k, ccma::parse_algorithm(algo), params));
        },
        py::arg("q"), py::arg("n"), py::arg("g"), py::arg("k"), py::arg("algo") = "vzg",
        py::arg("r") = 1, py::arg("u") = 1);
    m.def("vzg_depth_bound", &ccma::vzg_depth_bound);
    m.def("embedded_instance_text", [] { return std::string(ccma::embedded_instance_text()); });
}
