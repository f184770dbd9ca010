#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qkdlab/attack.hpp"
#include "qkdlab/channel.hpp"
#include "qkdlab/keyrate.hpp"
#include "qkdlab/remap_device.hpp"
#include "qkdlab/strategies.hpp"

namespace py = pybind11;
using namespace qkdlab;

namespace {

SystemParams make_params(double alpha, double length_km, double eta_bob, double e_detector,
                         double p_dark, double mu, double f_ec) {
    SystemParams p{alpha, length_km, eta_bob, e_detector, p_dark, mu, f_ec, std::nullopt};
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_qkdlab, m) {
    m.doc() = "Phase-remapping attack analysis for bidirectional QKD systems";

    py::enum_<Protocol>(m, "Protocol")
        .value("bb84", Protocol::bb84)
        .value("sarg04", Protocol::sarg04);
    py::enum_<ResendMode>(m, "ResendMode")
        .value("fixed", ResendMode::fixed_resend)
        .value("optimized", ResendMode::optimized_resend);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init(&make_params), py::arg("alpha") = 0.21, py::arg("length_km") = 0.0,
             py::arg("eta_bob") = 0.08, py::arg("e_detector") = 0.0, py::arg("p_dark") = 1e-7,
             py::arg("mu") = 8e-4, py::arg("f_ec") = 1.16)
        .def_readwrite("alpha", &SystemParams::alpha)
        .def_readwrite("length_km", &SystemParams::length_km)
        .def_readwrite("eta_bob", &SystemParams::eta_bob)
        .def_readwrite("e_detector", &SystemParams::e_detector)
        .def_readwrite("p_dark", &SystemParams::p_dark)
        .def_readwrite("mu", &SystemParams::mu)
        .def_readwrite("f_ec", &SystemParams::f_ec);

    py::class_<LinkObservables>(m, "LinkObservables")
        .def_readonly("q_signal", &LinkObservables::q_signal)
        .def_readonly("e_signal", &LinkObservables::e_signal);

    py::class_<KeyRate>(m, "KeyRate")
        .def_readonly("rate", &KeyRate::rate)
        .def_readonly("raw", &KeyRate::raw);

    py::class_<StrategyParams>(m, "StrategyParams")
        .def(py::init([](double delta, double mismatch, double y0, double gamma, double mu) {
                 return StrategyParams{delta, mismatch, y0, gamma, mu};
             }),
             py::arg("delta"), py::arg("mismatch") = 1.0, py::arg("y0") = 1e-7,
             py::arg("gamma") = 1.0, py::arg("mu") = 8e-4)
        .def_readwrite("delta", &StrategyParams::delta)
        .def_readwrite("mismatch", &StrategyParams::mismatch)
        .def_readwrite("y0", &StrategyParams::y0)
        .def_readwrite("gamma", &StrategyParams::gamma)
        .def_readwrite("mu", &StrategyParams::mu);

    m.def("h2", &h2, py::arg("p"));
    m.def(
        "sagnac_phase",
        [](double n, double dl, double f) {
            return sagnac_phase({n, dl, f});
        },
        py::arg("refractive_index"), py::arg("fiber_length_diff"), py::arg("aom_freq"));
    m.def(
        "plugplay_phase",
        [](double rise_time, double nominal_phase, double time_shift) {
            return plugplay_phase({rise_time, nominal_phase, time_shift});
        },
        py::arg("rise_time"), py::arg("nominal_phase"), py::arg("time_shift"));

    m.def("suboptimal_qber", &suboptimal_qber, py::arg("delta"));
    m.def(
        "optimal_curve",
        [](Protocol proto, ResendMode mode, double mismatch, const std::vector<double>& grid) {
            std::vector<std::tuple<double, double, double, double>> out;
            for (const CurvePoint& p : optimal_curve(proto, mode, mismatch, grid)) {
                out.emplace_back(p.delta, p.qber, p.conclusive_prob, p.transmittance);
            }
            return out;
        },
        py::arg("protocol"), py::arg("mode"), py::arg("mismatch"), py::arg("delta_grid"),
        "Minimum attack QBER, conclusive probability, and transmittance per delta");

    m.def("overall_eta", &overall_eta, py::arg("params"));
    m.def("normal_observables", &normal_observables, py::arg("params"));
    m.def(
        "run_post",
        [](const LinkObservables& obs, double mu, double f_ec, int n_bsteps) {
            return run_post(obs, mu, f_ec, n_bsteps);
        },
        py::arg("observables"), py::arg("mu"), py::arg("f_ec"), py::arg("n_bsteps") = 0);

    m.def("strategy_one", &strategy_one, py::arg("params"), py::arg("delta"));
    m.def("strategy_two", &strategy_two, py::arg("params"), py::arg("delta"),
          py::arg("mismatch"));
    m.def("strategy_three", &strategy_three, py::arg("params"), py::arg("strategy_params"));
    m.def(
        "match_normal",
        [](const SystemParams& p, double mismatch, double tol)
            -> std::optional<std::tuple<double, double, double, double>> {
            const auto r = match_normal(p, mismatch, tol);
            if (!r) return std::nullopt;
            return std::make_tuple(r->params.delta, r->params.y0, r->params.gamma, r->rate.rate);
        },
        py::arg("params"), py::arg("mismatch"), py::arg("tol") = 0.10,
        "Returns (delta, y0, gamma, rate) or None when no grid point matches");

    m.attr("SECURITY_LABEL") = kSecurityLabel;
}
