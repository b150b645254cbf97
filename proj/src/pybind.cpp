#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "wedge/analysis.hpp"
#include "wedge/front_tracking.hpp"
#include "wedge/initial_data.hpp"
#include "wedge/riemann.hpp"
#include "wedge/types.hpp"
#include "wedge/wave_curves.hpp"

namespace py = pybind11;

namespace {

wedge::Family family_from(int f) {
    if (f == 1) return wedge::Family::One;
    if (f == 2) return wedge::Family::Two;
    throw wedge::domain_error("family must be 1 or 2");
}

py::list fan_waves(const wedge::RiemannFan& fan) {
    py::list waves;
    for (std::size_t i = 0; i < fan.waves.size(); ++i) {
        const wedge::FanWave& w = fan.waves[i];
        py::dict d;
        d["family"] = w.wave.family == wedge::Family::One ? 1 : 2;
        d["kind"] = wedge::to_string(w.wave.kind);
        d["alpha"] = w.wave.alpha;
        d["xi_lo"] = w.xi_lo;
        d["xi_hi"] = w.xi_hi;
        d["right"] = py::make_tuple(fan.constant_states[i + 1].rho,
                                    fan.constant_states[i + 1].v);
        waves.append(d);
    }
    return waves;
}

}  // namespace

PYBIND11_MODULE(wedgecpp, m) {
    m.doc() = "exact Riemann solvers and wave-front tracking for the wedge systems";

    py::class_<wedge::State>(m, "State")
        .def(py::init([](double rho, double v) { return wedge::State{rho, v}; }),
             py::arg("rho") = 1.0, py::arg("v") = 0.0)
        .def_readwrite("rho", &wedge::State::rho)
        .def_readwrite("v", &wedge::State::v)
        .def("__repr__", [](const wedge::State& s) {
            return "State(rho=" + std::to_string(s.rho) + ", v=" + std::to_string(s.v) + ")";
        });

    py::class_<wedge::ModelParams>(m, "ModelParams")
        .def(py::init([](double a_inf, double epsilon, double tau2, double b0) {
                 wedge::ModelParams p{a_inf, epsilon, tau2, b0};
                 wedge::validate(p);
                 return p;
             }),
             py::arg("a_inf") = 1.0, py::arg("epsilon") = 0.0, py::arg("tau2") = 0.0,
             py::arg("b0") = 0.0)
        .def_readwrite("a_inf", &wedge::ModelParams::a_inf)
        .def_readwrite("epsilon", &wedge::ModelParams::epsilon)
        .def_readwrite("tau2", &wedge::ModelParams::tau2)
        .def_readwrite("b0", &wedge::ModelParams::b0)
        .def("mu_norm", &wedge::ModelParams::mu_norm)
        .def("is_limit", &wedge::ModelParams::is_limit);

    m.def("bernoulli_B", [](const wedge::State& s, const wedge::ModelParams& p) {
        return wedge::bernoulli_B(s, p);
    });
    m.def("psi",
          [](const wedge::State& s, const wedge::ModelParams& p) { return wedge::psi(s, p); });
    m.def("u_from_state", [](const wedge::State& s, const wedge::ModelParams& p) {
        return wedge::u_from_state(s, p);
    });
    m.def("eigenvalues", [](const wedge::State& s, const wedge::ModelParams& p) {
        const auto lam = wedge::eigenvalues(s, p);
        return py::make_tuple(lam[0], lam[1]);
    });
    m.def(
        "phi",
        [](double alpha, int family, const wedge::State& left, const wedge::ModelParams& p) {
            return wedge::phi(alpha, family_from(family), left, p);
        },
        py::arg("alpha"), py::arg("family"), py::arg("left"), py::arg("params"));

    m.def(
        "solve_interior",
        [](const wedge::State& ul, const wedge::State& ur, const wedge::ModelParams& p) {
            const wedge::RiemannFan fan = wedge::solve_interior(ul, ur, p);
            py::dict out;
            out["alpha1"] = fan.alpha(wedge::Family::One);
            out["alpha2"] = fan.alpha(wedge::Family::Two);
            out["waves"] = fan_waves(fan);
            return out;
        },
        py::arg("left"), py::arg("right"), py::arg("params"));

    m.def(
        "solve_boundary",
        [](const wedge::State& ul, const wedge::ModelParams& p) {
            const wedge::RiemannFan fan = wedge::solve_boundary(ul, p);
            py::dict out;
            out["alpha1"] = fan.alpha(wedge::Family::One);
            out["boundary_state"] = py::make_tuple(fan.constant_states.back().rho,
                                                   fan.constant_states.back().v);
            out["waves"] = fan_waves(fan);
            return out;
        },
        py::arg("left"), py::arg("params"));

    m.def(
        "optimal_rate_cell",
        [](double a_inf, double eps, double tau2, double delta, double x) {
            std::vector<double> es, ts;
            if (eps > 0.0) es.push_back(eps);
            if (tau2 > 0.0) ts.push_back(tau2);
            const wedge::OptimalRateResult res =
                wedge::optimal_rate_experiment(a_inf, delta, es, ts, x);
            const wedge::OptimalRateCell& cell =
                eps > 0.0 ? res.eps_cells.front() : res.tau2_cells.front();
            py::dict out;
            out["alpha1"] = cell.alpha1;
            out["beta1"] = cell.beta1;
            out["sigma_limit"] = cell.sigma_limit;
            out["sigma_full"] = cell.sigma_full;
            out["l1"] = cell.l1;
            out["u_error"] = cell.u_err;
            out["coeff"] = cell.coeff;
            return out;
        },
        py::arg("a_inf"), py::arg("eps"), py::arg("tau2"), py::arg("delta") = 1e-3,
        py::arg("x") = 1.0);

    m.def(
        "track",
        [](const std::string& name, const std::map<std::string, double>& params,
           std::uint64_t seed, const wedge::ModelParams& p, int nu, double x) {
            const wedge::Profile u0 = wedge::builtin_initial_data(name, params, seed);
            wedge::SchemeParams sp;
            sp.nu = nu;
            wedge::Tracker tr(p, sp, wedge::DomainBounds{});
            tr.set_initial(u0);
            tr.advance_to(x);
            const wedge::Profile prof = tr.profile();
            const wedge::Diagnostics d = wedge::diagnostics(prof);
            py::list bps, rho, v;
            for (double b : prof.breakpoints) bps.append(b);
            for (const wedge::State& s : prof.values) {
                rho.append(s.rho);
                v.append(s.v);
            }
            py::dict out;
            out["x"] = prof.x;
            out["breakpoints"] = bps;
            out["rho"] = rho;
            out["v"] = v;
            out["tv"] = d.tv;
            out["np_strength"] = d.np_total_strength;
            out["events"] = tr.events().size();
            return out;
        },
        py::arg("name"), py::arg("params"), py::arg("seed"), py::arg("model"), py::arg("nu") = 8,
        py::arg("x") = 1.0);
}
