#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "g2coh/errors.hpp"
#include "g2coh/fock_oracle.hpp"
#include "g2coh/gaussian_core.hpp"
#include "g2coh/param_map.hpp"
#include "g2coh/sweep.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace g2coh;

namespace {

GaussianStateParams make_state(cplx alpha, cplx xi, double nbar) {
    return {alpha, SqueezeParam::from_complex(xi), nbar};
}

GenerationSpec make_spec(cplx alpha, cplx xi, double nbar, double t) {
    return {make_state(alpha, xi, nbar), t};
}

HamiltonianParams couplings(cplx alpha, cplx xi, double nbar, double t) {
    return hamiltonian_from_state(make_spec(alpha, xi, nbar, t));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed-form and truncated-Fock g2(tau) for displaced squeezed thermal light";

    py::register_exception<UndefinedCoherence>(m, "UndefinedCoherence", PyExc_ArithmeticError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    m.attr("DEFAULT_ORACLE_DIM") = kDefaultOracleDim;

    py::class_<CoherenceSample>(m, "CoherenceSample")
        .def_readonly("tau", &CoherenceSample::tau)
        .def_readonly("r_tau", &CoherenceSample::r_tau)
        .def_readonly("mean_n", &CoherenceSample::mean_n)
        .def_readonly("n_tau", &CoherenceSample::n_tau)
        .def_readonly("s_tau", &CoherenceSample::s_tau)
        .def_readonly("g2", &CoherenceSample::g2)
        .def_property_readonly("A_tau", [](const CoherenceSample& s) { return s.A_tau.value(); })
        .def("__repr__", [](const CoherenceSample& s) {
            std::ostringstream os;
            os << "CoherenceSample(tau=" << s.tau << ", r_tau=" << s.r_tau << ", g2=" << s.g2 << ")";
            return os.str();
        });

    py::class_<OracleValues>(m, "OracleValues")
        .def_readonly("tau", &OracleValues::tau)
        .def_readonly("mean_n0", &OracleValues::mean_n0)
        .def_readonly("mean_n_tau", &OracleValues::mean_n_tau)
        .def_readonly("g2", &OracleValues::g2)
        .def_readonly("tail_mass", &OracleValues::tail_mass);

    py::class_<TruncationReport>(m, "TruncationReport")
        .def_readonly("dim", &TruncationReport::dim)
        .def_readonly("tail_mass", &TruncationReport::tail_mass)
        .def_readonly("converged", &TruncationReport::converged)
        .def_readonly("rel_change", &TruncationReport::rel_change)
        .def_readonly("g2_at_dim", &TruncationReport::g2_at_dim)
        .def_readonly("g2_at_double", &TruncationReport::g2_at_double);

    m.def("r_of_tau", [](cplx c, double tau) { return r_of_tau(c, tau); }, "c"_a, "tau"_a);
    m.def("alpha_of_tau", [](cplx b, cplx c, double tau) { return alpha_of_tau(b, c, tau).value(); }, "b"_a, "c"_a,
          "tau"_a);
    m.def(
        "heisenberg_flow",
        [](cplx b, cplx c, double tau) {
            const auto f = heisenberg_flow(b, c, tau);
            return py::make_tuple(f.cosh_coeff, f.sinh_coeff, f.shift);
        },
        "b"_a, "c"_a, "tau"_a, "Coefficients (u, v, w) of exp(iHt) a exp(-iHt) = u a + v a^dag + w.");

    m.def(
        "hamiltonian_from_state",
        [](cplx alpha, cplx xi, double t) {
            const auto p = couplings(alpha, xi, 0.0, t);
            return py::make_tuple(p.b.value(), p.c.value());
        },
        "alpha"_a, "xi"_a, "t"_a, "Couplings (b, c) generating the state in time t.");
    m.def(
        "state_from_hamiltonian",
        [](cplx b, cplx c, double t) {
            const auto s = state_from_hamiltonian({b, c}, t);
            return py::make_tuple(s.alpha.value(), s.xi.value());
        },
        "b"_a, "c"_a, "t"_a, "(alpha, xi) reached from the thermal state after time t.");

    m.def(
        "g2",
        [](cplx alpha, cplx xi, double nbar, double t, py::array_t<double> tau) {
            const auto spec = make_spec(alpha, xi, nbar, t);
            return py::vectorize([&spec](double x) { return g2(spec, x); })(tau);
        },
        "alpha"_a, "xi"_a, "nbar"_a, "t"_a, "tau"_a, "Closed-form g2; tau may be a scalar or an array.");
    m.def(
        "coherence_sample",
        [](cplx alpha, cplx xi, double nbar, double t, double tau) {
            return coherence_sample(make_spec(alpha, xi, nbar, t), tau);
        },
        "alpha"_a, "xi"_a, "nbar"_a, "t"_a, "tau"_a);
    m.def("mean_photon_number", [](cplx alpha, cplx xi, double nbar) {
        return mean_photon_initial(make_state(alpha, xi, nbar));
    }, "alpha"_a, "xi"_a, "nbar"_a);

    m.def(
        "g2_oracle",
        [](cplx alpha, cplx xi, double nbar, double t, double tau, int dim) {
            return g2_oracle(make_state(alpha, xi, nbar), couplings(alpha, xi, nbar, t), tau, dim);
        },
        "alpha"_a, "xi"_a, "nbar"_a, "t"_a, "tau"_a, "dim"_a = kDefaultOracleDim,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "oracle_values",
        [](cplx alpha, cplx xi, double nbar, double t, const std::vector<double>& taus, int dim) {
            const auto state = make_state(alpha, xi, nbar);
            const OracleEvaluator ev(state.alpha, state.xi, couplings(alpha, xi, nbar, t), dim);
            return ev.evaluate(nbar, taus);
        },
        "alpha"_a, "xi"_a, "nbar"_a, "t"_a, "taus"_a, "dim"_a = kDefaultOracleDim,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "convergence_check",
        [](cplx alpha, cplx xi, double nbar, double t, double tau, int dim) {
            return convergence_check(make_state(alpha, xi, nbar), couplings(alpha, xi, nbar, t), tau, dim);
        },
        "alpha"_a, "xi"_a, "nbar"_a, "t"_a, "tau"_a, "dim"_a = kDefaultOracleDim,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int status = run_cli(args, out, err);
            return py::make_tuple(status, out.str(), err.str());
        },
        "args"_a, "Runs g2sweep in-process; returns (status, stdout, stderr).");
}
