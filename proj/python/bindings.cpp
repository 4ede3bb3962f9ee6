#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elbp/lbp.hpp"
#include "elbp/rational.hpp"
#include "elbp/spectral.hpp"
#include "elbp/suites.hpp"

namespace py = pybind11;
using namespace elbp;

namespace {

py::list rows_to_list(const Report& r) {
    py::list out;
    for (const CheckRow& row : r.rows) {
        py::dict d;
        d["name"] = row.name;
        d["status"] = status_name(row.status);
        d["residual"] = row.residual;
        d["tol"] = row.tol;
        d["anchor"] = row.anchor;
        d["detail"] = row.detail;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_elbp, m) {
    m.doc() = "Elliptic Laurent biorthogonal polynomials";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());
    py::register_exception<RangeError>(m, "RangeError", base.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
    py::register_exception<UsageError>(m, "UsageError", base.ptr());

    py::class_<Lattice>(m, "Lattice")
        .def_readonly("omega1", &Lattice::omega1)
        .def_readonly("omega3", &Lattice::omega3)
        .def_readonly("eta1", &Lattice::eta1)
        .def_readonly("eta3", &Lattice::eta3)
        .def_readonly("nome", &Lattice::nome_h)
        .def_readonly("modulus_k", &Lattice::modulus_k);
    m.def("make_lattice", &make_lattice, py::arg("omega1"), py::arg("omega3_imag"));
    m.def("sigma", &sigma, py::arg("lattice"), py::arg("z"));
    m.def("legendre_residual", &legendre_residual, py::arg("lattice"));

    py::class_<ModelParams>(m, "ModelParams")
        .def_readonly("lattice", &ModelParams::lat)
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("beta", &ModelParams::beta)
        .def_readonly("gamma", &ModelParams::gamma)
        .def_readonly("w", &ModelParams::w)
        .def_readonly("j", &ModelParams::j)
        .def_readonly("m", &ModelParams::m);
    m.def("make_params", &make_params, py::arg("lattice"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("w"),
          py::arg("j") = 1, py::arg("m") = 0);
    m.def("periodic_gamma", &periodic_gamma, py::arg("lattice"), py::arg("beta"), py::arg("j"), py::arg("m"));

    m.def("moment", &elliptic_moment, py::arg("params"), py::arg("n"));
    m.def(
        "moments",
        [](const ModelParams& p, int N) {
            MomentSeq ms = elliptic_moments(p, N);
            return ms.values;
        },
        py::arg("params"), py::arg("N"), "c_{-N} .. c_N");
    m.def(
        "toeplitz_delta", [](const ModelParams& p, int n, int j) { return toeplitz_delta(elliptic_moments(p, n + std::abs(j) + 1), n, j); },
        py::arg("params"), py::arg("n"), py::arg("j") = 0);
    m.def("closed_d", &closed_d, py::arg("params"), py::arg("n"));
    m.def("closed_b", &closed_b, py::arg("params"), py::arg("n"));
    m.def("h", &h_closed, py::arg("params"), py::arg("n"));
    m.def(
        "P", [](const ModelParams& p, int n) { return closed_P_3E2(p, n).c; }, py::arg("params"), py::arg("n"),
        "monic P_n, coefficients ascending");
    m.def(
        "Q", [](const ModelParams& p, int n) { return closed_Q_3E2(p, n).c; }, py::arg("params"), py::arg("n"));
    m.def(
        "P_from_moments", [](const ModelParams& p, int n) { return det_poly_P(elliptic_moments(p, n + 1), n).c; },
        py::arg("params"), py::arg("n"));
    m.def(
        "fourier_A", [](const ModelParams& p, int n) { return fourier_A_closed(p, n); }, py::arg("params"), py::arg("n"));

    m.def(
        "rat_moment", [](cplx alpha, cplx beta, int n) { return rat_moment(RatParams<cplx>{alpha, beta, false, 0}, n); },
        py::arg("alpha"), py::arg("beta"), py::arg("n"));
    m.def(
        "rat_P", [](cplx alpha, cplx beta, int n) { return rat_P(alpha, beta, n).c; }, py::arg("alpha"), py::arg("beta"),
        py::arg("n"));
    m.def(
        "krall_W", [](cplx alpha, cplx beta, int j, int n) { return krall_W(RatParams<cplx>{alpha, beta, false, j}, n).c; },
        py::arg("alpha"), py::arg("beta"), py::arg("j"), py::arg("n"));
    m.def(
        "krall_ode_residual_exact",
        [](long an, long ad, long bn, long bd, int j, int n) {
            RatParams<Rational> rp{Rational(an, ad), Rational(bn, bd), false, j};
            return residual_norm(krall_ode_residual(rp, n));
        },
        py::arg("alpha_num"), py::arg("alpha_den"), py::arg("beta_num"), py::arg("beta_den"), py::arg("j"), py::arg("n"),
        "max |coefficient| of the ODE residual, computed in exact rationals");

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& suite, int nmax, bool exact) {
            VerifyConfig cfg;
            cfg.nmax = nmax;
            cfg.exact = exact;
            Report r;
            {
                py::gil_scoped_release nogil;
                r = run_suite(suite, cfg);
            }
            return rows_to_list(r);
        },
        py::arg("suite") = "all", py::arg("nmax") = 6, py::arg("exact") = false,
        "run a verification suite on the default parameters; one dict per row");
}
