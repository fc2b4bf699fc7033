#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wpk/commands.hpp"
#include "wpk/config.hpp"
#include "wpk/hnls.hpp"
#include "wpk/normal_form.hpp"
#include "wpk/spectral.hpp"

namespace py = pybind11;
using namespace wpk;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

ComplexField to_field(const CArray& a, double la, double lb) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2D complex array");
    Grid g(int(a.shape(0)), int(a.shape(1)), la, lb);
    ComplexField f(g);
    std::copy(a.data(), a.data() + g.size(), f.v.begin());
    return f;
}

CArray from_field(const ComplexField& f) {
    CArray out({f.grid.na, f.grid.nb});
    std::copy(f.v.begin(), f.v.end(), out.mutable_data());
    return out;
}

// (na, nb, 4) real array <-> quaternion field
QuaternionField to_qfield(const RArray& a, double la, double lb) {
    if (a.ndim() != 3 || a.shape(2) != 4) throw std::invalid_argument("expected an (na, nb, 4) array");
    Grid g(int(a.shape(0)), int(a.shape(1)), la, lb);
    QuaternionField f(g);
    const double* p = a.data();
    for (std::size_t n = 0; n < g.size(); ++n) f.data[n] = {p[4 * n], p[4 * n + 1], p[4 * n + 2], p[4 * n + 3]};
    return f;
}

RArray from_qfield(const QuaternionField& f) {
    RArray out({f.grid.na, f.grid.nb, 4});
    double* p = out.mutable_data();
    for (std::size_t n = 0; n < f.size(); ++n) {
        const Quaternion& q = f.data[n];
        p[4 * n] = q.q0;
        p[4 * n + 1] = q.q1;
        p[4 * n + 2] = q.q2;
        p[4 * n + 3] = q.q3;
    }
    return out;
}

py::dict checks_dict(const std::vector<CheckResult>& checks) {
    py::dict d;
    for (const auto& c : checks) {
        py::dict e;
        e["value"] = c.value;
        e["threshold"] = c.threshold;
        e["relation"] = c.relation;
        e["pass"] = c.pass;
        d[py::str(c.name)] = e;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_wpk, m) {
    m.doc() = "wave packet approximation toolkit";

    py::class_<Quaternion>(m, "Quaternion")
        .def(py::init<double, double, double, double>(), py::arg("q0") = 0.0, py::arg("q1") = 0.0, py::arg("q2") = 0.0, py::arg("q3") = 0.0)
        .def_readwrite("q0", &Quaternion::q0)
        .def_readwrite("q1", &Quaternion::q1)
        .def_readwrite("q2", &Quaternion::q2)
        .def_readwrite("q3", &Quaternion::q3)
        .def("__mul__", [](const Quaternion& a, const Quaternion& b) { return a * b; })
        .def("__add__", [](const Quaternion& a, const Quaternion& b) { return a + b; })
        .def("__sub__", [](const Quaternion& a, const Quaternion& b) { return a - b; })
        .def("__abs__", [](const Quaternion& a) { return wpk::abs(a); })
        .def("conj", [](const Quaternion& a) { return wpk::conj(a); })
        .def("dagger", [](const Quaternion& a) { return wpk::dagger(a); })
        .def("as_tuple", [](const Quaternion& a) { return py::make_tuple(a.q0, a.q1, a.q2, a.q3); })
        .def("__repr__", [](const Quaternion& a) {
            return "Quaternion(" + std::to_string(a.q0) + ", " + std::to_string(a.q1) + ", " + std::to_string(a.q2) + ", " +
                   std::to_string(a.q3) + ")";
        });
    m.def("exp_j", &exp_j, py::arg("theta"));
    m.def("triple_product_pair", &triple_product_pair, py::arg("f"), py::arg("g"), py::arg("v"));

    m.def("flat_hilbert", [](const RArray& a, double la, double lb) { return from_qfield(flat_hilbert(to_qfield(a, la, lb))); },
          py::arg("field"), py::arg("la"), py::arg("lb"));
    m.def("mode_filter", [](const RArray& a, double la, double lb, double k) { return from_qfield(mode_filter(to_qfield(a, la, lb), k)); },
          py::arg("field"), py::arg("la"), py::arg("lb"), py::arg("k"));
    m.def("fractional_derivative",
          [](const RArray& a, double la, double lb, double q) { return from_qfield(fractional_derivative(to_qfield(a, la, lb), q)); },
          py::arg("field"), py::arg("la"), py::arg("lb"), py::arg("q"));

    m.def("hnls_coefficients", [](double k) {
        auto c = hnls_rhs_coefficients(PacketParams::make(k, 0.1));
        return py::make_tuple(c.a, c.b, c.c);
    }, py::arg("k"));
    m.def("evolve_A", [](const CArray& A, double length, double k, double T, double dt) {
        return from_field(evolve_A({to_field(A, length, length), 0.0}, PacketParams::make(k, 0.1), T, dt).values);
    }, py::arg("A"), py::arg("length"), py::arg("k"), py::arg("T"), py::arg("dt"));
    m.def("mass", [](const CArray& A, double length) { return mass(to_field(A, length, length)); }, py::arg("A"), py::arg("length"));
    m.def("hamiltonian", [](const CArray& A, double length, double k) { return hamiltonian(to_field(A, length, length), PacketParams::make(k, 0.1)); },
          py::arg("A"), py::arg("length"), py::arg("k"));

    m.def("resonance_denominator", [](std::array<double, 2> xi, std::array<double, 2> xp) { return resonance_denominator(xi, xp); },
          py::arg("xi"), py::arg("xi_prime"));
    m.def("kernel_values", [](double k, std::array<double, 2> xp) {
        KernelValue v = kernel_values(NormalFormKernel::particular1(k), xp);
        return py::make_tuple(v.Q0, v.Q1);
    }, py::arg("k"), py::arg("xi_prime"));

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ResonanceError>(m, "ResonanceError", PyExc_ArithmeticError);

    m.def("command_names", &command_names);
    m.def("run", [](const std::string& command, const std::string& config_path, const std::vector<std::string>& overrides) {
        RunConfig c = config_path.empty() ? parse_config("", command, overrides, "<none>") : load_config(config_path, command, overrides);
        CommandResult r;
        {
            py::gil_scoped_release release;
            r = run_command(c);
        }
        py::dict d;
        d["command"] = r.command;
        d["csv"] = r.csv_path;
        d["plot"] = r.plt_path;
        d["summary"] = r.summary_path;
        d["checks"] = checks_dict(r.checks);
        d["ok"] = r.ok();
        return d;
    }, py::arg("command"), py::arg("config") = "", py::arg("overrides") = std::vector<std::string>{});
}
