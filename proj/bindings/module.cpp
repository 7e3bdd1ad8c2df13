/// @file module.cpp
/// @brief pybind11 bindings exposing the main operations: grids, fields,
///        fractional operators, norms, and the verification suites.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "odfrac/field_io.hpp"
#include "odfrac/norms.hpp"
#include "odfrac/operators.hpp"
#include "odfrac/runner.hpp"
#include "odfrac/testlib.hpp"
#include "odfrac/verify.hpp"

namespace py = pybind11;
using namespace odfrac;

namespace {

py::array_t<double> scalar_to_numpy(const ScalarField& f) {
    std::vector<py::ssize_t> shape;
    if (f.grid.dim == 1) {
        shape = {static_cast<py::ssize_t>(f.values.size())};
    } else {
        const py::ssize_t N = f.grid.points_per_axis;
        shape = {N, N};
    }
    py::array_t<double> a(shape);
    std::memcpy(a.request().ptr, f.values.data(), f.values.size() * sizeof(double));
    return a;
}

ScalarField scalar_from_numpy(const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.size() != g.node_count())
        throw std::invalid_argument("value array size does not match the grid");
    ScalarField f = zero_scalar(g);
    std::copy(a.data(), a.data() + a.size(), f.values.begin());
    return f;
}

py::array_t<double> od_to_numpy(const OffDiagonalField& f) {
    const py::ssize_t K = f.grid.node_count();
    py::array_t<double> a(std::vector<py::ssize_t>{K, K});
    double* p = static_cast<double*>(a.request().ptr);
    for (py::ssize_t i = 0; i < K; ++i)
        for (py::ssize_t j = 0; j < K; ++j) p[i * K + j] = f.value(i, j);
    return a;
}

OffDiagonalField od_from_numpy(const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    const std::int64_t K = g.node_count();
    if (a.ndim() != 2 || a.shape(0) != K || a.shape(1) != K)
        throw std::invalid_argument("pair array must be K x K for this grid");
    return antisymmetrize(g, std::span<const double>(a.data(), static_cast<std::size_t>(K * K)));
}

}  // namespace

PYBIND11_MODULE(odfrac, m) {
    m.doc() = "discrete nonlocal fractional-gradient calculus";

    py::class_<GridSpec>(m, "GridSpec")
        .def_readonly("dim", &GridSpec::dim)
        .def_readonly("half_width", &GridSpec::half_width)
        .def_readonly("points_per_axis", &GridSpec::points_per_axis)
        .def_readonly("spacing", &GridSpec::spacing)
        .def_readonly("axis_nodes", &GridSpec::axis_nodes)
        .def_readonly("axis_weights", &GridSpec::axis_weights)
        .def("node_count", &GridSpec::node_count)
        .def("weight", &GridSpec::weight)
        .def("coords", &GridSpec::coords)
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(dim=" + std::to_string(g.dim) +
                   ", L=" + std::to_string(g.half_width) +
                   ", N=" + std::to_string(g.points_per_axis) + ")";
        });

    m.def("make_grid", &make_grid, py::arg("dim"), py::arg("half_width"),
          py::arg("points_per_axis"));

    py::class_<ScalarField>(m, "ScalarField")
        .def_readonly("grid", &ScalarField::grid)
        .def_property_readonly("values", &scalar_to_numpy);

    py::class_<OffDiagonalField>(m, "OffDiagonalField")
        .def_readonly("grid", &OffDiagonalField::grid)
        .def("value", &OffDiagonalField::value)
        .def("dense", &od_to_numpy, "dense K x K antisymmetric matrix");

    m.def("scalar_field", &scalar_from_numpy, py::arg("grid"), py::arg("values"));
    m.def("od_field", &od_from_numpy, py::arg("grid"), py::arg("pair_values"),
          "antisymmetrized off-diagonal field from a dense K x K array");

    // test-function specs
    py::class_<ScalarFnSpec>(m, "ScalarFnSpec")
        .def("label", &ScalarFnSpec::label)
        .def("schwartz_class", &ScalarFnSpec::schwartz_class);
    m.def("gaussian", &ScalarFnSpec::gaussian, py::arg("center"), py::arg("width"),
          py::arg("amplitude"));
    m.def("poly_gaussian", &ScalarFnSpec::poly_gaussian, py::arg("degree"),
          py::arg("width"));
    m.def("bump", &ScalarFnSpec::bump, py::arg("center"), py::arg("radius"));
    m.def("indicator", &ScalarFnSpec::indicator, py::arg("lo"), py::arg("hi"));
    m.def("constant", &ScalarFnSpec::constant, py::arg("c"));
    m.def("linear", &ScalarFnSpec::linear);

    py::class_<OdFnSpec>(m, "OdFnSpec").def("label", &OdFnSpec::label);
    m.def("disjoint_bumps", &OdFnSpec::disjoint_bumps, py::arg("b"), py::arg("c"));
    m.def("separated_pair", &OdFnSpec::separated_pair, py::arg("f"), py::arg("g"));
    m.def("cutoff_gradient", &OdFnSpec::cutoff_gradient, py::arg("u"), py::arg("s"),
          py::arg("delta"));

    m.def("sample_scalar", &sample_scalar, py::arg("spec"), py::arg("grid"));
    m.def("sample_od", &sample_od, py::arg("spec"), py::arg("grid"));
    m.def("decay_exponent", &decay_exponent, py::arg("u"), py::arg("tail_fraction"));

    // pairings and operators
    m.def("pair_scalar", &pair_scalar);
    m.def("pair_od", &pair_od);
    m.def("frac_gradient", &frac_gradient, py::arg("u"), py::arg("s"));
    m.def("frac_divergence", &frac_divergence, py::arg("G"), py::arg("s"));
    m.def(
        "mollify_scalar",
        [](const ScalarField& u, double epsilon, const std::string& shape) {
            Mollifier mm{shape == "bump" ? Mollifier::Shape::Bump
                                         : Mollifier::Shape::Gaussian,
                         epsilon};
            return mollify_scalar(u, mm);
        },
        py::arg("u"), py::arg("epsilon"), py::arg("shape") = "gaussian");
    m.def(
        "mollify_od",
        [](const OffDiagonalField& F, double epsilon, const std::string& shape) {
            Mollifier mm{shape == "bump" ? Mollifier::Shape::Bump
                                         : Mollifier::Shape::Gaussian,
                         epsilon};
            return mollify_od(F, mm);
        },
        py::arg("F"), py::arg("epsilon"), py::arg("shape") = "gaussian");
    m.def("frac_laplacian_integral", &frac_laplacian_integral, py::arg("u"), py::arg("s"));
    m.def(
        "frac_laplacian_spectral",
        [](const ScalarField& u, double s, int pad) {
            return frac_laplacian_spectral(u, s, pad);
        },
        py::arg("u"), py::arg("s"), py::arg("pad") = 8);

    // norms
    m.def("lp_norm", &lp_norm, py::arg("u"), py::arg("p"));
    m.def("lp_od_norm", &lp_od_norm, py::arg("F"), py::arg("p"));
    m.def("gagliardo_seminorm", &gagliardo_seminorm, py::arg("u"), py::arg("s"),
          py::arg("p"));
    m.def("dsq_functional", &dsq_functional, py::arg("u"), py::arg("s"), py::arg("q"));
    m.def("wspq_norm", &wspq_norm, py::arg("u"), py::arg("s"), py::arg("p"),
          py::arg("q"));
    m.def("best_constant_shift", &best_constant_shift, py::arg("u"), py::arg("q"));
    m.def("holder_seminorm", &holder_seminorm, py::arg("u"), py::arg("alpha"));
    m.def(
        "cube_poincare_ratio",
        [](const ScalarField& u, std::array<int, 2> lo, std::array<int, 2> hi, double s,
           double p, double q) {
            CubeSpec cube;
            cube.lo = lo;
            cube.hi = hi;
            return cube_poincare_ratio(u, cube, s, p, q);
        },
        py::arg("u"), py::arg("lo"), py::arg("hi"), py::arg("s"), py::arg("p"),
        py::arg("q"));
    m.def("dual_hminushalf_estimate", &dual_hminushalf_estimate, py::arg("u"),
          py::arg("g_family"));
    m.def("sum_space_upper", &sum_space_upper, py::arg("u"), py::arg("epsilons"));
    m.def("chi_counterexample", &chi_counterexample, py::arg("R"));

    // field io
    m.def("save_scalar_csv", &save_scalar_csv);
    m.def("load_scalar_csv", &load_scalar_csv);
    m.def("save_od_csv", &save_od_csv);
    m.def("load_od_csv", &load_od_csv);

    // verification
    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& name) {
            VerificationReport rep = run_suite(SuiteConfig::defaults(name));
            return py::make_tuple(rep.pass(), rep.to_json_string());
        },
        py::arg("name"), "runs a suite with defaults; returns (pass, json)");
}
