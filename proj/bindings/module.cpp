// Python bindings for the main operations: restriction, evolution, shell
// reconstruction, the polar evaluation of the reconstructed transform, and
// the stationary-phase utilities.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shellrec/analysis.hpp"
#include "shellrec/errors.hpp"
#include "shellrec/experiment.hpp"
#include "shellrec/operators.hpp"
#include "shellrec/stationary_phase.hpp"

namespace py = pybind11;
using namespace shellrec;

namespace {

Vec3 to_vec3(py::sequence seq) {
    Vec3 v{0.0, 0.0, 0.0};
    const auto n = py::len(seq);
    if (n < 1 || n > 3) throw std::invalid_argument("expected 1-3 components");
    for (std::size_t i = 0; i < n; ++i) v[i] = seq[i].cast<double>();
    return v;
}

std::vector<double> as_point(py::sequence seq, int dim) {
    std::vector<double> p(dim, 0.0);
    if (static_cast<int>(py::len(seq)) != dim)
        throw std::invalid_argument("point dimension mismatch");
    for (int i = 0; i < dim; ++i) p[i] = seq[i].cast<double>();
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "profile-based shell reconstruction of large-time wave fields";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<ResolutionError>(m, "ResolutionError");

    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<double, double, int>(), py::arg("min"), py::arg("max"), py::arg("n"))
        .def_property_readonly("min", &Grid1D::min)
        .def_property_readonly("max", &Grid1D::max)
        .def_property_readonly("n", &Grid1D::n)
        .def_property_readonly("spacing", &Grid1D::spacing)
        .def("dual", &Grid1D::dual)
        .def("nodes", [](const Grid1D& g) {
            py::array_t<double> out(g.n());
            auto r = out.mutable_unchecked<1>();
            for (int j = 0; j < g.n(); ++j) r(j) = g.node(j);
            return out;
        });

    py::class_<SphereQuadrature>(m, "SphereQuadrature")
        .def_static("make", &SphereQuadrature::make, py::arg("dim"), py::arg("n_polar"),
                    py::arg("n_azimuth") = 0)
        .def_static(
            "aligned",
            [](int dim, py::sequence pole, int n_polar, int n_azimuth) {
                return SphereQuadrature::aligned(dim, to_vec3(pole), n_polar, n_azimuth);
            },
            py::arg("dim"), py::arg("pole"), py::arg("n_polar"), py::arg("n_azimuth") = 0)
        .def_static(
            "for_oscillation",
            [](int dim, py::sequence pole, double N, double quad_scale, int n_azimuth) {
                return SphereQuadrature::for_oscillation(dim, to_vec3(pole), N, quad_scale,
                                                         n_azimuth);
            },
            py::arg("dim"), py::arg("pole"), py::arg("N"), py::arg("quad_scale") = 1.0,
            py::arg("n_azimuth") = 0)
        .def_static("oscillation_nodes", &SphereQuadrature::oscillation_nodes)
        .def_property_readonly("dim", &SphereQuadrature::dim)
        .def_property_readonly("size", &SphereQuadrature::size)
        .def("weight_sum", &SphereQuadrature::weight_sum)
        .def("resolves", &SphereQuadrature::resolves)
        .def("nodes", [](const SphereQuadrature& q) {
            py::array_t<double> out({q.size(), 3});
            auto r = out.mutable_unchecked<2>();
            for (int i = 0; i < q.size(); ++i)
                for (int a = 0; a < 3; ++a) r(i, a) = q.node(i)[a];
            return out;
        })
        .def("weights", [](const SphereQuadrature& q) {
            py::array_t<double> out(q.size());
            auto r = out.mutable_unchecked<1>();
            for (int i = 0; i < q.size(); ++i) r(i) = q.weight(i);
            return out;
        });

    py::class_<Regularizer>(m, "Regularizer")
        .def(py::init<double, int>(), py::arg("rho"), py::arg("dim"))
        .def_readonly("rho", &Regularizer::rho)
        .def_readonly("dim", &Regularizer::dim)
        .def("__call__", [](const Regularizer& r, double xi) {
            return regularizer_eval(r, xi);
        });

    py::class_<DispersionSpec>(m, "DispersionSpec")
        .def_static("zero", &DispersionSpec::zero, py::arg("c") = 1.0,
                    py::arg("epsilon") = 1.0)
        .def_static("cubic", &DispersionSpec::cubic, py::arg("b3"), py::arg("c") = 1.0,
                    py::arg("epsilon") = 1.0)
        .def_static("full_sqrt", &DispersionSpec::full_sqrt, py::arg("c"), py::arg("d0"),
                    py::arg("epsilon"))
        .def("with_epsilon", &DispersionSpec::with_epsilon)
        .def("b", [](const DispersionSpec& s, double xi) { return eval_b(s, xi); })
        .def("phase", [](const DispersionSpec& s, double k_norm, double t) {
            return exact_multiplier_phase(s, k_norm, t);
        });

    py::class_<FourierField>(m, "FourierField")
        .def_static("named", &named_initial_data, py::arg("name"), py::arg("dim"))
        .def_static(
            "from_grid",
            [](py::sequence axes, py::array_t<cplx, py::array::c_style> values,
               std::optional<double> support_radius) {
                std::vector<Grid1D> ax;
                for (auto item : axes) ax.push_back(item.cast<Grid1D>());
                GridD grid(ax);
                std::vector<cplx> vals(values.data(), values.data() + values.size());
                return FourierField(grid, std::move(vals), support_radius);
            },
            py::arg("axes"), py::arg("values"), py::arg("support_radius") = std::nullopt)
        .def_static("tabulated", &load_tabulated_field, py::arg("path"), py::arg("dim"))
        .def_property_readonly("dim", &FourierField::dim)
        .def("__call__", [](const FourierField& f, py::sequence k) {
            const auto p = as_point(k, f.dim());
            return f(std::span<const double>(p.data(), p.size()));
        });

    py::class_<ProfileFamily>(m, "ProfileFamily")
        .def_property_readonly("dim", &ProfileFamily::dim)
        .def_property_readonly("tau", &ProfileFamily::tau)
        .def_property_readonly("n_dirs", &ProfileFamily::n_dirs)
        .def_property_readonly("z_grid", &ProfileFamily::z_grid)
        .def_property_readonly("xi_grid", &ProfileFamily::xi_grid)
        .def("norm_xs", &ProfileFamily::norm_xs)
        .def("spectrum",
             [](const ProfileFamily& p, int dir) {
                 const auto s = p.spectrum(dir);
                 return py::array_t<cplx>(s.size(), s.data());
             })
        .def("values",
             [](const ProfileFamily& p, int dir) {
                 const auto v = p.values(dir);
                 return py::array_t<cplx>(v.size(), v.data());
             })
        .def("value_at", [](const ProfileFamily& p, py::sequence q, double z) {
            return p.value_at(to_vec3(q), z);
        });

    py::class_<ShellField>(m, "ShellField")
        .def_property_readonly("dim", &ShellField::dim)
        .def_property_readonly("ct", &ShellField::ct)
        .def_property_readonly("t", &ShellField::t)
        .def_property_readonly("epsilon", &ShellField::epsilon)
        .def_property_readonly("degenerate_hits", &ShellField::degenerate_hits)
        .def("norm_l2", &ShellField::norm_l2)
        .def("__call__",
             [](const ShellField& f, py::sequence x) {
                 const auto p = as_point(x, f.dim());
                 return f(std::span<const double>(p.data(), p.size()));
             })
        .def("sample",
             [](const ShellField& f, py::array_t<double, py::array::c_style> pts) {
                 if (pts.ndim() != 2 || pts.shape(1) != f.dim())
                     throw std::invalid_argument("expected an (n, dim) array");
                 py::array_t<cplx> out(pts.shape(0));
                 auto r = out.mutable_unchecked<1>();
                 auto xs = pts.unchecked<2>();
                 for (py::ssize_t i = 0; i < pts.shape(0); ++i) {
                     std::array<double, 3> x{0.0, 0.0, 0.0};
                     for (int a = 0; a < f.dim(); ++a) x[a] = xs(i, a);
                     r(i) = f(std::span<const double>(x.data(), f.dim()));
                 }
                 return out;
             });

    m.def("restrict_profiles", &restrict_profiles, py::arg("u0hat"), py::arg("directions"),
          py::arg("xi_grid"));
    m.def("restrict_profiles_regularized", &restrict_profiles_regularized, py::arg("u0hat"),
          py::arg("reg"), py::arg("directions"), py::arg("xi_grid"));
    m.def("evolve", &evolve, py::arg("profile"), py::arg("b"), py::arg("tau"));
    m.def(
        "shell",
        [](const ProfileFamily& p, double c, double epsilon, double t) {
            return shell(p, c, epsilon, t);
        },
        py::arg("profile"), py::arg("c"), py::arg("epsilon"), py::arg("t"));
    m.def(
        "reconstruct",
        [](const FourierField& u0, const DispersionSpec& b,
           std::optional<Regularizer> reg, const SphereQuadrature& dirs,
           const Grid1D& xi_grid, double c, double epsilon, double t) {
            return reconstruct(u0, b, reg, dirs, xi_grid, c, epsilon, t);
        },
        py::arg("u0hat"), py::arg("b"), py::arg("reg"), py::arg("directions"),
        py::arg("xi_grid"), py::arg("c"), py::arg("epsilon"), py::arg("t"));

    auto polar_args = [](py::sequence k, const ProfileFamily& p) {
        std::vector<double> kv(p.dim());
        if (static_cast<int>(py::len(k)) != p.dim())
            throw std::invalid_argument("k dimension mismatch");
        for (int a = 0; a < p.dim(); ++a) kv[a] = k[a].cast<double>();
        return kv;
    };
    m.def(
        "qhat_polar",
        [polar_args](const ProfileFamily& p, py::sequence k, double c, double eps,
                     double tau) {
            const auto kv = polar_args(k, p);
            return qhat_polar(p, std::span<const double>(kv.data(), kv.size()), c, eps, tau);
        },
        py::arg("profile"), py::arg("k"), py::arg("c"), py::arg("epsilon"), py::arg("tau"));
    m.def(
        "a_term",
        [polar_args](const ProfileFamily& p, py::sequence k, double c, double eps,
                     double tau, int order) {
            const auto kv = polar_args(k, p);
            return a_term(p, std::span<const double>(kv.data(), kv.size()), c, eps, tau,
                          order);
        },
        py::arg("profile"), py::arg("k"), py::arg("c"), py::arg("epsilon"), py::arg("tau"),
        py::arg("order") = 0);
    m.def(
        "g_term",
        [polar_args](const ProfileFamily& p, py::sequence k, double c, double eps,
                     double tau, int order) {
            const auto kv = polar_args(k, p);
            return g_term(p, std::span<const double>(kv.data(), kv.size()), c, eps, tau,
                          order);
        },
        py::arg("profile"), py::arg("k"), py::arg("c"), py::arg("epsilon"), py::arg("tau"),
        py::arg("order") = 0);
    m.def(
        "reference_solution",
        [](const FourierField& u0, const DispersionSpec& s, py::sequence k, double t) {
            std::vector<double> kv(u0.dim());
            for (int a = 0; a < u0.dim(); ++a) kv[a] = k[a].cast<double>();
            return reference_solution(u0, s, std::span<const double>(kv.data(), kv.size()),
                                      t);
        },
        py::arg("u0hat"), py::arg("spec"), py::arg("k"), py::arg("t"));

    py::class_<ConvergenceRecord>(m, "ConvergenceRecord")
        .def_readonly("epsilon", &ConvergenceRecord::epsilon)
        .def_readonly("k_norm", &ConvergenceRecord::k_norm)
        .def_readonly("qhat", &ConvergenceRecord::qhat)
        .def_readonly("reference", &ConvergenceRecord::reference)
        .def_readonly("abs_error", &ConvergenceRecord::abs_error)
        .def_readonly("g_abs", &ConvergenceRecord::g_abs)
        .def_readonly("wall_ms", &ConvergenceRecord::wall_ms);

    m.def(
        "pointwise_convergence_study",
        [](const FourierField& u0, const DispersionSpec& b, const Regularizer& reg,
           std::vector<std::array<double, 3>> k_list, double tau,
           std::vector<double> eps_list, double quad_scale, int threads) {
            StudyOptions opts;
            opts.quad_scale = quad_scale;
            opts.threads = threads;
            const auto rep = pointwise_convergence_study(
                u0, b, reg,
                std::span<const std::array<double, 3>>(k_list.data(), k_list.size()), tau,
                std::span<const double>(eps_list.data(), eps_list.size()), opts);
            return rep.records;
        },
        py::arg("u0hat"), py::arg("b"), py::arg("reg"), py::arg("k_list"), py::arg("tau"),
        py::arg("eps_list"), py::arg("quad_scale") = 1.0, py::arg("threads") = 1);

    m.def(
        "stationary_phase_functional",
        [](const std::string& test_fn, int dim, py::sequence pole, double N,
           const SphereQuadrature& quad) {
            return stationary_phase_functional(named_test_fn(test_fn, dim, to_vec3(pole)),
                                               N, quad);
        },
        py::arg("test_fn"), py::arg("dim"), py::arg("pole"), py::arg("N"), py::arg("quad"));
    m.def(
        "oscillatory_integral",
        [](double beta, double N) {
            return oscillatory_integral(OscillatoryIntegralSpec(beta, N));
        },
        py::arg("beta"), py::arg("N"));
    m.def("fresnel_oracle", []() { return fresnel_oracle(); });
}
