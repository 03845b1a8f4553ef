#include "shellrec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "shellrec/errors.hpp"
#include "shellrec/stationary_phase.hpp"

namespace shellrec {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text,
                                                const std::string& origin) {
    static const std::set<std::string> known = {
        "d", "c", "d0", "b", "b3", "rho", "tau", "epsilon", "epsilon_list",
        "initial_data", "k_norm_list", "k_direction",
        "z_half_width", "n_z", "n_azimuth", "quad_scale", "threads", "out",
        "sp_n_list", "sp_test_fn", "beta", "fresnel_n_list",
        "bench_samples", "bench_repeats", "grid_dx",
        "t", "ray", "ray_samples", "ray_r_min", "ray_r_max"};

    ExperimentConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string stripped = strip(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + stripped + "'");
        const std::string key = strip(stripped.substr(0, eq));
        const std::string value = strip(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!known.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" +
                              key + "'");
        if (cfg.entries_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        cfg.entries_[key] = {value, lineno};
    }
    return cfg;
}

void ExperimentConfig::fail(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    const std::string where =
        it == entries_.end() ? origin_ : origin_ + ":" + std::to_string(it->second.line);
    throw ConfigError(where + ": key '" + key + "': " + what);
}

bool ExperimentConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string ExperimentConfig::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) fail(key, "missing required key");
    return it->second.value;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double ExperimentConfig::get_double(const std::string& key) const {
    const std::string s = get_string(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(key, "expected a number, got '" + s + "'");
    }
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = get_double(key);
    const int i = static_cast<int>(std::llround(v));
    if (v != i) fail(key, "expected an integer");
    return i;
}

std::vector<double> ExperimentConfig::get_list(const std::string& key) const {
    std::string s = get_string(key);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            fail(key, "expected a list of numbers, got '" + tok + "'");
        }
    }
    if (out.empty()) fail(key, "empty list");
    return out;
}

std::vector<double> ExperimentConfig::get_list(const std::string& key,
                                               const std::vector<double>& fallback) const {
    return has(key) ? get_list(key) : fallback;
}

void ExperimentConfig::override_value(const std::string& key, const std::string& value) {
    entries_[key] = {value, 0};
}

FourierField load_tabulated_field(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open tabulated field '" + path + "'");
    std::vector<std::array<double, 3>> coords;
    std::vector<cplx> vals;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        std::array<double, 3> k{0.0, 0.0, 0.0};
        double re = 0.0, im = 0.0;
        for (int a = 0; a < dim; ++a)
            if (!(row >> k[a]))
                throw ConfigError(path + ":" + std::to_string(lineno) + ": short row");
        if (!(row >> re >> im))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": short row");
        coords.push_back(k);
        vals.emplace_back(re, im);
    }
    if (vals.empty()) throw ConfigError(path + ": no data rows");

    // infer the uniform tensor grid
    std::vector<Grid1D> axes;
    for (int a = 0; a < dim; ++a) {
        std::set<double> uniq;
        for (const auto& k : coords) uniq.insert(k[a]);
        std::vector<double> u(uniq.begin(), uniq.end());
        if (u.size() < 2)
            throw ConfigError(path + ": axis " + std::to_string(a + 1) +
                              " needs at least 2 distinct coordinates");
        const double h = (u.back() - u.front()) / (u.size() - 1);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (std::abs(u[i] - (u.front() + i * h)) > 1e-9 * std::max(1.0, std::abs(h)))
                throw ConfigError(path + ": axis " + std::to_string(a + 1) +
                                  " is not uniformly spaced");
        axes.emplace_back(u.front(), u.back(), static_cast<int>(u.size()));
    }
    GridD grid(axes);
    if (coords.size() != grid.size())
        throw ConfigError(path + ": rows do not form a full tensor grid (" +
                          std::to_string(coords.size()) + " rows, expected " +
                          std::to_string(grid.size()) + ")");

    std::vector<cplx> ordered(grid.size());
    std::vector<bool> seen(grid.size(), false);
    for (std::size_t r = 0; r < coords.size(); ++r) {
        std::size_t idx = 0;
        for (int a = 0; a < dim; ++a) {
            const auto& ax = grid.axis(a);
            const long j = std::lround((coords[r][a] - ax.min()) / ax.spacing());
            idx = idx * ax.n() + static_cast<std::size_t>(j);
        }
        if (seen[idx]) throw ConfigError(path + ": duplicate grid point in row data");
        seen[idx] = true;
        ordered[idx] = vals[r];
    }
    return FourierField(grid, std::move(ordered));
}

namespace {

int parse_dim(const ExperimentConfig& cfg) {
    const int d = cfg.get_int("d", 1);
    if (d < 1 || d > 3) throw ConfigError("key 'd': dimension must be 1, 2 or 3");
    return d;
}

std::array<double, 3> parse_direction(const ExperimentConfig& cfg, int dim,
                                      const std::string& key) {
    std::array<double, 3> dir{1.0, 0.0, 0.0};
    if (cfg.has(key)) {
        const auto v = cfg.get_list(key);
        if (static_cast<int>(v.size()) != dim)
            throw ConfigError("key '" + key + "': expected " + std::to_string(dim) +
                              " components");
        for (int a = 0; a < dim; ++a) dir[a] = v[a];
    }
    double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    if (!(n > 0.0)) throw ConfigError("key '" + key + "': zero direction");
    for (auto& v : dir) v /= n;
    return dir;
}

} // namespace

ExperimentSetup build_setup(const ExperimentConfig& cfg) {
    const int d = parse_dim(cfg);
    const double c = cfg.get_double("c", 1.0);
    if (!(c > 0.0)) throw ConfigError("key 'c': wave speed must be positive");
    const double d0 = cfg.get_double("d0", 1.0);

    const std::string bkind = cfg.get_string("b", "zero");
    DispersionSpec b = DispersionSpec::zero(c);
    if (bkind == "zero") {
        b = DispersionSpec::zero(c);
    } else if (bkind == "cubic") {
        b = DispersionSpec::cubic(cfg.get_double("b3", d0 / (2.0 * c)), c);
    } else if (bkind == "fullsqrt") {
        b = DispersionSpec::full_sqrt(c, d0, 1.0); // epsilon is set per cell
    } else {
        throw ConfigError("key 'b': expected zero | cubic | fullsqrt, got '" + bkind + "'");
    }

    ExperimentSetup s{.dim = d,
                      .b = b,
                      .rho = cfg.get_double("rho", 0.25),
                      .tau = cfg.get_double("tau", 1.0),
                      .epsilons = cfg.get_list("epsilon_list", {0.4, 0.2, 0.1}),
                      .k_points = {},
                      .u0hat = named_initial_data("default", d),
                      .study = {}};
    if (!(s.rho > 0.0)) throw ConfigError("key 'rho': must be positive");
    if (!(s.tau > 0.0)) throw ConfigError("key 'tau': must be positive");
    for (double e : s.epsilons)
        if (!(e > 0.0)) throw ConfigError("key 'epsilon_list': entries must be positive");

    const std::string init = cfg.get_string("initial_data", "default");
    if (init.rfind("file:", 0) == 0) {
        s.u0hat = load_tabulated_field(init.substr(5), d);
    } else {
        s.u0hat = named_initial_data(init, d);
    }

    const auto knorms = cfg.get_list("k_norm_list", {1.0});
    const auto dir = parse_direction(cfg, d, "k_direction");
    for (double kn : knorms) {
        if (!(kn > 0.0)) throw ConfigError("key 'k_norm_list': entries must be positive");
        s.k_points.push_back({kn * dir[0], kn * dir[1], kn * dir[2]});
    }

    s.study.c = c;
    s.study.z_half_width = cfg.get_double("z_half_width", 64.0);
    s.study.n_z = cfg.get_int("n_z", 0);
    s.study.n_azimuth = cfg.get_int("n_azimuth", 24);
    s.study.quad_scale = cfg.get_double("quad_scale", 1.0);
    s.study.threads = cfg.get_int("threads", 1);
    if (!(s.study.z_half_width > 0.0)) throw ConfigError("key 'z_half_width': must be positive");
    if (!(s.study.quad_scale > 0.0)) throw ConfigError("key 'quad_scale': must be positive");
    return s;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

} // namespace

int run_converge(const ExperimentConfig& cfg, const std::string& out_path) {
    const ExperimentSetup s = build_setup(cfg);
    const Regularizer reg(s.rho, s.dim);
    for (const auto& k : s.k_points) {
        const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        if (!(kn > s.rho))
            throw ConfigError("converge requires |k| > rho (the pointwise comparison is "
                              "only meaningful outside the regularized band): |k| = " +
                              fmt17(kn) + " <= rho = " + fmt17(s.rho));
    }

    const ConvergenceReport rep = pointwise_convergence_study(
        s.u0hat, s.b, reg, s.k_points, s.tau, s.epsilons, s.study);

    auto out = open_out(out_path);
    out << "d,b_kind,rho,tau,epsilon,k_norm,abs_error,a_term_re,a_term_im,g_abs,wall_ms\n";
    for (const auto& r : rep.records) {
        out << rep.dim << ',' << dispersion_kind_name(rep.b.kind) << ',' << fmt17(rep.rho)
            << ',' << fmt17(rep.tau) << ',' << fmt17(r.epsilon) << ',' << fmt17(r.k_norm)
            << ',' << fmt17(r.abs_error) << ',' << fmt17(r.a.real()) << ','
            << fmt17(r.a.imag()) << ',' << fmt17(r.g_abs) << ',' << fmt17(r.wall_ms)
            << '\n';
    }
    return static_cast<int>(rep.records.size());
}

int run_stationary_phase(const ExperimentConfig& cfg, const std::string& out_path) {
    const int d = parse_dim(cfg);
    const auto n_list = cfg.get_list("sp_n_list", {1e2, 1e3, 1e4});
    const std::string fn_name = cfg.get_string("sp_test_fn", "cos2");
    const double quad_scale = cfg.get_double("quad_scale", 1.0);
    const int n_azimuth = cfg.get_int("n_azimuth", 24);
    const Vec3 pole = {1.0, 0.0, 0.0};
    const HalfSphereTestFn phi = named_test_fn(fn_name, d, pole);
    const double target = phi.eval(pole);

    auto out = open_out(out_path);
    out << "d,N,re,im,abs_error_vs_phi_kappa,nodes\n";
    int rows = 0;
    for (double N : n_list) {
        SphereQuadrature quad =
            SphereQuadrature::for_oscillation(d, pole, N, quad_scale, n_azimuth);
        const cplx a = stationary_phase_functional(phi, N, quad);
        out << d << ',' << fmt17(N) << ',' << fmt17(a.real()) << ',' << fmt17(a.imag())
            << ',' << fmt17(std::abs(a - target)) << ','
            << (d == 1 ? 2 : quad.size()) << '\n';
        ++rows;
    }
    return rows;
}

int run_fresnel(const ExperimentConfig& cfg, const std::string& out_path) {
    const double beta = cfg.get_double("beta", 0.3);
    if (!(beta > 1.0 / 6.0) || !(beta < 0.5))
        throw ConfigError("key 'beta': the oscillatory-integral limit requires beta in "
                          "(1/6, 1/2), got " + fmt17(beta));
    const auto n_list = cfg.get_list("fresnel_n_list", {1e4, 1e5, 1e6});
    const cplx limit = 0.5 * std::sqrt(M_PI) * cplx(1.0, 1.0);

    auto out = open_out(out_path);
    out << "beta,N,re,im,abs_error\n";
    int rows = 0;
    for (double N : n_list) {
        const cplx v = oscillatory_integral(OscillatoryIntegralSpec(beta, N));
        out << fmt17(beta) << ',' << fmt17(N) << ',' << fmt17(v.real()) << ','
            << fmt17(v.imag()) << ',' << fmt17(std::abs(v - limit)) << '\n';
        ++rows;
    }
    return rows;
}

int run_bench(const ExperimentConfig& cfg, const std::string& out_path) {
    const ExperimentSetup s = build_setup(cfg);
    const Regularizer reg(s.rho, s.dim);
    const int samples = cfg.get_int("bench_samples", 8192);
    const int repeats = std::max(1, cfg.get_int("bench_repeats", 5));
    if (samples < 1) throw ConfigError("key 'bench_samples': must be positive");

    // fixed, eps-independent reconstruction resolution: the cost of the
    // pipeline is what we are measuring
    const Grid1D zgrid(-s.study.z_half_width, s.study.z_half_width,
                       s.study.default_n_z(s.dim));
    const Grid1D xi_grid = zgrid.dual();
    const int n_polar = s.dim == 1 ? 2 : 64;
    const SphereQuadrature dirs =
        SphereQuadrature::make(s.dim, n_polar, s.study.n_azimuth);

    auto out = open_out(out_path);
    out << "epsilon,recon_wall_ms,recon_peak_mem_est,grid_cells_required\n";
    for (double eps : s.epsilons) {
        const double t = s.tau / (eps * eps);
        const DispersionSpec b = s.b.with_epsilon(eps);
        double best = 0.0;
        cplx sink(0.0, 0.0);
        for (int rep = 0; rep < repeats; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const ShellField field =
                reconstruct(s.u0hat, b, reg, dirs, xi_grid, s.study.c, eps, t);
            // deterministic sample sweep across the shell support
            const double r_hi = 2.0 * field.ct();
            for (int i = 0; i < samples; ++i) {
                const double r = r_hi * (i + 0.5) / samples;
                const int j = i % dirs.size();
                const Vec3& q = dirs.node(j);
                const double x[3] = {r * q[0], r * q[1], r * q[2]};
                sink += field(std::span<const double>(x, static_cast<std::size_t>(s.dim)));
            }
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            if (rep == 0 || ms < best) best = ms;
        }
        if (!std::isfinite(sink.real())) throw std::runtime_error("bench: non-finite sample");
        const double mem = 2.0 * 16.0 * static_cast<double>(dirs.size()) * zgrid.n();
        const double dx = cfg.get_double("grid_dx", zgrid.spacing());
        const double cells = std::pow(2.0 * s.study.c * t / dx, s.dim);
        out << fmt17(eps) << ',' << fmt17(best) << ',' << fmt17(mem) << ','
            << fmt17(cells) << '\n';
    }
    return static_cast<int>(s.epsilons.size());
}

int run_reconstruct(const ExperimentConfig& cfg, const std::string& out_path) {
    const ExperimentSetup s = build_setup(cfg);
    const Regularizer reg(s.rho, s.dim);
    const double eps = cfg.has("epsilon") ? cfg.get_double("epsilon") : s.epsilons.front();
    if (!(eps > 0.0)) throw ConfigError("key 'epsilon': must be positive");
    const double t = cfg.get_double("t", s.tau / (eps * eps));
    if (!(t > 0.0)) throw ConfigError("key 't': must be positive");

    const Grid1D zgrid(-s.study.z_half_width, s.study.z_half_width,
                       s.study.default_n_z(s.dim));
    const Grid1D xi_grid = zgrid.dual();
    const int n_polar = s.dim == 1 ? 2 : 128;
    const SphereQuadrature dirs =
        SphereQuadrature::make(s.dim, n_polar, s.study.n_azimuth);
    const DispersionSpec b = s.b.with_epsilon(eps);
    const ShellField field = reconstruct(s.u0hat, b, reg, dirs, xi_grid, s.study.c, eps, t);

    const auto ray = parse_direction(cfg, s.dim, "ray");
    const int nray = cfg.get_int("ray_samples", 1024);
    if (nray < 2) throw ConfigError("key 'ray_samples': need at least 2 samples");
    const double r_lo = cfg.get_double("ray_r_min", 0.0);
    const double r_hi = cfg.get_double("ray_r_max", 2.0 * field.ct());
    if (!(r_hi > r_lo)) throw ConfigError("key 'ray_r_max': must exceed ray_r_min");

    auto out = open_out(out_path);
    out << "x_coord,re,im\n";
    for (int i = 0; i < nray; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (nray - 1);
        const double x[3] = {r * ray[0], r * ray[1], r * ray[2]};
        const cplx v = field(std::span<const double>(x, static_cast<std::size_t>(s.dim)));
        out << fmt17(r) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
    }
    return nray;
}

} // namespace shellrec
