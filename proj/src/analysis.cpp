#include "shellrec/analysis.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "shellrec/errors.hpp"

namespace shellrec {

namespace {

double norm_of(std::span<const double> k) {
    double s = 0.0;
    for (double v : k) s += v * v;
    return std::sqrt(s);
}

void check_polar_inputs(const ProfileFamily& profile, std::span<const double> k,
                        double c, double epsilon, double tau, double* knorm_out,
                        double* ct_out) {
    const int d = profile.dim();
    if (static_cast<int>(k.size()) != d)
        throw std::invalid_argument("qhat_polar: k dimension mismatch");
    const double knorm = norm_of(k);
    if (!(knorm > 0.0))
        throw std::invalid_argument("qhat_polar: k = 0 has no direction; the polar evaluation needs |k| > 0");
    if (!(c > 0.0) || !(epsilon > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("qhat_polar: c, epsilon, tau must be positive");
    const double ct = c * tau / (epsilon * epsilon);
    const double N = knorm * ct;
    if (d >= 2 && !profile.directions().resolves(N))
        throw ResolutionError(
            "qhat_polar: direction quadrature under-resolves the sphere phase "
            "(N = " + std::to_string(N) + ", polar nodes = " +
            std::to_string(profile.directions().n_polar()) + ", need >= " +
            std::to_string(SphereQuadrature::oscillation_nodes(N)) + ")");
    if (!profile.has_half_line_spectrum())
        throw std::invalid_argument("qhat_polar: profile spectra must vanish on xi < 0");
    *knorm_out = knorm;
    *ct_out = ct;
}

enum class Part { Full, A, G };

// Shared kernel for Q, A and G so the split Q = A + G closes to rounding.
cplx polar_sum(const ProfileFamily& profile, std::span<const double> k, double c,
               double epsilon, double tau, Part part, int order) {
    double knorm = 0.0, ct = 0.0;
    check_polar_inputs(profile, k, c, epsilon, tau, &knorm, &ct);
    const int d = profile.dim();
    if (order != 0 && !(order == 1 && d == 3))
        throw std::invalid_argument("a_term/g_term: order 1 is defined for d=3 only");

    const auto& zg = profile.z_grid();
    const int nz = zg.n();
    const double dz = zg.spacing();
    const double lead = std::pow(ct, 0.5 * (d - 1)); // (ct)^{(d-1)/2}

    const auto& dirs = profile.directions();
    cplx total(0.0, 0.0);
    for (int i = 0; i < dirs.size(); ++i) {
        const Vec3& q = dirs.node(i);
        double sigma = 0.0; // q . k
        for (int a = 0; a < d; ++a) sigma += q[a] * k[a];
        const auto v = profile.values(i);

        // z-sum with incremental phase e^{-i sigma z}
        const cplx step = std::polar(1.0, -sigma * dz);
        cplx rot = std::polar(1.0, -sigma * zg.min());
        cplx inner(0.0, 0.0);
        for (int j = 0; j < nz; ++j) {
            const double z = zg.node(j);
            double kern_full = 0.0;
            if (std::abs(z) < ct)
                kern_full = (d == 1) ? 1.0
                                     : (d == 2 ? (ct + z) / lead : (ct + z) * (ct + z) / ct);
            const double kern_a = (order == 0) ? lead : ct + 2.0 * z;
            double kern = 0.0;
            switch (part) {
            case Part::Full: kern = kern_full; break;
            case Part::A: kern = kern_a; break;
            case Part::G: kern = kern_full - kern_a; break;
            }
            if (kern != 0.0) inner += kern * v[j] * rot;
            rot *= step;
        }
        total += dirs.weight(i) * std::polar(dz, -sigma * ct) * inner;
    }
    return std::polar(1.0, knorm * ct) * total;
}

} // namespace

cplx qhat_polar(const ProfileFamily& profile, std::span<const double> k, double c,
                double epsilon, double tau) {
    return polar_sum(profile, k, c, epsilon, tau, Part::Full, 0);
}

cplx a_term(const ProfileFamily& profile, std::span<const double> k, double c,
            double epsilon, double tau, int order) {
    return polar_sum(profile, k, c, epsilon, tau, Part::A, order);
}

cplx g_term(const ProfileFamily& profile, std::span<const double> k, double c,
            double epsilon, double tau, int order) {
    return polar_sum(profile, k, c, epsilon, tau, Part::G, order);
}

cplx reference_solution(const FourierField& u0hat, const DispersionSpec& spec,
                        std::span<const double> k, double t) {
    const double knorm = norm_of(k);
    return std::polar(1.0, -exact_multiplier_phase(spec, knorm, t)) * u0hat(k);
}

FourierField default_initial_data(int dim) {
    auto f = [](std::span<const double> k) -> cplx {
        double r2 = 0.0;
        for (double v : k) r2 += v * v;
        const double r = std::sqrt(r2);
        if (r > 4.0) return cplx(0.0, 0.0);
        return cplx(std::exp(-8.0 * (r - 1.0) * (r - 1.0)) * std::exp(-r2 / 32.0), 0.0);
    };
    return FourierField(dim, f, 4.0);
}

FourierField gaussian_initial_data(int dim) {
    auto f = [](std::span<const double> k) -> cplx {
        double r2 = 0.0;
        for (double v : k) r2 += v * v;
        return cplx(std::exp(-0.5 * r2), 0.0);
    };
    return FourierField(dim, f, std::nullopt);
}

FourierField named_initial_data(const std::string& name, int dim) {
    if (name == "default") return default_initial_data(dim);
    if (name == "gaussian") return gaussian_initial_data(dim);
    throw std::invalid_argument("named_initial_data: unknown initial data '" + name + "'");
}

namespace detail {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nt = static_cast<int>(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace detail

ConvergenceReport pointwise_convergence_study(
    const FourierField& u0hat, const DispersionSpec& b, const Regularizer& reg,
    std::span<const std::array<double, 3>> k_list, double tau,
    std::span<const double> eps_list, const StudyOptions& opts) {
    const int d = u0hat.dim();
    if (reg.dim != d)
        throw std::invalid_argument("pointwise_convergence_study: regularizer dimension");
    if (!(tau > 0.0))
        throw std::invalid_argument("pointwise_convergence_study: tau must be positive");
    for (const auto& k : k_list) {
        const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        if (!(kn > reg.rho))
            throw std::invalid_argument(
                "pointwise_convergence_study: every |k| must exceed rho = " +
                std::to_string(reg.rho) + " (the pointwise comparison is only "
                "meaningful outside the regularized band)");
    }

    const Grid1D zgrid(-opts.z_half_width, opts.z_half_width, opts.default_n_z(d));
    const Grid1D xi_grid = zgrid.dual();

    ConvergenceReport rep;
    rep.dim = d;
    rep.b = b;
    rep.rho = reg.rho;
    rep.tau = tau;
    rep.records.resize(k_list.size() * eps_list.size());

    detail::parallel_for(
        rep.records.size(), opts.threads, [&](std::size_t cell) {
            const std::size_t ik = cell / eps_list.size();
            const std::size_t ie = cell % eps_list.size();
            const auto& kv = k_list[ik];
            const double eps = eps_list[ie];
            const double kn = std::sqrt(kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2]);
            const double N = kn * opts.c * tau / (eps * eps);

            const auto t0 = std::chrono::steady_clock::now();
            const SphereQuadrature dirs = SphereQuadrature::for_oscillation(
                d, {kv[0], kv[1], kv[2]}, N, opts.quad_scale, opts.n_azimuth);
            // the FullSqrt law depends on the cell's scale separation, so the
            // profile evolution and the reference must share the same epsilon
            const DispersionSpec bc = b.with_epsilon(eps);
            const ProfileFamily prof = evolve(
                restrict_profiles_regularized(u0hat, reg, dirs, xi_grid), bc, tau);

            const std::span<const double> k(kv.data(), static_cast<std::size_t>(d));
            const int order = (d == 3) ? 1 : 0;
            ConvergenceRecord rec;
            rec.epsilon = eps;
            rec.k = kv;
            rec.k_norm = kn;
            rec.qhat = qhat_polar(prof, k, opts.c, eps, tau);
            rec.a = a_term(prof, k, opts.c, eps, tau, order);
            rec.g_abs = std::abs(g_term(prof, k, opts.c, eps, tau, order));
            rec.reference = std::polar(1.0, -eval_b(bc, kn) * tau) * u0hat(k);
            rec.abs_error = std::abs(rec.qhat - rec.reference);
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            rep.records[cell] = rec;
        });
    return rep;
}

std::vector<cplx> weak_pairing_check(
    const FourierField& u0hat, const DispersionSpec& b,
    const std::function<double(std::span<const double>)>& f, double tau,
    std::span<const double> eps_list, const WeakPairingOptions& opts) {
    const int d = u0hat.dim();
    if (!(tau > 0.0)) throw std::invalid_argument("weak_pairing_check: tau > 0 required");
    const int nk = opts.nodes_per_axis;
    if (nk < 2) throw std::invalid_argument("weak_pairing_check: need >= 2 nodes per axis");

    // tensor trapezoid grid over the support box of f
    std::vector<Grid1D> axes;
    for (int a = 0; a < d; ++a) axes.emplace_back(opts.box_min[a], opts.box_max[a], nk);
    const GridD kgrid(axes);

    std::vector<std::array<double, 3>> knodes;
    std::vector<double> kweights;
    for (std::size_t idx = 0; idx < kgrid.size(); ++idx) {
        const auto p = kgrid.point(idx);
        const double fv = f(std::span<const double>(p.data(), static_cast<std::size_t>(d)));
        if (fv == 0.0) continue;
        const auto mi = kgrid.unflatten(idx);
        double w = kgrid.cell_volume();
        for (int a = 0; a < d; ++a)
            if (mi[a] == 0 || mi[a] == nk - 1) w *= 0.5;
        const double kn = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        if (kn < 1e-12) continue; // measure-zero point where the polar formula is undefined
        knodes.push_back(p);
        kweights.push_back(w * fv);
    }

    const Grid1D zgrid(-opts.study.z_half_width, opts.study.z_half_width,
                       opts.study.default_n_z(d));
    const Grid1D xi_grid = zgrid.dual();

    std::vector<cplx> pairings(eps_list.size(), cplx(0.0, 0.0));
    for (std::size_t ie = 0; ie < eps_list.size(); ++ie) {
        const double eps = eps_list[ie];
        const DispersionSpec bc = b.with_epsilon(eps);
        std::vector<cplx> cellvals(knodes.size());
        detail::parallel_for(knodes.size(), opts.study.threads, [&](std::size_t i) {
            const auto& kv = knodes[i];
            const double kn = std::sqrt(kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2]);
            const double N = kn * opts.study.c * tau / (eps * eps);
            const SphereQuadrature dirs = SphereQuadrature::for_oscillation(
                d, {kv[0], kv[1], kv[2]}, N, opts.study.quad_scale, opts.study.n_azimuth);
            const ProfileFamily prof =
                evolve(restrict_profiles(u0hat, dirs, xi_grid), bc, tau);
            const std::span<const double> k(kv.data(), static_cast<std::size_t>(d));
            const cplx q = qhat_polar(prof, k, opts.study.c, eps, tau);
            const cplx ref = std::polar(1.0, -eval_b(bc, kn) * tau) * u0hat(k);
            cellvals[i] = q - ref;
        });
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < knodes.size(); ++i) acc += kweights[i] * cellvals[i];
        pairings[ie] = acc;
    }
    return pairings;
}

} // namespace shellrec
