#include "shellrec/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace shellrec {

namespace {

// (2 pi i)^{-(d-1)/2}, principal branch
cplx root_prefactor(int d) {
    switch (d) {
    case 1: return cplx(1.0, 0.0);
    case 2: return std::polar(1.0 / std::sqrt(2.0 * M_PI), -M_PI / 4.0);
    default: return cplx(0.0, -1.0 / (2.0 * M_PI)); // 1/(2 pi i)
    }
}

ProfileFamily restrict_impl(const FourierField& u0hat, const SphereQuadrature& dirs,
                            const Grid1D& xi_grid,
                            const std::function<double(double)>& envelope) {
    const int d = u0hat.dim();
    if (dirs.dim() != d)
        throw std::invalid_argument("restrict: direction set dimension mismatch");
    const int n = xi_grid.n();
    const int nd = dirs.size();
    const cplx pref = root_prefactor(d);

    std::vector<cplx> spectra(static_cast<std::size_t>(n) * nd, cplx(0.0, 0.0));
    std::vector<double> env(n);
    for (int m = 0; m < n; ++m) env[m] = envelope(xi_grid.node(m));

    for (int i = 0; i < nd; ++i) {
        const Vec3& q = dirs.node(i);
        cplx* out = spectra.data() + static_cast<std::size_t>(i) * n;
        for (int m = 0; m < n; ++m) {
            if (env[m] == 0.0) continue;
            const double xi = xi_grid.node(m);
            const double point[3] = {xi * q[0], xi * q[1], xi * q[2]};
            out[m] = pref * env[m] *
                     u0hat(std::span<const double>(point, static_cast<std::size_t>(d)));
        }
    }
    return ProfileFamily::from_spectra(xi_grid, dirs, std::move(spectra), 0.0);
}

} // namespace

ProfileFamily restrict_profiles(const FourierField& u0hat, const SphereQuadrature& directions,
                                const Grid1D& xi_grid) {
    const double p = 0.5 * (u0hat.dim() - 1);
    return restrict_impl(u0hat, directions, xi_grid,
                         [p](double xi) { return xi > 0.0 ? std::pow(xi, p) : 0.0; });
}

ProfileFamily restrict_profiles_regularized(const FourierField& u0hat, const Regularizer& reg,
                                            const SphereQuadrature& directions,
                                            const Grid1D& xi_grid) {
    if (reg.dim != u0hat.dim())
        throw std::invalid_argument("restrict: regularizer dimension mismatch");
    return restrict_impl(u0hat, directions, xi_grid,
                         [&reg](double xi) { return regularizer_eval(reg, xi); });
}

ProfileFamily evolve(const ProfileFamily& profile, const DispersionSpec& b, double tau) {
    if (tau < 0.0) throw std::invalid_argument("evolve: tau must be >= 0");
    const Grid1D& xi = profile.xi_grid();
    const int n = xi.n();
    const int nd = profile.n_dirs();

    std::vector<cplx> phase(n);
    for (int m = 0; m < n; ++m)
        phase[m] = std::polar(1.0, -eval_b(b, xi.node(m)) * tau);

    std::vector<cplx> spectra(static_cast<std::size_t>(n) * nd);
    for (int i = 0; i < nd; ++i) {
        const auto s = profile.spectrum(i);
        cplx* out = spectra.data() + static_cast<std::size_t>(i) * n;
        for (int m = 0; m < n; ++m) out[m] = s[m] * phase[m];
    }
    return ProfileFamily::from_spectra(xi, profile.directions(), std::move(spectra),
                                       profile.tau() + tau);
}

ShellField::ShellField(std::shared_ptr<const ProfileFamily> profile, double c,
                       double epsilon, double t)
    : profile_(std::move(profile)), c_(c), epsilon_(epsilon), t_(t),
      degenerate_(std::make_shared<std::atomic<long long>>(0)) {
    if (!profile_) throw std::invalid_argument("ShellField: null profile");
    if (!(c > 0.0)) throw std::invalid_argument("ShellField: c must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("ShellField: epsilon must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("ShellField: t must be positive");
}

cplx ShellField::operator()(std::span<const double> x) const {
    const int d = dim();
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("ShellField: wrong query dimension");
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    const double r = std::sqrt(r2);
    const double cT = ct();
    if (r >= 2.0 * cT) return cplx(0.0, 0.0);
    if (r == 0.0) {
        degenerate_->fetch_add(1, std::memory_order_relaxed);
        return cplx(0.0, 0.0);
    }
    Vec3 q = {0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) q[a] = x[a] / r;
    const double scale = std::pow(cT, -0.5 * (d - 1));
    return scale * profile_->value_at(q, r - cT);
}

cplx ShellField::at(double x0, double x1, double x2) const {
    const double x[3] = {x0, x1, x2};
    return (*this)(std::span<const double>(x, static_cast<std::size_t>(dim())));
}

double ShellField::norm_l2() const {
    // polar form: int_0^{2ct} r^{d-1} (ct)^{-(d-1)} sum_q w_q |V(r-ct,q)|^2 dr
    // on the profile's own z-nodes (r = ct + z, |z| < ct)
    const auto& zg = profile_->z_grid();
    const double dz = zg.spacing();
    const double cT = ct();
    const int d = dim();
    double total = 0.0;
    for (int i = 0; i < profile_->n_dirs(); ++i) {
        const auto v = profile_->values(i);
        double acc = 0.0;
        for (int j = 0; j < zg.n(); ++j) {
            const double z = zg.node(j);
            if (std::abs(z) >= cT) continue;
            const double w = std::pow((cT + z) / cT, d - 1);
            acc += w * std::norm(v[j]);
        }
        total += profile_->directions().weight(i) * acc * dz;
    }
    return std::sqrt(total);
}

ShellField shell(std::shared_ptr<const ProfileFamily> profile, double c, double epsilon,
                 double t) {
    if (!profile) throw std::invalid_argument("shell: null profile");
    const double tau = epsilon * epsilon * t;
    if (std::abs(profile->tau() - tau) > 1e-9 * std::max(1.0, tau))
        throw std::invalid_argument(
            "shell: profile must be supplied at tau = epsilon^2 * t "
            "(no interpolation in tau is performed)");
    return ShellField(std::move(profile), c, epsilon, t);
}

ShellField shell(const ProfileFamily& profile, double c, double epsilon, double t) {
    return shell(std::make_shared<ProfileFamily>(profile), c, epsilon, t);
}

ShellField reconstruct(const FourierField& u0hat, const DispersionSpec& b,
                       const std::optional<Regularizer>& reg,
                       const SphereQuadrature& directions, const Grid1D& xi_grid,
                       double c, double epsilon, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("reconstruct: t must be positive");
    const double tau = epsilon * epsilon * t;
    ProfileFamily initial = reg ? restrict_profiles_regularized(u0hat, *reg, directions, xi_grid)
                                : restrict_profiles(u0hat, directions, xi_grid);
    auto evolved = std::make_shared<ProfileFamily>(evolve(initial, b, tau));
    return shell(std::move(evolved), c, epsilon, t);
}

} // namespace shellrec
