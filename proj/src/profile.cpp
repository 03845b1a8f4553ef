#include "shellrec/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace shellrec {

ProfileFamily ProfileFamily::from_spectra(const Grid1D& xi_grid, SphereQuadrature dirs,
                                          std::vector<cplx> spectra, double tau) {
    if (tau < 0.0) throw std::invalid_argument("ProfileFamily: tau must be >= 0");
    const int n = xi_grid.n();
    const int nd = dirs.size();
    if (spectra.size() != static_cast<std::size_t>(n) * nd)
        throw std::invalid_argument("ProfileFamily: spectra size != n_dirs * n_xi");
    for (const cplx& v : spectra)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("ProfileFamily: spectra must be finite");

    ProfileFamily f(xi_grid.dual(), xi_grid, std::move(dirs), tau);
    f.spectra_ = std::move(spectra);
    f.values_.resize(f.spectra_.size());
    for (int d = 0; d < nd; ++d) {
        auto v = inverse_transform_1(f.spectrum(d), f.xi_grid_, f.z_grid_);
        std::copy(v.begin(), v.end(),
                  f.values_.begin() + static_cast<std::size_t>(d) * n);
    }
    return f;
}

ProfileFamily ProfileFamily::from_values(const Grid1D& z_grid, SphereQuadrature dirs,
                                         std::vector<cplx> values, double tau) {
    if (tau < 0.0) throw std::invalid_argument("ProfileFamily: tau must be >= 0");
    const int n = z_grid.n();
    const int nd = dirs.size();
    if (values.size() != static_cast<std::size_t>(n) * nd)
        throw std::invalid_argument("ProfileFamily: values size != n_dirs * n_z");

    ProfileFamily f(z_grid, z_grid.dual(), std::move(dirs), tau);
    f.values_ = std::move(values);
    f.spectra_.resize(f.values_.size());
    for (int d = 0; d < nd; ++d) {
        auto s = forward_transform_1(f.values(d), f.z_grid_, f.xi_grid_);
        std::copy(s.begin(), s.end(),
                  f.spectra_.begin() + static_cast<std::size_t>(d) * n);
    }
    return f;
}

bool ProfileFamily::has_half_line_spectrum(double tol) const {
    double peak = 0.0;
    for (const cplx& v : spectra_) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return true;
    const int n = xi_grid_.n();
    for (int d = 0; d < n_dirs(); ++d) {
        const auto s = spectrum(d);
        for (int m = 0; m < n; ++m)
            if (xi_grid_.node(m) < 0.0 && std::abs(s[m]) > tol * peak) return false;
    }
    return true;
}

cplx ProfileFamily::value_at(int dir, double z) const {
    return detail::interp_cubic(values(dir), z_grid_, z);
}

cplx ProfileFamily::value_at(const Vec3& q, double z) const {
    if (dim() == 1) {
        // exact: two directions, q = +-pole
        const auto& pole = directions_.pole();
        const double c = q[0] * pole[0];
        return value_at(c >= 0.0 ? 0 : 1, z);
    }
    // interpolate the z-line across directions: evaluate each direction at z
    // would be wasteful; instead interpolate per-direction interpolated values.
    // Directions vary smoothly, so interpolate the direction-indexed samples
    // of the z-interpolant.
    const int nd = n_dirs();
    std::vector<cplx> samples(nd);
    for (int d = 0; d < nd; ++d) samples[d] = value_at(d, z);
    return directions_.interpolate<cplx>(samples, q);
}

cplx ProfileFamily::spectrum_at(int dir, double xi) const {
    const auto v = values(dir);
    const double dz = z_grid_.spacing();
    const double z0 = z_grid_.min();
    // incremental rotation e^{-i dz xi}; drift over n steps is O(n*ulp)
    const cplx step = std::polar(1.0, -dz * xi);
    cplx rot = std::polar(1.0, -z0 * xi);
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
        acc += v[j] * rot;
        rot *= step;
    }
    return acc * dz;
}

cplx ProfileFamily::spectrum_deriv_at(int dir, double xi) const {
    const auto v = values(dir);
    const double dz = z_grid_.spacing();
    const double z0 = z_grid_.min();
    const cplx step = std::polar(1.0, -dz * xi);
    cplx rot = std::polar(1.0, -z0 * xi);
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
        acc += z_grid_.node(static_cast<int>(j)) * v[j] * rot;
        rot *= step;
    }
    return cplx(0.0, -1.0) * acc * dz;
}

double ProfileFamily::norm_xs() const {
    const double dz = z_grid_.spacing();
    double total = 0.0;
    for (int d = 0; d < n_dirs(); ++d) {
        const auto v = values(d);
        double s = 0.0;
        for (const cplx& x : v) s += std::norm(x);
        total += directions_.weight(d) * s * dz;
    }
    return std::sqrt(total);
}

double ProfileFamily::norm_xs_spectral() const {
    const double dxi = xi_grid_.spacing();
    double total = 0.0;
    for (int d = 0; d < n_dirs(); ++d) {
        const auto s = spectrum(d);
        double acc = 0.0;
        for (const cplx& x : s) acc += std::norm(x);
        total += directions_.weight(d) * acc * dxi / (2.0 * M_PI);
    }
    return std::sqrt(total);
}

} // namespace shellrec
