#ifndef SHELLREC_PROFILE_HPP
#define SHELLREC_PROFILE_HPP

#include <span>
#include <vector>

#include "shellrec/grid.hpp"
#include "shellrec/spectral.hpp"
#include "shellrec/sphere_quadrature.hpp"

namespace shellrec {

// Family of one-dimensional profiles V(z, q, tau), one per quadrature
// direction q, held both as spectra Vhat(xi, q) on the xi-grid and as
// physical values on the dual z-grid. Immutable after construction.
class ProfileFamily {
public:
    // From spectra on xi_grid; the z-grid is the dual grid and physical
    // values are filled by the inverse transform.
    static ProfileFamily from_spectra(const Grid1D& xi_grid, SphereQuadrature dirs,
                                      std::vector<cplx> spectra, double tau);
    // From physical samples on z_grid; spectra filled by the forward
    // transform on the dual grid.
    static ProfileFamily from_values(const Grid1D& z_grid, SphereQuadrature dirs,
                                     std::vector<cplx> values, double tau);

    int dim() const { return directions_.dim(); }
    double tau() const { return tau_; }
    const Grid1D& xi_grid() const { return xi_grid_; }
    const Grid1D& z_grid() const { return z_grid_; }
    const SphereQuadrature& directions() const { return directions_; }
    int n_dirs() const { return directions_.size(); }

    std::span<const cplx> spectrum(int dir) const {
        return {spectra_.data() + static_cast<std::size_t>(dir) * xi_grid_.n(),
                static_cast<std::size_t>(xi_grid_.n())};
    }
    std::span<const cplx> values(int dir) const {
        return {values_.data() + static_cast<std::size_t>(dir) * z_grid_.n(),
                static_cast<std::size_t>(z_grid_.n())};
    }

    // Vhat(xi, q) = 0 for xi < 0 (up to `tol` relative to the peak)?
    bool has_half_line_spectrum(double tol = 1e-12) const;

    // Cubic interpolation in z on one direction's values (zero outside grid).
    cplx value_at(int dir, double z) const;
    // Profile value at an arbitrary unit direction via the quadrature's
    // direction interpolation.
    cplx value_at(const Vec3& q, double z) const;

    // Semi-discrete transform of the gridded profile at arbitrary frequency:
    //   dz * sum_j V(z_j, q) e^{-i z_j xi}
    // Coincides with spectrum(dir) at grid frequencies; this is the exact
    // spectrum of the discrete profile, so identities that pair z-sums with
    // spectrum evaluations close to rounding.
    cplx spectrum_at(int dir, double xi) const;
    // d/dxi of the above: -i * dz * sum_j z_j V(z_j, q) e^{-i z_j xi}.
    cplx spectrum_deriv_at(int dir, double xi) const;

    // Discrete L^2(R x S^{d-1}) norms.
    double norm_xs() const;          // from physical values
    double norm_xs_spectral() const; // from spectra via Parseval

private:
    ProfileFamily(Grid1D z, Grid1D xi, SphereQuadrature dirs, double tau)
        : z_grid_(z), xi_grid_(xi), directions_(std::move(dirs)), tau_(tau) {}

    Grid1D z_grid_, xi_grid_;
    SphereQuadrature directions_;
    double tau_;
    std::vector<cplx> spectra_; // [dir][xi]
    std::vector<cplx> values_;  // [dir][z]
};

} // namespace shellrec

#endif
