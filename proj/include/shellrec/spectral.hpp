#ifndef SHELLREC_SPECTRAL_HPP
#define SHELLREC_SPECTRAL_HPP

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "shellrec/grid.hpp"

namespace shellrec {

using cplx = std::complex<double>;

// Sampled d-dimensional Fourier data u0hat on a k-grid, optionally backed by
// the continuous function it represents (for off-grid queries along rays).
// If a compact-support radius is declared, the field is zero beyond it.
class FourierField {
public:
    using Closure = std::function<cplx(std::span<const double>)>;

    FourierField(GridD kgrid, std::vector<cplx> values,
                 std::optional<double> support_radius = std::nullopt,
                 Closure closure = nullptr);
    // Closure-only field (no samples); evaluable everywhere.
    FourierField(int dim, Closure closure,
                 std::optional<double> support_radius = std::nullopt);

    int dim() const { return dim_; }
    bool has_grid() const { return grid_.has_value(); }
    const GridD& grid() const;
    std::span<const cplx> values() const { return values_; }
    bool has_closure() const { return static_cast<bool>(closure_); }
    std::optional<double> support_radius() const { return support_radius_; }

    // Closure if present, else cubic interpolation of the grid values.
    // Outside the grid: zero beyond a declared support radius, error otherwise.
    cplx operator()(std::span<const double> k) const;
    cplx at(double k0, double k1 = 0.0, double k2 = 0.0) const;

private:
    int dim_;
    std::optional<GridD> grid_;
    std::vector<cplx> values_;
    Closure closure_;
    std::optional<double> support_radius_;
};

// Discrete approximation of the continuous transform
//   u0hat(k) = int u(x) e^{-i k.x} dx
// on the dual grid (grid spacing absorbed into the sum; no 2*pi in the
// forward kernel). Input is row-major over xgrid.
FourierField forward_transform_d(std::span<const cplx> u, const GridD& xgrid);
FourierField forward_transform_d(const std::function<cplx(std::span<const double>)>& u,
                                 const GridD& xgrid);

// Same quadrature evaluated at a single, arbitrary frequency k.
cplx forward_transform_at(std::span<const cplx> u, const GridD& xgrid,
                          std::span<const double> k);

// Discrete approximation of (1/2pi) int e^{i z xi} Vhat(xi) dxi, sampled on
// z_grid. xi_grid and z_grid must form a dual pair; the round trip
// forward -> inverse is then the identity up to rounding.
std::vector<cplx> inverse_transform_1(std::span<const cplx> vhat,
                                      const Grid1D& xi_grid, const Grid1D& z_grid);

// Forward 1D companion: Vhat(xi_m) = dz * sum_j V(z_j) e^{-i z_j xi_m}.
std::vector<cplx> forward_transform_1(std::span<const cplx> v,
                                      const Grid1D& z_grid, const Grid1D& xi_grid);

namespace detail {

// In-place unnormalized DFT over the given dims; sign -1 forward (e^{-i...}),
// +1 backward. Thread-safe (the FFTW planner is serialized internally).
void dft(cplx* data, const int* dims, int rank, int sign);

// 4-point Lagrange interpolation on a uniform grid; zero outside.
cplx interp_cubic(std::span<const cplx> vals, const Grid1D& grid, double x);

} // namespace detail

} // namespace shellrec

#endif
