#ifndef SHELLREC_STATIONARY_PHASE_HPP
#define SHELLREC_STATIONARY_PHASE_HPP

#include <complex>
#include <functional>
#include <string>

#include "shellrec/sphere_quadrature.hpp"

namespace shellrec {

using cplx = std::complex<double>;

// Test function on S^{d-1}, continuously differentiable and supported on the
// half sphere {q . kappa >= 0} around its declared pole kappa.
struct HalfSphereTestFn {
    int dim;
    Vec3 pole;
    std::function<double(const Vec3&)> eval;
};

// Built-ins (all have phi(kappa) = 1):
//   "cos2"   max(q.kappa, 0)^2          C^1
//   "cos4"   max(q.kappa, 0)^4          C^3
//   "cos8"   max(q.kappa, 0)^8          C^7
//   "expcap" exp(-(1-u)/u) for u=q.kappa>0, else 0   C^inf
HalfSphereTestFn named_test_fn(const std::string& name, int dim,
                               const Vec3& pole = {1.0, 0.0, 0.0});

// Spherical stationary-phase functional
//   A^N_phi = (2 pi i)^{-(d-1)/2} int_{S^{d-1}} N^{(d-1)/2}
//             e^{i(1-q.kappa)N} phi(q) dS(q),
// which tends to phi(kappa) as N -> infinity. In d=1 the sum has two terms
// and A^N_phi = phi(kappa) exactly. For d >= 2 the quadrature must resolve
// the oscillation (SphereQuadrature::resolves), otherwise a ResolutionError
// is thrown; for d=3 the quadrature must be aligned with the pole.
cplx stationary_phase_functional(const HalfSphereTestFn& phi, double N,
                                 const SphereQuadrature& quad);

// Oscillatory model integral of the equator split,
//   I_N = int_0^{N^-beta} N^{1/2} e^{i(1-cos theta)N} d theta,
// which tends to (1/2) sqrt(pi) (1+i) for beta in (1/6, 1/2).
struct OscillatoryIntegralSpec {
    double beta;
    double N;
    OscillatoryIntegralSpec(double beta_, double N_);
};

// Composite Gauss-Legendre with oscillation-resolving panel count
// (relative quadrature error far below 1e-8).
cplx oscillatory_integral(const OscillatoryIntegralSpec& spec);

// The substituted form int_0^{(1-cos N^-beta)N} e^{iz} / (N^{1/2} sin
// theta(z)) dz, evaluated through z = p^2 to tame the endpoint; agrees with
// the direct theta-quadrature to quadrature precision.
cplx oscillatory_integral_substituted(const OscillatoryIntegralSpec& spec);

// (int_0^inf cos(x^2) dx, int_0^inf sin(x^2) dx) by panel quadrature plus an
// asymptotic tail series; both components equal sqrt(pi)/(2 sqrt(2)).
std::pair<double, double> fresnel_oracle();

} // namespace shellrec

#endif
