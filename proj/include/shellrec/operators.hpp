#ifndef SHELLREC_OPERATORS_HPP
#define SHELLREC_OPERATORS_HPP

#include <atomic>
#include <memory>
#include <optional>

#include "shellrec/dispersion.hpp"
#include "shellrec/profile.hpp"
#include "shellrec/regularizer.hpp"
#include "shellrec/spectral.hpp"

namespace shellrec {

// Profile extraction along rays:
//   Vhat(xi, q) = (|xi|/2 pi i)^{(d-1)/2} 1_{xi>0} u0hat(|xi| q)
// sampled on xi_grid x directions. The complex root uses the principal
// branch, i^{1/2} = e^{i pi/4}.
ProfileFamily restrict_profiles(const FourierField& u0hat, const SphereQuadrature& directions,
                                const Grid1D& xi_grid);

// Regularized variant: |xi|^{(d-1)/2} 1_{xi>0} replaced by W_rho(xi).
ProfileFamily restrict_profiles_regularized(const FourierField& u0hat, const Regularizer& reg,
                                            const SphereQuadrature& directions,
                                            const Grid1D& xi_grid);

// Diagonal profile evolution: multiplies each spectral value by
// e^{-i b(xi) tau}. Pointwise moduli are preserved exactly.
ProfileFamily evolve(const ProfileFamily& profile, const DispersionSpec& b, double tau);

// Shell-like function on R^d built from a profile family at tau = eps^2 t:
//   (S V)(x) = (ct)^{-(d-1)/2} 1_{|x|<2ct} V(|x|-ct, x/|x|, eps^2 t).
// x = 0 has no direction; the evaluator returns 0 there and counts the hit.
class ShellField {
public:
    ShellField(std::shared_ptr<const ProfileFamily> profile, double c, double epsilon,
               double t);

    int dim() const { return profile_->dim(); }
    double c() const { return c_; }
    double epsilon() const { return epsilon_; }
    double t() const { return t_; }
    double ct() const { return c_ * t_; }
    const ProfileFamily& profile() const { return *profile_; }

    cplx operator()(std::span<const double> x) const;
    cplx at(double x0, double x1 = 0.0, double x2 = 0.0) const;

    long long degenerate_hits() const { return degenerate_->load(); }

    // ||S V||_{L^2(R^d)} by polar integration on the profile's z-nodes;
    // bounded by 2^{(d-1)/2} ||V||_{X_S} by construction.
    double norm_l2() const;

private:
    std::shared_ptr<const ProfileFamily> profile_;
    double c_, epsilon_, t_;
    std::shared_ptr<std::atomic<long long>> degenerate_;
};

// Validates that the profile is already at tau = eps^2 t (no interpolation
// in tau is performed).
ShellField shell(std::shared_ptr<const ProfileFamily> profile, double c, double epsilon,
                 double t);
ShellField shell(const ProfileFamily& profile, double c, double epsilon, double t);

// Full reconstruction: shell of the inverse-transformed, evolved restriction.
// With reg absent the sharp restriction is used.
ShellField reconstruct(const FourierField& u0hat, const DispersionSpec& b,
                       const std::optional<Regularizer>& reg,
                       const SphereQuadrature& directions, const Grid1D& xi_grid,
                       double c, double epsilon, double t);

} // namespace shellrec

#endif
