#ifndef SHELLREC_ANALYSIS_HPP
#define SHELLREC_ANALYSIS_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "shellrec/dispersion.hpp"
#include "shellrec/operators.hpp"
#include "shellrec/profile.hpp"

namespace shellrec {

// Built-in initial data in Fourier space (closure-backed fields).
//   "default":  exp(-8(|k|-1)^2) exp(-|k|^2/32), truncated at |k| > 4
//   "gaussian": exp(-|k|^2/2)
FourierField default_initial_data(int dim);
FourierField gaussian_initial_data(int dim);
FourierField named_initial_data(const std::string& name, int dim);

// e^{i c|k| tau/eps^2} (F_d S V)(k, tau/eps^2) computed by double quadrature
// over (z, q) in polar coordinates -- no d-dimensional grid is formed:
//   int_{|z|<ct} int_{S^{d-1}} (ct+z)^{d-1}/(ct)^{(d-1)/2}
//       e^{-i q.k (ct+z)} V(z,q,tau) dS(q) dz,   ct = c tau / eps^2.
// Preconditions: |k| > 0 and the profile's direction set resolves
// N = |k| c tau / eps^2 (ResolutionError otherwise); the profile spectra
// must vanish on xi < 0.
cplx qhat_polar(const ProfileFamily& profile, std::span<const double> k, double c,
                double epsilon, double tau);

// Leading term of the decomposition: the z-integral collapses to the profile
// spectrum at xi = q.k, leaving a sphere integral.
//   order 0 (any d):  sum_q w_q (ct)^{(d-1)/2} e^{i(|k|-q.k)ct} Vhat(q.k,q)
//   order 1 (d=3):    kernel ct Vhat(q.k,q) + 2 i dVhat/dxi(q.k,q)
cplx a_term(const ProfileFamily& profile, std::span<const double> k, double c,
            double epsilon, double tau, int order = 0);

// Remainder with the bracketed kernel difference; qhat_polar = a_term +
// g_term holds to rounding because the same nodes and profile data are used.
cplx g_term(const ProfileFamily& profile, std::span<const double> k, double c,
            double epsilon, double tau, int order = 0);

// Exact Fourier-multiplier evolution e^{-i Phi(|k|,t)} u0hat(k).
cplx reference_solution(const FourierField& u0hat, const DispersionSpec& spec,
                        std::span<const double> k, double t);

struct StudyOptions {
    double c = 1.0;
    double z_half_width = 64.0;
    int n_z = 0;          // 0: 4096 for d<=2, 2048 for d=3
    int n_azimuth = 24;   // d=3 only
    double quad_scale = 1.0;
    int threads = 1;
    int default_n_z(int dim) const { return n_z > 0 ? n_z : (dim == 3 ? 2048 : 4096); }
};

struct ConvergenceRecord {
    double epsilon;
    std::array<double, 3> k;
    double k_norm;
    cplx qhat;      // e^{ic|k|tau/eps^2} Qhat_b^rho u0hat(k, tau/eps^2)
    cplx reference; // e^{-i b(|k|) tau} u0hat(k)
    double abs_error;
    cplx a;         // order 0 for d<=2, order 1 for d=3
    double g_abs;
    double wall_ms;
};

struct ConvergenceReport {
    int dim;
    DispersionSpec b;
    double rho;
    double tau;
    std::vector<ConvergenceRecord> records; // k-major, epsilon in given order
};

// Pointwise comparison of the regularized reconstruction against the
// multiplier solution for each (k, eps); every |k| must exceed rho.
ConvergenceReport pointwise_convergence_study(
    const FourierField& u0hat, const DispersionSpec& b, const Regularizer& reg,
    std::span<const std::array<double, 3>> k_list, double tau,
    std::span<const double> eps_list, const StudyOptions& opts = {});

struct WeakPairingOptions {
    std::array<double, 3> box_min{0.0, 0.0, 0.0};
    std::array<double, 3> box_max{0.0, 0.0, 0.0};
    int nodes_per_axis = 33;
    StudyOptions study;
};

// Pairing int (Qhat_b u0hat e^{ic|k|tau/eps^2} - e^{-ib(|k|)tau} u0hat) f dk
// on a tensor trapezoid grid over the support box of f, one value per eps;
// the non-regularized restriction is used.
std::vector<cplx> weak_pairing_check(
    const FourierField& u0hat, const DispersionSpec& b,
    const std::function<double(std::span<const double>)>& f, double tau,
    std::span<const double> eps_list, const WeakPairingOptions& opts);

namespace detail {
// Deterministic-order parallel map over [0, n).
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);
} // namespace detail

} // namespace shellrec

#endif
