#ifndef SHELLREC_DISPERSION_HPP
#define SHELLREC_DISPERSION_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace shellrec {

enum class DispersionKind { Zero, Cubic, FullSqrt };

// Dispersion law b(xi) modifying the wave phase at rescaled time tau, plus
// the physical constants of the underlying wave model. The exact multiplier
// phase decomposes as Phi(k,t) = c*|k|*t + b(|k|)*eps^2*t for every kind;
// for FullSqrt b absorbs the full square-root law so that Phi equals
// sqrt(c^2 k^2 + eps^2 d0 k^4) * t exactly.
struct DispersionSpec {
    DispersionKind kind = DispersionKind::Zero;
    double b3 = 0.0;      // Cubic: b(xi) = b3 * xi^3
    double c = 1.0;       // wave speed
    double d0 = 0.0;      // FullSqrt: eps^2 d0 laplacian^2 coefficient
    double epsilon = 1.0; // FullSqrt scale separation

    static DispersionSpec zero(double c = 1.0, double epsilon = 1.0) {
        DispersionSpec s;
        s.kind = DispersionKind::Zero;
        s.c = check_pos(c, "c");
        s.epsilon = check_pos(epsilon, "epsilon");
        return s;
    }
    static DispersionSpec cubic(double b3, double c = 1.0, double epsilon = 1.0) {
        DispersionSpec s;
        s.kind = DispersionKind::Cubic;
        s.b3 = b3;
        s.c = check_pos(c, "c");
        s.epsilon = check_pos(epsilon, "epsilon");
        return s;
    }
    static DispersionSpec full_sqrt(double c, double d0, double epsilon) {
        DispersionSpec s;
        s.kind = DispersionKind::FullSqrt;
        s.c = check_pos(c, "c");
        s.d0 = check_pos(d0, "d0");
        s.epsilon = check_pos(epsilon, "epsilon");
        return s;
    }
    DispersionSpec with_epsilon(double eps) const {
        DispersionSpec s = *this;
        s.epsilon = check_pos(eps, "epsilon");
        return s;
    }

    static double check_pos(double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("DispersionSpec: ") + name +
                                        " must be positive");
        return v;
    }
};

inline double eval_b(const DispersionSpec& spec, double xi) {
    switch (spec.kind) {
    case DispersionKind::Zero:
        return 0.0;
    case DispersionKind::Cubic:
        return spec.b3 * xi * xi * xi;
    case DispersionKind::FullSqrt: {
        // (sqrt(c^2 xi^2 + eps^2 d0 xi^4) - c|xi|)/eps^2 in cancellation-free
        // form; tends to (d0/2c) xi^3 as eps -> 0.
        const double axi = std::abs(xi);
        const double root = std::sqrt(spec.c * spec.c * xi * xi +
                                      spec.epsilon * spec.epsilon * spec.d0 * xi * xi *
                                          xi * xi);
        const double denom = root + spec.c * axi;
        if (denom == 0.0) return 0.0;
        return spec.d0 * xi * xi * xi * xi / denom;
    }
    }
    return 0.0;
}

// Total phase Phi(k,t) with u_hat(k,t) = e^{-i Phi} u0_hat(k).
inline double exact_multiplier_phase(const DispersionSpec& spec, double k_norm, double t) {
    if (k_norm < 0.0) throw std::invalid_argument("exact_multiplier_phase: k_norm < 0");
    if (t < 0.0) throw std::invalid_argument("exact_multiplier_phase: t < 0");
    return spec.c * k_norm * t + eval_b(spec, k_norm) * spec.epsilon * spec.epsilon * t;
}

inline const char* dispersion_kind_name(DispersionKind k) {
    switch (k) {
    case DispersionKind::Zero: return "zero";
    case DispersionKind::Cubic: return "cubic";
    case DispersionKind::FullSqrt: return "fullsqrt";
    }
    return "?";
}

} // namespace shellrec

#endif
