#ifndef SHELLREC_REGULARIZER_HPP
#define SHELLREC_REGULARIZER_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shellrec {

// Smooth cutoff W_rho replacing |xi|^{(d-1)/2} 1_{xi>0}:
//   W_rho(xi) = 0                                   for xi <= 0,
//   W_rho(xi) = |xi|^{(d-1)/2} * s_m(xi/rho)        for 0 < xi < rho,
//   W_rho(xi) = |xi|^{(d-1)/2}                      for xi >= rho,
// where s_m is the polynomial smoothstep of order m = d-1:
//   s_0(u) = u,  s_1(u) = u^2 (3 - 2u),  s_2(u) = u^3 (10 - 15u + 6u^2).
// Since s_m(1) = 1 and its first m derivatives vanish at u = 1, W_rho is
// C^{d-1} across xi = rho; near xi = 0 the blend behaves like
// xi^{(d-1)/2 + m + 1}, which is C^{d-1} there as well. The result always
// satisfies 0 <= W_rho(xi) <= |xi|^{(d-1)/2}.
struct Regularizer {
    double rho;
    int dim;

    Regularizer(double rho_, int dim_) : rho(rho_), dim(dim_) {
        if (!(rho > 0.0)) throw std::invalid_argument("Regularizer: rho must be positive");
        if (dim < 1 || dim > 3)
            throw std::invalid_argument("Regularizer: dimension must be 1, 2 or 3");
    }
    int order() const { return dim - 1; } // smoothness class C^{d-1}
};

inline double smoothstep(int order, double u) {
    u = std::clamp(u, 0.0, 1.0);
    switch (order) {
    case 0: return u;
    case 1: return u * u * (3.0 - 2.0 * u);
    default: return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    }
}

inline double regularizer_eval(const Regularizer& reg, double xi) {
    if (xi <= 0.0) return 0.0;
    const double envelope = std::pow(xi, 0.5 * (reg.dim - 1));
    if (xi >= reg.rho) return envelope;
    const double v = envelope * smoothstep(reg.order(), xi / reg.rho);
    return std::clamp(v, 0.0, envelope);
}

} // namespace shellrec

#endif
