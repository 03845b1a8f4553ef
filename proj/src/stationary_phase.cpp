#include "shellrec/stationary_phase.hpp"

#include <cmath>
#include <stdexcept>

#include "shellrec/errors.hpp"

namespace shellrec {

HalfSphereTestFn named_test_fn(const std::string& name, int dim, const Vec3& pole) {
    double nrm = std::sqrt(pole[0] * pole[0] + pole[1] * pole[1] + pole[2] * pole[2]);
    if (!(nrm > 0.0)) throw std::invalid_argument("named_test_fn: zero pole");
    Vec3 k = {pole[0] / nrm, pole[1] / nrm, pole[2] / nrm};
    auto dot = [k](const Vec3& q) { return q[0] * k[0] + q[1] * k[1] + q[2] * k[2]; };
    HalfSphereTestFn fn;
    fn.dim = dim;
    fn.pole = k;
    if (name == "cos2") {
        fn.eval = [dot](const Vec3& q) {
            const double u = dot(q);
            return u > 0.0 ? u * u : 0.0;
        };
    } else if (name == "cos4") {
        fn.eval = [dot](const Vec3& q) {
            const double u = dot(q);
            return u > 0.0 ? u * u * u * u : 0.0;
        };
    } else if (name == "cos8") {
        fn.eval = [dot](const Vec3& q) {
            const double u = dot(q);
            if (u <= 0.0) return 0.0;
            const double u2 = u * u;
            return u2 * u2 * u2 * u2;
        };
    } else if (name == "expcap") {
        fn.eval = [dot](const Vec3& q) {
            const double u = dot(q);
            return u > 0.0 ? std::exp(-(1.0 - u) / u) : 0.0;
        };
    } else {
        throw std::invalid_argument("named_test_fn: unknown test function '" + name + "'");
    }
    return fn;
}

namespace {

// (2 pi i)^{-(d-1)/2}, principal branch
cplx inv_root(int d) {
    switch (d) {
    case 1: return cplx(1.0, 0.0);
    case 2: return std::polar(1.0 / std::sqrt(2.0 * M_PI), -M_PI / 4.0);
    default: return cplx(0.0, -1.0 / (2.0 * M_PI));
    }
}

} // namespace

cplx stationary_phase_functional(const HalfSphereTestFn& phi, double N,
                                 const SphereQuadrature& quad) {
    if (!(N >= 0.0) || !std::isfinite(N))
        throw std::invalid_argument("stationary_phase_functional: bad N");
    const int d = phi.dim;
    if (d == 1) {
        // S^0 = {+kappa, -kappa}: exact two-term sum
        const Vec3 minus = {-phi.pole[0], -phi.pole[1], -phi.pole[2]};
        return phi.eval(phi.pole) +
               std::polar(1.0, 2.0 * N) * phi.eval(minus);
    }
    if (quad.dim() != d)
        throw std::invalid_argument("stationary_phase_functional: quadrature dimension");
    if (!quad.resolves(N))
        throw ResolutionError(
            "stationary_phase_functional: quadrature has " +
            std::to_string(quad.n_polar()) + " polar nodes but the phase needs >= " +
            std::to_string(SphereQuadrature::oscillation_nodes(N)));
    if (d == 3) {
        const Vec3& p = quad.pole();
        const double align =
            p[0] * phi.pole[0] + p[1] * phi.pole[1] + p[2] * phi.pole[2];
        if (align < 1.0 - 1e-9)
            throw std::invalid_argument(
                "stationary_phase_functional: d=3 quadrature must be aligned "
                "with the test function's pole");
    }

    const double amp = std::pow(N, 0.5 * (d - 1));
    cplx acc(0.0, 0.0);
    for (int i = 0; i < quad.size(); ++i) {
        const Vec3& q = quad.node(i);
        const double f = phi.eval(q);
        if (f == 0.0) continue;
        const double dot = q[0] * phi.pole[0] + q[1] * phi.pole[1] + q[2] * phi.pole[2];
        acc += quad.weight(i) * f * std::polar(amp, (1.0 - dot) * N);
    }
    return inv_root(d) * acc;
}

OscillatoryIntegralSpec::OscillatoryIntegralSpec(double beta_, double N_)
    : beta(beta_), N(N_) {
    if (!(beta > 1.0 / 6.0) || !(beta < 0.5))
        throw std::invalid_argument(
            "OscillatoryIntegralSpec: beta must lie strictly in (1/6, 1/2)");
    if (!(N > 0.0) || !std::isfinite(N))
        throw std::invalid_argument("OscillatoryIntegralSpec: N must be positive");
}

namespace {

struct GL16 {
    std::vector<double> x, w;
    GL16() { gauss_legendre(16, x, w); }
};

// composite 16-point Gauss-Legendre over [a, b] split into `panels` panels
template <typename F>
cplx composite_gl(F&& f, double a, double b, int panels) {
    static const GL16 gl; // magic static: thread-safe init
    const auto& gx = gl.x;
    const auto& gw = gl.w;
    const double h = (b - a) / panels;
    cplx total(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        cplx acc(0.0, 0.0);
        for (int i = 0; i < 16; ++i)
            acc += gw[i] * f(lo + 0.5 * h * (gx[i] + 1.0));
        total += 0.5 * h * acc;
    }
    return total;
}

int oscillation_panels(double phase_span) {
    return std::max(8, static_cast<int>(std::ceil(phase_span / M_PI * 2.0)) + 4);
}

} // namespace

namespace {

// (1 - cos(theta)) * N without the 1 - cos cancellation
double phase_1mcos(double theta, double N) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s * N;
}

} // namespace

cplx oscillatory_integral(const OscillatoryIntegralSpec& spec) {
    const double N = spec.N;
    const double tmax = std::pow(N, -spec.beta);
    const double span = phase_1mcos(std::min(tmax, M_PI), N);
    const int panels = oscillation_panels(span);
    const double amp = std::sqrt(N);
    return composite_gl(
        [N, amp](double th) { return std::polar(amp, phase_1mcos(th, N)); }, 0.0, tmax,
        panels);
}

cplx oscillatory_integral_substituted(const OscillatoryIntegralSpec& spec) {
    // z = (1-cos theta) N, then z = p^2. With sin(theta(z)) =
    // sqrt(2z/N) sqrt(1 - z/(2N)), the kernel 2p / (N^{1/2} sin theta(z))
    // simplifies exactly to sqrt(2)/sqrt(1 - z/(2N)), which is also stable
    // for z/N near 0; T = (1-cos N^{-beta}) N.
    const double N = spec.N;
    const double tmax = std::pow(N, -spec.beta);
    const double T = phase_1mcos(std::min(tmax, M_PI), N);
    const double pmax = std::sqrt(T);
    const int panels = oscillation_panels(T);
    auto integrand = [N](double p) -> cplx {
        const double z = p * p;
        const double kernel = std::sqrt(2.0) / std::sqrt(1.0 - z / (2.0 * N));
        return kernel * std::polar(1.0, z);
    };
    return composite_gl(integrand, 0.0, pmax, panels);
}

std::pair<double, double> fresnel_oracle() {
    // head: int_0^X e^{i x^2} dx by phase-resolving panels
    const double X = 8.0;
    const int panels = oscillation_panels(X * X);
    const cplx head =
        composite_gl([](double x) { return std::polar(1.0, x * x); }, 0.0, X, panels);

    // tail: repeated integration by parts of int_{X^2}^inf e^{iu}/(2 sqrt(u)) du
    // gives e^{iA} sum_m i^{m+1} g^{(m)}(A) with g(u) = 1/(2 sqrt(u)),
    // g^{(m)}(A) = (-1)^m (2m-1)!! / (2^{m+1} A^{m+1/2}); truncation below
    // 1e-14 at A = 64 with 12 terms.
    const double A = X * X;
    cplx sum(0.0, 0.0);
    double deriv = 0.5 / std::sqrt(A); // g^{(0)}(A)
    cplx ipow(0.0, 1.0);               // i^{m+1}
    for (int m = 0; m < 12; ++m) {
        sum += ipow * deriv;
        deriv *= -(2.0 * m + 1.0) / (2.0 * A);
        ipow *= cplx(0.0, 1.0);
    }
    const cplx tail = std::polar(1.0, A) * sum;

    const cplx total = head + tail;
    return {total.real(), total.imag()};
}

} // namespace shellrec
