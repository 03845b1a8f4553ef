#include "shellrec/sphere_quadrature.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace shellrec {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // root of P_n near the Chebyshev point, refined by Newton
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = 0.0, dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            p1 = 1.0;
            double p0 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p0;
                p0 = p1;
                p1 = ((2.0 * k + 1.0) * xi * p0 - k * p2) / (k + 1.0);
            }
            dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi; // ascending order
        x[n - 1 - i] = xi;
        const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
}

namespace {

Vec3 normalized(const Vec3& v) {
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(r > 0.0)) throw std::invalid_argument("sphere: zero direction");
    return {v[0] / r, v[1] / r, v[2] / r};
}

// Orthonormal frame with axis 0 = pole. In d=2 the third axis is unused.
std::array<Vec3, 3> make_frame(int dim, const Vec3& pole_in) {
    Vec3 a0 = normalized(pole_in);
    if (dim == 2 && std::abs(a0[2]) > 1e-14)
        throw std::invalid_argument("sphere: d=2 pole must lie in the plane");
    Vec3 a1;
    if (dim == 2) {
        a1 = {-a0[1], a0[0], 0.0};
    } else {
        // pick the seed axis least aligned with the pole
        Vec3 seed = {0.0, 0.0, 0.0};
        int least = 0;
        for (int a = 1; a < 3; ++a)
            if (std::abs(a0[a]) < std::abs(a0[least])) least = a;
        seed[least] = 1.0;
        const double dot = seed[0] * a0[0] + seed[1] * a0[1] + seed[2] * a0[2];
        a1 = normalized({seed[0] - dot * a0[0], seed[1] - dot * a0[1],
                         seed[2] - dot * a0[2]});
    }
    const Vec3 a2 = {a0[1] * a1[2] - a0[2] * a1[1], a0[2] * a1[0] - a0[0] * a1[2],
                     a0[0] * a1[1] - a0[1] * a1[0]};
    return {a0, a1, a2};
}

} // namespace

SphereQuadrature SphereQuadrature::make(int dim, int n_polar, int n_azimuth) {
    Vec3 e1 = {1.0, 0.0, 0.0};
    return aligned(dim, e1, n_polar, n_azimuth);
}

SphereQuadrature SphereQuadrature::aligned(int dim, const Vec3& pole, int n_polar,
                                           int n_azimuth) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("SphereQuadrature: dimension must be 1, 2 or 3");
    SphereQuadrature q;
    q.dim_ = dim;
    q.frame_ = make_frame(dim == 1 ? 3 : dim, pole);

    const auto& a0 = q.frame_[0];
    const auto& a1 = q.frame_[1];
    const auto& a2 = q.frame_[2];

    if (dim == 1) {
        q.n_polar_ = 2;
        q.nodes_ = {a0, {-a0[0], -a0[1], -a0[2]}};
        q.weights_ = {1.0, 1.0}; // |S^0| = 2
        return q;
    }
    if (n_polar < 4) throw std::invalid_argument("SphereQuadrature: too few polar nodes");

    if (dim == 2) {
        q.n_polar_ = n_polar;
        q.nodes_.resize(n_polar);
        q.weights_.assign(n_polar, 2.0 * M_PI / n_polar);
        q.angles_.resize(n_polar);
        for (int i = 0; i < n_polar; ++i) {
            const double th = -M_PI + 2.0 * M_PI * (i + 1) / n_polar;
            q.angles_[i] = th;
            const double ct = std::cos(th), st = std::sin(th);
            q.nodes_[i] = {ct * a0[0] + st * a1[0], ct * a0[1] + st * a1[1],
                           ct * a0[2] + st * a1[2]};
        }
        return q;
    }

    if (n_azimuth <= 0) n_azimuth = 24;
    q.n_polar_ = n_polar;
    q.n_azimuth_ = n_azimuth;
    std::vector<double> u, wu;
    gauss_legendre(n_polar, u, wu);
    q.angles_.resize(n_polar);
    q.nodes_.resize(static_cast<std::size_t>(n_polar) * n_azimuth);
    q.weights_.resize(q.nodes_.size());
    const double wphi = 2.0 * M_PI / n_azimuth;
    for (int i = 0; i < n_polar; ++i) {
        // ascending theta = descending u
        const double ui = u[n_polar - 1 - i];
        const double wi = wu[n_polar - 1 - i];
        q.angles_[i] = std::acos(ui);
        const double s = std::sqrt(std::max(0.0, 1.0 - ui * ui));
        for (int j = 0; j < n_azimuth; ++j) {
            const double ph = wphi * j;
            const double cp = std::cos(ph), sp = std::sin(ph);
            Vec3& n = q.nodes_[static_cast<std::size_t>(i) * n_azimuth + j];
            for (int a = 0; a < 3; ++a)
                n[a] = ui * a0[a] + s * (cp * a1[a] + sp * a2[a]);
            q.weights_[static_cast<std::size_t>(i) * n_azimuth + j] = wi * wphi;
        }
    }
    return q;
}

int SphereQuadrature::oscillation_nodes(double N) {
    return static_cast<int>(std::ceil(8.0 * std::max(N, 0.0) / (2.0 * M_PI))) + 16;
}

SphereQuadrature SphereQuadrature::for_oscillation(int dim, const Vec3& pole, double N,
                                                   double quad_scale, int n_azimuth) {
    int n = static_cast<int>(std::ceil(oscillation_nodes(N) * std::max(quad_scale, 1e-9)));
    if (n < 4) n = 4;
    return aligned(dim, pole, n, n_azimuth);
}

double SphereQuadrature::weight_sum() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

std::array<double, 2> SphereQuadrature::frame_angles(const Vec3& q) const {
    const auto& a0 = frame_[0];
    const auto& a1 = frame_[1];
    const auto& a2 = frame_[2];
    const double c0 = q[0] * a0[0] + q[1] * a0[1] + q[2] * a0[2];
    const double c1 = q[0] * a1[0] + q[1] * a1[1] + q[2] * a1[2];
    const double c2 = q[0] * a2[0] + q[1] * a2[1] + q[2] * a2[2];
    return {c0, std::atan2(c2, c1)};
}

template <typename T>
T SphereQuadrature::interpolate(std::span<const T> data, const Vec3& q) const {
    if (dim_ == 1) {
        const double c = q[0] * frame_[0][0] + q[1] * frame_[0][1] + q[2] * frame_[0][2];
        return c >= 0.0 ? data[0] : data[1];
    }
    if (dim_ == 2) {
        const auto& a0 = frame_[0];
        const auto& a1 = frame_[1];
        const double c = q[0] * a0[0] + q[1] * a0[1];
        const double s = q[0] * a1[0] + q[1] * a1[1];
        const double th = std::atan2(s, c);
        const int n = n_polar_;
        const double dth = 2.0 * M_PI / n;
        // angles_[i] = -pi + (i+1) dth; fractional index:
        double t = (th + M_PI) / dth - 1.0;
        double base = std::floor(t);
        const double f = t - base;
        T acc{};
        // periodic 4-point Lagrange around base-1 .. base+2
        for (int m = -1; m <= 2; ++m) {
            double w = 1.0;
            for (int l = -1; l <= 2; ++l)
                if (l != m) w *= (f - l) / (m - l);
            int idx = static_cast<int>(base) + m;
            idx = ((idx % n) + n) % n;
            acc += w * data[idx];
        }
        return acc;
    }
    // d=3: bilinear in (theta, azimuth) in this frame
    const auto [c0, phi] = frame_angles(q);
    const double th = std::acos(std::min(1.0, std::max(-1.0, c0)));
    const int np = n_polar_, na = n_azimuth_;
    // bracket theta in the ascending angle table, clamped at the caps
    int i0 = 0;
    if (th <= angles_.front()) {
        i0 = 0;
    } else if (th >= angles_.back()) {
        i0 = np - 2;
    } else {
        int lo = 0, hi = np - 1;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (angles_[mid] <= th ? lo : hi) = mid;
        }
        i0 = lo;
    }
    double ft = (th - angles_[i0]) / (angles_[i0 + 1] - angles_[i0]);
    ft = std::min(1.0, std::max(0.0, ft));
    const double dphi = 2.0 * M_PI / na;
    double p = phi / dphi;
    if (p < 0.0) p += na;
    const int j0 = static_cast<int>(std::floor(p)) % na;
    const double fp = p - std::floor(p);
    const int j1 = (j0 + 1) % na;
    auto at = [&](int i, int j) -> const T& {
        return data[static_cast<std::size_t>(i) * na + j];
    };
    return (1.0 - ft) * ((1.0 - fp) * at(i0, j0) + fp * at(i0, j1)) +
           ft * ((1.0 - fp) * at(i0 + 1, j0) + fp * at(i0 + 1, j1));
}

template std::complex<double> SphereQuadrature::interpolate<std::complex<double>>(
    std::span<const std::complex<double>>, const Vec3&) const;
template double SphereQuadrature::interpolate<double>(std::span<const double>,
                                                      const Vec3&) const;

} // namespace shellrec
