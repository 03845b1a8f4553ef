#include <doctest.h>

#include <cmath>
#include <random>

#include "shellrec/spectral.hpp"

using namespace shellrec;

namespace {

// smooth compactly-supported-looking sample: random Gaussian mixture
std::vector<cplx> random_smooth(const GridD& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> width(0.5, 1.5);
    struct Bump {
        double a, b;
        std::array<double, 3> c;
        double w;
    };
    std::vector<Bump> bumps(4);
    for (auto& bp : bumps) {
        bp.a = amp(rng);
        bp.b = amp(rng);
        for (int i = 0; i < 3; ++i) bp.c[i] = center(rng);
        bp.w = width(rng);
    }
    std::vector<cplx> u(g.size());
    for (std::size_t idx = 0; idx < u.size(); ++idx) {
        const auto x = g.point(idx);
        cplx v(0.0, 0.0);
        for (const auto& bp : bumps) {
            double r2 = 0.0;
            for (int a = 0; a < g.dim(); ++a) r2 += (x[a] - bp.c[a]) * (x[a] - bp.c[a]);
            v += cplx(bp.a, bp.b) * std::exp(-r2 / (2.0 * bp.w * bp.w));
        }
        u[idx] = v;
    }
    return u;
}

double l2_x(const std::vector<cplx>& u, const GridD& g) {
    double s = 0.0;
    for (const cplx& v : u) s += std::norm(v);
    return std::sqrt(s * g.cell_volume());
}

} // namespace

TEST_CASE("Grid1D invariants and dual pairing") {
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Grid1D(1.0, 1.0, 8), std::invalid_argument);
    Grid1D g(-64.0, 64.0, 4096);
    CHECK(g.spacing() == doctest::Approx(128.0 / 4095));
    Grid1D d = g.dual();
    CHECK(d.n() == g.n());
    CHECK(g.is_dual_pair(d));
    CHECK(d.is_dual_pair(g));
    // nodes strictly increasing
    CHECK(g.node(1) > g.node(0));
    // mismatched pair rejected
    Grid1D other(-64.0, 64.0, 2048);
    CHECK_FALSE(other.is_dual_pair(d));
}

TEST_CASE("GridD accepts only dimensions 1 to 3") {
    CHECK_THROWS_AS(GridD(std::vector<Grid1D>{}), std::invalid_argument);
    CHECK_THROWS_AS(GridD(std::vector<Grid1D>(4, Grid1D(0.0, 1.0, 4))),
                    std::invalid_argument);
    CHECK(GridD::cube(3, -1.0, 1.0, 4).size() == 64);
}

TEST_CASE("forward transform of a discrete delta is flat") {
    // point mass: 1/spacing at x=0, zero elsewhere -> u_hat(k) = 1 for all k;
    // 65 nodes put x=0 exactly on node 32
    Grid1D ax65(-8.0, 8.0, 65);
    GridD g({ax65});
    std::vector<cplx> u(g.size(), cplx(0.0, 0.0));
    u[32] = cplx(1.0 / ax65.spacing(), 0.0);
    const FourierField f = forward_transform_d(u, g);
    for (int m = 0; m < 65; m += 7)
        CHECK(std::abs(f.values()[m] - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("forward transform of a Gaussian matches the closed form") {
    // u(x) = e^{-x^2/2} -> u_hat(k) = sqrt(2 pi) e^{-k^2/2}
    Grid1D ax(-16.0, 16.0, 512);
    GridD g({ax});
    std::vector<cplx> u(g.size());
    for (int j = 0; j < ax.n(); ++j)
        u[j] = std::exp(-0.5 * ax.node(j) * ax.node(j));
    const FourierField f = forward_transform_d(u, g);
    const GridD kg = f.grid();
    for (int m = 0; m < kg.axis(0).n(); ++m) {
        const double k = kg.axis(0).node(m);
        if (std::abs(k) > 6.0) continue;
        const cplx expect(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * k * k), 0.0);
        CHECK(std::abs(f.values()[m] - expect) < 1e-12);
    }
}

TEST_CASE("convention lock: F_1 e^{-z^2/2} at xi=1 is positive real sqrt(2 pi) e^{-1/2}") {
    Grid1D ax(-16.0, 16.0, 512);
    GridD g({ax});
    std::vector<cplx> u(g.size());
    for (int j = 0; j < ax.n(); ++j)
        u[j] = std::exp(-0.5 * ax.node(j) * ax.node(j));
    const double k[1] = {1.0};
    const cplx v = forward_transform_at(u, g, std::span<const double>(k, 1));
    CHECK(v.real() == doctest::Approx(std::sqrt(2.0 * M_PI) * std::exp(-0.5)).epsilon(1e-10));
    CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("Parseval identity for F_d on random smooth samples") {
    for (int d = 1; d <= 3; ++d) {
        const int n = d == 1 ? 1024 : (d == 2 ? 128 : 48);
        GridD g = GridD::cube(d, -8.0, 8.0, n);
        const auto u = random_smooth(g, 1234 + d);
        const FourierField f = forward_transform_d(u, g);
        double hat2 = 0.0;
        for (const cplx& v : f.values()) hat2 += std::norm(v);
        const double hat_norm = std::sqrt(hat2 * f.grid().cell_volume());
        const double x_norm = l2_x(u, g);
        const double lhs = hat_norm / std::pow(2.0 * M_PI, d / 2.0);
        CHECK(std::abs(lhs - x_norm) / x_norm < 1e-8);
    }
}

TEST_CASE("linearity of the forward transform") {
    GridD g = GridD::cube(1, -8.0, 8.0, 256);
    const auto u = random_smooth(g, 7);
    const auto v = random_smooth(g, 8);
    const cplx alpha(0.7, -0.3), beta(-1.1, 0.2);
    std::vector<cplx> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = alpha * u[i] + beta * v[i];
    const auto fu = forward_transform_d(u, g);
    const auto fv = forward_transform_d(v, g);
    const auto fw = forward_transform_d(w, g);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const cplx expect = alpha * fu.values()[i] + beta * fv.values()[i];
        CHECK(std::abs(fw.values()[i] - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("inverse transform of zero spectrum is zero") {
    Grid1D z(-32.0, 32.0, 256);
    Grid1D xi = z.dual();
    std::vector<cplx> vhat(256, cplx(0.0, 0.0));
    const auto v = inverse_transform_1(vhat, xi, z);
    for (const cplx& x : v) CHECK(std::abs(x) == 0.0);
}

TEST_CASE("inverse transform of a box spectrum approximates sin(az)/(pi z)") {
    Grid1D z(-64.0, 64.0, 4096);
    Grid1D xi = z.dual();
    const double a = 1.0;
    std::vector<cplx> vhat(xi.n());
    for (int m = 0; m < xi.n(); ++m)
        vhat[m] = std::abs(xi.node(m)) <= a ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    const auto v = inverse_transform_1(vhat, xi, z);
    for (double zq : {0.5, 1.7, 3.1, 7.3}) {
        const int j = static_cast<int>(std::lround((zq - z.min()) / z.spacing()));
        const double zj = z.node(j);
        const double expect = std::sin(a * zj) / (M_PI * zj);
        CHECK(std::abs(v[j] - cplx(expect, 0.0)) < 2e-3);
    }
}

TEST_CASE("round trip forward -> inverse is the identity on band-limited input") {
    Grid1D z(-32.0, 32.0, 1024);
    Grid1D xi = z.dual();
    std::vector<cplx> v(z.n());
    for (int j = 0; j < z.n(); ++j) {
        const double zz = z.node(j);
        v[j] = cplx(std::exp(-0.25 * zz * zz), 0.3 * std::exp(-0.5 * zz * zz));
    }
    const auto vhat = forward_transform_1(v, z, xi);
    const auto back = inverse_transform_1(vhat, xi, z);
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < z.n(); ++j) {
        worst = std::max(worst, std::abs(back[j] - v[j]));
        scale = std::max(scale, std::abs(v[j]));
    }
    CHECK(worst / scale < 1e-10);
}

TEST_CASE("grid mismatch between xi and z is rejected") {
    Grid1D z(-32.0, 32.0, 256);
    Grid1D xi_bad(-10.0, 10.0, 256);
    std::vector<cplx> vhat(256, cplx(1.0, 0.0));
    CHECK_THROWS_AS(inverse_transform_1(vhat, xi_bad, z), std::invalid_argument);
    Grid1D xi_bad2 = Grid1D(-32.0, 32.0, 128).dual();
    std::vector<cplx> vhat2(128, cplx(1.0, 0.0));
    CHECK_THROWS_AS(inverse_transform_1(vhat2, xi_bad2, z), std::invalid_argument);
}

TEST_CASE("FourierField evaluation: closure, interpolation, support radius") {
    // closure-backed
    FourierField f(2, [](std::span<const double> k) {
        return cplx(std::exp(-(k[0] * k[0] + k[1] * k[1])), 0.0);
    });
    CHECK(f.at(2.0, 0.0).real() == doctest::Approx(std::exp(-4.0)));

    // gridded with interpolation
    GridD g = GridD::cube(1, -4.0, 4.0, 257);
    std::vector<cplx> vals(g.size());
    for (int j = 0; j < 257; ++j) {
        const double k = g.axis(0).node(j);
        vals[j] = cplx(std::exp(-k * k), 0.0);
    }
    FourierField fg(g, vals, 4.0);
    CHECK(std::abs(fg.at(0.7305) - cplx(std::exp(-0.7305 * 0.7305), 0.0)) < 1e-6);
    CHECK(fg.at(5.0) == cplx(0.0, 0.0)); // beyond declared support
    FourierField fg_nosupport(g, vals);
    CHECK_THROWS_AS(fg_nosupport.at(5.0), std::domain_error);

    // separable interpolation in d=3
    GridD g3 = GridD::cube(3, -3.0, 3.0, 33);
    std::vector<cplx> v3(g3.size());
    for (std::size_t idx = 0; idx < v3.size(); ++idx) {
        const auto p = g3.point(idx);
        v3[idx] = cplx(std::exp(-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / 2.0),
                       0.2 * p[0]);
    }
    FourierField f3(g3, v3);
    const cplx got = f3.at(0.61, -1.17, 0.38);
    const cplx expect(std::exp(-(0.61 * 0.61 + 1.17 * 1.17 + 0.38 * 0.38) / 2.0),
                      0.2 * 0.61);
    CHECK(std::abs(got - expect) < 5e-5);
}
