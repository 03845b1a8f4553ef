#include "shellrec/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace shellrec {

namespace detail {

namespace {
std::mutex planner_mutex; // FFTW's planner is not thread-safe
}

void dft(cplx* data, const int* dims, int rank, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft(rank, dims,
                             reinterpret_cast<fftw_complex*>(data),
                             reinterpret_cast<fftw_complex*>(data),
                             sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw: plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

cplx interp_cubic(std::span<const cplx> vals, const Grid1D& grid, double x) {
    const int n = grid.n();
    const double h = grid.spacing();
    double s = (x - grid.min()) / h;
    if (s < 0.0 || s > n - 1) return cplx(0.0, 0.0);
    int j = static_cast<int>(std::floor(s));
    if (n < 4) { // too short for the cubic stencil
        if (j >= n - 1) return vals[n - 1];
        const double t = s - j;
        return (1.0 - t) * vals[j] + t * vals[j + 1];
    }
    // 4-point stencil j-1..j+2, clamped at the edges
    int j0 = j - 1;
    if (j0 < 0) j0 = 0;
    if (j0 > n - 4) j0 = n - 4;
    const double t = s - j0;
    cplx acc(0.0, 0.0);
    for (int m = 0; m < 4; ++m) {
        double w = 1.0;
        for (int l = 0; l < 4; ++l)
            if (l != m) w *= (t - l) / (m - l);
        acc += w * vals[j0 + m];
    }
    return acc;
}

} // namespace detail

FourierField::FourierField(GridD kgrid, std::vector<cplx> values,
                           std::optional<double> support_radius, Closure closure)
    : dim_(kgrid.dim()), grid_(std::move(kgrid)), values_(std::move(values)),
      closure_(std::move(closure)), support_radius_(support_radius) {
    if (values_.size() != grid_->size())
        throw std::invalid_argument("FourierField: value count does not match grid");
    for (const cplx& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("FourierField: values must be finite");
}

FourierField::FourierField(int dim, Closure closure, std::optional<double> support_radius)
    : dim_(dim), closure_(std::move(closure)), support_radius_(support_radius) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("FourierField: dimension must be 1, 2 or 3");
    if (!closure_)
        throw std::invalid_argument("FourierField: closure must be callable");
}

const GridD& FourierField::grid() const {
    if (!grid_) throw std::logic_error("FourierField: no grid (closure-only field)");
    return *grid_;
}

cplx FourierField::operator()(std::span<const double> k) const {
    if (static_cast<int>(k.size()) != dim_)
        throw std::invalid_argument("FourierField: wrong query dimension");
    if (closure_) return closure_(k);

    double nrm2 = 0.0;
    bool inside = true;
    for (int a = 0; a < dim_; ++a) {
        nrm2 += k[a] * k[a];
        if (k[a] < grid_->axis(a).min() || k[a] > grid_->axis(a).max()) inside = false;
    }
    if (!inside) {
        if (support_radius_ && std::sqrt(nrm2) > *support_radius_) return cplx(0.0, 0.0);
        throw std::domain_error("FourierField: query outside the sampled grid "
                                "and no support radius declared");
    }

    // separable cubic interpolation, one axis at a time
    if (dim_ == 1) return detail::interp_cubic(values_, grid_->axis(0), k[0]);
    const int n_last = grid_->axis(dim_ - 1).n();
    if (dim_ == 2) {
        const int n0 = grid_->axis(0).n();
        std::vector<cplx> line(n0);
        for (int i = 0; i < n0; ++i) {
            std::span<const cplx> row(values_.data() + static_cast<std::size_t>(i) * n_last,
                                      n_last);
            line[i] = detail::interp_cubic(row, grid_->axis(1), k[1]);
        }
        return detail::interp_cubic(line, grid_->axis(0), k[0]);
    }
    const int n0 = grid_->axis(0).n(), n1 = grid_->axis(1).n();
    std::vector<cplx> plane(n1), line(n0);
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            std::span<const cplx> row(
                values_.data() + (static_cast<std::size_t>(i) * n1 + j) * n_last, n_last);
            plane[j] = detail::interp_cubic(row, grid_->axis(2), k[2]);
        }
        line[i] = detail::interp_cubic(plane, grid_->axis(1), k[1]);
    }
    return detail::interp_cubic(line, grid_->axis(0), k[0]);
}

cplx FourierField::at(double k0, double k1, double k2) const {
    const double k[3] = {k0, k1, k2};
    return (*this)(std::span<const double>(k, static_cast<std::size_t>(dim_)));
}

namespace {

// Apply the per-axis phase factors that turn the raw DFT into the continuous
// transform between offset grids: e^{s * i * j * h * f0} along each axis
// (s = sign, h = source spacing, f0 = destination grid origin).
void apply_axis_phases(std::vector<cplx>& data, const GridD& grid,
                       const GridD& dest, int sign) {
    const int d = grid.dim();
    std::array<int, 3> n{1, 1, 1};
    for (int a = 0; a < d; ++a) n[a] = grid.axis(a).n();
    std::array<std::vector<cplx>, 3> ph;
    for (int a = 0; a < d; ++a) {
        ph[a].resize(n[a]);
        const double h = grid.axis(a).spacing();
        const double f0 = dest.axis(a).min();
        for (int j = 0; j < n[a]; ++j)
            ph[a][j] = std::polar(1.0, sign * j * h * f0);
    }
    std::size_t idx = 0;
    std::array<int, 3> m{0, 0, 0};
    const std::size_t total = data.size();
    for (idx = 0; idx < total; ++idx) {
        cplx f = ph[0][m[0]];
        for (int a = 1; a < d; ++a) f *= ph[a][m[a]];
        data[idx] *= f;
        for (int a = d - 1; a >= 0; --a) {
            if (++m[a] < n[a]) break;
            m[a] = 0;
        }
    }
}

} // namespace

FourierField forward_transform_d(std::span<const cplx> u, const GridD& xgrid) {
    const int d = xgrid.dim();
    if (u.size() != xgrid.size())
        throw std::invalid_argument("forward_transform_d: sample count mismatch");
    const GridD kgrid = xgrid.dual();

    std::vector<cplx> data(u.begin(), u.end());
    apply_axis_phases(data, xgrid, kgrid, -1); // e^{-i j h xi_min} per axis

    int dims[3];
    for (int a = 0; a < d; ++a) dims[a] = xgrid.axis(a).n();
    detail::dft(data.data(), dims, d, -1);

    // post-phase e^{-i x_min xi_m} per axis and the continuous-FT scaling dx^d
    const double scale = xgrid.cell_volume();
    std::array<std::vector<cplx>, 3> post;
    for (int a = 0; a < d; ++a) {
        const int n = xgrid.axis(a).n();
        post[a].resize(n);
        for (int m = 0; m < n; ++m)
            post[a][m] = std::polar(1.0, -xgrid.axis(a).min() * kgrid.axis(a).node(m));
    }
    std::array<int, 3> mi{0, 0, 0};
    for (std::size_t idx = 0; idx < data.size(); ++idx) {
        cplx f = post[0][mi[0]];
        for (int a = 1; a < d; ++a) f *= post[a][mi[a]];
        data[idx] *= scale * f;
        for (int a = d - 1; a >= 0; --a) {
            if (++mi[a] < xgrid.axis(a).n()) break;
            mi[a] = 0;
        }
    }
    return FourierField(kgrid, std::move(data));
}

FourierField forward_transform_d(const std::function<cplx(std::span<const double>)>& u,
                                 const GridD& xgrid) {
    std::vector<cplx> samples(xgrid.size());
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const auto x = xgrid.point(idx);
        samples[idx] = u(std::span<const double>(x.data(), xgrid.dim()));
    }
    return forward_transform_d(samples, xgrid);
}

cplx forward_transform_at(std::span<const cplx> u, const GridD& xgrid,
                          std::span<const double> k) {
    const int d = xgrid.dim();
    if (u.size() != xgrid.size())
        throw std::invalid_argument("forward_transform_at: sample count mismatch");
    if (static_cast<int>(k.size()) != d)
        throw std::invalid_argument("forward_transform_at: wrong k dimension");
    // separable phases e^{-i k_a x_a}
    std::array<std::vector<cplx>, 3> ph;
    for (int a = 0; a < d; ++a) {
        const int n = xgrid.axis(a).n();
        ph[a].resize(n);
        for (int j = 0; j < n; ++j)
            ph[a][j] = std::polar(1.0, -k[a] * xgrid.axis(a).node(j));
    }
    cplx acc(0.0, 0.0);
    std::array<int, 3> m{0, 0, 0};
    for (std::size_t idx = 0; idx < u.size(); ++idx) {
        cplx f = ph[0][m[0]];
        for (int a = 1; a < d; ++a) f *= ph[a][m[a]];
        acc += u[idx] * f;
        for (int a = d - 1; a >= 0; --a) {
            if (++m[a] < xgrid.axis(a).n()) break;
            m[a] = 0;
        }
    }
    return acc * xgrid.cell_volume();
}

std::vector<cplx> inverse_transform_1(std::span<const cplx> vhat,
                                      const Grid1D& xi_grid, const Grid1D& z_grid) {
    const int n = xi_grid.n();
    if (static_cast<int>(vhat.size()) != n)
        throw std::invalid_argument("inverse_transform_1: spectrum size mismatch");
    if (!xi_grid.is_dual_pair(z_grid))
        throw std::invalid_argument(
            "inverse_transform_1: xi and z grids are not a dual pair "
            "(need equal n and dz*dxi*n == 2*pi)");

    const double dxi = xi_grid.spacing();
    std::vector<cplx> data(vhat.begin(), vhat.end());
    for (int m = 0; m < n; ++m)
        data[m] *= std::polar(1.0, z_grid.min() * m * dxi); // e^{+i z_min m dxi}
    int dims[1] = {n};
    detail::dft(data.data(), dims, 1, +1);
    const double scale = dxi / (2.0 * M_PI);
    for (int j = 0; j < n; ++j)
        data[j] *= scale * std::polar(1.0, z_grid.node(j) * xi_grid.min());
    return data;
}

std::vector<cplx> forward_transform_1(std::span<const cplx> v,
                                      const Grid1D& z_grid, const Grid1D& xi_grid) {
    const int n = z_grid.n();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("forward_transform_1: sample size mismatch");
    if (!xi_grid.is_dual_pair(z_grid))
        throw std::invalid_argument(
            "forward_transform_1: xi and z grids are not a dual pair");

    const double dz = z_grid.spacing();
    std::vector<cplx> data(v.begin(), v.end());
    for (int j = 0; j < n; ++j)
        data[j] *= std::polar(1.0, -j * dz * xi_grid.min()); // e^{-i j dz xi_min}
    int dims[1] = {n};
    detail::dft(data.data(), dims, 1, -1);
    for (int m = 0; m < n; ++m)
        data[m] *= dz * std::polar(1.0, -z_grid.min() * xi_grid.node(m));
    return data;
}

} // namespace shellrec
