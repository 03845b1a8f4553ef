#ifndef SHELLREC_GRID_HPP
#define SHELLREC_GRID_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace shellrec {

// Uniform 1D grid with both endpoints included: node(j) = min + j*spacing,
// spacing = (max-min)/(n-1).
class Grid1D {
public:
    Grid1D(double min, double max, int n) : min_(min), max_(max), n_(n) {
        if (n < 2) throw std::invalid_argument("Grid1D: need at least 2 nodes");
        if (!(max > min)) throw std::invalid_argument("Grid1D: need max > min");
        if (!std::isfinite(min) || !std::isfinite(max))
            throw std::invalid_argument("Grid1D: bounds must be finite");
    }

    double min() const { return min_; }
    double max() const { return max_; }
    int n() const { return n_; }
    double spacing() const { return (max_ - min_) / (n_ - 1); }
    double node(int j) const { return min_ + j * spacing(); }

    std::vector<double> nodes() const {
        std::vector<double> z(n_);
        for (int j = 0; j < n_; ++j) z[j] = node(j);
        return z;
    }

    // Frequency grid of the n-point DFT on this grid, centered:
    // xi_m = (m - n/2) * dxi with dxi = 2*pi/(n*spacing). Together the two
    // grids form an exact discrete transform pair.
    Grid1D dual() const {
        const double dxi = 2.0 * M_PI / (n_ * spacing());
        const double lo = -(n_ / 2) * dxi;
        return Grid1D(lo, lo + (n_ - 1) * dxi, n_);
    }

    // Same node count and spacing*dual_spacing*n == 2*pi (offsets are free).
    bool is_dual_pair(const Grid1D& other) const {
        if (other.n_ != n_) return false;
        const double prod = spacing() * other.spacing() * n_;
        return std::abs(prod - 2.0 * M_PI) <= 1e-9 * 2.0 * M_PI;
    }

    bool operator==(const Grid1D& o) const {
        return min_ == o.min_ && max_ == o.max_ && n_ == o.n_;
    }

private:
    double min_, max_;
    int n_;
};

// Tensor grid in d in {1,2,3} dimensions (axis 0 varies slowest in flattened
// value arrays).
class GridD {
public:
    explicit GridD(std::vector<Grid1D> axes) : axes_(std::move(axes)) {
        if (axes_.empty() || axes_.size() > 3)
            throw std::invalid_argument("GridD: dimension must be 1, 2 or 3");
    }
    static GridD cube(int dim, double min, double max, int n) {
        return GridD(std::vector<Grid1D>(static_cast<size_t>(dim), Grid1D(min, max, n)));
    }

    int dim() const { return static_cast<int>(axes_.size()); }
    const Grid1D& axis(int a) const { return axes_[a]; }
    std::size_t size() const {
        std::size_t s = 1;
        for (const auto& ax : axes_) s *= ax.n();
        return s;
    }
    double cell_volume() const {
        double v = 1.0;
        for (const auto& ax : axes_) v *= ax.spacing();
        return v;
    }

    GridD dual() const {
        std::vector<Grid1D> d;
        d.reserve(axes_.size());
        for (const auto& ax : axes_) d.push_back(ax.dual());
        return GridD(std::move(d));
    }

    // Multi-index (row-major, axis 0 slowest) of flattened index.
    std::array<int, 3> unflatten(std::size_t idx) const {
        std::array<int, 3> m{0, 0, 0};
        for (int a = dim() - 1; a >= 0; --a) {
            m[a] = static_cast<int>(idx % axes_[a].n());
            idx /= axes_[a].n();
        }
        return m;
    }
    std::array<double, 3> point(std::size_t idx) const {
        const auto m = unflatten(idx);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < dim(); ++a) x[a] = axes_[a].node(m[a]);
        return x;
    }

private:
    std::vector<Grid1D> axes_;
};

} // namespace shellrec

#endif
