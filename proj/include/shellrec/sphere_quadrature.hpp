#ifndef SHELLREC_SPHERE_QUADRATURE_HPP
#define SHELLREC_SPHERE_QUADRATURE_HPP

#include <array>
#include <span>
#include <vector>

namespace shellrec {

using Vec3 = std::array<double, 3>;

// Quadrature nodes and weights on S^{d-1}, d in {1,2,3}, organized around a
// pole direction (the quadrature "frame"):
//   d=1: the two points {+pole, -pole}, weights 1 each.
//   d=2: uniform (trapezoid) angles theta in (-pi, pi] around the circle,
//        measured from the pole; spectrally accurate for smooth integrands.
//   d=3: Gauss-Legendre in u = cos(theta) from the pole, times a uniform
//        azimuth grid. Matches phases of the form e^{i(1-q.pole)N}, which are
//        azimuth-free in this frame.
class SphereQuadrature {
public:
    static SphereQuadrature make(int dim, int n_polar, int n_azimuth = 0);
    static SphereQuadrature aligned(int dim, const Vec3& pole, int n_polar,
                                    int n_azimuth = 0);

    // Node-count rule for resolving the phase e^{i(1-q.pole)N}: at least
    // 8 nodes per 2*pi of phase plus margin.
    static int oscillation_nodes(double N);
    static SphereQuadrature for_oscillation(int dim, const Vec3& pole, double N,
                                            double quad_scale = 1.0,
                                            int n_azimuth = 0);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(weights_.size()); }
    const Vec3& node(int i) const { return nodes_[i]; }
    double weight(int i) const { return weights_[i]; }
    double weight_sum() const;
    std::span<const Vec3> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    const Vec3& pole() const { return frame_[0]; }
    const std::array<Vec3, 3>& frame() const { return frame_; }
    int n_polar() const { return n_polar_; }
    int n_azimuth() const { return n_azimuth_; }
    bool resolves(double N) const { return n_polar_ >= oscillation_nodes(N); }

    // Polar angles (from the pole) of the polar nodes, ascending. d=2: the
    // signed angle grid in (-pi, pi]; d=3: acos of the Gauss-Legendre nodes.
    std::span<const double> polar_angles() const { return angles_; }

    // Interpolate per-polar-node (d=2) or per-(polar, azimuth)-node (d=3)
    // data at an arbitrary unit direction q: d=1 exact pick, d=2 periodic
    // cubic in angle, d=3 bilinear in (theta, azimuth).
    // `data` is indexed like the node list.
    template <typename T>
    T interpolate(std::span<const T> data, const Vec3& q) const;

    // Coordinates of q in this frame: (cos angle from pole, azimuth).
    std::array<double, 2> frame_angles(const Vec3& q) const;

private:
    SphereQuadrature() = default;
    int dim_ = 1;
    int n_polar_ = 0, n_azimuth_ = 0;
    std::array<Vec3, 3> frame_{};
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
    std::vector<double> angles_;
};

// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration), ascending nodes.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace shellrec

#endif
