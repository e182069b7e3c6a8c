#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace klslab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Nodes and weights of an N-point Gauss-Legendre rule mapped to [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n_points, double a, double b);

/// Adaptive Gauss-Kronrod integration of f over [a, b] to relative
/// tolerance rel_tol.  err_out, when non-null, receives the error estimate.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double* err_out = nullptr);

/// Node set covering S^{n-1} for n in {2, 3} with weights summing to the
/// sphere measure (2*pi resp. 4*pi).  The azimuthal grid carries a fixed
/// irrational offset so nodes never land on symmetry axes of the corpus
/// bodies.
struct SphereGrid {
    Mat directions; // n x M, unit columns
    Vec weights;    // M, sum = |S^{n-1}|
};

SphereGrid sphere_grid(int dim, int resolution);

/// Monotone cubic (PCHIP) interpolant through strictly increasing data.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    /// Solve s(t) = y on the covered range; y must lie in [y_front, y_back].
    double invert(double y) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    double y_front() const { return y_.front(); }
    double y_back() const { return y_.back(); }

private:
    std::vector<double> x_, y_, d_; // knots, values, endpoint slopes
};

} // namespace klslab
