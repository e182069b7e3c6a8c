#include "klslab/body_quadrature.hpp"
#include "klslab/errors.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace klslab {

namespace {

int default_resolution(int dim) { return dim == 2 ? 1024 : 64; }

// Gauss points per facet direction for the exact face decompositions.
double facet_quadrature(const ConvexBody& body, const ScalarField& f, int pts) {
    const int n = body.dim();
    if (body.kind() == BodyKind::Cube) {
        // 2n congruent faces; parametrize each by the remaining coordinates.
        Vec lo, hi;
        body.bounding_box(lo, hi);
        const double a = hi(0);
        double total = 0.0;
        GaussRule rule = gauss_legendre(std::min(128, pts), -a, a);
        for (int axis = 0; axis < n; ++axis) {
            for (int sgn : {-1, +1}) {
                if (n == 2) {
                    Vec x(2);
                    x(axis) = sgn * a;
                    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                        x(1 - axis) = rule.nodes[i];
                        total += rule.weights[i] * f(x);
                    }
                } else {
                    Vec x(3);
                    x(axis) = sgn * a;
                    int u = (axis + 1) % 3, v = (axis + 2) % 3;
                    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                            x(u) = rule.nodes[i];
                            x(v) = rule.nodes[j];
                            total += rule.weights[i] * rule.weights[j] * f(x);
                        }
                }
            }
        }
        return total;
    }
    if (body.kind() == BodyKind::Simplex) {
        // n+1 simplicial facets, each spanned by n of the n+1 vertices.
        Mat verts = simplex_vertices(n);
        double total = 0.0;
        GaussRule rule = gauss_legendre(std::min(128, pts), 0.0, 1.0);
        for (int skip = 0; skip <= n; ++skip) {
            std::vector<int> id;
            for (int j = 0; j <= n; ++j)
                if (j != skip) id.push_back(j);
            Vec v0 = verts.col(id[0]);
            Mat edges(n, n - 1);
            for (int k = 1; k < n; ++k) edges.col(k - 1) = verts.col(id[k]) - v0;
            if (n == 2) {
                const double len = edges.col(0).norm();
                for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                    total += len * rule.weights[i] * f(v0 + rule.nodes[i] * edges.col(0));
            } else {
                Eigen::Vector3d e1 = edges.col(0), e2 = edges.col(1);
                const double jac = e1.cross(e2).norm(); // parallelogram area
                for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                        const double s = rule.nodes[i], tau = rule.nodes[j];
                        total += jac * (1.0 - s) * rule.weights[i] * rule.weights[j] *
                                 f(v0 + s * edges.col(0) + (1.0 - s) * tau * edges.col(1));
                    }
            }
        }
        return total;
    }
    throw UnsupportedError("facet quadrature requires a cube or simplex");
}

} // namespace

double polar_quadrature_lebesgue(const ConvexBody& body, const ScalarField& f,
                                 int radial_degree, int sphere_resolution) {
    const int n = body.dim();
    if (n > 3) throw UnsupportedError("polar quadrature supports n <= 3 only");
    if (sphere_resolution <= 0) sphere_resolution = default_resolution(n);
    SphereGrid grid = sphere_grid(n, sphere_resolution);
    GaussRule radial = gauss_legendre(radial_degree, 0.0, 1.0);
    double total = 0.0;
    Vec x(n);
    for (int j = 0; j < grid.weights.size(); ++j) {
        const Vec u = grid.directions.col(j);
        const double rho = 1.0 / body.gauge(u);
        double ray = 0.0;
        for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
            const double r = rho * radial.nodes[k];
            x = r * u;
            ray += rho * radial.weights[k] * std::pow(r, n - 1) * f(x);
        }
        total += grid.weights(j) * ray;
    }
    return total;
}

double polar_quadrature(const ConvexBody& body, const ScalarField& f,
                        int radial_degree, int sphere_resolution) {
    return polar_quadrature_lebesgue(body, f, radial_degree, sphere_resolution) / body.volume();
}

double boundary_quadrature(const ConvexBody& body, const ScalarField& f, int resolution) {
    const int n = body.dim();
    if (n > 3) throw UnsupportedError("boundary quadrature supports n <= 3 only");
    if (resolution <= 0) resolution = default_resolution(n);
    if (body.kind() == BodyKind::Cube || body.kind() == BodyKind::Simplex)
        return facet_quadrature(body, f, resolution == 1024 ? 128 : resolution);
    SphereGrid grid = sphere_grid(n, resolution);
    double total = 0.0;
    for (int j = 0; j < grid.weights.size(); ++j) {
        const Vec u = grid.directions.col(j);
        const double rho = 1.0 / body.gauge(u);
        const Vec bp = rho * u;
        Vec grad = body.gauge_gradient(bp);
        const double cosang = u.dot(grad) / grad.norm();
        total += grid.weights(j) * std::pow(rho, n - 1) / cosang * f(bp);
    }
    return total;
}

double standard_simplex_quadrature(int dim, const ScalarField& f, int points_per_axis) {
    if (dim < 2 || dim > 3) throw UnsupportedError("simplex quadrature supports n in {2,3}");
    GaussRule rule = gauss_legendre(points_per_axis, 0.0, 1.0);
    const auto& t = rule.nodes;
    const auto& w = rule.weights;
    double total = 0.0;
    if (dim == 2) {
        Vec x(2);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j) {
                x(0) = t[i];
                x(1) = (1.0 - t[i]) * t[j];
                total += w[i] * w[j] * (1.0 - t[i]) * f(x);
            }
    } else {
        Vec x(3);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j)
                for (std::size_t k = 0; k < t.size(); ++k) {
                    x(0) = t[i];
                    x(1) = (1.0 - t[i]) * t[j];
                    x(2) = (1.0 - t[i]) * (1.0 - t[j]) * t[k];
                    double jac = (1.0 - t[i]) * (1.0 - t[i]) * (1.0 - t[j]);
                    total += w[i] * w[j] * w[k] * jac * f(x);
                }
    }
    return total;
}

double box_quadrature(const Vec& lo, const Vec& hi, const ScalarField& f, int points_per_axis) {
    const int n = static_cast<int>(lo.size());
    if (n < 2 || n > 3) throw UnsupportedError("box quadrature supports n in {2,3}");
    std::vector<GaussRule> rules;
    for (int i = 0; i < n; ++i) rules.push_back(gauss_legendre(points_per_axis, lo(i), hi(i)));
    double total = 0.0;
    Vec x(n);
    if (n == 2) {
        for (std::size_t i = 0; i < rules[0].nodes.size(); ++i)
            for (std::size_t j = 0; j < rules[1].nodes.size(); ++j) {
                x(0) = rules[0].nodes[i];
                x(1) = rules[1].nodes[j];
                total += rules[0].weights[i] * rules[1].weights[j] * f(x);
            }
    } else {
        for (std::size_t i = 0; i < rules[0].nodes.size(); ++i)
            for (std::size_t j = 0; j < rules[1].nodes.size(); ++j)
                for (std::size_t k = 0; k < rules[2].nodes.size(); ++k) {
                    x(0) = rules[0].nodes[i];
                    x(1) = rules[1].nodes[j];
                    x(2) = rules[2].nodes[k];
                    total += rules[0].weights[i] * rules[1].weights[j] * rules[2].weights[k] * f(x);
                }
    }
    return total;
}

} // namespace klslab
