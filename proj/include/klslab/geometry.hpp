#pragma once

#include "klslab/quadrature.hpp"

#include <Eigen/Core>
#include <memory>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

namespace klslab {

enum class BodyKind { Ball, Ellipsoid, Cube, LpBall, Simplex, GenericSmooth };

std::string to_string(BodyKind kind);

/// Point on the boundary together with the outward data the checkers need.
/// Curvatures follow the trace convention: mean_curvature is the sum of the
/// n-1 principal curvatures, min_principal_curvature the smallest of them.
struct BoundaryPoint {
    Vec point;
    Vec normal;
    double mean_curvature = std::numeric_limits<double>::quiet_NaN();
    double min_principal_curvature = std::numeric_limits<double>::quiet_NaN();
};

struct ChordInterval {
    double t_lo, t_hi;
};

/// Invertible affine change of coordinates y = linear * x + shift.
struct AffineMap {
    Mat linear;
    Vec shift;
    Vec apply(const Vec& x) const { return linear * x + shift; }
    Mat apply(const Mat& cloud) const;
};

/// A convex body with the origin in its interior, described through its
/// Minkowski gauge.  All evaluators are pure; instances are immutable after
/// construction and safe to share across threads.
class ConvexBody {
public:
    virtual ~ConvexBody() = default;

    int dim() const { return dim_; }
    BodyKind kind() const { return kind_; }
    bool smooth_boundary() const { return smooth_boundary_; }
    bool strictly_convex() const { return strictly_convex_; }

    /// Minkowski gauge inf{ t > 0 : x in t*Omega }; equals 1 on the boundary.
    virtual double gauge(const Vec& x) const = 0;

    /// Gradient of the gauge (positively 0-homogeneous).  Throws
    /// NonSmoothPointError on cube edges, simplex ridges and l_1 axes.
    virtual Vec gauge_gradient(const Vec& x) const;

    /// Hessian of the gauge (positively (-1)-homogeneous).  Requires the
    /// boundary to be twice differentiable along the ray of x; l_p bodies
    /// additionally require min_i |x_i| >= 1e-6 |x|.
    virtual Mat gauge_hessian(const Vec& x) const;

    /// Support function h_K(dir) = sup{ <y, dir> : y in K }.
    virtual double support(const Vec& dir) const;

    /// Parameter interval { t : x + t d in Omega } for an interior x.
    virtual ChordInterval chord(const Vec& x, const Vec& d) const;

    /// Axis-aligned bounding box half-widths (box is symmetric in each
    /// coordinate only if the body is; returns per-axis [lo, hi]).
    virtual void bounding_box(Vec& lo, Vec& hi) const;

    virtual double volume() const = 0;

    /// Exact surface area where a closed form or deterministic quadrature
    /// exists; throws UnsupportedError otherwise (see surface_area_available).
    virtual double surface_area() const;
    virtual bool surface_area_available() const;

    bool contains(const Vec& x) const { return gauge(x) <= 1.0; }

    virtual nlohmann::json descriptor() const;

protected:
    ConvexBody(int dim, BodyKind kind, bool smooth, bool strict);
    void check_input(const Vec& x) const;

    int dim_;
    BodyKind kind_;
    bool smooth_boundary_;
    bool strictly_convex_;
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

BodyPtr make_ball(int dim, double radius);
BodyPtr make_ellipsoid(const Vec& semi_axes);
/// Ellipsoid with semi-axes (a, 1, 1, ..., 1).
BodyPtr make_ellipsoid_a1(int dim, double a);
BodyPtr make_cube(int dim, double half_side);
BodyPtr make_lp_ball(int dim, double p, double scale = 1.0);
/// Standard simplex translated so its barycenter sits at the origin.
BodyPtr make_simplex(int dim);
BodyPtr make_generic_smooth(int dim, std::function<double(const Vec&)> gauge);

BodyPtr body_from_json(const nlohmann::json& desc);
/// Parses CLI-style names: ball, ellipsoid, cube, lp@1.5, simplex, square, disk.
BodyPtr body_from_name(const std::string& name, int dim);

/// Vertices of the origin-centered simplex body, as columns (n+1 of them).
Mat simplex_vertices(int dim);

/// Boundary point in direction u (u need not be normalized), with normal.
/// Curvatures are filled when with_curvature is set; that path requires a
/// smooth strictly convex body and an admissible point and throws otherwise.
BoundaryPoint boundary_from_direction(const ConvexBody& body, const Vec& u,
                                      bool with_curvature = false);

/// Mean curvature (trace of II) at the boundary point hit by direction u.
double mean_curvature_from_direction(const ConvexBody& body, const Vec& u);

/// Second fundamental form of the boundary at boundary point bp expressed in
/// an orthonormal tangent basis; returns the basis in tangent_out (n x (n-1)).
Mat second_fundamental_form(const ConvexBody& body, const Vec& bp, Mat& tangent_out);

/// Whitening map sending a sample cloud (columns) to barycenter zero and
/// identity covariance.  Throws PreconditionError on degenerate clouds.
AffineMap isotropic_normalize(const Mat& cloud);

/// Volume of the unit Euclidean ball in R^n.
double unit_ball_volume(int dim);

/// Volume of the l_p unit ball in R^n: 2^n Gamma(1+1/p)^n / Gamma(1+n/p).
double lp_ball_volume(int dim, double p);

} // namespace klslab
