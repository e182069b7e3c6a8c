#include "klslab/geometry.hpp"
#include "klslab/errors.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace klslab {

using nlohmann::json;

std::string to_string(BodyKind kind) {
    switch (kind) {
        case BodyKind::Ball: return "ball";
        case BodyKind::Ellipsoid: return "ellipsoid";
        case BodyKind::Cube: return "cube";
        case BodyKind::LpBall: return "lp_ball";
        case BodyKind::Simplex: return "simplex";
        case BodyKind::GenericSmooth: return "generic_smooth";
    }
    return "?";
}

Mat AffineMap::apply(const Mat& cloud) const {
    return (linear * cloud).colwise() + shift;
}

double unit_ball_volume(int dim) {
    return std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double lp_ball_volume(int dim, double p) {
    return std::exp(dim * std::log(2.0) + dim * std::lgamma(1.0 + 1.0 / p) -
                    std::lgamma(1.0 + dim / p));
}

ConvexBody::ConvexBody(int dim, BodyKind kind, bool smooth, bool strict)
    : dim_(dim), kind_(kind), smooth_boundary_(smooth), strictly_convex_(strict) {
    if (dim < 2) throw InvalidInputError("ConvexBody: dimension must be >= 2");
}

void ConvexBody::check_input(const Vec& x) const {
    if (x.size() != dim_) throw InvalidInputError("point dimension mismatch");
    if (!x.allFinite()) throw InvalidInputError("non-finite input coordinates");
}

Vec ConvexBody::gauge_gradient(const Vec& x) const {
    check_input(x);
    const double h = 1e-5 * x.norm();
    if (h == 0.0) throw NonSmoothPointError("gauge gradient undefined at origin");
    Vec g(dim_), xp = x, xm = x;
    for (int i = 0; i < dim_; ++i) {
        xp(i) = x(i) + h;
        xm(i) = x(i) - h;
        g(i) = (gauge(xp) - gauge(xm)) / (2.0 * h);
        xp(i) = x(i);
        xm(i) = x(i);
    }
    return g;
}

Mat ConvexBody::gauge_hessian(const Vec& x) const {
    check_input(x);
    const double h = 1e-5 * x.norm();
    if (h == 0.0) throw NonSmoothPointError("gauge Hessian undefined at origin");
    Mat H(dim_, dim_);
    Vec y = x;
    const double g0 = gauge(x);
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            double v;
            if (i == j) {
                y(i) = x(i) + h;
                double gp = gauge(y);
                y(i) = x(i) - h;
                double gm = gauge(y);
                y(i) = x(i);
                v = (gp - 2.0 * g0 + gm) / (h * h);
            } else {
                y(i) = x(i) + h; y(j) = x(j) + h;
                double gpp = gauge(y);
                y(j) = x(j) - h;
                double gpm = gauge(y);
                y(i) = x(i) - h;
                double gmm = gauge(y);
                y(j) = x(j) + h;
                double gmp = gauge(y);
                y(i) = x(i); y(j) = x(j);
                v = (gpp - gpm - gmp + gmm) / (4.0 * h * h);
            }
            H(i, j) = v;
            H(j, i) = v;
        }
    }
    return H;
}

double ConvexBody::support(const Vec&) const {
    throw UnsupportedError("support function not available for " + to_string(kind_));
}

ChordInterval ConvexBody::chord(const Vec& x, const Vec& d) const {
    check_input(x);
    if (gauge(x) > 1.0 + 1e-12)
        throw PreconditionError("chord: start point must lie in the body");
    auto crossing = [&](double sgn) {
        double t_in = 0.0, t_out = sgn;
        int guard = 0;
        while (gauge(x + t_out * d) <= 1.0) {
            t_in = t_out;
            t_out *= 2.0;
            if (++guard > 200) throw InvalidInputError("chord: direction never exits body");
        }
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (t_in + t_out);
            if (gauge(x + mid * d) <= 1.0)
                t_in = mid;
            else
                t_out = mid;
            if (std::abs(t_out - t_in) < 1e-14 * (1.0 + std::abs(t_out))) break;
        }
        return t_in;
    };
    return {crossing(-1.0), crossing(+1.0)};
}

void ConvexBody::bounding_box(Vec& lo, Vec& hi) const {
    lo.resize(dim_);
    hi.resize(dim_);
    Vec e = Vec::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        e(i) = 1.0;
        hi(i) = support(e);
        e(i) = -1.0;
        lo(i) = -support(e);
        e(i) = 0.0;
    }
}

bool ConvexBody::surface_area_available() const { return false; }

double ConvexBody::surface_area() const {
    throw UnsupportedError("surface area not available for " + to_string(kind_) +
                           " in dimension " + std::to_string(dim_));
}

json ConvexBody::descriptor() const {
    return json{{"kind", to_string(kind_)}, {"dim", dim_}, {"params", json::object()}};
}

namespace {

// Boundary integral over S^{n-1} of rho^{n-1} / <u, nu>, n <= 3.
double surface_by_sphere_quadrature(const ConvexBody& body, int resolution) {
    SphereGrid grid = sphere_grid(body.dim(), resolution);
    double total = 0.0;
    for (int j = 0; j < grid.weights.size(); ++j) {
        Vec u = grid.directions.col(j);
        double rho = 1.0 / body.gauge(u);
        Vec grad = body.gauge_gradient(rho * u);
        double cosang = u.dot(grad) / grad.norm();
        total += grid.weights(j) * std::pow(rho, body.dim() - 1) / cosang;
    }
    return total;
}

class Ball final : public ConvexBody {
public:
    Ball(int dim, double radius)
        : ConvexBody(dim, BodyKind::Ball, true, true), radius_(radius) {
        if (!(radius > 0.0)) throw InvalidInputError("ball radius must be positive");
    }

    double gauge(const Vec& x) const override {
        check_input(x);
        return x.norm() / radius_;
    }
    Vec gauge_gradient(const Vec& x) const override {
        check_input(x);
        double r = x.norm();
        if (r == 0.0) throw NonSmoothPointError("gauge gradient undefined at origin");
        return x / (radius_ * r);
    }
    Mat gauge_hessian(const Vec& x) const override {
        check_input(x);
        double r = x.norm();
        if (r == 0.0) throw NonSmoothPointError("gauge Hessian undefined at origin");
        Vec u = x / r;
        return (Mat::Identity(dim_, dim_) - u * u.transpose()) / (radius_ * r);
    }
    double support(const Vec& d) const override { return radius_ * d.norm(); }
    ChordInterval chord(const Vec& x, const Vec& d) const override {
        check_input(x);
        const double a = d.squaredNorm(), b = x.dot(d), c = x.squaredNorm() - radius_ * radius_;
        const double disc = b * b - a * c;
        if (disc < 0.0 || a == 0.0) throw PreconditionError("chord: start point outside ball");
        const double s = std::sqrt(disc);
        return {(-b - s) / a, (-b + s) / a};
    }
    double volume() const override { return unit_ball_volume(dim_) * std::pow(radius_, dim_); }
    bool surface_area_available() const override { return true; }
    double surface_area() const override {
        return dim_ * unit_ball_volume(dim_) * std::pow(radius_, dim_ - 1);
    }
    json descriptor() const override {
        return json{{"kind", "ball"}, {"dim", dim_}, {"params", {{"radius", radius_}}}};
    }

private:
    double radius_;
};

class Ellipsoid final : public ConvexBody {
public:
    explicit Ellipsoid(Vec axes)
        : ConvexBody(static_cast<int>(axes.size()), BodyKind::Ellipsoid, true, true),
          axes_(std::move(axes)) {
        if ((axes_.array() <= 0.0).any())
            throw InvalidInputError("ellipsoid semi-axes must be positive");
        inv2_ = axes_.array().square().inverse();
    }

    double gauge(const Vec& x) const override {
        check_input(x);
        return std::sqrt((x.array().square() * inv2_).sum());
    }
    Vec gauge_gradient(const Vec& x) const override {
        double g = gauge(x);
        if (g == 0.0) throw NonSmoothPointError("gauge gradient undefined at origin");
        return (x.array() * inv2_).matrix() / g;
    }
    Mat gauge_hessian(const Vec& x) const override {
        double g = gauge(x);
        if (g == 0.0) throw NonSmoothPointError("gauge Hessian undefined at origin");
        Vec dx = (x.array() * inv2_).matrix();
        Mat H = (inv2_ / g).matrix().asDiagonal();
        H -= dx * dx.transpose() / (g * g * g);
        return H;
    }
    double support(const Vec& d) const override {
        return std::sqrt((d.array().square() * axes_.array().square()).sum());
    }
    ChordInterval chord(const Vec& x, const Vec& d) const override {
        check_input(x);
        const double a = (d.array().square() * inv2_).sum();
        const double b = (x.array() * d.array() * inv2_).sum();
        const double c = (x.array().square() * inv2_).sum() - 1.0;
        const double disc = b * b - a * c;
        if (disc < 0.0 || a == 0.0) throw PreconditionError("chord: start point outside ellipsoid");
        const double s = std::sqrt(disc);
        return {(-b - s) / a, (-b + s) / a};
    }
    double volume() const override { return unit_ball_volume(dim_) * axes_.prod(); }
    bool surface_area_available() const override { return dim_ <= 3; }
    double surface_area() const override {
        if (dim_ > 3) return ConvexBody::surface_area();
        return surface_by_sphere_quadrature(*this, dim_ == 2 ? 4096 : 128);
    }
    json descriptor() const override {
        return json{{"kind", "ellipsoid"},
                    {"dim", dim_},
                    {"params", {{"semi_axes", std::vector<double>(axes_.begin(), axes_.end())}}}};
    }

private:
    Vec axes_;
    Eigen::ArrayXd inv2_;
};

class Cube final : public ConvexBody {
public:
    Cube(int dim, double a) : ConvexBody(dim, BodyKind::Cube, false, false), a_(a) {
        if (!(a > 0.0)) throw InvalidInputError("cube half-side must be positive");
    }

    double gauge(const Vec& x) const override {
        check_input(x);
        return x.lpNorm<Eigen::Infinity>() / a_;
    }
    Vec gauge_gradient(const Vec& x) const override {
        check_input(x);
        int arg = unique_argmax(x);
        Vec g = Vec::Zero(dim_);
        g(arg) = (x(arg) >= 0.0 ? 1.0 : -1.0) / a_;
        return g;
    }
    Mat gauge_hessian(const Vec&) const override {
        throw UnsupportedError("curvature operations are not defined on the cube");
    }
    double support(const Vec& d) const override { return a_ * d.lpNorm<1>(); }
    ChordInterval chord(const Vec& x, const Vec& d) const override {
        check_input(x);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dim_; ++i) {
            if (d(i) == 0.0) continue;
            double t1 = (-a_ - x(i)) / d(i), t2 = (a_ - x(i)) / d(i);
            lo = std::max(lo, std::min(t1, t2));
            hi = std::min(hi, std::max(t1, t2));
        }
        if (!(lo <= hi)) throw PreconditionError("chord: start point outside cube");
        return {lo, hi};
    }
    double volume() const override { return std::pow(2.0 * a_, dim_); }
    bool surface_area_available() const override { return true; }
    double surface_area() const override { return 2.0 * dim_ * std::pow(2.0 * a_, dim_ - 1); }
    double half_side() const { return a_; }
    json descriptor() const override {
        return json{{"kind", "cube"}, {"dim", dim_}, {"params", {{"half_side", a_}}}};
    }

    int unique_argmax(const Vec& x, double margin_rel = 1e-12) const {
        int arg = 0;
        double best = -1.0, second = -1.0;
        for (int i = 0; i < dim_; ++i) {
            double v = std::abs(x(i));
            if (v > best) {
                second = best;
                best = v;
                arg = i;
            } else if (v > second) {
                second = v;
            }
        }
        if (best - second <= margin_rel * best)
            throw NonSmoothPointError("cube gauge is not differentiable on edges");
        return arg;
    }

private:
    double a_;
};

class LpBall final : public ConvexBody {
public:
    LpBall(int dim, double p, double scale)
        : ConvexBody(dim, BodyKind::LpBall, p > 1.0, p > 1.0), p_(p), s_(scale) {
        if (!(p >= 1.0)) throw InvalidInputError("lp_ball requires p >= 1");
        if (!(scale > 0.0)) throw InvalidInputError("lp_ball scale must be positive");
    }

    double gauge(const Vec& x) const override {
        check_input(x);
        double m = x.lpNorm<Eigen::Infinity>();
        if (m == 0.0) return 0.0;
        double s = (x.array().abs() / m).pow(p_).sum();
        return m * std::pow(s, 1.0 / p_) / s_;
    }
    Vec gauge_gradient(const Vec& x) const override {
        check_input(x);
        double m = x.lpNorm<Eigen::Infinity>();
        if (m == 0.0) throw NonSmoothPointError("gauge gradient undefined at origin");
        if (p_ == 1.0) {
            if ((x.array().abs() < 1e-12 * m).any())
                throw NonSmoothPointError("l1 gauge not differentiable where a coordinate vanishes");
            return x.array().sign().matrix() / s_;
        }
        Eigen::ArrayXd u = x.array().abs() / m;
        double S = u.pow(p_).sum();
        Eigen::ArrayXd t = u.pow(p_ - 1.0) * x.array().sign();
        return (std::pow(S, 1.0 / p_ - 1.0) / s_) * t.matrix();
    }
    Mat gauge_hessian(const Vec& x) const override {
        check_input(x);
        double norm2 = x.norm();
        if (p_ <= 1.0)
            throw NonSmoothPointError("l1 gauge has no second derivatives");
        if ((x.array().abs() < 1e-6 * norm2).any())
            throw NonSmoothPointError("lp curvature outside admissible region min|x_i| >= 1e-6 |x|");
        double m = x.lpNorm<Eigen::Infinity>();
        Eigen::ArrayXd u = x.array().abs() / m;
        double S = u.pow(p_).sum();
        Eigen::ArrayXd up1 = u.pow(p_ - 1.0) * x.array().sign();
        Eigen::ArrayXd up2 = u.pow(p_ - 2.0);
        Mat H = ((1.0 - p_) * std::pow(S, 1.0 / p_ - 2.0) / (s_ * m)) *
                (up1.matrix() * up1.matrix().transpose());
        H += ((p_ - 1.0) * std::pow(S, 1.0 / p_ - 1.0) / (s_ * m)) *
             Mat(up2.matrix().asDiagonal());
        return H;
    }
    double support(const Vec& d) const override {
        if (p_ == 1.0) return s_ * d.lpNorm<Eigen::Infinity>();
        double q = p_ / (p_ - 1.0);
        double m = d.lpNorm<Eigen::Infinity>();
        if (m == 0.0) return 0.0;
        return s_ * m * std::pow((d.array().abs() / m).pow(q).sum(), 1.0 / q);
    }
    double volume() const override { return lp_ball_volume(dim_, p_) * std::pow(s_, dim_); }
    bool surface_area_available() const override { return dim_ <= 3; }
    double surface_area() const override {
        if (dim_ > 3) return ConvexBody::surface_area();
        return surface_by_sphere_quadrature(*this, dim_ == 2 ? 4096 : 128);
    }
    double p() const { return p_; }
    double scale() const { return s_; }
    json descriptor() const override {
        return json{{"kind", "lp_ball"}, {"dim", dim_}, {"params", {{"p", p_}, {"scale", s_}}}};
    }

private:
    double p_, s_;
};

class Simplex final : public ConvexBody {
public:
    explicit Simplex(int dim) : ConvexBody(dim, BodyKind::Simplex, false, false) {}

    // Standard simplex {y >= 0, sum(y) <= 1} shifted by -1/(n+1) per
    // coordinate, so gauge(x) = (n+1) * max(max_i(-x_i), sum(x)).
    double gauge(const Vec& x) const override {
        check_input(x);
        double m = x.sum();
        for (int i = 0; i < dim_; ++i) m = std::max(m, -x(i));
        return (dim_ + 1) * std::max(m, 0.0);
    }
    Vec gauge_gradient(const Vec& x) const override {
        check_input(x);
        double sum = x.sum();
        double best = sum, second = -std::numeric_limits<double>::infinity();
        int arg = -1; // -1 encodes the diagonal facet
        for (int i = 0; i < dim_; ++i) {
            if (-x(i) > best) {
                second = best;
                best = -x(i);
                arg = i;
            } else if (-x(i) > second) {
                second = -x(i);
            }
        }
        if (best - second <= 1e-12 * std::abs(best))
            throw NonSmoothPointError("simplex gauge is not differentiable on ridges");
        Vec g(dim_);
        if (arg < 0)
            g.setConstant(static_cast<double>(dim_ + 1));
        else {
            g.setZero();
            g(arg) = -static_cast<double>(dim_ + 1);
        }
        return g;
    }
    Mat gauge_hessian(const Vec&) const override {
        throw UnsupportedError("curvature operations are not defined on the simplex");
    }
    double support(const Vec& d) const override {
        Mat v = simplex_vertices(dim_);
        double best = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < v.cols(); ++j) best = std::max(best, v.col(j).dot(d));
        return best;
    }
    ChordInterval chord(const Vec& x, const Vec& d) const override {
        check_input(x);
        const double b = 1.0 / (dim_ + 1);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        auto clip = [&](double a_dot_d, double a_dot_x) {
            if (a_dot_d == 0.0) return;
            double t = (b - a_dot_x) / a_dot_d;
            if (a_dot_d > 0.0)
                hi = std::min(hi, t);
            else
                lo = std::max(lo, t);
        };
        clip(d.sum(), x.sum());
        for (int i = 0; i < dim_; ++i) clip(-d(i), -x(i));
        if (!(lo <= hi)) throw PreconditionError("chord: start point outside simplex");
        return {lo, hi};
    }
    double volume() const override { return 1.0 / std::tgamma(dim_ + 1.0); }
    bool surface_area_available() const override { return true; }
    double surface_area() const override {
        return (dim_ + std::sqrt(static_cast<double>(dim_))) / std::tgamma(static_cast<double>(dim_));
    }
    json descriptor() const override {
        return json{{"kind", "simplex"}, {"dim", dim_}, {"params", json::object()}};
    }
};

class GenericSmooth final : public ConvexBody {
public:
    GenericSmooth(int dim, std::function<double(const Vec&)> g)
        : ConvexBody(dim, BodyKind::GenericSmooth, true, true), fn_(std::move(g)) {}

    double gauge(const Vec& x) const override {
        check_input(x);
        return fn_(x);
    }
    double volume() const override {
        if (dim_ > 3)
            throw UnsupportedError("generic body volume needs a quadrature fallback, n <= 3 only");
        SphereGrid grid = sphere_grid(dim_, dim_ == 2 ? 2048 : 96);
        double acc = 0.0;
        for (int j = 0; j < grid.weights.size(); ++j) {
            double rho = 1.0 / fn_(grid.directions.col(j));
            acc += grid.weights(j) * std::pow(rho, dim_) / dim_;
        }
        return acc;
    }
    bool surface_area_available() const override { return dim_ <= 3; }
    double surface_area() const override {
        if (dim_ > 3) return ConvexBody::surface_area();
        return surface_by_sphere_quadrature(*this, dim_ == 2 ? 2048 : 96);
    }
    json descriptor() const override {
        return json{{"kind", "generic_smooth"}, {"dim", dim_}, {"params", json::object()}};
    }

private:
    std::function<double(const Vec&)> fn_;
};

} // namespace

BodyPtr make_ball(int dim, double radius) { return std::make_shared<Ball>(dim, radius); }

BodyPtr make_ellipsoid(const Vec& semi_axes) { return std::make_shared<Ellipsoid>(semi_axes); }

BodyPtr make_ellipsoid_a1(int dim, double a) {
    Vec axes = Vec::Ones(dim);
    axes(0) = a;
    return std::make_shared<Ellipsoid>(axes);
}

BodyPtr make_cube(int dim, double half_side) { return std::make_shared<Cube>(dim, half_side); }

BodyPtr make_lp_ball(int dim, double p, double scale) {
    return std::make_shared<LpBall>(dim, p, scale);
}

BodyPtr make_simplex(int dim) { return std::make_shared<Simplex>(dim); }

BodyPtr make_generic_smooth(int dim, std::function<double(const Vec&)> gauge) {
    return std::make_shared<GenericSmooth>(dim, std::move(gauge));
}

Mat simplex_vertices(int dim) {
    Mat v(dim, dim + 1);
    const double c = 1.0 / (dim + 1);
    v.setConstant(-c);
    for (int i = 0; i < dim; ++i) v(i, i) += 1.0;
    return v;
}

BodyPtr body_from_json(const json& desc) {
    const std::string kind = desc.at("kind").get<std::string>();
    const int dim = desc.at("dim").get<int>();
    const json params = desc.value("params", json::object());
    if (kind == "ball") return make_ball(dim, params.value("radius", 1.0));
    if (kind == "ellipsoid") {
        if (params.contains("semi_axes")) {
            auto ax = params.at("semi_axes").get<std::vector<double>>();
            return make_ellipsoid(Eigen::Map<const Vec>(ax.data(), static_cast<int>(ax.size())));
        }
        return make_ellipsoid_a1(dim, params.value("a", 2.0));
    }
    if (kind == "cube") return make_cube(dim, params.value("half_side", 1.0));
    if (kind == "lp_ball")
        return make_lp_ball(dim, params.at("p").get<double>(), params.value("scale", 1.0));
    if (kind == "simplex") return make_simplex(dim);
    throw InvalidInputError("unknown body kind '" + kind + "'");
}

BodyPtr body_from_name(const std::string& name, int dim) {
    if (name == "ball" || name == "disk") return make_ball(dim, 1.0);
    if (name == "cube" || name == "square") return make_cube(dim, 1.0);
    if (name == "ellipsoid" || name == "ellipse") return make_ellipsoid_a1(dim, 2.0);
    if (name == "simplex") return make_simplex(dim);
    if (name.rfind("lp@", 0) == 0) return make_lp_ball(dim, std::stod(name.substr(3)), 1.0);
    throw InvalidInputError("unknown body name '" + name + "'");
}

BoundaryPoint boundary_from_direction(const ConvexBody& body, const Vec& u, bool with_curvature) {
    const double g = body.gauge(u);
    if (!(g > 0.0) || !std::isfinite(g))
        throw InvalidInputError("boundary_from_direction: direction with non-positive gauge");
    BoundaryPoint bp;
    bp.point = u / g;
    Vec grad = body.gauge_gradient(bp.point);
    const double gn = grad.norm();
    bp.normal = grad / gn;
    if (with_curvature) {
        if (!body.smooth_boundary() || !body.strictly_convex())
            throw UnsupportedError("curvature requested on a non-smooth or non-strictly-convex body");
        Mat tangent;
        Mat ii = second_fundamental_form(body, bp.point, tangent);
        Eigen::SelfAdjointEigenSolver<Mat> es(ii);
        bp.mean_curvature = es.eigenvalues().sum();
        bp.min_principal_curvature = es.eigenvalues().minCoeff();
    }
    return bp;
}

double mean_curvature_from_direction(const ConvexBody& body, const Vec& u) {
    const double g = body.gauge(u);
    if (!(g > 0.0) || !std::isfinite(g))
        throw InvalidInputError("mean_curvature_from_direction: bad direction");
    Vec bp = u / g;
    Vec grad = body.gauge_gradient(bp);
    Mat hess = body.gauge_hessian(bp);
    Vec nu = grad / grad.norm();
    return (hess.trace() - nu.dot(hess * nu)) / grad.norm();
}

Mat second_fundamental_form(const ConvexBody& body, const Vec& bp, Mat& tangent_out) {
    Vec grad = body.gauge_gradient(bp);
    Mat hess = body.gauge_hessian(bp);
    const int n = body.dim();
    Eigen::HouseholderQR<Mat> qr(grad);
    Mat q = qr.householderQ();
    tangent_out = q.rightCols(n - 1);
    return tangent_out.transpose() * hess * tangent_out / grad.norm();
}

AffineMap isotropic_normalize(const Mat& cloud) {
    const int n = static_cast<int>(cloud.rows());
    const auto N = cloud.cols();
    if (N < n + 1) throw PreconditionError("isotropic_normalize: need at least n+1 points");
    Vec mean = cloud.rowwise().mean();
    Mat centered = cloud.colwise() - mean;
    Mat cov = centered * centered.transpose() / static_cast<double>(N);
    Eigen::SelfAdjointEigenSolver<Mat> es(cov);
    const Vec evals = es.eigenvalues();
    if (evals.minCoeff() <= 1e-12 * std::max(evals.maxCoeff(), 1e-300))
        throw PreconditionError("isotropic_normalize: degenerate sample cloud");
    Mat w = es.eigenvectors() * evals.cwiseSqrt().cwiseInverse().asDiagonal() *
            es.eigenvectors().transpose();
    AffineMap map;
    map.linear = w;
    map.shift = -w * mean;
    return map;
}

} // namespace klslab
