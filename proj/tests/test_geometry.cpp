#include "klslab/geometry.hpp"
#include "klslab/errors.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include <random>

using namespace klslab;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec random_point(std::mt19937_64& eng, int n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = u(eng);
    return x;
}

std::vector<BodyPtr> smooth_corpus() {
    return {make_ball(3, 1.0), make_ellipsoid_a1(3, 2.0), make_lp_ball(3, 1.5),
            make_lp_ball(4, 3.0), make_lp_ball(2, 4.0)};
}

std::vector<BodyPtr> full_corpus() {
    auto bodies = smooth_corpus();
    bodies.push_back(make_cube(3, 1.0));
    bodies.push_back(make_simplex(3));
    bodies.push_back(make_lp_ball(3, 1.0));
    return bodies;
}

} // namespace

TEST_CASE("gauge closed forms") {
    CHECK(make_ball(2, 1.0)->gauge(vec2(0.3, 0.4)) == doctest::Approx(0.5).epsilon(1e-14));
    Vec x(4);
    x << 0.3, -0.9, 0.1, 0.6;
    CHECK(make_cube(4, 1.0)->gauge(x) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(make_lp_ball(2, 3.0)->gauge(vec2(1.0, 1.0)) ==
          doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("gauge invariants: homogeneity, positivity, subadditivity") {
    std::mt19937_64 eng(7);
    for (const auto& body : full_corpus()) {
        const int n = body->dim();
        for (int rep = 0; rep < 50; ++rep) {
            Vec x = random_point(eng, n), y = random_point(eng, n);
            double t = std::uniform_real_distribution<double>(0.1, 7.0)(eng);
            double g = body->gauge(x);
            CHECK(body->gauge(t * x) == doctest::Approx(t * g).epsilon(1e-12));
            CHECK(body->gauge(x + y) <= body->gauge(x) + body->gauge(y) + 1e-12);
        }
        for (int i = 0; i < n; ++i) {
            Vec e = Vec::Zero(n);
            e(i) = 1.0;
            CHECK(body->gauge(e) > 0.0);
            CHECK(std::isfinite(body->gauge(e)));
            e(i) = -1.0;
            CHECK(body->gauge(e) > 0.0);
        }
    }
}

TEST_CASE("non-finite input rejected") {
    Vec x = vec2(0.1, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(make_ball(2, 1.0)->gauge(x), InvalidInputError);
    Vec y = vec2(std::numeric_limits<double>::infinity(), 0.0);
    CHECK_THROWS_AS(make_cube(2, 1.0)->gauge(y), InvalidInputError);
}

TEST_CASE("gauge gradient closed forms and FD oracle") {
    Vec x = vec2(0.0, 2.0);
    Vec g = make_ball(2, 1.0)->gauge_gradient(x);
    CHECK(g(0) == doctest::Approx(0.0));
    CHECK(g(1) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 eng(11);
    for (const auto& body : smooth_corpus()) {
        for (int rep = 0; rep < 30; ++rep) {
            Vec p = random_point(eng, body->dim());
            if (p.cwiseAbs().minCoeff() < 0.05) continue; // keep FD step admissible
            Vec grad = body->gauge_gradient(p);
            Vec fd = oracles::fd_gauge_gradient(*body, p);
            CHECK((grad - fd).norm() <= 1e-6 * grad.norm());
        }
    }
}

TEST_CASE("Euler identity <grad, x> = gauge") {
    std::mt19937_64 eng(13);
    for (const auto& body : full_corpus()) {
        for (int rep = 0; rep < 100; ++rep) {
            Vec x = random_point(eng, body->dim());
            double g = body->gauge(x);
            if (g < 1e-6) continue;
            try {
                double e = body->gauge_gradient(x).dot(x);
                CHECK(e == doctest::Approx(g).epsilon(1e-10));
            } catch (const NonSmoothPointError&) {
                // random points a.s. avoid ridges; tolerate near-misses
            }
        }
    }
}

TEST_CASE("support duality <x,nu> = gauge * h_K(nu)") {
    std::mt19937_64 eng(17);
    for (const auto& body : smooth_corpus()) {
        for (int rep = 0; rep < 50; ++rep) {
            Vec x = random_point(eng, body->dim());
            if (body->gauge(x) < 1e-3) continue;
            Vec grad = body->gauge_gradient(x);
            Vec nu = grad / grad.norm();
            CHECK(x.dot(nu) ==
                  doctest::Approx(body->gauge(x) * body->support(nu)).epsilon(1e-10));
        }
    }
}

TEST_CASE("non-smooth points raise errors") {
    Vec edge = vec2(1.0, 1.0);
    CHECK_THROWS_AS(make_cube(2, 1.0)->gauge_gradient(edge), NonSmoothPointError);
    CHECK_THROWS_AS(make_cube(2, 1.0)->gauge_hessian(edge), UnsupportedError);
    CHECK_THROWS_AS(make_simplex(2)->gauge_hessian(edge), UnsupportedError);
    Vec axisish = vec2(1.0, 1e-9);
    CHECK_THROWS_AS(make_lp_ball(2, 3.0)->gauge_hessian(axisish), NonSmoothPointError);
    CHECK_THROWS_AS(make_lp_ball(2, 1.0)->gauge_gradient(vec2(0.7, 0.0)), NonSmoothPointError);
}

TEST_CASE("boundary point, normals, curvature closed forms") {
    // sphere of radius R: H = (n-1)/R, kappa = 1/R
    for (int n : {2, 3, 5}) {
        double R = 2.0;
        auto ball = make_ball(n, R);
        std::mt19937_64 eng(23 + n);
        Vec u = random_point(eng, n);
        auto bp = boundary_from_direction(*ball, u, true);
        CHECK(bp.point.norm() == doctest::Approx(R).epsilon(1e-12));
        CHECK(bp.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(bp.point.dot(bp.normal) > 0.0);
        CHECK(bp.mean_curvature == doctest::Approx((n - 1) / R).epsilon(1e-8));
        CHECK(bp.min_principal_curvature == doctest::Approx(1.0 / R).epsilon(1e-8));
    }
    // ellipse(2,1) at u = e_1: curvature a/b^2 = 2
    auto ell = make_ellipsoid_a1(2, 2.0);
    auto bp = boundary_from_direction(*ell, vec2(1.0, 0.0), true);
    CHECK(bp.mean_curvature == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(bp.min_principal_curvature == doctest::Approx(2.0).epsilon(1e-9));
    // H >= (n-1) kappa >= 0
    CHECK(bp.mean_curvature >= bp.min_principal_curvature - 1e-12);
    CHECK_THROWS_AS(boundary_from_direction(*make_cube(2, 1.0), vec2(0.3, 1.0), true),
                    UnsupportedError);
}

TEST_CASE("curvature matches FD derivative of the normal field") {
    std::mt19937_64 eng(29);
    for (const auto& body : smooth_corpus()) {
        int n = body->dim();
        int done = 0;
        while (done < 8) {
            Vec u = random_point(eng, n);
            if (u.norm() < 0.3) continue;
            Vec bpnt = u / body->gauge(u);
            if (bpnt.cwiseAbs().minCoeff() < 0.05 * bpnt.norm()) continue;
            Mat tangent;
            Mat ii = second_fundamental_form(*body, bpnt, tangent);
            for (int k = 0; k < n - 1; ++k) {
                double fd = oracles::fd_second_fundamental(*body, bpnt, tangent.col(k));
                CHECK(ii(k, k) == doctest::Approx(fd).epsilon(1e-4));
            }
            ++done;
        }
    }
}

TEST_CASE("volume and surface closed forms") {
    CHECK(make_ball(2, 1.0)->volume() == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(make_ball(2, 1.0)->surface_area() == doctest::Approx(2 * M_PI).epsilon(1e-14));
    for (int n : {2, 3, 6}) {
        CHECK(make_cube(n, 1.0)->volume() == doctest::Approx(std::pow(2.0, n)).epsilon(1e-14));
        CHECK(make_cube(n, 1.0)->surface_area() ==
              doctest::Approx(2 * n * std::pow(2.0, n - 1)).epsilon(1e-14));
        double p = 1.5;
        double expect = std::pow(2 * std::tgamma(1 + 1 / p), n) / std::tgamma(1 + n / p);
        CHECK(make_lp_ball(n, p)->volume() == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(make_simplex(3)->volume() == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(make_simplex(3)->surface_area() ==
          doctest::Approx((3 + std::sqrt(3.0)) / 2).epsilon(1e-14));
    // lp ball p=2 must reproduce the Euclidean ball
    CHECK(make_lp_ball(3, 2.0)->volume() == doctest::Approx(4 * M_PI / 3).epsilon(1e-12));
    // ellipse perimeter (a=2, b=1), reference value 4 a E(e)
    CHECK(make_ellipsoid_a1(2, 2.0)->surface_area() ==
          doctest::Approx(9.688448220547675).epsilon(1e-9));
    // ellipsoid volume any n
    Vec axes(3);
    axes << 2.0, 1.0, 1.0;
    CHECK(make_ellipsoid(axes)->volume() == doctest::Approx(8 * M_PI / 3).epsilon(1e-12));
    CHECK_THROWS_AS(make_ellipsoid_a1(5, 2.0)->surface_area(), UnsupportedError);
}

TEST_CASE("isoperimetric equality for balls") {
    for (int n : {2, 3, 7}) {
        auto b = make_ball(n, 1.7);
        double lhs = b->surface_area();
        double rhs = n * std::pow(unit_ball_volume(n), 1.0 / n) *
                     std::pow(b->volume(), (n - 1.0) / n);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("chord endpoints lie on the boundary") {
    std::mt19937_64 eng(31);
    for (const auto& body : full_corpus()) {
        int n = body->dim();
        for (int rep = 0; rep < 20; ++rep) {
            Vec x = random_point(eng, n, -0.05, 0.05);
            if (body->gauge(x) > 0.9) continue;
            Vec d = random_point(eng, n);
            d /= d.norm();
            auto c = body->chord(x, d);
            CHECK(c.t_lo < 0.0);
            CHECK(c.t_hi > 0.0);
            CHECK(body->gauge(x + c.t_hi * d) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(body->gauge(x + c.t_lo * d) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("isotropic_normalize whitens a cloud") {
    std::mt19937_64 eng(37);
    const int n = 3, N = 4096;
    Mat cloud(n, N);
    std::normal_distribution<double> gauss;
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < n; ++i) cloud(i, k) = (i + 1.0) * gauss(eng) + 0.5 * i;
    AffineMap map = isotropic_normalize(cloud);
    Mat white = map.apply(cloud);
    Vec mean = white.rowwise().mean();
    Mat cov = white * white.transpose() / N - mean * mean.transpose();
    CHECK(mean.norm() < 1e-10);
    CHECK((cov - Mat::Identity(n, n)).norm() < 1e-10);
    // shifted cloud: shift recovers the barycenter
    CHECK((map.linear.inverse() * (-map.shift) - cloud.rowwise().mean()).norm() < 1e-9);

    Mat degenerate = Mat::Zero(n, N); // all points equal
    CHECK_THROWS_AS(isotropic_normalize(degenerate), PreconditionError);
}

TEST_CASE("descriptor round trip") {
    for (const auto& body : full_corpus()) {
        auto back = body_from_json(body->descriptor());
        CHECK(back->dim() == body->dim());
        std::mt19937_64 eng(41);
        Vec x = random_point(eng, body->dim());
        CHECK(back->gauge(x) == doctest::Approx(body->gauge(x)).epsilon(1e-14));
    }
}
