#pragma once

// Independent finite-difference and quadrature oracles used by the tests.
// These deliberately avoid the library's closed-form code paths.

#include "klslab/geometry.hpp"

#include <cmath>

namespace oracles {

using klslab::ConvexBody;
using klslab::Mat;
using klslab::Vec;

inline Vec fd_gauge_gradient(const ConvexBody& body, const Vec& x, double h_rel = 1e-6) {
    const double h = h_rel * x.norm();
    Vec g(x.size()), xp = x, xm = x;
    for (int i = 0; i < x.size(); ++i) {
        xp(i) += h;
        xm(i) -= h;
        g(i) = (body.gauge(xp) - body.gauge(xm)) / (2.0 * h);
        xp(i) = x(i);
        xm(i) = x(i);
    }
    return g;
}

// Second fundamental form value II(t,t) at boundary point bp with unit
// tangent t, via central differences of the unit normal field along the
// radially-projected curve s -> (bp + s t) / gauge(bp + s t).
inline double fd_second_fundamental(const ConvexBody& body, const Vec& bp, const Vec& t,
                                    double h = 1e-5) {
    auto normal_at = [&](double s) {
        Vec y = bp + s * t;
        Vec p = y / body.gauge(y);
        Vec g = body.gauge_gradient(p);
        return Vec(g / g.norm());
    };
    Vec np = normal_at(h), nm = normal_at(-h);
    return (np - nm).dot(t) / (2.0 * h);
}

} // namespace oracles
