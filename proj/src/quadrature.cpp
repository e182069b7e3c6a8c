#include "klslab/quadrature.hpp"
#include "klslab/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace klslab {

namespace {

// Full (symmetric) node/weight set of the boost Gauss rule on [-1, 1].
template <unsigned N>
void expand_gauss(std::vector<double>& x, std::vector<double>& w) {
    using rule = boost::math::quadrature::gauss<double, N>;
    const auto& xs = rule::abscissa();
    const auto& ws = rule::weights();
    x.clear();
    w.clear();
    for (std::size_t i = xs.size(); i-- > 0;) {
        if (xs[i] > 0.0) {
            x.push_back(-xs[i]);
            w.push_back(ws[i]);
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0 && (N % 2) == 1) {
            x.push_back(0.0);
            w.push_back(ws[i]);
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0) {
            x.push_back(xs[i]);
            w.push_back(ws[i]);
        }
    }
}

void gauss_nodes_unit(int n, std::vector<double>& x, std::vector<double>& w) {
    switch (n) {
        case 8:  expand_gauss<8>(x, w); break;
        case 16: expand_gauss<16>(x, w); break;
        case 32: expand_gauss<32>(x, w); break;
        case 64: expand_gauss<64>(x, w); break;
        case 128: expand_gauss<128>(x, w); break;
        default:
            throw InvalidInputError("gauss_legendre: supported point counts are 8,16,32,64,128");
    }
}

} // namespace

GaussRule gauss_legendre(int n_points, double a, double b) {
    std::vector<double> x, w;
    gauss_nodes_unit(n_points, x, w);
    GaussRule rule;
    rule.nodes.resize(x.size());
    rule.weights.resize(x.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < x.size(); ++i) {
        rule.nodes[i] = mid + half * x[i];
        rule.weights[i] = half * w[i];
    }
    return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double* err_out) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 14, rel_tol, &err);
    if (err_out) *err_out = err;
    return v;
}

SphereGrid sphere_grid(int dim, int resolution) {
    // Offset keeps azimuthal nodes off the coordinate axes and diagonals.
    constexpr double kOffset = 0.138001256843;
    SphereGrid g;
    if (dim == 2) {
        const int m = resolution;
        g.directions.resize(2, m);
        g.weights.resize(m);
        const double w = 2.0 * M_PI / m;
        for (int j = 0; j < m; ++j) {
            double th = 2.0 * M_PI * (j + kOffset) / m;
            g.directions(0, j) = std::cos(th);
            g.directions(1, j) = std::sin(th);
            g.weights(j) = w;
        }
    } else if (dim == 3) {
        const int m_th = 2 * resolution;
        GaussRule polar = gauss_legendre(std::min(128, std::max(8, resolution)), -1.0, 1.0);
        const int m_c = static_cast<int>(polar.nodes.size());
        g.directions.resize(3, m_th * m_c);
        g.weights.resize(m_th * m_c);
        int idx = 0;
        for (int k = 0; k < m_c; ++k) {
            const double c = polar.nodes[k];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int j = 0; j < m_th; ++j) {
                double th = 2.0 * M_PI * (j + kOffset) / m_th;
                g.directions(0, idx) = s * std::cos(th);
                g.directions(1, idx) = s * std::sin(th);
                g.directions(2, idx) = c;
                g.weights(idx) = polar.weights[k] * 2.0 * M_PI / m_th;
                ++idx;
            }
        }
    } else {
        throw UnsupportedError("sphere_grid: only dimensions 2 and 3");
    }
    return g;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw InvalidInputError("MonotoneCubic: need >= 2 matching knots");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        if (h[i] <= 0.0) throw InvalidInputError("MonotoneCubic: x must increase");
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    // Fritsch-Carlson slopes: harmonic-mean interior, one-sided ends.
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
}

double MonotoneCubic::operator()(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i >= x_.size() - 1) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double MonotoneCubic::invert(double y) const {
    const auto it = std::upper_bound(y_.begin(), y_.end(), y);
    std::size_t i = (it == y_.begin()) ? 0 : static_cast<std::size_t>(it - y_.begin()) - 1;
    if (i >= y_.size() - 1) i = y_.size() - 2;
    // Safeguarded Newton on the monotone cubic piece.
    double lo = x_[i], hi = x_[i + 1];
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 80; ++iter) {
        double v = (*this)(x);
        if (v > y)
            hi = x;
        else
            lo = x;
        double h = x_[i + 1] - x_[i];
        double t = (x - x_[i]) / h;
        double dv = (6 * t * t - 6 * t) * (y_[i] - y_[i + 1]) / h +
                    (3 * t * t - 4 * t + 1) * d_[i] + (3 * t * t - 2 * t) * d_[i + 1];
        double step = (dv > 0.0) ? (y - v) / dv : 0.0;
        double xn = x + step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) < 1e-15 * (1.0 + std::abs(x))) return xn;
        x = xn;
    }
    return x;
}

} // namespace klslab
