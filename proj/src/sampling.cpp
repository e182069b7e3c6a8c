#include "klslab/sampling.hpp"
#include "klslab/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace klslab {

BatchAccumulator::BatchAccumulator(std::int64_t n_total) : n_total_(n_total) {
    if (n_total < kBatches)
        throw InsufficientSamplesError("batch means need at least one sample per batch");
    sums_ = Vec::Zero(kBatches);
    counts_ = Eigen::VectorXi::Zero(kBatches);
}

void BatchAccumulator::add(std::int64_t index, double value) {
    const int b = batch_of(index, n_total_);
    sums_(b) += value;
    counts_(b) += 1;
}

Vec BatchAccumulator::batch_means() const {
    Vec m(kBatches);
    for (int b = 0; b < kBatches; ++b)
        m(b) = counts_(b) > 0 ? sums_(b) / counts_(b) : 0.0;
    return m;
}

MomentReport BatchAccumulator::report() const { return report_from_batch_values(batch_means()); }

MomentReport report_from_batch_values(const Vec& batch_values) {
    const int b = static_cast<int>(batch_values.size());
    MomentReport r;
    r.batches = b;
    r.estimate = batch_values.mean();
    const double var = (batch_values.array() - r.estimate).square().sum() / (b - 1);
    r.stderr = std::sqrt(var / b);
    return r;
}

std::string to_string(SampleMethod m) {
    switch (m) {
        case SampleMethod::Auto: return "auto";
        case SampleMethod::Rejection: return "rejection";
        case SampleMethod::HitAndRun: return "hit_and_run";
        case SampleMethod::Pushforward: return "pushforward";
    }
    return "?";
}

namespace {

Vec random_direction(ChunkRng& rng, int n) {
    Vec u(n);
    double norm2 = 0.0;
    do {
        for (int i = 0; i < n; ++i) u(i) = rng.normal();
        norm2 = u.squaredNorm();
    } while (norm2 == 0.0);
    return u / std::sqrt(norm2);
}

// ---- exact constructions for the built-in kinds -------------------------

void pushforward_ball(const ConvexBody& body, Mat& out, std::int64_t first, std::int64_t count,
                      ChunkRng& rng, const Vec& axis_scales) {
    // uniform on the ball = uniform direction times R U^{1/n}; the ellipsoid
    // is its diagonal linear image, which preserves uniformity
    const int n = body.dim();
    for (std::int64_t k = 0; k < count; ++k) {
        Vec u = random_direction(rng, n);
        const double r = std::pow(rng.uniform01(), 1.0 / n);
        out.col(first + k) = (r * u.array() * axis_scales.array()).matrix();
    }
}

void pushforward_cube(const ConvexBody& body, Mat& out, std::int64_t first, std::int64_t count,
                      ChunkRng& rng) {
    Vec lo, hi;
    body.bounding_box(lo, hi);
    const int n = body.dim();
    for (std::int64_t k = 0; k < count; ++k)
        for (int i = 0; i < n; ++i) out(i, first + k) = rng.uniform(lo(i), hi(i));
}

void pushforward_simplex(const ConvexBody& body, Mat& out, std::int64_t first, std::int64_t count,
                         ChunkRng& rng) {
    // exponential spacings give Dirichlet(1,...,1); drop the last coordinate
    const int n = body.dim();
    const double shift = 1.0 / (n + 1);
    for (std::int64_t k = 0; k < count; ++k) {
        double total = 0.0;
        Vec e(n + 1);
        for (int i = 0; i <= n; ++i) {
            e(i) = rng.exponential();
            total += e(i);
        }
        for (int i = 0; i < n; ++i) out(i, first + k) = e(i) / total - shift;
    }
}

const MuP1D& mu_p_cache(double p);

void pushforward_lp(const ConvexBody& body, double p, Mat& out, std::int64_t first,
                    std::int64_t count, ChunkRng& rng) {
    // Schechtman-Zinn: y/||y||_p with y ~ mu_p^n is cone measure on the l_p
    // sphere; an independent U^{1/n} radius makes it uniform in the ball.
    const int n = body.dim();
    Vec e1 = Vec::Zero(n);
    e1(0) = 1.0;
    const double scale = body.support(e1); // l_p ball: h(e_1) = scale
    const MuP1D& mu = mu_p_cache(p);
    for (std::int64_t k = 0; k < count; ++k) {
        Vec y(n);
        for (int i = 0; i < n; ++i) y(i) = mu.draw(rng);
        double m = y.lpNorm<Eigen::Infinity>();
        double nrm = m * std::pow((y.array().abs() / m).pow(p).sum(), 1.0 / p);
        const double r = std::pow(rng.uniform01(), 1.0 / n);
        out.col(first + k) = (scale * r / nrm) * y;
    }
}

void rejection_chunk(const ConvexBody& body, Mat& out, std::int64_t first, std::int64_t count,
                     ChunkRng& rng, const Vec& lo, const Vec& hi) {
    const int n = body.dim();
    Vec x(n);
    for (std::int64_t k = 0; k < count; ++k) {
        std::int64_t tries = 0;
        for (;;) {
            for (int i = 0; i < n; ++i) x(i) = rng.uniform(lo(i), hi(i));
            if (body.contains(x)) break;
            if (++tries > 4'000'000)
                throw MethodSwitchError(
                    "rejection acceptance below 1e-6; use method=hit_and_run instead");
        }
        out.col(first + k) = x;
    }
}

void hit_and_run_chunk(const ConvexBody& body, Mat& out, std::int64_t first, std::int64_t count,
                       ChunkRng& rng, int burn_in, int thinning) {
    const int n = body.dim();
    Vec x = Vec::Zero(n);
    auto step = [&]() {
        Vec u = random_direction(rng, n);
        ChordInterval c = body.chord(x, u);
        x += rng.uniform(c.t_lo, c.t_hi) * u;
    };
    for (int i = 0; i < burn_in; ++i) step();
    for (std::int64_t k = 0; k < count; ++k) {
        for (int i = 0; i < thinning; ++i) step();
        out.col(first + k) = x;
    }
}

SampleMethod resolve_method(const ConvexBody& body, SampleMethod m) {
    if (m != SampleMethod::Auto) return m;
    if (body.kind() == BodyKind::GenericSmooth)
        return body.dim() <= 10 ? SampleMethod::Rejection : SampleMethod::HitAndRun;
    return SampleMethod::Pushforward;
}

} // namespace

Mat sample_uniform(const ConvexBody& body, std::int64_t n_samples, std::uint64_t seed,
                   SampleMethod method, HitAndRunOptions hr) {
    if (n_samples < 1) throw InvalidInputError("sample_uniform: N >= 1 required");
    const int n = body.dim();
    method = resolve_method(body, method);
    Mat out(n, n_samples);

    Vec lo, hi;
    if (method == SampleMethod::Rejection) {
        body.bounding_box(lo, hi);
        double box = 1.0;
        for (int i = 0; i < n; ++i) box *= hi(i) - lo(i);
        try {
            if (body.volume() / box < 1e-6)
                throw MethodSwitchError(
                    "rejection acceptance below 1e-6; use method=hit_and_run instead");
        } catch (const UnsupportedError&) {
            // no closed-form volume: the per-chunk try counter guards instead
        }
    }
    const int burn_in = hr.burn_in >= 0 ? hr.burn_in : 10 * n * n;
    const int thinning = hr.thinning >= 0 ? hr.thinning : n;

    Vec axis_scales;
    double lp_p = 0.0;
    if (method == SampleMethod::Pushforward) {
        if (body.kind() == BodyKind::Ball || body.kind() == BodyKind::Ellipsoid) {
            axis_scales.resize(n);
            Vec e = Vec::Zero(n);
            for (int i = 0; i < n; ++i) {
                e(i) = 1.0;
                axis_scales(i) = body.support(e); // semi-axis along e_i
                e(i) = 0.0;
            }
        } else if (body.kind() == BodyKind::LpBall) {
            lp_p = body.descriptor().at("params").at("p").get<double>();
        }
    }

    const std::int64_t chunks = num_chunks(n_samples);
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t first = c * kChunkSize;
        const std::int64_t count = std::min<std::int64_t>(kChunkSize, n_samples - first);
        ChunkRng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        switch (method) {
            case SampleMethod::Pushforward:
                switch (body.kind()) {
                    case BodyKind::Ball:
                    case BodyKind::Ellipsoid:
                        pushforward_ball(body, out, first, count, rng, axis_scales);
                        break;
                    case BodyKind::Cube:
                        pushforward_cube(body, out, first, count, rng);
                        break;
                    case BodyKind::Simplex:
                        pushforward_simplex(body, out, first, count, rng);
                        break;
                    case BodyKind::LpBall:
                        pushforward_lp(body, lp_p, out, first, count, rng);
                        break;
                    default:
                        throw UnsupportedError("no exact sampler for generic bodies");
                }
                break;
            case SampleMethod::Rejection:
                rejection_chunk(body, out, first, count, rng, lo, hi);
                break;
            case SampleMethod::HitAndRun:
                hit_and_run_chunk(body, out, first, count, rng, burn_in, thinning);
                break;
            case SampleMethod::Auto:
                break; // resolved above
        }
    }
    return out;
}

Mat sample_cone(const ConvexBody& body, std::int64_t n_samples, std::uint64_t seed,
                SampleMethod method) {
    Mat pts = sample_uniform(body, n_samples, seed, method);
    for (std::int64_t k = 0; k < pts.cols(); ++k) {
        const double g = body.gauge(pts.col(k));
        pts.col(k) /= g;
    }
    return pts;
}

SurfaceSamples sample_surface(const ConvexBody& body, std::int64_t n_samples, std::uint64_t seed) {
    const int n = body.dim();
    SurfaceSamples s;
    s.points.resize(n, n_samples);
    s.weights = Vec::Ones(n_samples);

    if (body.kind() == BodyKind::Cube) {
        Vec lo, hi;
        body.bounding_box(lo, hi);
        const double a = hi(0);
        const std::int64_t chunks = num_chunks(n_samples);
        for (std::int64_t c = 0; c < chunks; ++c) {
            const std::int64_t first = c * kChunkSize;
            const std::int64_t count = std::min<std::int64_t>(kChunkSize, n_samples - first);
            ChunkRng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
            for (std::int64_t k = 0; k < count; ++k) {
                const int face = static_cast<int>(rng.bits() % (2 * n));
                const int axis = face / 2;
                for (int i = 0; i < n; ++i) s.points(i, first + k) = rng.uniform(-a, a);
                s.points(axis, first + k) = (face % 2 == 0) ? a : -a;
            }
        }
        return s;
    }
    if (body.kind() == BodyKind::Simplex) {
        Mat verts = simplex_vertices(n);
        // facet j omits vertex j; coordinate facets have (n-1)-volume
        // 1/(n-1)!, the diagonal facet sqrt(n)/(n-1)!.
        const double root_n = std::sqrt(static_cast<double>(n));
        const double total = n + root_n;
        const std::int64_t chunks = num_chunks(n_samples);
        for (std::int64_t c = 0; c < chunks; ++c) {
            const std::int64_t first = c * kChunkSize;
            const std::int64_t count = std::min<std::int64_t>(kChunkSize, n_samples - first);
            ChunkRng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
            for (std::int64_t k = 0; k < count; ++k) {
                const double pick = rng.uniform01() * total;
                // skip = n+1 cases; vertex j=skip is omitted.  The diagonal
                // facet is the one omitting the vertex -c (index n).
                int skip = (pick < root_n) ? n : static_cast<int>((pick - root_n));
                if (skip > n) skip = n;
                Vec w(n + 1);
                double tot = 0.0;
                for (int i = 0; i <= n; ++i) {
                    w(i) = (i == skip) ? 0.0 : rng.exponential();
                    tot += w(i);
                }
                Vec x = Vec::Zero(n);
                for (int i = 0; i <= n; ++i)
                    if (i != skip) x += (w(i) / tot) * verts.col(i);
                s.points.col(first + k) = x;
            }
        }
        return s;
    }

    // smooth path: cone samples reweighted by 1/<x, nu> = |grad gauge|
    s.points = sample_cone(body, n_samples, seed);
    Vec raw(n_samples);
    for (std::int64_t k = 0; k < n_samples; ++k)
        raw(k) = body.gauge_gradient(s.points.col(k)).norm();
    if (!(raw.minCoeff() > 0.0))
        throw Error("degenerate-normal: <x,nu> not positive at a sampled boundary point");
    // normalize to mean one within each index batch
    BatchAccumulator acc(n_samples);
    for (std::int64_t k = 0; k < n_samples; ++k) acc.add(k, raw(k));
    Vec means = acc.batch_means();
    for (std::int64_t k = 0; k < n_samples; ++k)
        s.weights(k) = raw(k) / means(batch_of(k, n_samples));
    return s;
}

// ---- mu_p ----------------------------------------------------------------

MuP1D::MuP1D(double p) : p_(p) {
    if (!(p >= 1.0))
        throw InvalidInputError("mu_p requires p >= 1 (not log-concave jointly below 1)");
    const double a = 1.0 / p;
    const double z_max = boost::math::gamma_q_inv(a, 1e-12);
    t_max_ = std::pow(z_max, a);
    const int knots = 4096;
    std::vector<double> ts(knots), cs(knots);
    double prev = -1.0;
    for (int i = 0; i < knots; ++i) {
        double t = t_max_ * i / (knots - 1);
        double c = boost::math::gamma_p(a, std::pow(t, p));
        if (c <= prev) c = std::nextafter(prev, 2.0); // enforce strict monotonicity
        ts[i] = t;
        cs[i] = c;
        prev = c;
    }
    // spline over |X|: strictly increasing in t by construction
    spline_ = MonotoneCubic(std::move(cs), std::move(ts)); // store inverse directly
}

double MuP1D::cdf(double t) const {
    const double a = 1.0 / p_;
    const double g = boost::math::gamma_p(a, std::pow(std::abs(t), p_));
    return t >= 0.0 ? 0.5 * (1.0 + g) : 0.5 * (1.0 - g);
}

double MuP1D::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw InvalidInputError("quantile: u in (0,1)");
    const double v = std::abs(2.0 * u - 1.0);
    const double sign = (u >= 0.5) ? 1.0 : -1.0;
    const double a = 1.0 / p_;
    if (v <= spline_.x_back())
        return sign * spline_(v);
    // incomplete-Gamma tail: solve z^{a-1} e^{-z} = (1-v) Gamma(a) for z
    const double target = std::log1p(-v) + std::lgamma(a);
    double z = std::pow(t_max_, p_);
    for (int i = 0; i < 60; ++i) {
        const double g = (a - 1.0) * std::log(z) - z - target;
        const double dg = (a - 1.0) / z - 1.0;
        const double step = g / dg;
        z -= step;
        if (std::abs(step) < 1e-14 * z) break;
    }
    return sign * std::pow(z, a);
}

double MuP1D::draw(ChunkRng& rng) const {
    double u;
    do {
        u = rng.uniform01();
    } while (u == 0.0);
    return quantile(u);
}

namespace {
const MuP1D& mu_p_cache(double p) {
    // small per-p cache; samplers for a given p are immutable after build
    static std::vector<std::pair<double, std::unique_ptr<MuP1D>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    for (auto& e : cache)
        if (e.first == p) return *e.second;
    cache.emplace_back(p, std::make_unique<MuP1D>(p));
    return *cache.back().second;
}
} // namespace

Mat sample_mu_p(double p, int dim, std::int64_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw InvalidInputError("sample_mu_p: N >= 1 required");
    const MuP1D& mu = mu_p_cache(p);
    Mat out(dim, n_samples);
    const std::int64_t chunks = num_chunks(n_samples);
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t first = c * kChunkSize;
        const std::int64_t count = std::min<std::int64_t>(kChunkSize, n_samples - first);
        ChunkRng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        for (std::int64_t k = 0; k < count; ++k)
            for (int i = 0; i < dim; ++i) out(i, first + k) = mu.draw(rng);
    }
    return out;
}

MomentReport mean_of(const std::function<double(const Vec&)>& f, const Mat& points) {
    const std::int64_t n = points.cols();
    BatchAccumulator acc(n);
    for (std::int64_t k = 0; k < n; ++k) acc.add(k, f(points.col(k)));
    return acc.report();
}

MomentReport variance_of(const std::function<double(const Vec&)>& f, const Mat& points) {
    const std::int64_t n = points.cols();
    if (n < 256) throw InsufficientSamplesError("variance_of: need at least 256 samples");
    BatchAccumulator m1(n), m2(n);
    for (std::int64_t k = 0; k < n; ++k) {
        const double v = f(points.col(k));
        m1.add(k, v);
        m2.add(k, v * v);
    }
    Vec a = m1.batch_means(), b = m2.batch_means();
    Vec var = b.array() - a.array().square();
    return report_from_batch_values(var);
}

MomentReport surface_area_estimate(const ConvexBody& body, std::int64_t n_samples,
                                   std::uint64_t seed) {
    Mat cone = sample_cone(body, n_samples, seed);
    BatchAccumulator acc(n_samples);
    for (std::int64_t k = 0; k < n_samples; ++k)
        acc.add(k, body.gauge_gradient(cone.col(k)).norm());
    MomentReport r = acc.report();
    const double scale = body.dim() * body.volume();
    r.estimate *= scale;
    r.stderr *= scale;
    return r;
}

void write_sample_dump(const std::string& path, const Mat& points) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    const std::uint32_t n = static_cast<std::uint32_t>(points.rows());
    const std::uint32_t count = static_cast<std::uint32_t>(points.cols());
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&count), 4);
    std::vector<double> row(n);
    for (std::uint32_t k = 0; k < count; ++k) {
        for (std::uint32_t i = 0; i < n; ++i) row[i] = points(i, k);
        out.write(reinterpret_cast<const char*>(row.data()), 8 * n);
    }
}

Mat read_sample_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::uint32_t n = 0, count = 0;
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&count), 4);
    Mat pts(n, count);
    std::vector<double> row(n);
    for (std::uint32_t k = 0; k < count; ++k) {
        in.read(reinterpret_cast<char*>(row.data()), 8 * n);
        for (std::uint32_t i = 0; i < n; ++i) pts(i, k) = row[i];
    }
    if (!in) throw Error("sample dump truncated: " + path);
    return pts;
}

} // namespace klslab
