#pragma once

#include "klslab/geometry.hpp"
#include "klslab/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace klslab {

/// Scalar Monte Carlo estimate with a batch-means standard error.
struct MomentReport {
    double estimate = 0.0;
    double stderr = 0.0;
    int batches = 0;
};

/// Single batch-means rule used across the project.
inline constexpr int kBatches = 32;

inline int batch_of(std::int64_t index, std::int64_t n_total) {
    return static_cast<int>(index * kBatches / n_total);
}

/// Accumulates one statistic over the sample index space and reduces it with
/// batch means.  Deterministic for a fixed index->value assignment.
class BatchAccumulator {
public:
    explicit BatchAccumulator(std::int64_t n_total);
    void add(std::int64_t index, double value);
    MomentReport report() const;
    /// Per-batch means, for derived nonlinear statistics.
    Vec batch_means() const;

private:
    std::int64_t n_total_;
    Vec sums_;
    Eigen::VectorXi counts_;
};

/// Batch-means report from a vector of per-batch values.
MomentReport report_from_batch_values(const Vec& batch_values);

enum class SampleMethod { Auto, Rejection, HitAndRun, Pushforward };

std::string to_string(SampleMethod m);

/// Hit-and-run defaults fixed by validation against rejection sampling in
/// low dimension: burn-in 10 n^2 steps, thinning n, start at the origin.
struct HitAndRunOptions {
    int burn_in = -1;  // -1: 10 n^2
    int thinning = -1; // -1: n
};

/// N samples from the uniform probability measure on the body, as columns.
/// Auto picks the exact pushforward construction for built-in kinds and
/// rejection for generic bodies in n <= 10.
Mat sample_uniform(const ConvexBody& body, std::int64_t n_samples, std::uint64_t seed,
                   SampleMethod method = SampleMethod::Auto, HitAndRunOptions hr = {});

/// Cone measure on the boundary: x / gauge(x) for x uniform in the body.
Mat sample_cone(const ConvexBody& body, std::int64_t n_samples, std::uint64_t seed,
                SampleMethod method = SampleMethod::Auto);

/// Weighted samples targeting the uniform (Hausdorff) probability measure on
/// the boundary.  Smooth bodies reweight cone samples by 1/<x,nu>; cube and
/// simplex sample their faces directly with unit weights.  Weights are
/// normalized to mean one within each of the 32 index batches.
struct SurfaceSamples {
    Mat points;
    Vec weights;
};

SurfaceSamples sample_surface(const ConvexBody& body, std::int64_t n_samples, std::uint64_t seed);

/// One-dimensional measure mu_p with density exp(-|t|^p) / (2 Gamma(1+1/p)),
/// sampled by inverting a monotone spline of the CDF (4096 knots covering all
/// but 1e-12 of the mass; beyond that, the incomplete-Gamma asymptote).
class MuP1D {
public:
    explicit MuP1D(double p);
    double p() const { return p_; }
    double draw(ChunkRng& rng) const;
    double cdf(double t) const;       // P(X <= t)
    double quantile(double u) const;  // inverse CDF on (0,1)

private:
    double p_;
    double t_max_;
    MonotoneCubic spline_; // CDF of |X| on [0, t_max]
};

/// n-fold product of mu_p draws, one column per sample.
Mat sample_mu_p(double p, int dim, std::int64_t n_samples, std::uint64_t seed);

/// Plug-in variance of f under the sampled points with batch-means stderr.
MomentReport variance_of(const std::function<double(const Vec&)>& f, const Mat& points);

/// Mean of f with batch-means stderr.
MomentReport mean_of(const std::function<double(const Vec&)>& f, const Mat& points);

/// Monte Carlo surface area n |Omega| E_sigma[ 1/<x,nu> ] for smooth bodies
/// whose exact surface area is unavailable.
MomentReport surface_area_estimate(const ConvexBody& body, std::int64_t n_samples,
                                   std::uint64_t seed);

/// Raw little-endian dump: uint32 n, uint32 N, then N rows of n float64.
void write_sample_dump(const std::string& path, const Mat& points);
Mat read_sample_dump(const std::string& path);

} // namespace klslab
