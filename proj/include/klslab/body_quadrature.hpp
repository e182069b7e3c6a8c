#pragma once

#include "klslab/geometry.hpp"

#include <functional>

namespace klslab {

/// Deterministic integration over bodies and their boundaries, n <= 3.
/// These rules back every low-dimensional oracle check of the Monte Carlo
/// estimators, so they must stay independent of the sampling module.

using ScalarField = std::function<double(const Vec&)>;

/// Integral of f against the uniform probability measure lambda_Omega,
/// computed in polar coordinates against the r^{n-1} Jacobian.
double polar_quadrature(const ConvexBody& body, const ScalarField& f,
                        int radial_degree = 64, int sphere_resolution = 0);

/// Integral of f over Omega against Lebesgue measure (not normalized).
double polar_quadrature_lebesgue(const ConvexBody& body, const ScalarField& f,
                                 int radial_degree = 64, int sphere_resolution = 0);

/// Integral of f over the boundary against H^{n-1} (not normalized).
/// Smooth bodies use the radial parametrization; cube and simplex use their
/// exact face decompositions.
double boundary_quadrature(const ConvexBody& body, const ScalarField& f,
                           int resolution = 0);

/// Integral of f(x) over the standard simplex {x >= 0, sum x <= 1} in R^n,
/// n <= 3, via the stick-breaking map onto the unit cube.
double standard_simplex_quadrature(int dim, const ScalarField& f, int points_per_axis = 64);

/// Integral of f over the box [lo, hi] by a tensor Gauss rule, n <= 3.
double box_quadrature(const Vec& lo, const Vec& hi, const ScalarField& f,
                      int points_per_axis = 64);

} // namespace klslab
