#pragma once

#include <cstdint>
#include <vector>

#include "cvnn/trig_approx.hpp"

namespace cvnn {

/// Ridge directions a_j of common norm r; projections use powers
/// (a_j^T x)^p for p = 0..max_power.
struct RidgeBasis {
    int s = 2;
    double norm_r = 1.0;
    int degree = 0; // span certified for homogeneous degree <= this
    std::vector<std::vector<double>> directions;
};

/// dim H_m^s = binom(s+m-1, m).
long long homogeneous_dim(int s, int m);

/// Samples random sphere directions (scaled to norm_r) until the homogeneous
/// powers (a_j^T x)^degree span H_degree^s, certified by the rank of their
/// exact coefficient matrix.  count = 0 samples exactly dim many.
RidgeBasis build_ridge_basis(int s, int degree, double norm_r, std::uint64_t seed,
                             int count = 0);

/// Largest M with (2s)^(s-1) 2^(s-1) M^(s-1) <= m, the bookkeeping used by
/// the ridge rate experiment; 0 when even M = 1 does not fit.
int ridge_select_M(long long m, int s);

struct RidgeProjection {
    std::vector<std::vector<double>> coeffs; // per direction, powers 0..R
    double residual;                         // sup |f - ridge sum| on the grid
    bool span_complete;                      // basis spans P^s_R exactly
    double evaluate(const RidgeBasis& basis, const std::vector<double>& x) const;
};

/// Chebyshev-approximates f at coordinatewise degree <= cheb_degree, then
/// expresses that polynomial in the ridge-power basis by least squares on
/// exact monomial coefficients.
RidgeProjection ridge_project(const RealBoxFn& f, const RidgeBasis& basis, int cheb_degree,
                              int quad_points, bool require_span = false);

} // namespace cvnn
