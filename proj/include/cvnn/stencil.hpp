#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cvnn/multi_index.hpp"

namespace cvnn {

struct ActivationSpec; // activations.hpp

using RealField = std::function<double(const std::vector<double>&)>;

/// One node of the central difference stencil for f_{p,h}: the function is
/// sampled at h * offsets with signed integer weight; the common scale
/// (2h)^(-|p|) is applied once at the end so the combinatorics stay exact.
struct StencilTerm {
    std::vector<int> offsets;  // 2r - p
    std::int64_t weight;       // (-1)^(|p|-|r|) * binom(p, r)
};

/// All stencil terms for p, lexicographic in r.  Weights sum to 0 for |p| >= 1.
std::vector<StencilTerm> difference_stencil(const MultiIndex& p);

/// Central divided difference f_{p,h}; equals d^p f at some point of the
/// stencil box h[-max p, max p]^s when f is C^|p| there.
double divided_difference(const RealField& f, const MultiIndex& p, double h);

/// Same combination with a long-double integrand, for stencils deep enough
/// that double-precision samples cancel away.
long double divided_difference_ld(
    const std::function<long double(const std::vector<double>&)>& f, const MultiIndex& p,
    double h);

/// Full triangular Newton table for the points (x_k, y_k); row j holds the
/// order-j differences, so table.back()[0] = [x_0,...,x_n]f.
std::vector<std::vector<double>> divided_difference_table(
    const std::vector<std::pair<double, double>>& points);

/// [x_0,...,x_k]f for equidistant x_j = x_0 + j*spacing from the explicit
/// alternating-binomial formula.
double equidistant_divided_difference(const std::vector<double>& values, double spacing);

struct HermiteGenocchiResult {
    double value;
    double std_error;
    long long samples;
};

/// Monte-Carlo evaluation of the simplex-integral form of [x_0,...,x_k]f.
/// Takes the k-th derivative of f; test oracle only.
HermiteGenocchiResult hermite_genocchi_quadrature(const std::function<double(double)>& f_deriv_k,
                                                  const std::vector<double>& nodes, int k,
                                                  long long samples, std::uint64_t seed);

/// One neuron of the divided-difference surrogate for d^p phi_z(0): weight
/// lambda = numerator * scale, grid index alpha in Z^(2n).
struct PhiNeuron {
    std::vector<int> alpha;
    std::int64_t numerator;
};

struct PhiStencil {
    std::vector<PhiNeuron> terms;
    double scale; // (2h)^(-|p|)
    double h;
};

/// Stencil realizing Phi_{p,h} as a combination of activation translates
/// phi(iso(h*alpha)^T z + base_point).  Requires the stencil to stay inside
/// the activation's smoothness ball.
PhiStencil phi_neurons(const ActivationSpec& spec, const MultiIndex& p, double h);

} // namespace cvnn
