#include "cvnn/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvnn/activations.hpp"
#include "cvnn/errors.hpp"
#include "cvnn/numerics.hpp"

namespace cvnn {

std::vector<StencilTerm> difference_stencil(const MultiIndex& p) {
    std::vector<StencilTerm> terms;
    int order = p.order();
    for_each_below(p, [&](const MultiIndex& r) {
        StencilTerm t;
        t.offsets.resize(p.length());
        for (std::size_t j = 0; j < p.length(); ++j) t.offsets[j] = 2 * r[j] - p[j];
        std::int64_t w = multiindex_binomial(p, r);
        t.weight = ((order - r.order()) % 2 == 0) ? w : -w;
        terms.push_back(std::move(t));
    });
    return terms;
}

namespace {

template <class Value, class Fn>
Value combine_stencil(const Fn& f, const MultiIndex& p, double h) {
    if (h <= 0) throw std::invalid_argument("divided difference needs h > 0");
    auto terms = difference_stencil(p);
    std::vector<double> x(p.length());
    CompensatedSum<Value> acc;
    for (const auto& t : terms) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = h * t.offsets[j];
        acc.add(static_cast<Value>(t.weight) * static_cast<Value>(f(x)));
    }
    return acc.value() * static_cast<Value>(std::pow(2.0 * h, -p.order()));
}

} // namespace

double divided_difference(const RealField& f, const MultiIndex& p, double h) {
    return combine_stencil<double>(f, p, h);
}

long double divided_difference_ld(
    const std::function<long double(const std::vector<double>&)>& f, const MultiIndex& p,
    double h) {
    return combine_stencil<long double>(f, p, h);
}

std::vector<std::vector<double>> divided_difference_table(
    const std::vector<std::pair<double, double>>& points) {
    std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("divided_difference_table needs at least one point");
    std::vector<std::vector<double>> table;
    table.reserve(n);
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = points[i].second;
    table.push_back(row);
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<double> next(n - j);
        for (std::size_t k = 0; k < n - j; ++k) {
            double dx = points[k + j].first - points[k].first;
            if (dx == 0.0)
                throw DegenerateNodesError("divided difference table needs distinct x values");
            next[k] = (table[j - 1][k + 1] - table[j - 1][k]) / dx;
        }
        table.push_back(std::move(next));
    }
    return table;
}

double equidistant_divided_difference(const std::vector<double>& values, double spacing) {
    if (values.empty()) throw std::invalid_argument("no data points");
    if (spacing <= 0) throw DegenerateNodesError("equidistant spacing must be positive");
    int k = static_cast<int>(values.size()) - 1;
    CompensatedSum<double> acc;
    for (int r = 0; r <= k; ++r) {
        double w = static_cast<double>(binomial(k, r));
        acc.add(((k - r) % 2 == 0 ? w : -w) * values[static_cast<std::size_t>(r)]);
    }
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    return acc.value() / (kfact * std::pow(spacing, k));
}

HermiteGenocchiResult hermite_genocchi_quadrature(const std::function<double(double)>& f_deriv_k,
                                                  const std::vector<double>& nodes, int k,
                                                  long long samples, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("hermite_genocchi_quadrature needs k >= 1");
    if (static_cast<int>(nodes.size()) != k + 1)
        throw std::invalid_argument("hermite_genocchi_quadrature needs k+1 nodes");
    if (samples < 1000) throw std::invalid_argument("too few Monte-Carlo samples");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw DegenerateNodesError("repeated interpolation node");

    SeededRng rng(seed);
    std::vector<double> u(static_cast<std::size_t>(k));
    CompensatedSum<double> sum, sumsq;
    for (long long it = 0; it < samples; ++it) {
        for (auto& v : u) v = rng.uniform01();
        std::sort(u.begin(), u.end());
        // spacings of sorted uniforms: a uniform point of the simplex
        double arg = nodes[0];
        double prev = 0.0;
        for (int l = 1; l <= k; ++l) {
            double s = u[static_cast<std::size_t>(l - 1)] - prev;
            prev = u[static_cast<std::size_t>(l - 1)];
            arg += s * (nodes[static_cast<std::size_t>(l)] - nodes[0]);
        }
        double v = f_deriv_k(arg);
        sum.add(v);
        sumsq.add(v * v);
    }
    double volume = 1.0;
    for (int i = 2; i <= k; ++i) volume /= i;
    double mean = sum.value() / static_cast<double>(samples);
    double var = std::max(0.0, sumsq.value() / static_cast<double>(samples) - mean * mean);
    double se = std::sqrt(var / static_cast<double>(samples));
    return {volume * mean, volume * se, samples};
}

PhiStencil phi_neurons(const ActivationSpec& spec, const MultiIndex& p, double h) {
    if (h <= 0) throw std::invalid_argument("phi_neurons needs h > 0");
    if (p.length() % 2 != 0)
        throw std::invalid_argument("phi_neurons expects a multi-index over R^(2n)");
    double s = static_cast<double>(p.length());
    if (h * p.max_entry() * std::sqrt(s) >= spec.radius)
        throw StencilError("stencil too wide for the activation's smoothness ball");
    PhiStencil out;
    out.h = h;
    out.scale = std::pow(2.0 * h, -p.order());
    for (const auto& t : difference_stencil(p)) out.terms.push_back({t.offsets, t.weight});
    return out;
}

} // namespace cvnn
