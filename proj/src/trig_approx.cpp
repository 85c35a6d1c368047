#include "cvnn/trig_approx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvnn/errors.hpp"
#include "cvnn/numerics.hpp"

namespace cvnn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long long kQuadratureBudget = 200'000'000;

void check_kernel_dims(int s) {
    if (s < 1 || s > 4) throw BudgetError("tensor quadrature limited to 1 <= s <= 4");
}

// Walks the uniform grid x_t = -pi + 2 pi t / Q, t = 0..Q-1, per axis.
template <class F>
void for_each_quad_node(int s, int quad_points, F&& f) {
    std::vector<int> idx(static_cast<std::size_t>(s), 0);
    std::vector<double> x(static_cast<std::size_t>(s));
    while (true) {
        for (int j = 0; j < s; ++j)
            x[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * idx[static_cast<std::size_t>(j)] / quad_points;
        f(x);
        int axis = s;
        while (axis > 0) {
            --axis;
            if (++idx[static_cast<std::size_t>(axis)] < quad_points) break;
            idx[static_cast<std::size_t>(axis)] = 0;
            if (axis == 0) return;
        }
    }
}

} // namespace

Complex TrigPolyCoeffs::coefficient(const std::vector<int>& k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? Complex(0.0) : it->second;
}

Complex TrigPolyCoeffs::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != s)
        throw std::invalid_argument("evaluation point dimension mismatch");
    CompensatedComplexSum<double> acc;
    for (const auto& [k, c] : coeffs) {
        double phase = 0.0;
        for (int j = 0; j < s; ++j) phase += k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        acc.add(c * std::polar(1.0, phase));
    }
    return acc.value();
}

int TrigPolyCoeffs::degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs)
        for (int kj : k) d = std::max(d, std::abs(kj));
    return d;
}

bool TrigPolyCoeffs::is_real_valued(double tol) const {
    for (const auto& [k, c] : coeffs) {
        std::vector<int> neg(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) neg[j] = -k[j];
        if (std::abs(c - std::conj(coefficient(neg))) > tol) return false;
    }
    return true;
}

TrigPolyCoeffs dirichlet(int m) {
    if (m < 0) throw std::invalid_argument("Dirichlet kernel needs m >= 0");
    TrigPolyCoeffs out;
    out.s = 1;
    for (int k = -m; k <= m; ++k) out.coeffs[{k}] = 1.0;
    return out;
}

TrigPolyCoeffs fejer(int m) {
    if (m < 1) throw std::invalid_argument("Fejer kernel needs m >= 1");
    TrigPolyCoeffs out;
    out.s = 1;
    for (int k = -(m - 1); k <= m - 1; ++k)
        out.coeffs[{k}] = static_cast<double>(m - std::abs(k)) / m;
    return out;
}

double dlvp_coefficient(int m, int k) {
    int a = std::abs(k);
    if (a <= m) return 1.0;
    if (a <= 2 * m - 1) return static_cast<double>(2 * m - a) / m;
    return 0.0;
}

TrigPolyCoeffs dlvp(int m, int s) {
    if (m < 1) throw std::invalid_argument("de-la-Vallee-Poussin kernel needs m >= 1");
    check_kernel_dims(s);
    TrigPolyCoeffs out;
    out.s = s;
    std::vector<int> k(static_cast<std::size_t>(s), -(2 * m - 1));
    while (true) {
        double c = 1.0;
        for (int kj : k) c *= dlvp_coefficient(m, kj);
        if (c != 0.0) out.coeffs[k] = c;
        int axis = s;
        while (axis > 0) {
            --axis;
            if (++k[static_cast<std::size_t>(axis)] <= 2 * m - 1) break;
            k[static_cast<std::size_t>(axis)] = -(2 * m - 1);
            if (axis == 0) return out;
        }
    }
}

TrigPolyCoeffs vm_apply(const TrigPolyCoeffs& f, int m) {
    if (m < 1) throw std::invalid_argument("vm_apply needs m >= 1");
    TrigPolyCoeffs out;
    out.s = f.s;
    for (const auto& [k, c] : f.coeffs) {
        double a = 1.0;
        for (int kj : k) a *= dlvp_coefficient(m, kj);
        if (a != 0.0 && c != Complex(0.0)) out.coeffs[k] = c * a;
    }
    return out;
}

double l1_norm(const TrigPolyCoeffs& poly, int quad_points) {
    if (quad_points < 2) throw std::invalid_argument("quadrature needs at least 2 points");
    check_kernel_dims(poly.s);
    CompensatedSum<double> acc;
    for_each_quad_node(poly.s, quad_points,
                       [&](const std::vector<double>& x) { acc.add(std::abs(poly.evaluate(x))); });
    return acc.value() / std::pow(static_cast<double>(quad_points), poly.s);
}

TrigPolyCoeffs star_fourier_coefficients(const RealBoxFn& f, int s, int max_freq,
                                         int quad_points) {
    check_kernel_dims(s);
    if (max_freq < 0) throw std::invalid_argument("max_freq must be non-negative");
    if (quad_points < 4 * max_freq + 4)
        throw std::invalid_argument("trapezoid rule needs quad_points >= 4*max_freq + 4");
    double evals = static_cast<double>(s) * std::pow(static_cast<double>(quad_points), s);
    if (evals > static_cast<double>(kQuadratureBudget))
        throw BudgetError("quadrature evaluation budget exceeded");

    // Sample f* once on the grid, then project on each frequency.
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(std::pow(quad_points, s)));
    std::vector<std::vector<double>> nodes;
    nodes.reserve(samples.capacity());
    std::vector<double> c(static_cast<std::size_t>(s));
    for_each_quad_node(s, quad_points, [&](const std::vector<double>& x) {
        for (int j = 0; j < s; ++j) c[static_cast<std::size_t>(j)] = std::cos(x[static_cast<std::size_t>(j)]);
        samples.push_back(f(c));
        nodes.push_back(x);
    });

    TrigPolyCoeffs out;
    out.s = s;
    std::vector<int> k(static_cast<std::size_t>(s), -max_freq);
    long long count = static_cast<long long>(samples.size());
    while (true) {
        Complex value = chunked_sum(count, [&](long long i) {
            double phase = 0.0;
            const auto& x = nodes[static_cast<std::size_t>(i)];
            for (int j = 0; j < s; ++j) phase -= k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            return samples[static_cast<std::size_t>(i)] * std::polar(1.0, phase);
        });
        out.coeffs[k] = value / std::pow(static_cast<double>(quad_points), s);
        int axis = s;
        while (axis > 0) {
            --axis;
            if (++k[static_cast<std::size_t>(axis)] <= max_freq) break;
            k[static_cast<std::size_t>(axis)] = -max_freq;
            if (axis == 0) return out;
        }
    }
}

Complex ChebyshevExpansion::coefficient(const MultiIndex& k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? Complex(0.0) : it->second;
}

ChebyshevExpansion chebyshev_functionals(const RealBoxFn& f, int s, int m, int quad_points) {
    if (m < 1) throw std::invalid_argument("chebyshev_functionals needs m >= 1");
    auto fhat = star_fourier_coefficients(f, s, 2 * m - 1, quad_points);
    ChebyshevExpansion out;
    out.s = s;
    out.m = m;
    for_each_box(static_cast<std::size_t>(s), 2 * m - 1, [&](const MultiIndex& k) {
        double a = 1.0;
        int support = 0;
        for (std::size_t j = 0; j < k.length(); ++j) {
            a *= dlvp_coefficient(m, k[j]);
            if (k[j] != 0) ++support;
        }
        out.coeffs[k] = std::pow(2.0, support) * a * fhat.coefficient(k.entries());
    });
    return out;
}

double chebyshev_value(int k, double x) {
    if (k == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int i = 1; i < k; ++i) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Complex chebyshev_approximant_eval(const ChebyshevExpansion& exp, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != exp.s)
        throw std::invalid_argument("evaluation point dimension mismatch");
    CompensatedComplexSum<double> acc;
    for (const auto& [k, v] : exp.coeffs) {
        double t = 1.0;
        for (std::size_t j = 0; j < k.length(); ++j) t *= chebyshev_value(k[j], x[j]);
        acc.add(v * t);
    }
    return acc.value();
}

std::function<Complex(const std::vector<double>&)> chebyshev_approximant(
    const ChebyshevExpansion& exp) {
    return [exp](const std::vector<double>& x) { return chebyshev_approximant_eval(exp, x); };
}

} // namespace cvnn
