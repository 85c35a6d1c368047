#include "cvnn/wirtinger.hpp"

#include <cmath>
#include <stdexcept>

#include "cvnn/numerics.hpp"
#include "cvnn/stencil.hpp"

namespace cvnn {

WirtingerExpansion::WirtingerExpansion(MultiIndex m, MultiIndex ell,
                                       std::map<MultiIndex, Complex> terms,
                                       double pre_prune_mass)
    : m_(std::move(m)), ell_(std::move(ell)), terms_(std::move(terms)),
      pre_prune_mass_(pre_prune_mass) {}

Complex WirtingerExpansion::coefficient(const MultiIndex& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

double WirtingerExpansion::coefficient_mass() const {
    double mass = 0.0;
    for (const auto& [p, b] : terms_) mass += std::abs(b);
    return mass;
}

WirtingerExpansion wirtinger_expansion(const MultiIndex& m, const MultiIndex& ell) {
    if (m.length() != ell.length())
        throw std::invalid_argument("wirtinger_expansion: m and ell must have equal length");
    std::size_t n = m.length();

    std::map<MultiIndex, Complex> terms;
    terms.emplace(MultiIndex::zeros(2 * n), Complex(1.0));

    // Each first-order step splits b into halves attached to a real and an
    // imaginary partial: d contributes (1/2, -i/2), dbar (1/2, +i/2).
    auto apply_step = [&](std::size_t j, Complex imag_factor) {
        std::map<MultiIndex, Complex> next;
        for (const auto& [p, b] : terms) {
            next[p.plus(MultiIndex::unit(2 * n, j))] += b * 0.5;
            next[p.plus(MultiIndex::unit(2 * n, n + j))] += b * imag_factor;
        }
        terms.swap(next);
    };

    for (std::size_t j = 0; j < n; ++j)
        for (int step = 0; step < ell[j]; ++step) apply_step(j, Complex(0.0, 0.5));
    for (std::size_t j = 0; j < n; ++j)
        for (int step = 0; step < m[j]; ++step) apply_step(j, Complex(0.0, -0.5));

    double mass = 0.0;
    for (const auto& [p, b] : terms) mass += std::abs(b);

    std::map<MultiIndex, Complex> pruned;
    for (const auto& [p, b] : terms)
        if (std::abs(b) >= 1e-15) pruned.emplace(p, b);
    return WirtingerExpansion(m, ell, std::move(pruned), mass);
}

double default_wirtinger_step(int order) {
    return order <= 2 ? 1e-3 : 1e-2;
}

namespace {

template <class Scalar, class Fn>
std::complex<Scalar> numeric_wirtinger_impl(const Fn& f, int m, int ell, Complex z,
                                            double step) {
    if (m < 0 || ell < 0) throw std::invalid_argument("negative derivative order");
    if (step <= 0) throw std::invalid_argument("numeric_wirtinger needs step > 0");
    auto expansion =
        wirtinger_expansion(MultiIndex({m}), MultiIndex({ell}));
    CompensatedComplexSum<Scalar> result;
    for (const auto& [p, b] : expansion.terms()) {
        CompensatedComplexSum<Scalar> stencil_sum;
        for (const auto& t : difference_stencil(p)) {
            std::complex<Scalar> sample = f(std::complex<Scalar>(
                static_cast<Scalar>(z.real()) + static_cast<Scalar>(step) * t.offsets[0],
                static_cast<Scalar>(z.imag()) + static_cast<Scalar>(step) * t.offsets[1]));
            stencil_sum.add(static_cast<Scalar>(t.weight) * sample);
        }
        Scalar scale = std::pow(static_cast<Scalar>(2 * step), static_cast<Scalar>(-p.order()));
        result.add(std::complex<Scalar>(static_cast<Scalar>(b.real()),
                                        static_cast<Scalar>(b.imag())) *
                   stencil_sum.value() * scale);
    }
    return result.value();
}

} // namespace

Complex numeric_wirtinger(const ComplexFn& f, int m, int ell, Complex z, double step) {
    return numeric_wirtinger_impl<double>(f, m, ell, z, step);
}

Complex numeric_wirtinger_ld(const ComplexFnLd& f, int m, int ell, Complex z, double step) {
    auto v = numeric_wirtinger_impl<long double>(f, m, ell, z, step);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

} // namespace cvnn
