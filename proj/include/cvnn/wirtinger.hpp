#pragma once

#include <complex>
#include <functional>
#include <map>

#include "cvnn/complex_cube.hpp"
#include "cvnn/multi_index.hpp"

namespace cvnn {

/// Exact expansion of the mixed Wirtinger operator d^m dbar^ell into real
/// partials: sum over p = (p', p'') with p' + p'' = m + ell of b_p * d^p.
/// The coefficients depend only on (m, ell, p), never on the function.
class WirtingerExpansion {
public:
    WirtingerExpansion(MultiIndex m, MultiIndex ell, std::map<MultiIndex, Complex> terms,
                       double pre_prune_mass);

    const MultiIndex& m() const { return m_; }
    const MultiIndex& ell() const { return ell_; }
    const std::map<MultiIndex, Complex>& terms() const { return terms_; }

    /// b_p, or 0 for indices outside the support.
    Complex coefficient(const MultiIndex& p) const;

    /// Sum of |b_p| over stored terms.  At most 1; equals 1 exactly when no
    /// coordinate carries both a d and a dbar step (mixed steps cancel).
    double coefficient_mass() const;

    /// Mass before pruning coefficients below 1e-15.
    double pre_prune_mass() const { return pre_prune_mass_; }

private:
    MultiIndex m_;
    MultiIndex ell_;
    std::map<MultiIndex, Complex> terms_;
    double pre_prune_mass_;
};

WirtingerExpansion wirtinger_expansion(const MultiIndex& m, const MultiIndex& ell);

/// Step size balancing truncation against cancellation for stencils of the
/// given total order: 1e-3 up to order 2, 1e-2 for orders 3-4 (documented
/// accuracy cliff above 4).
double default_wirtinger_step(int order);

using ComplexFn = std::function<Complex(Complex)>;
using ComplexFnLd = std::function<std::complex<long double>(std::complex<long double>)>;

/// Central-difference estimate of d^m dbar^ell f at z; error O(step^2) for f
/// smooth near z.
Complex numeric_wirtinger(const ComplexFn& f, int m, int ell, Complex z, double step);

/// Same scheme with the integrand evaluated in extended precision; deep
/// stencils cancel below double resolution otherwise.
Complex numeric_wirtinger_ld(const ComplexFnLd& f, int m, int ell, Complex z, double step);

} // namespace cvnn
