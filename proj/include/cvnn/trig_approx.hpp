#pragma once

#include <functional>
#include <map>
#include <vector>

#include "cvnn/complex_cube.hpp"
#include "cvnn/multi_index.hpp"

namespace cvnn {

using RealBoxFn = std::function<double(const std::vector<double>&)>;

/// Trigonometric polynomial on [-pi,pi]^s in frequency representation:
/// x -> sum coeffs[k] * e^{i<k,x>} over a finite support.
struct TrigPolyCoeffs {
    int s = 1;
    std::map<std::vector<int>, Complex> coeffs;

    Complex coefficient(const std::vector<int>& k) const;
    Complex evaluate(const std::vector<double>& x) const;
    int degree() const; // max |k_j| over the support
    bool is_real_valued(double tol = 1e-12) const;
};

TrigPolyCoeffs dirichlet(int m);
TrigPolyCoeffs fejer(int m);

/// Univariate de-la-Vallee-Poussin coefficient profile: a_k = 1 for
/// |k| <= m, (2m-|k|)/m on the trapezoid slope m < |k| <= 2m-1, else 0.
double dlvp_coefficient(int m, int k);

TrigPolyCoeffs dlvp(int m, int s);

/// Convolution with V_m^s = frequency-wise product with its coefficients.
TrigPolyCoeffs vm_apply(const TrigPolyCoeffs& f, int m);

/// (2pi)^-s integral of |T| by the tensor trapezoid rule.
double l1_norm(const TrigPolyCoeffs& poly, int quad_points);

/// Fourier coefficients of f*(x) = f(cos x_1, ..., cos x_s) for all
/// |k_j| <= max_freq, tensor trapezoid rule with quad_points per axis.
TrigPolyCoeffs star_fourier_coefficients(const RealBoxFn& f, int s, int max_freq,
                                         int quad_points);

/// Chebyshev-side coefficients V_k^m(f) = 2^(#nonzero k) * a_k^m * fhat*(k),
/// supported on 0 <= k <= 2m-1.  Real for real f up to quadrature noise.
struct ChebyshevExpansion {
    int s = 1;
    int m = 1;
    std::map<MultiIndex, Complex> coeffs;

    Complex coefficient(const MultiIndex& k) const;
};

ChebyshevExpansion chebyshev_functionals(const RealBoxFn& f, int s, int m, int quad_points);

/// T_k(x) by the three-term recurrence.
double chebyshev_value(int k, double x);

Complex chebyshev_approximant_eval(const ChebyshevExpansion& exp, const std::vector<double>& x);

/// The polynomial P = sum V_k^m(f) T_k as a callable.
std::function<Complex(const std::vector<double>&)> chebyshev_approximant(
    const ChebyshevExpansion& exp);

} // namespace cvnn
