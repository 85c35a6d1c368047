#include "cvnn/activations.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvnn/errors.hpp"

namespace cvnn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class T>
std::complex<T> cpow_int(std::complex<T> z, int k) {
    std::complex<T> r(1);
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

// --- modReLU -------------------------------------------------------------
//
// For |z| + b > 0 the mixed derivatives are b * q_{m,l} * z^(l-m+1)/|z|^(2l+1)
// (m <= l+1, l >= 1) resp. b * q_{m,l} * conj(z)^(m-l-1)/|z|^(2m-1)
// (m >= l+1, m >= 2), with the additive constant 1 appearing only at (1,0).
// The rationals q follow the first-order reduction rules for z^a/|z|^c:
// a dbar step multiplies by -c/2, a d step by (a - c/2).

double modrelu_q(int m, int ell) {
    double q;
    int start;
    if (ell == 0) {
        q = 0.5; // q_{1,0}
        start = 1;
    } else {
        q = -0.5; // q_{0,1}
        for (int l = 1; l < ell; ++l) q *= -(2.0 * l + 1.0) / 2.0;
        start = 0;
    }
    for (int i = start; i < m; ++i) q *= 0.5 - i;
    return q;
}

template <class T>
std::complex<T> modrelu_eval(std::complex<T> z, T b) {
    T r = std::abs(z);
    if (r + b <= 0) return {0, 0};
    return (r + b) * z / r;
}

Complex modrelu_wirt(double b, int m, int ell, Complex z) {
    double r = std::abs(z);
    if (r + b <= 0.0) {
        if (r + b < 0.0) return 0.0; // identically zero on the inner disk
        throw std::domain_error("modReLU derivatives undefined on |z| = -b");
    }
    if (m == 0 && ell == 0) return z + b * z / r;
    if (m == 1 && ell == 0) return 1.0 + b / (2.0 * r);
    double q = modrelu_q(m, ell);
    if (ell >= 1 && m <= ell + 1)
        return b * q * cpow_int(z, ell - m + 1) / std::pow(r, 2 * ell + 1);
    return b * q * cpow_int(std::conj(z), m - ell - 1) / std::pow(r, 2 * m - 1);
}

// --- complex cardioid ----------------------------------------------------
//
// card(z) = z/2 + z^2/(4|z|) + |z|/4 for z != 0.  Every mixed derivative is
// a two-term combination a_{m,l} + b_{m,l} of powers z^j/|z|^c resp.
// conj(z)^j/|z|^c; stepping m -> m+1 multiplies a by (1/2 - m) and b by
// (3/2 - m) in every case of the table.

struct CardioidAB {
    double a;
    double b;
};

CardioidAB cardioid_ab(int m, int ell) {
    double a, b;
    int start;
    if (ell == 0) {
        a = 1.0 / 8.0; // coefficients of the first d derivative
        b = 3.0 / 8.0;
        start = 1;
    } else {
        a = 1.0 / 8.0;
        b = -1.0 / 8.0;
        for (int l = 1; l < ell; ++l) {
            a *= -(2.0 * l - 1.0) / 2.0;
            b *= -(2.0 * l + 1.0) / 2.0;
        }
        start = 0;
    }
    for (int i = start; i < m; ++i) {
        a *= 0.5 - i;
        b *= 1.5 - i;
    }
    return {a, b};
}

template <class T>
std::complex<T> cardioid_eval(std::complex<T> z) {
    T r = std::abs(z);
    if (r == 0) return {0, 0};
    return (T(1) + z.real() / r) * z / T(2);
}

Complex cardioid_wirt(int m, int ell, Complex z) {
    double r = std::abs(z);
    if (r == 0.0) throw std::domain_error("cardioid derivatives are singular at 0");
    if (m == 0 && ell == 0) return cardioid_eval(z);
    if (m == 1 && ell == 0) {
        Complex u = z / r;
        return 0.5 + std::conj(u) / 8.0 + 3.0 * u / 8.0;
    }
    auto [a, b] = cardioid_ab(m, ell);
    if (m <= ell)
        return a * cpow_int(z, ell - m) / std::pow(r, 2 * ell - 1) +
               b * cpow_int(z, ell + 2 - m) / std::pow(r, 2 * ell + 1);
    if (m == ell + 1)
        return (a * std::conj(z) + b * z) / std::pow(r, 2 * ell + 1);
    return a * cpow_int(std::conj(z), m - ell) / std::pow(r, 2 * m - 1) +
           b * cpow_int(std::conj(z), m - ell - 2) / std::pow(r, 2 * m - 3);
}

// --- functions of Re(z) --------------------------------------------------
//
// When phi(z) = rho(Re z), each Wirtinger step (either kind) contributes a
// factor 1/2 and one real derivative of rho.

// Derivatives of the logistic function as polynomials in rho itself:
// rho' = rho(1 - rho), differentiated repeatedly.
double logistic_derivative(int order, double x) {
    std::vector<double> poly = {0.0, 1.0}; // rho
    for (int j = 0; j < order; ++j) {
        std::vector<double> deriv(poly.size() >= 1 ? poly.size() - 1 : 0);
        for (std::size_t i = 1; i < poly.size(); ++i)
            deriv[i - 1] = poly[i] * static_cast<double>(i);
        // multiply by u - u^2
        std::vector<double> next(deriv.size() + 2, 0.0);
        for (std::size_t i = 0; i < deriv.size(); ++i) {
            next[i + 1] += deriv[i];
            next[i + 2] -= deriv[i];
        }
        poly.swap(next);
    }
    double rho = 1.0 / (1.0 + std::exp(-x));
    double acc = 0.0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = acc * rho + poly[i];
    return acc;
}

} // namespace

Complex ActivationSpec::wirt(int m, int ell, Complex z) const {
    if (analytic_wirt) return analytic_wirt(m, ell, z);
    double step = default_wirtinger_step(m + ell);
    if (std::isfinite(radius)) step = std::min(step, radius / (8.0 * (m + ell + 1)));
    if (evaluate_ld) return numeric_wirtinger_ld(evaluate_ld, m, ell, z, step);
    return numeric_wirtinger(evaluate, m, ell, z, step);
}

ActivationSpec modrelu(double b_param) {
    if (b_param >= 0) throw std::invalid_argument("modReLU requires b < 0");
    ActivationSpec spec;
    spec.name = "modrelu:" + std::to_string(b_param);
    spec.evaluate = [b_param](Complex z) { return modrelu_eval<double>(z, b_param); };
    spec.evaluate_ld = [b_param](std::complex<long double> z) {
        return modrelu_eval<long double>(z, static_cast<long double>(b_param));
    };
    spec.base_point = Complex(-2.0 * b_param, 0.0);
    spec.radius = -b_param / 2.0;
    spec.analytic_wirt = [b_param](int m, int ell, Complex z) {
        return modrelu_wirt(b_param, m, ell, z);
    };
    return spec;
}

ActivationSpec cardioid() {
    ActivationSpec spec;
    spec.name = "cardioid";
    spec.evaluate = [](Complex z) { return cardioid_eval<double>(z); };
    spec.evaluate_ld = [](std::complex<long double> z) { return cardioid_eval<long double>(z); };
    spec.base_point = std::polar(1.0, 0.7853981633974483); // e^{i pi/4}
    spec.radius = 0.5;
    spec.analytic_wirt = [](int m, int ell, Complex z) { return cardioid_wirt(m, ell, z); };
    return spec;
}

ActivationSpec sigmoid_re() {
    ActivationSpec spec;
    spec.name = "sigmoid-re";
    spec.evaluate = [](Complex z) { return Complex(1.0 / (1.0 + std::exp(-z.real())), 0.0); };
    spec.evaluate_ld = [](std::complex<long double> z) {
        return std::complex<long double>(1.0L / (1.0L + std::exp(-z.real())), 0.0L);
    };
    spec.base_point = Complex(0.1, 0.0);
    spec.radius = kInf;
    spec.analytic_wirt = [](int m, int ell, Complex z) {
        return Complex(std::pow(0.5, m + ell) * logistic_derivative(m + ell, z.real()), 0.0);
    };
    return spec;
}

ActivationSpec exp_re() {
    ActivationSpec spec;
    spec.name = "exp-re";
    spec.evaluate = [](Complex z) { return Complex(std::exp(z.real()), 0.0); };
    spec.evaluate_ld = [](std::complex<long double> z) {
        return std::complex<long double>(std::exp(z.real()), 0.0L);
    };
    spec.base_point = Complex(0.0, 0.0);
    spec.radius = kInf;
    spec.analytic_wirt = [](int m, int ell, Complex z) {
        return Complex(std::pow(0.5, m + ell) * std::exp(z.real()), 0.0);
    };
    return spec;
}

ActivationSpec holomorphic_id() {
    ActivationSpec spec;
    spec.name = "holomorphic-id";
    spec.evaluate = [](Complex z) { return z; };
    spec.evaluate_ld = [](std::complex<long double> z) { return z; };
    spec.base_point = Complex(0.0, 0.0);
    spec.radius = kInf;
    spec.analytic_wirt = [](int m, int ell, Complex z) -> Complex {
        if (m == 0 && ell == 0) return z;
        if (m == 1 && ell == 0) return 1.0;
        return 0.0;
    };
    return spec;
}

ActivationSpec make_activation(const std::string& id) {
    if (id == "cardioid") return cardioid();
    if (id == "sigmoid-re") return sigmoid_re();
    if (id == "exp-re") return exp_re();
    if (id == "holomorphic-id") return holomorphic_id();
    const std::string prefix = "modrelu:";
    if (id.rfind(prefix, 0) == 0) {
        std::size_t pos = 0;
        double b = std::stod(id.substr(prefix.size()), &pos);
        if (pos != id.size() - prefix.size())
            throw std::invalid_argument("malformed modReLU parameter in '" + id + "'");
        return modrelu(b);
    }
    throw std::invalid_argument("unknown activation '" + id + "'");
}

AdmissibilityReport check_admissibility(const ActivationSpec& spec, int M) {
    if (M < 0) throw std::invalid_argument("admissibility order must be non-negative");
    if (!spec.has_analytic() && M > 4)
        throw std::invalid_argument(
            "numeric admissibility checks are unreliable above order 4");

    AdmissibilityReport report;
    report.order = M;
    report.base_point = spec.base_point;
    report.method = spec.has_analytic() ? AdmissibilityReport::Method::analytic
                                        : AdmissibilityReport::Method::numeric;
    report.moduli.assign(static_cast<std::size_t>(M) + 1,
                         std::vector<double>(static_cast<std::size_t>(M) + 1, 0.0));
    report.min_modulus = kInf;
    for (int m = 0; m <= M; ++m) {
        for (int ell = 0; ell <= M; ++ell) {
            double v = std::abs(spec.wirt(m, ell, spec.base_point));
            report.moduli[static_cast<std::size_t>(m)][static_cast<std::size_t>(ell)] = v;
            report.min_modulus = std::min(report.min_modulus, v);
        }
    }
    report.admissible = report.min_modulus > AdmissibilityReport::threshold;
    return report;
}

} // namespace cvnn
