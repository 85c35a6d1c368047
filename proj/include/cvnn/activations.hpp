#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cvnn/complex_cube.hpp"
#include "cvnn/wirtinger.hpp"

namespace cvnn {

/// An activation together with a recommended base point b, the radius of a
/// ball around b on which it is smooth, and (where available) closed forms
/// for the mixed Wirtinger derivatives.
struct ActivationSpec {
    std::string name;
    ComplexFn evaluate;
    ComplexFnLd evaluate_ld; // extended-precision evaluator, same function
    Complex base_point;
    double radius = 0.0;
    std::function<Complex(int m, int ell, Complex z)> analytic_wirt; // may be empty

    bool has_analytic() const { return static_cast<bool>(analytic_wirt); }

    /// d^m dbar^ell at z: closed form when present, otherwise central
    /// differences with the default step for the order.
    Complex wirt(int m, int ell, Complex z) const;
};

ActivationSpec modrelu(double b_param);
ActivationSpec cardioid();
ActivationSpec sigmoid_re();
ActivationSpec exp_re();
ActivationSpec holomorphic_id(); // negative control: dbar kills it

/// Parses CLI identifiers: modrelu:<b>, cardioid, sigmoid-re, exp-re,
/// holomorphic-id.
ActivationSpec make_activation(const std::string& id);

struct AdmissibilityReport {
    static constexpr double threshold = 1e-8;

    int order = 0;
    Complex base_point;
    double min_modulus = 0.0;
    bool admissible = false;
    enum class Method { analytic, numeric } method = Method::analytic;
    std::vector<std::vector<double>> moduli; // [m][ell], m, ell <= order
};

/// Evaluates |d^m dbar^ell phi(base_point)| for all m, ell <= M; admissible
/// iff every modulus clears the threshold.
AdmissibilityReport check_admissibility(const ActivationSpec& spec, int M);

} // namespace cvnn
