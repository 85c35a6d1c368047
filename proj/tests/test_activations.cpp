#include <doctest.h>

#include <cmath>

#include "cvnn/activations.hpp"
#include "cvnn/numerics.hpp"

using namespace cvnn;

namespace {

// seeded samples inside the smoothness ball, stencil margin included
std::vector<Complex> ball_samples(const ActivationSpec& spec, double shrink, int count,
                                  std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < count) {
        Complex d(rng.uniform(-1, 1), rng.uniform(-1, 1));
        if (std::abs(d) > 1.0) continue;
        out.push_back(spec.base_point + shrink * spec.radius * d);
    }
    return out;
}

} // namespace

TEST_CASE("modReLU evaluation") {
    auto spec = modrelu(-1.0);
    CHECK(spec.evaluate(Complex(2, 0)) == Complex(1, 0));
    CHECK(spec.evaluate(Complex(0.5, 0)) == Complex(0, 0));
    CHECK(spec.evaluate(Complex(0, 0)) == Complex(0, 0));
    CHECK(std::abs(spec.analytic_wirt(1, 0, Complex(2, 0)) - Complex(0.75, 0)) < 1e-15);
    CHECK_THROWS_AS(modrelu(0.5), std::invalid_argument);
}

TEST_CASE("cardioid evaluation") {
    auto spec = cardioid();
    CHECK(std::abs(spec.evaluate(Complex(3, 0)) - Complex(3, 0)) < 1e-15);
    CHECK(std::abs(spec.evaluate(Complex(-3, 0))) < 1e-15);
    Complex u = std::polar(1.0, 0.7853981633974483);
    Complex expected = 0.5 + std::conj(u) / 8.0 + 3.0 * u / 8.0;
    CHECK(std::abs(spec.analytic_wirt(1, 0, u) - expected) < 1e-15);
    CHECK_THROWS_AS(spec.analytic_wirt(1, 0, Complex(0, 0)), std::domain_error);
}

TEST_CASE("cardioid fixes the positive real axis") {
    auto spec = cardioid();
    for (double x = 0.25; x <= 10.0; x += 0.25)
        CHECK(std::abs(spec.evaluate(Complex(x, 0)) - Complex(x, 0)) < 1e-12 * x);
}

TEST_CASE("sigmoid and exponential of the real part") {
    auto sig = sigmoid_re();
    CHECK(sig.evaluate(Complex(0, 0)) == Complex(0.5, 0));
    CHECK(sig.evaluate(Complex(0, 5)) == Complex(0.5, 0));
    CHECK(std::abs(sig.analytic_wirt(1, 0, Complex(0, 0)) - Complex(0.125, 0)) < 1e-15);

    auto ex = exp_re();
    CHECK(ex.evaluate(Complex(0, 0)) == Complex(1, 0));
    CHECK(std::abs(ex.evaluate(Complex(1, 7)) - Complex(std::exp(1.0), 0)) < 1e-15);
    CHECK(std::abs(ex.analytic_wirt(2, 1, Complex(0, 0)) - Complex(0.125, 0)) < 1e-15);
}

TEST_CASE("analytic tables agree with central differences") {
    for (const auto& spec : {modrelu(-1.0), cardioid()}) {
        auto f_ld = spec.evaluate_ld;
        for (Complex z : ball_samples(spec, 0.7, 10, 41)) {
            for (int m = 0; m <= 3; ++m) {
                for (int ell = 0; m + ell <= 3; ++ell) {
                    Complex exact = spec.analytic_wirt(m, ell, z);
                    Complex numeric = numeric_wirtinger_ld(f_ld, m, ell, z, 5e-4);
                    CHECK(std::abs(numeric - exact) <= 1e-5 * std::max(1e-30, std::abs(exact)));
                }
            }
        }
    }
}

TEST_CASE("modReLU conjugate symmetry") {
    // modReLU commutes with conjugation, so conjugating the argument
    // conjugates every mixed derivative: the operator swap from the
    // conjugation rules cancels against the one from the inner conjugation.
    auto spec = modrelu(-1.0);
    SeededRng rng(17);
    for (int rep = 0; rep < 8; ++rep) {
        Complex z = std::polar(rng.uniform(1.5, 2.5), rng.uniform(-3.1, 3.1));
        CHECK(std::abs(spec.evaluate(std::conj(z)) - std::conj(spec.evaluate(z))) < 1e-15);
        for (int m = 0; m <= 4; ++m) {
            for (int ell = 0; m + ell <= 4; ++ell) {
                Complex lhs = spec.analytic_wirt(m, ell, std::conj(z));
                Complex rhs = std::conj(spec.analytic_wirt(m, ell, z));
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("admissibility verdicts") {
    CHECK(check_admissibility(modrelu(-1.0), 3).admissible);
    CHECK(check_admissibility(cardioid(), 3).admissible);
    CHECK(check_admissibility(cardioid(), 2).admissible);

    auto report = check_admissibility(holomorphic_id(), 1);
    CHECK_FALSE(report.admissible);
    CHECK(report.min_modulus <= AdmissibilityReport::threshold);
}

TEST_CASE("admissibility is invariant under nonzero scaling") {
    Complex c(0.7, -2.3);
    for (const auto& base : {modrelu(-1.0), cardioid(), holomorphic_id()}) {
        ActivationSpec scaled = base;
        auto inner_eval = base.evaluate;
        auto inner_wirt = base.analytic_wirt;
        scaled.evaluate = [inner_eval, c](Complex z) { return c * inner_eval(z); };
        scaled.analytic_wirt = [inner_wirt, c](int m, int ell, Complex z) {
            return c * inner_wirt(m, ell, z);
        };
        for (int M = 0; M <= 3; ++M)
            CHECK(check_admissibility(scaled, M).admissible ==
                  check_admissibility(base, M).admissible);
    }
}

TEST_CASE("activation registry") {
    CHECK(make_activation("modrelu:-1").name == "modrelu:-1.000000");
    CHECK(make_activation("cardioid").name == "cardioid");
    CHECK(make_activation("sigmoid-re").name == "sigmoid-re");
    CHECK(make_activation("exp-re").name == "exp-re");
    CHECK(make_activation("holomorphic-id").name == "holomorphic-id");
    CHECK_THROWS_AS(make_activation("relu"), std::invalid_argument);
    CHECK_THROWS_AS(make_activation("modrelu:abc"), std::invalid_argument);
}

TEST_CASE("numeric fallback matches a known analytic value") {
    ActivationSpec numeric_only = exp_re();
    numeric_only.analytic_wirt = nullptr;
    auto report = check_admissibility(numeric_only, 2);
    CHECK(report.method == AdmissibilityReport::Method::numeric);
    CHECK(report.admissible);
    CHECK(report.moduli[1][1] == doctest::Approx(0.25).epsilon(1e-6));
    CHECK_THROWS_AS(check_admissibility(numeric_only, 5), std::invalid_argument);
}

TEST_CASE("closed forms for the Re-part activations match central differences") {
    SeededRng rng(53);
    for (const auto& spec : {sigmoid_re(), exp_re()}) {
        for (int rep = 0; rep < 5; ++rep) {
            Complex z(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
            for (int m = 0; m <= 2; ++m) {
                for (int ell = 0; m + ell <= 3; ++ell) {
                    Complex exact = spec.analytic_wirt(m, ell, z);
                    Complex numeric = numeric_wirtinger_ld(spec.evaluate_ld, m, ell, z, 5e-4);
                    // absolute floor: the logistic derivatives have zeros
                    CHECK(std::abs(numeric - exact) <= 1e-6 + 1e-5 * std::abs(exact));
                }
            }
        }
    }
}

TEST_CASE("modReLU derivatives reject the kink circle") {
    auto spec = modrelu(-1.0);
    CHECK_THROWS_AS(spec.analytic_wirt(1, 0, Complex(1.0, 0.0)), std::domain_error);
    CHECK(spec.analytic_wirt(2, 1, Complex(0.3, 0.2)) == Complex(0.0)); // flat inner disk
}
