#include <doctest.h>

#include <cmath>

#include "cvnn/activations.hpp"
#include "cvnn/errors.hpp"
#include "cvnn/numerics.hpp"
#include "cvnn/stencil.hpp"

using namespace cvnn;

namespace {

double exp_sum(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v;
    return std::exp(s);
}

// dense sampling of d^p exp(sum x) = exp(sum x) over the stencil box
std::pair<double, double> box_range_exp(int s, int maxp, double h, int samples_per_axis) {
    double lo = 1e300, hi = -1e300;
    std::vector<int> idx(static_cast<std::size_t>(s), 0);
    while (true) {
        double sum = 0;
        for (int j = 0; j < s; ++j)
            sum += -h * maxp + 2.0 * h * maxp * idx[static_cast<std::size_t>(j)] /
                                   (samples_per_axis - 1);
        double v = std::exp(sum);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        int axis = s;
        bool done = true;
        while (axis > 0) {
            --axis;
            if (++idx[static_cast<std::size_t>(axis)] < samples_per_axis) {
                done = false;
                break;
            }
            idx[static_cast<std::size_t>(axis)] = 0;
        }
        if (done) break;
    }
    return {lo, hi};
}

} // namespace

TEST_CASE("stencil weights") {
    auto terms = difference_stencil(MultiIndex({2}));
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].offsets == std::vector<int>{-2});
    CHECK(terms[0].weight == 1);
    CHECK(terms[1].weight == -2);
    CHECK(terms[2].weight == 1);
    long long total = 0;
    for (const auto& t : difference_stencil(MultiIndex({3, 1}))) total += t.weight;
    CHECK(total == 0);
}

TEST_CASE("divided differences of polynomials are exact") {
    auto sq = [](const std::vector<double>& x) { return x[0] * x[0]; };
    CHECK(divided_difference(sq, MultiIndex({2}), 0.7) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(divided_difference(sq, MultiIndex({2}), 0.05) == doctest::Approx(2.0).epsilon(1e-10));

    auto lin = [](const std::vector<double>& x) { return x[0]; };
    CHECK(divided_difference(lin, MultiIndex({1}), 0.5) == doctest::Approx(1.0).epsilon(1e-14));

    auto x2y = [](const std::vector<double>& x) { return x[0] * x[0] * x[1]; };
    CHECK(divided_difference(x2y, MultiIndex({2, 1}), 0.1) ==
          doctest::Approx(2.0).epsilon(1e-10));

    CHECK_THROWS_AS(divided_difference(lin, MultiIndex({1}), 0.0), std::invalid_argument);
}

TEST_CASE("newton table") {
    auto t1 = divided_difference_table({{0, 0}, {1, 1}});
    CHECK(t1[1][0] == doctest::Approx(1.0));

    auto t2 = divided_difference_table({{-1, 1}, {0, 0}, {1, 1}});
    CHECK(t2[2][0] == doctest::Approx(1.0)); // f''(xi)/2! for f = x^2

    CHECK_THROWS_AS(divided_difference_table({{0, 0}, {0, 1}}), DegenerateNodesError);
}

TEST_CASE("table top agrees with the equidistant formula on random cubics") {
    SeededRng rng(5);
    for (int rep = 0; rep < 12; ++rep) {
        double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2),
               d = rng.uniform(-2, 2);
        auto f = [&](double x) { return a * x * x * x + b * x * x + c * x + d; };
        int p = 1 + static_cast<int>(rng.uniform01() * 3.0);
        double h = rng.uniform(0.05, 0.4);
        std::vector<std::pair<double, double>> pts;
        std::vector<double> values;
        for (int j = 0; j <= p; ++j) {
            double x = -h * p + 2.0 * h * j;
            pts.push_back({x, f(x)});
            values.push_back(f(x));
        }
        double table_top = divided_difference_table(pts)[static_cast<std::size_t>(p)][0];
        double formula = equidistant_divided_difference(values, 2.0 * h);
        CHECK(table_top == doctest::Approx(formula).epsilon(1e-12));
    }
}

TEST_CASE("mean-value sandwich for the exponential family") {
    for (int s = 1; s <= 2; ++s) {
        std::vector<MultiIndex> ps;
        for_each_box(static_cast<std::size_t>(s), 4, [&](const MultiIndex& p) {
            if (p.order() >= 1 && p.order() <= 4) ps.push_back(p);
        });
        for (double h : {0.2, 0.1, 0.05}) {
            for (const auto& p : ps) {
                double value = divided_difference(exp_sum, p, h);
                auto [lo, hi] = box_range_exp(s, p.max_entry(), h, 11);
                CHECK(value >= lo - 1e-9);
                CHECK(value <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("convergence of the mean-value drift") {
    // the symmetric stencil on this even family converges at second order, so
    // the h vs h/2 error ratio sits near 4; C*h still bounds the drift
    MultiIndex p({2, 1});
    double exact = 1.0; // d^p exp(sum x) at 0
    double e1 = std::abs(divided_difference(exp_sum, p, 0.2) - exact);
    double e2 = std::abs(divided_difference(exp_sum, p, 0.1) - exact);
    double e3 = std::abs(divided_difference(exp_sum, p, 0.05) - exact);
    CHECK(e1 / e2 >= 1.5);
    CHECK(e1 / e2 <= 4.6);
    CHECK(e2 / e3 >= 1.5);
    CHECK(e2 / e3 <= 4.6);
    double c = e1 / 0.2;
    CHECK(e2 <= c * 0.1 + 1e-12);
    CHECK(e3 <= c * 0.05 + 1e-12);
}

TEST_CASE("Hermite-Genocchi examples") {
    auto const_two = [](double) { return 2.0; };
    auto r1 = hermite_genocchi_quadrature(const_two, {-1, 0, 1}, 2, 100000, 77);
    CHECK(std::abs(r1.value - 1.0) < 0.01);

    auto deriv_cubic = [](double x) { return 3.0 * x * x; };
    auto r2 = hermite_genocchi_quadrature(deriv_cubic, {0, 1}, 1, 100000, 78);
    CHECK(std::abs(r2.value - 1.0) < 0.05);

    auto const_slope = [](double) { return -2.5; };
    auto r3 = hermite_genocchi_quadrature(const_slope, {0.3, 0.9}, 1, 10000, 79);
    CHECK(r3.value == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(r3.std_error < 1e-12);

    CHECK_THROWS_AS(hermite_genocchi_quadrature(const_two, {0, 0, 1}, 2, 10000, 1),
                    DegenerateNodesError);
    CHECK_THROWS_AS(hermite_genocchi_quadrature(const_two, {0, 1}, 1, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("Hermite-Genocchi agrees with the recursive table") {
    SeededRng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        double a = rng.uniform(0.5, 2.0), b = rng.uniform(-1, 1), c = rng.uniform(-2, 2);
        auto f = [&](double x) { return c * std::sin(a * x + b); };
        int k = 1 + static_cast<int>(rng.uniform01() * 3.0);
        auto fk = [&](double x) {
            double arg = a * x + b + k * 1.5707963267948966;
            return c * std::pow(a, k) * std::sin(arg);
        };
        std::vector<double> nodes;
        while (static_cast<int>(nodes.size()) < k + 1) {
            double x = rng.uniform(-1, 1);
            bool clash = false;
            for (double y : nodes)
                if (std::abs(x - y) < 0.05) clash = true;
            if (!clash) nodes.push_back(x);
        }
        std::vector<std::pair<double, double>> pts;
        for (double x : nodes) pts.push_back({x, f(x)});
        double table_top = divided_difference_table(pts)[static_cast<std::size_t>(k)][0];
        auto mc = hermite_genocchi_quadrature(fk, nodes, k, 200000, 1000 + rep);
        CHECK(std::abs(mc.value - table_top) <= 3.0 * std::max(mc.std_error, 1e-12));
    }
}

TEST_CASE("phi stencils") {
    auto spec = exp_re();

    auto zero = phi_neurons(spec, MultiIndex({0, 0}), 0.1);
    REQUIRE(zero.terms.size() == 1);
    CHECK(zero.terms[0].alpha == std::vector<int>{0, 0});
    CHECK(zero.terms[0].numerator == 1);
    CHECK(zero.scale == 1.0);

    auto first = phi_neurons(spec, MultiIndex({1, 0}), 0.25);
    REQUIRE(first.terms.size() == 2);
    CHECK(first.terms[0].alpha == std::vector<int>{-1, 0});
    CHECK(first.terms[0].numerator == -1);
    CHECK(first.terms[1].alpha == std::vector<int>{1, 0});
    CHECK(first.terms[1].numerator == 1);
    CHECK(first.scale == doctest::Approx(1.0 / (2.0 * 0.25)));

    auto second = phi_neurons(spec, MultiIndex({2, 0}), 0.1);
    REQUIRE(second.terms.size() == 3);
    CHECK(second.terms[0].alpha == std::vector<int>{-2, 0});
    CHECK(second.terms[1].alpha == std::vector<int>{0, 0});
    CHECK(second.terms[1].numerator == -2);
    CHECK(second.terms[2].alpha == std::vector<int>{2, 0});
    CHECK(second.scale == doctest::Approx(1.0 / (4.0 * 0.01)));

    auto tight = modrelu(-1.0); // radius 0.5
    CHECK_THROWS_AS(phi_neurons(tight, MultiIndex({4, 4}), 0.2), StencilError);
}

TEST_CASE("phi stencil reconstructs the direct translate combination") {
    auto spec = exp_re();
    MultiIndex p({2, 1});
    double h = 0.05;
    auto stencil = phi_neurons(spec, p, h);
    SeededRng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        CVector z = {Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        // direct alternating-binomial evaluation of Phi_{p,h}(z)
        CompensatedComplexSum<double> direct;
        for (const auto& t : difference_stencil(p)) {
            CVector w = iso_real_to_complex({h * t.offsets[0], h * t.offsets[1]});
            direct.add(static_cast<double>(t.weight) *
                       spec.evaluate(w[0] * z[0] + spec.base_point));
        }
        Complex direct_value = direct.value() * std::pow(2.0 * h, -p.order());

        CompensatedComplexSum<double> via_neurons;
        for (const auto& term : stencil.terms) {
            CVector rho = iso_real_to_complex({h * term.alpha[0], h * term.alpha[1]});
            via_neurons.add(static_cast<double>(term.numerator) * stencil.scale *
                            spec.evaluate(rho[0] * z[0] + spec.base_point));
        }
        CHECK(std::abs(via_neurons.value() - direct_value) <=
              1e-12 * std::max(1.0, std::abs(direct_value)));
    }
}
