#include <doctest.h>

#include <cmath>

#include "cvnn/errors.hpp"
#include "cvnn/multi_index.hpp"
#include "cvnn/ridge.hpp"

using namespace cvnn;

namespace {

// brute-force count of multi-indices with |k| = m in s variables
long long enumerate_homogeneous(int s, int m) {
    long long count = 0;
    std::vector<int> k(static_cast<std::size_t>(s), 0);
    auto rec = [&](auto&& self, int axis, int remaining) -> void {
        if (axis == s - 1) {
            ++count;
            return;
        }
        for (int v = 0; v <= remaining; ++v) self(self, axis + 1, remaining - v);
    };
    rec(rec, 0, m);
    return count;
}

} // namespace

TEST_CASE("homogeneous dimensions") {
    CHECK(homogeneous_dim(2, 3) == 4);
    CHECK(homogeneous_dim(1, 17) == 1);
    CHECK(homogeneous_dim(3, 2) == 6);
    for (int s = 1; s <= 5; ++s)
        for (int m = 0; m <= 10; ++m)
            CHECK(homogeneous_dim(s, m) == enumerate_homogeneous(s, m));
    for (int s = 1; s <= 5; ++s)
        for (int m = 1; m <= 10; ++m)
            CHECK(static_cast<double>(homogeneous_dim(s, m)) <=
                  std::pow(2.0, s - 1) * std::pow(static_cast<double>(m), s - 1));
}

TEST_CASE("ridge basis construction") {
    auto basis = build_ridge_basis(2, 2, 1.0, 42);
    CHECK(basis.directions.size() == 3);
    for (const auto& a : basis.directions) {
        double norm = std::sqrt(a[0] * a[0] + a[1] * a[1]);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }

    auto trivial = build_ridge_basis(2, 0, 2.5, 7);
    CHECK(trivial.directions.size() == 1);
    CHECK(std::hypot(trivial.directions[0][0], trivial.directions[0][1]) ==
          doctest::Approx(2.5).epsilon(1e-12));

    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        for (int degree = 1; degree <= 6; ++degree)
            CHECK(build_ridge_basis(2, degree, 1.0, seed).directions.size() ==
                  static_cast<std::size_t>(homogeneous_dim(2, degree)));

    CHECK_THROWS_AS(build_ridge_basis(1, 2, 1.0, 1), std::invalid_argument);
}

TEST_CASE("ridge basis is deterministic in the seed") {
    auto a = build_ridge_basis(2, 4, 1.0, 123);
    auto b = build_ridge_basis(2, 4, 1.0, 123);
    CHECK(a.directions == b.directions);
    auto c = build_ridge_basis(2, 4, 1.0, 124);
    CHECK(a.directions != c.directions);
}

TEST_CASE("ridge rate bookkeeping") {
    // c2(2) = 4 * 2 = 8: largest M with 8 M <= m
    CHECK(ridge_select_M(8, 2) == 1);
    CHECK(ridge_select_M(7, 2) == 0);
    CHECK(ridge_select_M(24, 2) == 3);
}

TEST_CASE("projection reproduces xy exactly") {
    auto f = [](const std::vector<double>& x) { return x[0] * x[1]; };
    auto basis = build_ridge_basis(2, 2, 1.0, 5);
    auto proj = ridge_project(f, basis, 2, 64);
    CHECK(proj.residual <= 1e-8);
}

TEST_CASE("projection of a constant") {
    auto f = [](const std::vector<double>&) { return 1.0; };
    auto basis = build_ridge_basis(2, 1, 1.0, 6);
    auto proj = ridge_project(f, basis, 1, 64);
    CHECK(proj.residual <= 1e-10);
    // the ridge sum at the origin collects the constant terms
    CHECK(proj.evaluate(basis, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("aligned single direction captures a ridge function") {
    auto f = [](const std::vector<double>& x) { return std::exp(x[0] + x[1]); };
    RidgeBasis basis;
    basis.s = 2;
    basis.norm_r = 1.0;
    basis.degree = 0;
    double inv = 1.0 / std::sqrt(2.0);
    basis.directions = {{inv, inv}};
    auto proj = ridge_project(f, basis, 8, 128);
    CHECK(proj.residual <= 1e-4);
}

TEST_CASE("strict span mode rejects thin bases") {
    auto f = [](const std::vector<double>& x) { return x[0]; };
    RidgeBasis thin;
    thin.s = 2;
    thin.norm_r = 1.0;
    thin.degree = 0;
    thin.directions = {{1.0, 0.0}};
    CHECK_THROWS_AS(ridge_project(f, thin, 2, 64, true), BasisInsufficientError);
}

TEST_CASE("residual is non-increasing when directions double") {
    auto f = [](const std::vector<double>& x) {
        return std::exp(0.8 * x[0] + 0.5 * x[1]) + std::sin(2.0 * x[0]);
    };
    double prev = 1e300;
    for (int count : {4, 8, 16, 32}) {
        // one seed, nested draws: doubling extends the direction family
        auto basis = build_ridge_basis(2, 1, 1.0, 2024, count);
        auto proj = ridge_project(f, basis, 4, 64);
        CHECK(proj.residual <= prev + 1e-9);
        prev = proj.residual;
    }
}
