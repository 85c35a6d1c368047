#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace cvnn {

/// Neumaier compensated accumulator.
template <class T>
class CompensatedSum {
public:
    void add(T value) {
        T t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_ = 0;
    T comp_ = 0;
};

template <class T>
class CompensatedComplexSum {
public:
    void add(std::complex<T> value) {
        re_.add(value.real());
        im_.add(value.imag());
    }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<T> re_;
    CompensatedSum<T> im_;
};

/// Sums term(i) for i in [0, count) with a fixed chunking and pairwise
/// combination order, so the result does not depend on evaluation
/// parallelism.
std::complex<double> chunked_sum(long long count,
                                 const std::function<std::complex<double>(long long)>& term);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Deterministic uniform/Gaussian draws on top of mt19937_64; avoids the
/// implementation-defined std distributions.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cvnn
