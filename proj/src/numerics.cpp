#include "cvnn/numerics.hpp"

#include <stdexcept>

namespace cvnn {

namespace {
constexpr long long kChunk = 4096;
}

std::complex<double> chunked_sum(long long count,
                                 const std::function<std::complex<double>(long long)>& term) {
    if (count <= 0) return {0.0, 0.0};
    long long chunks = (count + kChunk - 1) / kChunk;
    std::vector<std::complex<double>> partial(static_cast<std::size_t>(chunks));
    for (long long c = 0; c < chunks; ++c) {
        CompensatedComplexSum<double> acc;
        long long hi = std::min(count, (c + 1) * kChunk);
        for (long long i = c * kChunk; i < hi; ++i) acc.add(term(i));
        partial[static_cast<std::size_t>(c)] = acc.value();
    }
    // pairwise reduction in fixed order
    while (partial.size() > 1) {
        std::vector<std::complex<double>> next((partial.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = partial[2 * i];
            if (2 * i + 1 < partial.size()) next[i] += partial[2 * i + 1];
        }
        partial.swap(next);
    }
    return partial[0];
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope needs two equal-length samples of size >= 2");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return sxy / sxx;
}

} // namespace cvnn
