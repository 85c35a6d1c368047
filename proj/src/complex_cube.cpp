#include "cvnn/complex_cube.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cvnn/errors.hpp"

namespace cvnn {

CVector iso_real_to_complex(const std::vector<double>& x) {
    if (x.size() % 2 != 0)
        throw std::invalid_argument("iso_real_to_complex needs an even-length vector");
    std::size_t n = x.size() / 2;
    CVector z(n);
    for (std::size_t t = 0; t < n; ++t) z[t] = Complex(x[t], x[n + t]);
    return z;
}

std::vector<double> iso_complex_to_real(const CVector& z) {
    std::vector<double> x(2 * z.size());
    for (std::size_t t = 0; t < z.size(); ++t) {
        x[t] = z[t].real();
        x[z.size() + t] = z[t].imag();
    }
    return x;
}

ComplexCubeGrid::ComplexCubeGrid(int n, int points_per_axis) : n_(n), q_(points_per_axis) {
    if (n < 1) throw std::invalid_argument("grid dimension must be positive");
    if (points_per_axis < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
    size_ = 1;
    for (int a = 0; a < 2 * n; ++a) {
        size_ *= q_;
        if (size_ > (1LL << 40)) throw BudgetError("grid size exceeds evaluation budget");
    }
}

ComplexCubeGrid ComplexCubeGrid::default_for(int n) {
    return ComplexCubeGrid(n, n == 1 ? 33 : 9);
}

CVector ComplexCubeGrid::node(long long index) const {
    std::vector<double> x(2 * static_cast<std::size_t>(n_));
    for (int a = 2 * n_ - 1; a >= 0; --a) {
        int digit = static_cast<int>(index % q_);
        index /= q_;
        x[static_cast<std::size_t>(a)] = -1.0 + 2.0 * digit / (q_ - 1);
    }
    return iso_real_to_complex(x);
}

double sup_norm_diff(const ComplexField& f, const ComplexField& g,
                     const ComplexCubeGrid& grid) {
    double best = 0.0;
    for (long long i = 0; i < grid.size(); ++i) {
        CVector z = grid.node(i);
        Complex d = f(z) - g(z);
        double v = std::abs(d);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            for (std::size_t t = 0; t < z.size(); ++t) {
                if (t) os << ", ";
                os << z[t].real() << (z[t].imag() < 0 ? "-" : "+") << std::abs(z[t].imag()) << "i";
            }
            throw EvaluationError("non-finite value in sup-norm sweep", os.str());
        }
        if (v > best) best = v;
    }
    return best;
}

} // namespace cvnn
