#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace cvnn {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using ComplexField = std::function<Complex(const CVector&)>;

/// (x_1,...,x_n,y_1,...,y_n) -> (x_1+iy_1,...,x_n+iy_n).
CVector iso_real_to_complex(const std::vector<double>& x);
std::vector<double> iso_complex_to_real(const CVector& z);

/// Uniform tensor grid on the complex cube [-1,1]^n + i[-1,1]^n, corners
/// included.  points_per_axis counts samples per real axis, so the grid has
/// points_per_axis^(2n) nodes.
class ComplexCubeGrid {
public:
    ComplexCubeGrid(int n, int points_per_axis);

    /// 33 points per axis for n=1, 9 for n>=2.
    static ComplexCubeGrid default_for(int n);

    int dimension() const { return n_; }
    int points_per_axis() const { return q_; }
    long long size() const { return size_; }
    CVector node(long long index) const;

    template <class F>
    void for_each_node(F&& f) const {
        for (long long i = 0; i < size_; ++i) f(node(i));
    }

private:
    int n_;
    int q_;
    long long size_;
};

/// max over grid nodes of |f(z) - g(z)|; throws EvaluationError on a
/// non-finite value.
double sup_norm_diff(const ComplexField& f, const ComplexField& g,
                     const ComplexCubeGrid& grid);

} // namespace cvnn
