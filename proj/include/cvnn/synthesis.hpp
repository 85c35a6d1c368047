#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cvnn/activations.hpp"
#include "cvnn/complex_cube.hpp"
#include "cvnn/multi_index.hpp"
#include "cvnn/trig_approx.hpp"

namespace cvnn {

/// Sparse complex polynomial in z and conj(z):
/// z -> sum coeffs[(m, ell)] * z^m * conj(z)^ell.
struct ZZbarPolynomial {
    int n = 1;
    std::map<std::pair<MultiIndex, MultiIndex>, Complex> coeffs;

    Complex coefficient(const MultiIndex& m, const MultiIndex& ell) const;
    void add(const MultiIndex& m, const MultiIndex& ell, Complex value);
    Complex evaluate(const CVector& z) const;
    bool empty() const { return coeffs.empty(); }

    /// Largest single exponent entry over the support (degree bound d).
    int max_coordinate_degree() const;
    /// Largest per-axis total m_t + ell_t over the support (stencil depth).
    int max_axis_total_degree() const;
};

/// T_k expressed in powers of z and conj(z) via Re z = (z + conj z)/2 and
/// Im z = (z - conj z)/(2i); k has length 2n, x-axes first.
ZZbarPolynomial chebyshev_basis_zzbar(const MultiIndex& k, int n);

/// Expands a whole Chebyshev-side expansion; output degree <= 2 * (input
/// coordinatewise degree).
ZZbarPolynomial chebyshev_to_zzbar(const ChebyshevExpansion& exp, int n);

struct Neuron {
    std::vector<int> alpha; // grid index in Z^(2n); rho = iso(h * alpha)
    CVector rho;
    Complex sigma;
};

/// Shallow network z -> sum sigma_j phi(rho_j^T z + bias) with one shared
/// bias; all weight vectors live on the grid h * Z^(2n).
class ShallowCVNN {
public:
    ShallowCVNN() = default;
    ShallowCVNN(ActivationSpec spec, int n, double h);

    int dimension() const { return n_; }
    Complex bias() const { return bias_; }
    double grid_step() const { return h_; }
    const std::string& activation_name() const { return spec_.name; }
    const ActivationSpec& activation() const { return spec_; }
    const std::vector<Neuron>& neurons() const { return neurons_; }
    std::size_t size() const { return neurons_.size(); }

    void set_neurons(std::vector<Neuron> neurons) { neurons_ = std::move(neurons); }

    Complex evaluate(const CVector& z) const;
    /// Extended-precision accumulation; the sigma cancel each other by
    /// design, so deep-stencil networks lose digits in plain double.
    Complex evaluate_precise(const CVector& z) const;

    ComplexField field(bool precise = false) const;

private:
    ActivationSpec spec_;
    int n_ = 0;
    Complex bias_;
    double h_ = 0.0;
    std::vector<Neuron> neurons_;
};

/// Largest M >= 1 with (16M-7)^(2n) <= m_budget; 0 marks a degenerate budget
/// below 9^(2n) (the pipeline then returns the zero network).
int select_M(long long m_budget, int n);

struct SynthesisOptions {
    int grid_points = 0;        // 0: default grid for the dimension
    int quad_points = 0;        // 0: max(64, 8M)
    bool high_precision = false;
    double h_floor = 1e-4;
    double fixed_h = 0.0;       // > 0: skip the halving search, use this step
    int max_axis_order = 12;    // coordinatewise stencil order cap
    int degree_bound = 0;       // 0: derive from the polynomial
    int axis_total_bound = 0;   // 0: derive from the polynomial
};

struct StageResidual {
    double h;
    double worst_ratio; // max over basis elements of residual / target
};

struct SynthesisDiagnostics {
    int M = 0;
    double h = 0.0;
    long long neuron_count = 0;
    bool degenerate_budget = false;
    bool conditioning_flag = false;
    bool high_precision = false;
    std::string derivative_method;
    double sup_error = 0.0;      // network vs target on the grid
    double cheb_residual = 0.0;  // target vs Chebyshev polynomial stage
    double basis_residual = 0.0; // worst basis-network residual at chosen h
    double basis_target = 0.0;
    std::vector<StageResidual> h_history;
};

/// Network reproducing z^m_idx * conj(z)^ell_idx within eps on the default
/// grid.  Neuron count <= (4 deg + 1)^(2n).
ShallowCVNN monomial_network(const ActivationSpec& spec, const MultiIndex& m_idx,
                             const MultiIndex& ell_idx, double eps,
                             const SynthesisOptions& opts = {});

/// Network reproducing the polynomial within eps; all monomials share one
/// step h and one bias, merged on the common weight grid.
ShallowCVNN polynomial_network(const ActivationSpec& spec, const ZZbarPolynomial& poly,
                               double eps, const SynthesisOptions& opts = {});

/// Full pipeline: Chebyshev functionals of Re f and Im f at degree 2M-1,
/// conversion to a (z, zbar) polynomial, and a shared-weight network whose
/// output coefficients are linear in f.  The returned rho grid depends only
/// on (activation, n, m_budget), never on f.
std::pair<ShallowCVNN, SynthesisDiagnostics> synthesize(const ActivationSpec& spec,
                                                        const ComplexField& f, int n, int k,
                                                        long long m_budget,
                                                        const SynthesisOptions& opts = {});

std::string network_to_json(const ShallowCVNN& net);
ShallowCVNN network_from_json(const std::string& text);
void save_network(const std::string& path, const ShallowCVNN& net);
ShallowCVNN load_network(const std::string& path);

} // namespace cvnn
