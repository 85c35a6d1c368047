#include "cvnn/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "cvnn/errors.hpp"
#include "cvnn/numerics.hpp"
#include "cvnn/stencil.hpp"

namespace cvnn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// T_j in the monomial basis, integer coefficients by the recurrence.
std::vector<double> chebyshev_monomial_coeffs(int j) {
    std::vector<std::vector<double>> t = {{1.0}, {0.0, 1.0}};
    for (int i = 2; i <= j; ++i) {
        std::vector<double> next(static_cast<std::size_t>(i) + 1, 0.0);
        for (std::size_t a = 0; a < t[static_cast<std::size_t>(i - 1)].size(); ++a)
            next[a + 1] += 2.0 * t[static_cast<std::size_t>(i - 1)][a];
        for (std::size_t a = 0; a < t[static_cast<std::size_t>(i - 2)].size(); ++a)
            next[a] -= t[static_cast<std::size_t>(i - 2)][a];
        t.push_back(std::move(next));
    }
    return t[static_cast<std::size_t>(j)];
}

// Coefficients of (z_t, conj z_t) for T_jx(Re z_t) * T_jy(Im z_t) in one
// complex coordinate; keys are (power of z, power of conj z).
std::map<std::pair<int, int>, Complex> axis_pair_zzbar(int jx, int jy) {
    std::map<std::pair<int, int>, Complex> re_part, im_part, out;
    auto cx = chebyshev_monomial_coeffs(jx);
    for (int i = 0; i < static_cast<int>(cx.size()); ++i) {
        if (cx[static_cast<std::size_t>(i)] == 0.0) continue;
        double scale = cx[static_cast<std::size_t>(i)] * std::pow(0.5, i);
        for (int a = 0; a <= i; ++a)
            re_part[{a, i - a}] += scale * static_cast<double>(binomial(i, a));
    }
    auto cy = chebyshev_monomial_coeffs(jy);
    for (int i = 0; i < static_cast<int>(cy.size()); ++i) {
        if (cy[static_cast<std::size_t>(i)] == 0.0) continue;
        // (2i)^{-i} * (z - conj z)^i
        Complex scale = cy[static_cast<std::size_t>(i)] * std::pow(0.5, i) * ipow(-i);
        for (int a = 0; a <= i; ++a) {
            double sign = ((i - a) % 2 == 0) ? 1.0 : -1.0;
            im_part[{a, i - a}] += scale * sign * static_cast<double>(binomial(i, a));
        }
    }
    for (const auto& [pa, ca] : re_part)
        for (const auto& [pb, cb] : im_part)
            out[{pa.first + pb.first, pa.second + pb.second}] += ca * cb;
    return out;
}

CVector rho_from_alpha(const std::vector<int>& alpha, double h, int n) {
    CVector rho(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        rho[static_cast<std::size_t>(t)] =
            Complex(h * alpha[static_cast<std::size_t>(t)], h * alpha[static_cast<std::size_t>(n + t)]);
    return rho;
}

Complex monomial_value(const MultiIndex& m, const MultiIndex& ell, const CVector& z) {
    Complex v(1.0, 0.0);
    for (std::size_t t = 0; t < z.size(); ++t) {
        for (int i = 0; i < m[t]; ++i) v *= z[t];
        for (int i = 0; i < ell[t]; ++i) v *= std::conj(z[t]);
    }
    return v;
}

using AlphaKey = std::vector<int>;
using AlphaMapLd = std::map<AlphaKey, std::complex<long double>>;

// sigma coefficients over the weight grid realizing one monomial:
// z^m conj(z)^ell = (1/D) sum_p b_p Phi_{p,h}(z) with D the mixed derivative
// of phi at the base point.
AlphaMapLd monomial_alpha_coeffs(const ActivationSpec& spec, const MultiIndex& m_idx,
                                 const MultiIndex& ell_idx, double h) {
    Complex d = spec.wirt(m_idx.order(), ell_idx.order(), spec.base_point);
    if (std::abs(d) <= AdmissibilityReport::threshold)
        throw NotAdmissibleError("vanishing mixed derivative of order (" +
                                 std::to_string(m_idx.order()) + "," +
                                 std::to_string(ell_idx.order()) + ") at the base point");
    std::complex<long double> inv_d =
        std::complex<long double>(1.0L) / std::complex<long double>(d.real(), d.imag());

    AlphaMapLd out;
    auto expansion = wirtinger_expansion(m_idx, ell_idx);
    for (const auto& [p, b] : expansion.terms()) {
        long double scale = std::pow(2.0L * static_cast<long double>(h),
                                     static_cast<long double>(-p.order()));
        std::complex<long double> factor =
            std::complex<long double>(b.real(), b.imag()) * scale * inv_d;
        for (const auto& term : difference_stencil(p))
            out[term.offsets] += factor * static_cast<long double>(term.weight);
    }
    return out;
}

struct ProbeSet {
    std::vector<std::pair<MultiIndex, MultiIndex>> monomials;
    std::map<std::pair<MultiIndex, MultiIndex>, std::size_t> index;

    void rebuild_index() {
        index.clear();
        for (std::size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = i;
    }
    std::size_t index_of(const MultiIndex& m, const MultiIndex& ell) const {
        auto it = index.find({m, ell});
        if (it == index.end()) throw std::logic_error("probe monomial not registered");
        return it->second;
    }
};

struct BasisCombination {
    std::vector<std::pair<std::size_t, Complex>> terms; // (probe index, weight)
    double target;
};

struct HSearchResult {
    double h = 0.0;
    bool met = false;
    double worst = kInf;
    std::vector<StageResidual> history;
    std::vector<AlphaMapLd> alpha_maps; // per probe, at the chosen h
};

// Residuals of every combination of probe-monomial networks against the
// exact monomials at one step size.
double evaluate_h(const ActivationSpec& spec, const ProbeSet& probes,
                  const std::vector<BasisCombination>& combos, const ComplexCubeGrid& grid,
                  const std::vector<CVector>& nodes,
                  const std::vector<std::vector<Complex>>& exact, double h, bool precise,
                  std::vector<AlphaMapLd>& maps_out) {
    int n = grid.dimension();
    maps_out.clear();
    maps_out.reserve(probes.monomials.size());
    std::set<AlphaKey> alphas;
    for (const auto& [m, ell] : probes.monomials) {
        maps_out.push_back(monomial_alpha_coeffs(spec, m, ell, h));
        for (const auto& [a, c] : maps_out.back()) alphas.insert(a);
    }

    // activation translate values phi(iso(h alpha)^T z + b), shared by all
    // probes; kept in extended precision when the mode asks for it, since the
    // deep stencil combinations cancel right at double resolution
    std::map<AlphaKey, std::vector<std::complex<long double>>> table;
    for (const auto& a : alphas) {
        CVector rho = rho_from_alpha(a, h, n);
        std::vector<std::complex<long double>> vals(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (precise) {
                std::complex<long double> arg(spec.base_point.real(), spec.base_point.imag());
                for (int t = 0; t < n; ++t)
                    arg += std::complex<long double>(rho[static_cast<std::size_t>(t)].real(),
                                                     rho[static_cast<std::size_t>(t)].imag()) *
                           std::complex<long double>(nodes[i][static_cast<std::size_t>(t)].real(),
                                                     nodes[i][static_cast<std::size_t>(t)].imag());
                vals[i] = spec.evaluate_ld(arg);
            } else {
                Complex arg = spec.base_point;
                for (int t = 0; t < n; ++t)
                    arg += rho[static_cast<std::size_t>(t)] * nodes[i][static_cast<std::size_t>(t)];
                Complex v = spec.evaluate(arg);
                vals[i] = std::complex<long double>(v.real(), v.imag());
            }
        }
        table.emplace(a, std::move(vals));
    }

    // per-probe error fields, then combination residuals
    std::vector<std::vector<Complex>> fields(probes.monomials.size());
    for (std::size_t pi = 0; pi < probes.monomials.size(); ++pi) {
        std::vector<std::complex<long double>> acc(nodes.size(), {0.0L, 0.0L});
        for (const auto& [a, c] : maps_out[pi]) {
            const auto& vals = table.at(a);
            for (std::size_t i = 0; i < nodes.size(); ++i) acc[i] += c * vals[i];
        }
        fields[pi].resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            fields[pi][i] = Complex(static_cast<double>(acc[i].real()),
                                    static_cast<double>(acc[i].imag())) -
                            exact[pi][i];
    }

    double worst = 0.0;
    for (const auto& combo : combos) {
        double sup = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            Complex e(0.0, 0.0);
            for (const auto& [pi, w] : combo.terms) e += w * fields[pi][i];
            sup = std::max(sup, std::abs(e));
        }
        worst = std::max(worst, sup / combo.target);
    }
    return worst;
}

// Halve h from h0 until every combination meets its target; keep the best h
// when the residuals start growing again (roundoff regime) or the floor is
// reached.
HSearchResult search_h(const ActivationSpec& spec, const ProbeSet& probes,
                       const std::vector<BasisCombination>& combos,
                       const ComplexCubeGrid& grid, double h0, const SynthesisOptions& opts) {
    std::vector<CVector> nodes;
    nodes.reserve(static_cast<std::size_t>(grid.size()));
    for (long long i = 0; i < grid.size(); ++i) nodes.push_back(grid.node(i));
    std::vector<std::vector<Complex>> exact(probes.monomials.size());
    for (std::size_t pi = 0; pi < probes.monomials.size(); ++pi) {
        exact[pi].resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            exact[pi][i] =
                monomial_value(probes.monomials[pi].first, probes.monomials[pi].second, nodes[i]);
    }

    HSearchResult best;
    std::vector<AlphaMapLd> maps;
    double start = opts.fixed_h > 0.0 ? opts.fixed_h : h0;
    for (double h = start; h >= std::min(start, opts.h_floor); h /= 2.0) {
        double worst = evaluate_h(spec, probes, combos, grid, nodes, exact, h,
                                  opts.high_precision, maps);
        best.history.push_back({h, worst});
        if (worst < best.worst) {
            best.worst = worst;
            best.h = h;
            best.alpha_maps = maps;
            if (worst <= 1.0) {
                best.met = true;
                break;
            }
        } else {
            break; // residuals grew: cancellation has taken over
        }
        if (opts.fixed_h > 0.0) break;
    }
    if (best.alpha_maps.empty() && !probes.monomials.empty())
        throw ConditioningError("no usable step size above the floor", best.worst);
    return best;
}

double default_h0(const ActivationSpec& spec, int n, int axis_total) {
    double h0 = 0.1;
    if (std::isfinite(spec.radius) && axis_total > 0)
        h0 = std::min(h0, spec.radius / (2.0 * std::sqrt(2.0 * n) * axis_total * n));
    return h0;
}

int required_admissibility_order(const ProbeSet& probes) {
    int order = 0;
    for (const auto& [m, ell] : probes.monomials)
        order = std::max(order, std::max(m.order(), ell.order()));
    return order;
}

std::vector<Neuron> assemble_neurons(const std::vector<AlphaMapLd>& maps,
                                     const std::vector<std::pair<std::size_t, Complex>>& weights,
                                     double h, int n, int full_box_reach) {
    AlphaMapLd sigma;
    if (full_box_reach > 0) {
        // fixed canonical grid, independent of the particular polynomial
        std::vector<int> a(static_cast<std::size_t>(2 * n), -full_box_reach);
        while (true) {
            sigma.emplace(a, std::complex<long double>(0.0L, 0.0L));
            int axis = 2 * n;
            bool done = true;
            while (axis > 0) {
                --axis;
                if (++a[static_cast<std::size_t>(axis)] <= full_box_reach) {
                    done = false;
                    break;
                }
                a[static_cast<std::size_t>(axis)] = -full_box_reach;
            }
            if (done) break;
        }
    }
    for (const auto& [pi, w] : weights) {
        std::complex<long double> wl(w.real(), w.imag());
        for (const auto& [a, c] : maps[pi]) sigma[a] += wl * c;
    }
    std::vector<Neuron> neurons;
    neurons.reserve(sigma.size());
    for (const auto& [a, c] : sigma) {
        Neuron nn;
        nn.alpha = a;
        nn.rho = rho_from_alpha(a, h, n);
        nn.sigma = Complex(static_cast<double>(c.real()), static_cast<double>(c.imag()));
        neurons.push_back(std::move(nn));
    }
    return neurons;
}

} // namespace

Complex ZZbarPolynomial::coefficient(const MultiIndex& m, const MultiIndex& ell) const {
    auto it = coeffs.find({m, ell});
    return it == coeffs.end() ? Complex(0.0) : it->second;
}

void ZZbarPolynomial::add(const MultiIndex& m, const MultiIndex& ell, Complex value) {
    if (static_cast<int>(m.length()) != n || static_cast<int>(ell.length()) != n)
        throw std::invalid_argument("monomial index length must equal the dimension");
    coeffs[{m, ell}] += value;
}

Complex ZZbarPolynomial::evaluate(const CVector& z) const {
    if (static_cast<int>(z.size()) != n)
        throw std::invalid_argument("evaluation point dimension mismatch");
    CompensatedComplexSum<double> acc;
    for (const auto& [key, c] : coeffs) acc.add(c * monomial_value(key.first, key.second, z));
    return acc.value();
}

int ZZbarPolynomial::max_coordinate_degree() const {
    int d = 0;
    for (const auto& [key, c] : coeffs)
        d = std::max({d, key.first.max_entry(), key.second.max_entry()});
    return d;
}

int ZZbarPolynomial::max_axis_total_degree() const {
    int d = 0;
    for (const auto& [key, c] : coeffs)
        for (std::size_t t = 0; t < key.first.length(); ++t)
            d = std::max(d, key.first[t] + key.second[t]);
    return d;
}

ZZbarPolynomial chebyshev_basis_zzbar(const MultiIndex& k, int n) {
    if (static_cast<int>(k.length()) != 2 * n)
        throw std::invalid_argument("chebyshev_basis_zzbar expects an index of length 2n");
    ZZbarPolynomial out;
    out.n = n;
    // start with the constant 1 and tensor in one complex coordinate at a time
    std::map<std::pair<MultiIndex, MultiIndex>, Complex> acc;
    acc[{MultiIndex::zeros(static_cast<std::size_t>(n)),
         MultiIndex::zeros(static_cast<std::size_t>(n))}] = 1.0;
    for (int t = 0; t < n; ++t) {
        auto axis = axis_pair_zzbar(k[static_cast<std::size_t>(t)],
                                    k[static_cast<std::size_t>(n + t)]);
        std::map<std::pair<MultiIndex, MultiIndex>, Complex> next;
        for (const auto& [key, c] : acc) {
            for (const auto& [pw, ac] : axis) {
                std::vector<int> me = key.first.entries();
                std::vector<int> le = key.second.entries();
                me[static_cast<std::size_t>(t)] += pw.first;
                le[static_cast<std::size_t>(t)] += pw.second;
                next[{MultiIndex(me), MultiIndex(le)}] += c * ac;
            }
        }
        acc.swap(next);
    }
    for (const auto& [key, c] : acc)
        if (std::abs(c) > 0.0) out.coeffs[key] = c;
    return out;
}

ZZbarPolynomial chebyshev_to_zzbar(const ChebyshevExpansion& exp, int n) {
    if (exp.s != 2 * n)
        throw std::invalid_argument("chebyshev_to_zzbar needs an expansion over R^(2n)");
    ZZbarPolynomial out;
    out.n = n;
    for (const auto& [k, v] : exp.coeffs) {
        if (v == Complex(0.0)) continue;
        ZZbarPolynomial basis = chebyshev_basis_zzbar(k, n);
        for (const auto& [key, c] : basis.coeffs) out.coeffs[key] += v * c;
    }
    return out;
}

ShallowCVNN::ShallowCVNN(ActivationSpec spec, int n, double h)
    : spec_(std::move(spec)), n_(n), bias_(spec_.base_point), h_(h) {}

Complex ShallowCVNN::evaluate(const CVector& z) const {
    if (neurons_.empty()) return {0.0, 0.0};
    CompensatedComplexSum<double> acc;
    for (const auto& neuron : neurons_) {
        Complex arg = bias_;
        for (int t = 0; t < n_; ++t)
            arg += neuron.rho[static_cast<std::size_t>(t)] * z[static_cast<std::size_t>(t)];
        acc.add(neuron.sigma * spec_.evaluate(arg));
    }
    return acc.value();
}

Complex ShallowCVNN::evaluate_precise(const CVector& z) const {
    if (neurons_.empty()) return {0.0, 0.0};
    CompensatedComplexSum<long double> acc;
    for (const auto& neuron : neurons_) {
        std::complex<long double> arg(bias_.real(), bias_.imag());
        for (int t = 0; t < n_; ++t)
            arg += std::complex<long double>(neuron.rho[static_cast<std::size_t>(t)].real(),
                                             neuron.rho[static_cast<std::size_t>(t)].imag()) *
                   std::complex<long double>(z[static_cast<std::size_t>(t)].real(),
                                             z[static_cast<std::size_t>(t)].imag());
        acc.add(std::complex<long double>(neuron.sigma.real(), neuron.sigma.imag()) *
                spec_.evaluate_ld(arg));
    }
    auto v = acc.value();
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

ComplexField ShallowCVNN::field(bool precise) const {
    ShallowCVNN copy = *this;
    if (precise)
        return [copy](const CVector& z) { return copy.evaluate_precise(z); };
    return [copy](const CVector& z) { return copy.evaluate(z); };
}

int select_M(long long m_budget, int n) {
    if (m_budget < 1) throw std::invalid_argument("neuron budget must be positive");
    int M = 0;
    for (int cand = 1;; ++cand) {
        long double count = std::pow(static_cast<long double>(16 * cand - 7), 2 * n);
        if (count > static_cast<long double>(m_budget)) break;
        M = cand;
    }
    return M;
}

ShallowCVNN monomial_network(const ActivationSpec& spec, const MultiIndex& m_idx,
                             const MultiIndex& ell_idx, double eps,
                             const SynthesisOptions& opts) {
    if (m_idx.length() != ell_idx.length())
        throw std::invalid_argument("monomial index length mismatch");
    ZZbarPolynomial poly;
    poly.n = static_cast<int>(m_idx.length());
    poly.add(m_idx, ell_idx, Complex(1.0, 0.0));
    return polynomial_network(spec, poly, eps, opts);
}

ShallowCVNN polynomial_network(const ActivationSpec& spec, const ZZbarPolynomial& poly,
                               double eps, const SynthesisOptions& opts) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    int n = poly.n;
    if (poly.empty()) return ShallowCVNN(spec, n, 0.0);

    int axis_total = opts.axis_total_bound ? opts.axis_total_bound : poly.max_axis_total_degree();
    int degree = opts.degree_bound ? opts.degree_bound : poly.max_coordinate_degree();
    if (axis_total > opts.max_axis_order)
        throw ConditioningError("coordinatewise stencil order " + std::to_string(axis_total) +
                                    " exceeds the cap of " + std::to_string(opts.max_axis_order),
                                kInf);

    ProbeSet probes;
    for (const auto& [key, c] : poly.coeffs) probes.monomials.push_back(key);
    probes.rebuild_index();
    if (!check_admissibility(spec, required_admissibility_order(probes)).admissible)
        throw NotAdmissibleError("activation fails the admissibility check for '" + spec.name +
                                 "'");

    BasisCombination combo;
    combo.target = eps;
    for (std::size_t pi = 0; pi < probes.monomials.size(); ++pi)
        combo.terms.push_back({pi, poly.coeffs.at(probes.monomials[pi])});

    ComplexCubeGrid grid =
        opts.grid_points ? ComplexCubeGrid(n, opts.grid_points) : ComplexCubeGrid::default_for(n);
    auto result = search_h(spec, probes, {combo}, grid, default_h0(spec, n, axis_total), opts);
    if (!result.met)
        throw ConditioningError("divided-difference step floor reached at residual " +
                                    std::to_string(result.worst * eps),
                                result.worst * eps);

    ShallowCVNN net(spec, n, result.h);
    int box = opts.degree_bound ? 2 * degree : 0; // sparse unless a canonical box is requested
    net.set_neurons(assemble_neurons(result.alpha_maps, combo.terms, result.h, n, box));
    return net;
}

std::pair<ShallowCVNN, SynthesisDiagnostics> synthesize(const ActivationSpec& spec,
                                                        const ComplexField& f, int n, int k,
                                                        long long m_budget,
                                                        const SynthesisOptions& opts) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (k < 0) throw std::invalid_argument("smoothness k must be non-negative");
    SynthesisDiagnostics diag;
    diag.high_precision = opts.high_precision;
    diag.derivative_method = spec.has_analytic() ? "analytic" : "numeric";
    ComplexCubeGrid grid =
        opts.grid_points ? ComplexCubeGrid(n, opts.grid_points) : ComplexCubeGrid::default_for(n);

    int M = select_M(m_budget, n);
    diag.M = M;
    if (M == 0) {
        diag.degenerate_budget = true;
        ShallowCVNN zero(spec, n, 0.0);
        diag.sup_error = sup_norm_diff(f, zero.field(opts.high_precision), grid);
        return {zero, diag};
    }

    int cheb_degree = 2 * M - 1;
    int axis_total = 2 * cheb_degree; // 4M - 2
    if (axis_total > opts.max_axis_order)
        throw ConditioningError("budget implies stencil order " + std::to_string(axis_total) +
                                    " above the cap " + std::to_string(opts.max_axis_order),
                                kInf);
    if (!check_admissibility(spec, axis_total * n).admissible)
        throw NotAdmissibleError("activation '" + spec.name + "' fails the order-" +
                                 std::to_string(axis_total * n) + " admissibility check");

    // Chebyshev basis in the (z, zbar) representation; the probe set is the
    // union of their supports, fixed before f enters.
    std::vector<std::pair<MultiIndex, ZZbarPolynomial>> basis;
    for_each_box(static_cast<std::size_t>(2 * n), cheb_degree, [&](const MultiIndex& kk) {
        basis.emplace_back(kk, chebyshev_basis_zzbar(kk, n));
    });
    ProbeSet probes;
    {
        std::set<std::pair<MultiIndex, MultiIndex>> support;
        for (const auto& [kk, poly] : basis)
            for (const auto& [key, c] : poly.coeffs) support.insert(key);
        probes.monomials.assign(support.begin(), support.end());
        probes.rebuild_index();
    }
    double target = std::pow(static_cast<double>(M), -(k + n));
    diag.basis_target = target;
    std::vector<BasisCombination> combos;
    combos.reserve(basis.size());
    for (const auto& [kk, poly] : basis) {
        BasisCombination combo;
        combo.target = target;
        for (const auto& [key, c] : poly.coeffs) combo.terms.push_back({probes.index_of(key.first, key.second), c});
        combos.push_back(std::move(combo));
    }

    auto result =
        search_h(spec, probes, combos, grid, default_h0(spec, n, axis_total), opts);
    diag.h = result.h;
    diag.h_history = result.history;
    diag.basis_residual = result.worst * target;
    diag.conditioning_flag = !result.met;

    // Chebyshev functionals of the real and imaginary parts; four real axes
    // force a coarser default rule to keep the tensor sweep tractable
    int quad = opts.quad_points ? opts.quad_points
                                : (n == 1 ? std::max(64, 8 * M) : std::max(24, 8 * M));
    RealBoxFn f_re = [&](const std::vector<double>& x) { return f(iso_real_to_complex(x)).real(); };
    RealBoxFn f_im = [&](const std::vector<double>& x) { return f(iso_real_to_complex(x)).imag(); };
    ChebyshevExpansion exp_re_part = chebyshev_functionals(f_re, 2 * n, M, quad);
    ChebyshevExpansion exp_im_part = chebyshev_functionals(f_im, 2 * n, M, quad);

    // combined polynomial P1 + i P2 and the matching sigma combination
    ZZbarPolynomial p_total;
    p_total.n = n;
    std::vector<std::pair<std::size_t, Complex>> weights;
    {
        std::map<std::size_t, Complex> acc;
        for (const auto& [kk, poly] : basis) {
            Complex v = exp_re_part.coefficient(kk) + Complex(0.0, 1.0) * exp_im_part.coefficient(kk);
            if (v == Complex(0.0)) continue;
            for (const auto& [key, c] : poly.coeffs) {
                p_total.coeffs[key] += v * c;
                acc[probes.index_of(key.first, key.second)] += v * c;
            }
        }
        weights.assign(acc.begin(), acc.end());
    }

    ShallowCVNN net(spec, n, result.h);
    net.set_neurons(assemble_neurons(result.alpha_maps, weights, result.h, n,
                                     2 * (2 * cheb_degree))); // |alpha_j| <= 8M-4
    diag.neuron_count = static_cast<long long>(net.size());
    if (diag.neuron_count > m_budget)
        throw std::logic_error("neuron budget accounting violated");

    diag.cheb_residual =
        sup_norm_diff(f, [&](const CVector& z) { return p_total.evaluate(z); }, grid);
    diag.sup_error = sup_norm_diff(f, net.field(opts.high_precision), grid);
    return {net, diag};
}

std::string network_to_json(const ShallowCVNN& net) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["n"] = net.dimension();
    j["bias"] = {net.bias().real(), net.bias().imag()};
    j["activation"] = net.activation_name();
    auto neurons = nlohmann::ordered_json::array();
    for (const auto& neuron : net.neurons()) {
        nlohmann::ordered_json nj;
        nj["alpha"] = neuron.alpha;
        auto rho = nlohmann::ordered_json::array();
        for (const auto& r : neuron.rho) rho.push_back({r.real(), r.imag()});
        nj["rho"] = rho;
        nj["sigma"] = {neuron.sigma.real(), neuron.sigma.imag()};
        neurons.push_back(std::move(nj));
    }
    j["neurons"] = std::move(neurons);
    return j.dump(2) + "\n";
}

ShallowCVNN network_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != 1)
        throw std::invalid_argument("unsupported network format version");
    int n = j.at("n").get<int>();
    ActivationSpec spec = make_activation(j.at("activation").get<std::string>());
    spec.base_point = Complex(j.at("bias")[0].get<double>(), j.at("bias")[1].get<double>());
    ShallowCVNN net(spec, n, 0.0);
    std::vector<Neuron> neurons;
    for (const auto& nj : j.at("neurons")) {
        Neuron neuron;
        neuron.alpha = nj.at("alpha").get<std::vector<int>>();
        for (const auto& r : nj.at("rho"))
            neuron.rho.push_back(Complex(r[0].get<double>(), r[1].get<double>()));
        neuron.sigma = Complex(nj.at("sigma")[0].get<double>(), nj.at("sigma")[1].get<double>());
        neurons.push_back(std::move(neuron));
    }
    net.set_neurons(std::move(neurons));
    return net;
}

void save_network(const std::string& path, const ShallowCVNN& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << network_to_json(net);
}

ShallowCVNN load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return network_from_json(text);
}

} // namespace cvnn
