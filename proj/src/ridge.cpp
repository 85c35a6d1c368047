#include "cvnn/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "cvnn/errors.hpp"
#include "cvnn/numerics.hpp"

namespace cvnn {

namespace {

// multi-indices with |k| = m, lexicographic
std::vector<MultiIndex> homogeneous_indices(int s, int m) {
    std::vector<MultiIndex> out;
    std::vector<int> k(static_cast<std::size_t>(s), 0);
    auto rec = [&](auto&& self, int axis, int remaining) -> void {
        if (axis == s - 1) {
            k[static_cast<std::size_t>(axis)] = remaining;
            out.emplace_back(k);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            k[static_cast<std::size_t>(axis)] = v;
            self(self, axis + 1, remaining - v);
        }
    };
    rec(rec, 0, m);
    return out;
}

// |k|! / prod k_j!
double multinomial(const MultiIndex& k) {
    double v = 1.0;
    int used = 0;
    for (std::size_t j = 0; j < k.length(); ++j) {
        v *= static_cast<double>(binomial(used + k[j], k[j]));
        used += k[j];
    }
    return v;
}

// coefficient row of (a^T x)^m over the homogeneous basis |k| = m
void expand_power(const std::vector<double>& a, const std::vector<MultiIndex>& basis,
                  Eigen::VectorXd& row) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        double c = multinomial(basis[i]);
        for (std::size_t j = 0; j < a.size(); ++j)
            c *= std::pow(a[j], basis[i][j]);
        row[static_cast<Eigen::Index>(i)] = c;
    }
}

bool spans_homogeneous(const std::vector<std::vector<double>>& directions, int s, int degree) {
    auto basis = homogeneous_indices(s, degree);
    Eigen::MatrixXd mat(static_cast<Eigen::Index>(directions.size()),
                        static_cast<Eigen::Index>(basis.size()));
    Eigen::VectorXd row(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t d = 0; d < directions.size(); ++d) {
        expand_power(directions[d], basis, row);
        double norm = row.norm();
        mat.row(static_cast<Eigen::Index>(d)) = norm > 0 ? row / norm : row;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(mat);
    qr.setThreshold(1e-10);
    return qr.rank() == static_cast<Eigen::Index>(basis.size());
}

// x^i = 2^(1-i) sum_j binom(i, j) T_{i-2j}, with the T_0 term halved
std::vector<double> chebyshev_of_power(int i) {
    std::vector<double> out(static_cast<std::size_t>(i) + 1, 0.0);
    double scale = std::pow(2.0, 1 - i);
    for (int j = 0; 2 * j <= i; ++j) {
        int degree = i - 2 * j;
        double c = scale * static_cast<double>(binomial(i, j));
        if (degree == 0) c *= 0.5;
        out[static_cast<std::size_t>(degree)] += c;
    }
    return out;
}

std::vector<double> sample_direction(SeededRng& rng, int s, double norm_r) {
    std::vector<double> a(static_cast<std::size_t>(s));
    double sq;
    do {
        for (auto& v : a) v = rng.gaussian();
        sq = 0.0;
        for (double v : a) sq += v * v;
    } while (sq < 1e-12);
    double scale = norm_r / std::sqrt(sq);
    for (auto& v : a) v *= scale;
    return a;
}

} // namespace

long long homogeneous_dim(int s, int m) {
    if (s < 1 || m < 0) throw std::invalid_argument("homogeneous_dim needs s >= 1, m >= 0");
    return binomial(s + m - 1, m);
}

RidgeBasis build_ridge_basis(int s, int degree, double norm_r, std::uint64_t seed, int count) {
    if (s < 2) throw std::invalid_argument("ridge bases need s >= 2");
    if (degree < 0) throw std::invalid_argument("degree must be non-negative");
    if (norm_r <= 0) throw std::invalid_argument("direction norm must be positive");
    long long dim = homogeneous_dim(s, degree);
    if (count == 0) count = static_cast<int>(dim);
    if (count < dim)
        throw std::invalid_argument("fewer directions than dim H_degree^s cannot span");

    SeededRng rng(seed);
    RidgeBasis basis;
    basis.s = s;
    basis.norm_r = norm_r;
    basis.degree = degree;
    for (int i = 0; i < count; ++i) basis.directions.push_back(sample_direction(rng, s, norm_r));

    int attempts = 0;
    while (!spans_homogeneous(basis.directions, s, degree)) {
        if (++attempts > 100)
            throw SpanFailureError("ridge directions failed the span certificate repeatedly");
        basis.directions[static_cast<std::size_t>((attempts - 1) % count)] =
            sample_direction(rng, s, norm_r);
    }
    return basis;
}

int ridge_select_M(long long m, int s) {
    double c2 = std::pow(2.0 * s, s - 1) * std::pow(2.0, s - 1);
    int M = 0;
    while (c2 * std::pow(static_cast<double>(M + 1), s - 1) <= static_cast<double>(m)) ++M;
    return M;
}

double RidgeProjection::evaluate(const RidgeBasis& basis, const std::vector<double>& x) const {
    double total = 0.0;
    for (std::size_t j = 0; j < basis.directions.size(); ++j) {
        double u = 0.0;
        for (std::size_t t = 0; t < x.size(); ++t) u += basis.directions[j][t] * x[t];
        double acc = 0.0;
        for (std::size_t r = coeffs[j].size(); r-- > 0;) acc = acc * u + coeffs[j][r];
        total += acc;
    }
    return total;
}

RidgeProjection ridge_project(const RealBoxFn& f, const RidgeBasis& basis, int cheb_degree,
                              int quad_points, bool require_span) {
    if (cheb_degree < 1) throw std::invalid_argument("cheb_degree must be positive");
    int s = basis.s;
    int R = s * cheb_degree;

    // Chebyshev stage: the operator at degree cheb_degree reproduces
    // polynomials of coordinatewise degree <= cheb_degree exactly
    if (quad_points == 0) quad_points = std::max(64, 8 * cheb_degree);
    auto exp = chebyshev_functionals(f, s, cheb_degree, quad_points);

    // The least-squares system lives on exact tensor-Chebyshev coefficients:
    // the target side is the V_k themselves, the ridge side comes from the
    // exact multinomial expansion of (a^T x)^r followed by the exact
    // power-to-Chebyshev change of basis.  No grid sampling enters.
    int row_degree = std::max(R, 2 * cheb_degree - 1);
    std::vector<MultiIndex> rows;
    std::map<MultiIndex, std::size_t> row_index;
    for_each_box(static_cast<std::size_t>(s), row_degree, [&](const MultiIndex& k) {
        row_index[k] = rows.size();
        rows.push_back(k);
    });

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows.size()));
    for (const auto& [k, v] : exp.coeffs) {
        if (std::abs(v.imag()) > 1e-9)
            throw EvaluationError("chebyshev functional with non-real value", k.to_string());
        rhs[static_cast<Eigen::Index>(row_index.at(k))] = v.real();
    }

    std::size_t ndir = basis.directions.size();
    Eigen::MatrixXd design =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                              static_cast<Eigen::Index>(ndir * static_cast<std::size_t>(R + 1)));
    for (std::size_t j = 0; j < ndir; ++j) {
        for (int r = 0; r <= R; ++r) {
            std::map<MultiIndex, double> cheb_col;
            for (const auto& k : homogeneous_indices(s, r)) {
                double c = multinomial(k);
                for (int t = 0; t < s; ++t)
                    c *= std::pow(basis.directions[j][static_cast<std::size_t>(t)],
                                  k[static_cast<std::size_t>(t)]);
                if (c == 0.0) continue;
                // tensor product of the per-axis power-to-Chebyshev expansions
                std::map<MultiIndex, double> part;
                part[MultiIndex::zeros(static_cast<std::size_t>(s))] = c;
                for (int t = 0; t < s; ++t) {
                    auto axis = chebyshev_of_power(k[static_cast<std::size_t>(t)]);
                    std::map<MultiIndex, double> next;
                    for (const auto& [idx, coeff] : part) {
                        for (std::size_t deg = 0; deg < axis.size(); ++deg) {
                            if (axis[deg] == 0.0) continue;
                            std::vector<int> e = idx.entries();
                            e[static_cast<std::size_t>(t)] += static_cast<int>(deg);
                            next[MultiIndex(e)] += coeff * axis[deg];
                        }
                    }
                    part.swap(next);
                }
                for (const auto& [idx, coeff] : part) cheb_col[idx] += coeff;
            }
            for (const auto& [idx, coeff] : cheb_col)
                design(static_cast<Eigen::Index>(row_index.at(idx)),
                       static_cast<Eigen::Index>(j * static_cast<std::size_t>(R + 1) +
                                                 static_cast<std::size_t>(r))) = coeff;
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    long long full_dim = 0;
    for (int total = 0; total <= R; ++total) full_dim += homogeneous_dim(s, total);
    bool complete = qr.rank() == static_cast<Eigen::Index>(full_dim);
    if (require_span && !complete)
        throw BasisInsufficientError("ridge basis does not span the degree-" + std::to_string(R) +
                                     " polynomial space");
    Eigen::VectorXd solution = qr.solve(rhs);

    RidgeProjection proj;
    proj.span_complete = complete;
    proj.coeffs.assign(ndir, std::vector<double>(static_cast<std::size_t>(R + 1), 0.0));
    for (std::size_t j = 0; j < ndir; ++j)
        for (int r = 0; r <= R; ++r)
            proj.coeffs[j][static_cast<std::size_t>(r)] =
                solution[static_cast<Eigen::Index>(j * static_cast<std::size_t>(R + 1) +
                                                   static_cast<std::size_t>(r))];

    // residual on the default real grid
    int grid_points = 33;
    std::vector<int> idx(static_cast<std::size_t>(s), 0);
    std::vector<double> x(static_cast<std::size_t>(s));
    double residual = 0.0;
    while (true) {
        for (int j = 0; j < s; ++j)
            x[static_cast<std::size_t>(j)] =
                -1.0 + 2.0 * idx[static_cast<std::size_t>(j)] / (grid_points - 1);
        residual = std::max(residual, std::abs(f(x) - proj.evaluate(basis, x)));
        int axis = s;
        bool done = true;
        while (axis > 0) {
            --axis;
            if (++idx[static_cast<std::size_t>(axis)] < grid_points) {
                done = false;
                break;
            }
            idx[static_cast<std::size_t>(axis)] = 0;
        }
        if (done) break;
    }
    proj.residual = residual;
    return proj;
}

} // namespace cvnn
