#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <vector>

#include <Eigen/Dense>

#include "casimir/errors.hpp"
#include "casimir/linalg.hpp"

namespace casimir {

// Controls for the mode-space integrator.
//   rel_tol     relative tolerance on the Euclidean norm of the result
//   abs_floor   absolute error floor (stop once the estimate drops below it)
//   max_level   deepest dyadic subdivision level per axis
//   scale       mapping scale Lambda [1/m] for kappa and q; <= 0 lets the
//               caller substitute its natural scale (stress uses 1/(2a))
//   fixed_level >= 0 integrates a uniform non-adaptive grid at that level,
//               which makes results at different parameters share identical
//               nodes (used for correlated comparisons)
//   serial      force single-threaded evaluation
struct QuadSpec {
    double rel_tol = 1e-6;
    double abs_floor = 0.0;
    int max_level = 12;
    double scale = 0.0;
    int fixed_level = -1;
    bool serial = false;

    void validate() const {
        if (!(rel_tol > 0.0) || rel_tol > 1e-2) {
            throw ValidationError("quadrature rel_tol must lie in (0, 1e-2]");
        }
        if (max_level < 3 || max_level > 16) {
            throw ValidationError("quadrature max_level must lie in [3, 16]");
        }
        if (fixed_level > 4) {
            throw ValidationError("quadrature fixed_level must not exceed 4");
        }
        if (std::isnan(scale) || std::isinf(scale)) {
            throw ValidationError("quadrature scale must be finite");
        }
    }
};

template <int N>
struct QuadResult {
    Eigen::Matrix<double, N, 1> value = Eigen::Matrix<double, N, 1>::Zero();
    double error = 0.0;          // sum of per-cell |GL16 - GL8| norms
    double imag_residual = 0.0;  // accumulated magnitude of discarded Im parts
    std::size_t evaluations = 0; // integrand calls
    int leaves = 0;
};

namespace quad_detail {

struct GaussRule {
    std::vector<double> x;  // nodes on (0, 1)
    std::vector<double> w;  // weights summing to 1
};

const GaussRule& gauss_rule(int n);  // cached; n in {8, 16}
int thread_budget(bool serial);

inline std::uint64_t pack_cell(int level, int it, int is, int ip) {
    return (std::uint64_t(level) << 54) | (std::uint64_t(it) << 36) |
           (std::uint64_t(is) << 18) | std::uint64_t(ip);
}

template <int N>
struct Leaf {
    std::uint64_t id;
    int level, it, is, ip;
    Eigen::Matrix<cplx, N, 1> value;
    double error;
};

// One Gauss-Legendre tensor pass of order n over the dyadic cell.
// The integrand f(kappa, u, v) is evaluated at +u and -u and the pair summed,
// which doubles as the u-fold of the conjugate-symmetric integrand.
template <int N, class F>
Eigen::Matrix<cplx, N, 1> cell_pass(const F& f, double lambda, int level, int it,
                                    int is, int ip, int n, std::size_t* evals) {
    const GaussRule& rule = gauss_rule(n);
    const double h = std::ldexp(1.0, -level);
    const double t0 = it * h, s0 = is * h, p0 = ip * h;
    constexpr double half_pi = 1.5707963267948966;

    Eigen::Matrix<cplx, N, 1> acc = Eigen::Matrix<cplx, N, 1>::Zero();
    for (int i = 0; i < n; ++i) {
        const double t = t0 + h * rule.x[i];
        const double om_t = 1.0 - t;
        const double kappa = lambda * t / om_t;
        const double jk = lambda / (om_t * om_t);
        const double wi = rule.w[i] * h * jk;
        for (int j = 0; j < n; ++j) {
            const double s = s0 + h * rule.x[j];
            const double om_s = 1.0 - s;
            const double q = lambda * s / om_s;
            const double jq = lambda / (om_s * om_s);
            const double wij = wi * rule.w[j] * h * jq * q;
            for (int k = 0; k < n; ++k) {
                const double phi = half_pi * (p0 + h * rule.x[k]);
                const double u = q * std::cos(phi);
                const double v = q * std::sin(phi);
                // total weight: 2 (v-fold) * half_pi (phi jacobian)
                const double wijk = wij * rule.w[k] * h * half_pi * 2.0;
                acc += wijk * (f(kappa, u, v) + f(kappa, -u, v));
                *evals += 2;
            }
        }
    }
    return acc;
}

template <int N, class F>
Leaf<N> evaluate_cell(const F& f, double lambda, int level, int it, int is, int ip) {
    std::size_t evals = 0;
    Leaf<N> leaf;
    leaf.id = pack_cell(level, it, is, ip);
    leaf.level = level;
    leaf.it = it;
    leaf.is = is;
    leaf.ip = ip;
    leaf.value = cell_pass<N>(f, lambda, level, it, is, ip, 16, &evals);
    const auto coarse = cell_pass<N>(f, lambda, level, it, is, ip, 8, &evals);
    leaf.error = (leaf.value - coarse).norm();
    (void)evals;
    return leaf;
}

template <int N, class F>
std::vector<Leaf<N>> evaluate_cells(const F& f, double lambda,
                                    const std::vector<std::array<int, 4>>& cells,
                                    int threads, std::size_t* total_evals) {
    std::vector<Leaf<N>> out(cells.size());
    if (threads <= 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out[i] = evaluate_cell<N>(f, lambda, cells[i][0], cells[i][1],
                                      cells[i][2], cells[i][3]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) break;
                out[i] = evaluate_cell<N>(f, lambda, cells[i][0], cells[i][1],
                                          cells[i][2], cells[i][3]);
            }
        };
        std::vector<std::future<void>> pool;
        const int nw = std::min<int>(threads, static_cast<int>(cells.size()));
        pool.reserve(nw);
        for (int i = 0; i < nw; ++i) {
            pool.push_back(std::async(std::launch::async, worker));
        }
        for (auto& fut : pool) fut.get();
    }
    // 16^3 + 8^3 nodes, two integrand calls per node
    *total_evals += cells.size() * std::size_t(2 * (4096 + 512));
    return out;
}

// Deterministic reduction: leaves sorted by cell id, Kahan-summed.
template <int N>
void reduce_leaves(std::vector<Leaf<N>>& leaves, QuadResult<N>* result) {
    std::sort(leaves.begin(), leaves.end(),
              [](const Leaf<N>& a, const Leaf<N>& b) { return a.id < b.id; });
    Eigen::Matrix<double, N, 1> sum = Eigen::Matrix<double, N, 1>::Zero();
    Eigen::Matrix<double, N, 1> comp = Eigen::Matrix<double, N, 1>::Zero();
    double err = 0.0, imag = 0.0;
    for (const auto& leaf : leaves) {
        for (int c = 0; c < N; ++c) {
            const double y = std::real(leaf.value[c]) - comp[c];
            const double t = sum[c] + y;
            comp[c] = (t - sum[c]) - y;
            sum[c] = t;
        }
        err += leaf.error;
        imag += leaf.value.imag().template lpNorm<Eigen::Infinity>();
    }
    result->value = sum;
    result->error = err;
    result->imag_residual = imag;
    result->leaves = static_cast<int>(leaves.size());
}

template <int N, class F>
void spot_check_parity(const F& f, double lambda) {
    const double kappa = 0.7 * lambda, q = 1.3 * lambda;
    const double u = q * 0.8, v = q * 0.6;
    const auto base = f(kappa, u, v);
    const auto flip_u = f(kappa, -u, v);
    const auto flip_v = f(kappa, u, -v);
    const double scale = base.norm() + 1e-300;
    if ((base - flip_u.conjugate()).norm() > 1e-10 * scale) {
        throw ParityViolation(
            "integrand violates f(-u, v) = conj(f(u, v)) at the spot-check mode");
    }
    if ((base - flip_v).norm() > 1e-10 * scale) {
        throw ParityViolation(
            "integrand violates f(u, -v) = f(u, v) at the spot-check mode");
    }
}

} // namespace quad_detail

// Integrates f(kappa, u, v) -> Eigen::Matrix<cplx, N, 1> with measure
// dkappa du dv over kappa > 0 and the full (u, v) plane. Requires the
// symmetries f(-u, v) = conj(f(u, v)) and f(u, -v) = f(u, v); the imaginary
// part of the folded sum is discarded and its magnitude reported.
template <int N, class F>
QuadResult<N> integrate_modes(F&& f, const QuadSpec& spec) {
    using quad_detail::Leaf;
    spec.validate();
    const double lambda = spec.scale > 0.0 ? spec.scale : 1.0;
    const int threads = quad_detail::thread_budget(spec.serial);

    quad_detail::spot_check_parity<N>(f, lambda);

    QuadResult<N> result;
    std::size_t evals = 2 * 3;

    const int level0 = spec.fixed_level >= 0 ? spec.fixed_level : 1;
    std::vector<std::array<int, 4>> seed;
    const int side = 1 << level0;
    for (int it = 0; it < side; ++it)
        for (int is = 0; is < side; ++is)
            for (int ip = 0; ip < side; ++ip) seed.push_back({level0, it, is, ip});
    std::vector<Leaf<N>> leaves =
        quad_detail::evaluate_cells<N>(f, lambda, seed, threads, &evals);

    if (spec.fixed_level < 0) {
        for (;;) {
            // Deterministic totals: accumulate in sorted-id order.
            std::sort(leaves.begin(), leaves.end(),
                      [](const Leaf<N>& a, const Leaf<N>& b) { return a.id < b.id; });
            double total_err = 0.0;
            Eigen::Matrix<double, N, 1> total =
                Eigen::Matrix<double, N, 1>::Zero();
            std::size_t worst = 0;
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                total_err += leaves[i].error;
                total += leaves[i].value.real();
                if (leaves[i].error > leaves[worst].error) worst = i;
            }
            const double target =
                std::max(spec.rel_tol * total.norm(), spec.abs_floor);
            if (total_err <= target) break;
            if (leaves[worst].level >= spec.max_level) {
                throw QuadratureDivergence(
                    "mode integral did not converge: refinement candidate is at "
                    "max_level with tolerance unmet");
            }
            const Leaf<N> parent = leaves[worst];
            leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(worst));
            std::vector<std::array<int, 4>> children;
            for (int dt = 0; dt < 2; ++dt)
                for (int ds = 0; ds < 2; ++ds)
                    for (int dp = 0; dp < 2; ++dp)
                        children.push_back({parent.level + 1, 2 * parent.it + dt,
                                            2 * parent.is + ds, 2 * parent.ip + dp});
            auto refined =
                quad_detail::evaluate_cells<N>(f, lambda, children, threads, &evals);
            leaves.insert(leaves.end(), refined.begin(), refined.end());
        }
    }

    quad_detail::reduce_leaves(leaves, &result);
    result.evaluations = evals;
    return result;
}

} // namespace casimir
