#include "casimir/quadrature.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

namespace casimir {
namespace quad_detail {

namespace {

// Gauss-Legendre nodes and weights on (0, 1) via the symmetric tridiagonal
// (Golub-Welsch) eigenproblem for the Legendre recurrence.
GaussRule build_rule(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
        const double v0 = es.eigenvectors()(0, i);
        rule.w[i] = v0 * v0;  // already includes the [-1,1] -> [0,1] factor
    }
    return rule;
}

} // namespace

const GaussRule& gauss_rule(int n) {
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, build_rule(n)).first;
    }
    return it->second;
}

int thread_budget(bool serial) {
    if (serial) return 1;
    if (const char* env = std::getenv("CASIMIR_SHEAR_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return std::min(n, 64);
        } catch (...) {
            // fall through to the hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

} // namespace quad_detail
} // namespace casimir
