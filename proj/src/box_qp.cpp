#include "tprice/box_qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tprice {
namespace {

enum class Slot : char { Lower, Free, Upper };

std::vector<Slot> active_pattern(const Bundle& x, double c) {
    std::vector<Slot> pattern(static_cast<std::size_t>(x.size()));
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        pattern[k] = x[k] <= 0.0 ? Slot::Lower : (x[k] >= c ? Slot::Upper : Slot::Free);
    }
    return pattern;
}

// Solves the free block exactly with bound coordinates pinned. Returns false when the
// solution leaves the box.
bool polish(const Vector& linear, const Matrix& curvature, double c,
            const std::vector<Slot>& pattern, Bundle& candidate) {
    const Eigen::Index d = linear.size();
    std::vector<Eigen::Index> free;
    candidate.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        switch (pattern[k]) {
            case Slot::Lower: candidate[k] = 0.0; break;
            case Slot::Upper: candidate[k] = c; break;
            case Slot::Free: free.push_back(k); break;
        }
    }
    if (free.empty()) return true;

    const auto nf = static_cast<Eigen::Index>(free.size());
    Matrix block(nf, nf);
    Vector rhs(nf);
    for (Eigen::Index i = 0; i < nf; ++i) {
        double r = linear[free[i]];
        for (Eigen::Index k = 0; k < d; ++k) {
            if (pattern[k] != Slot::Free) r -= curvature(free[i], k) * candidate[k];
        }
        rhs[i] = r;
        for (Eigen::Index j = 0; j < nf; ++j) block(i, j) = curvature(free[i], free[j]);
    }
    const Vector sol = block.llt().solve(rhs);
    for (Eigen::Index i = 0; i < nf; ++i) {
        if (!std::isfinite(sol[i]) || sol[i] < 0.0 || sol[i] > c) return false;
        candidate[free[i]] = sol[i];
    }
    return true;
}

}  // namespace

double gershgorin_bound(const Matrix& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double projected_gradient_norm(const Vector& linear, const Matrix& curvature, double c,
                               const Bundle& x) {
    const Vector g = linear - curvature * x;
    double sq = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        double gk = g[k];
        if (x[k] <= 0.0 && gk < 0.0) gk = 0.0;
        if (x[k] >= c && gk > 0.0) gk = 0.0;
        sq += gk * gk;
    }
    return std::sqrt(sq);
}

BoxQpResult box_qp_solve(const Vector& linear, const Matrix& curvature, double c,
                         const BoxQpOptions& options) {
    const Eigen::Index d = linear.size();
    if (curvature.rows() != d || curvature.cols() != d) {
        throw Error("box_qp: curvature must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    if (!(options.tol > 0.0)) throw Error("box_qp: tol must be positive");
    if (!(c > 0.0)) throw Error("box_qp: box bound must be positive");
    require_finite(linear, "box_qp linear term");

    const double L = gershgorin_bound(curvature);
    if (!(L > 0.0)) throw Error("box_qp: curvature is zero");
    const double step = 1.0 / L;

    // Diagonal guess; exact when the curvature is diagonal.
    Bundle x(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        x[k] = std::clamp(linear[k] / curvature(k, k), 0.0, c);
    }

    std::vector<std::vector<Slot>> tried;
    Bundle candidate;
    for (long iter = 0; iter <= options.max_iterations; ++iter) {
        auto pattern = active_pattern(x, c);
        if (std::find(tried.begin(), tried.end(), pattern) == tried.end()) {
            if (polish(linear, curvature, c, pattern, candidate)) {
                const double pg = projected_gradient_norm(linear, curvature, c, candidate);
                if (pg <= options.tol) {
                    return {candidate, iter, pg, true};
                }
            }
            tried.push_back(std::move(pattern));
        }

        const Vector g = linear - curvature * x;
        const double pg = projected_gradient_norm(linear, curvature, c, x);
        if (pg <= options.tol) return {x, iter, pg, false};
        x = (x + step * g).cwiseMax(0.0).cwiseMin(c);
    }
    throw NonConvergence("box_qp projected gradient", options.max_iterations);
}

}  // namespace tprice
