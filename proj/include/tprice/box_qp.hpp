#pragma once

#include "tprice/types.hpp"

namespace tprice {

struct BoxQpOptions {
    double tol = 1e-7;
    long max_iterations = 100'000;
};

struct BoxQpResult {
    Bundle x;
    long iterations = 0;
    double projected_gradient_norm = 0.0;
    bool polished = false;  // true when the final point came from the exact free-set solve
};

// Maximizes <linear, x> - 1/2 <curvature x, x> over [0, c]^d.
//
// Projected gradient ascent with step 1/L, where L is the Gershgorin row-sum bound on
// the largest eigenvalue of `curvature`. Whenever the iterate exposes an active-set
// pattern not tried before, the free coordinates are solved exactly with the bound
// coordinates held fixed; the candidate is accepted if it is feasible and its
// projected-gradient norm is within tolerance. Stops when the projected-gradient norm
// is <= tol. Throws NonConvergence once max_iterations is exceeded.
BoxQpResult box_qp_solve(const Vector& linear, const Matrix& curvature, double c,
                         const BoxQpOptions& options = {});

inline Bundle box_qp_maximize(const Vector& linear, const Matrix& curvature, double c,
                              double tol = 1e-7) {
    return box_qp_solve(linear, curvature, c, {.tol = tol}).x;
}

// Norm of the gradient with components pointing out of the box removed.
double projected_gradient_norm(const Vector& linear, const Matrix& curvature, double c,
                               const Bundle& x);

// Row-sum upper bound on the spectral radius of a symmetric matrix.
double gershgorin_bound(const Matrix& m);

}  // namespace tprice
