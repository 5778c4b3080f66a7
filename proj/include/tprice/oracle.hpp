#pragma once

#include "tprice/firm.hpp"
#include "tprice/kernels.hpp"
#include "tprice/scenario.hpp"

namespace tprice {

inline constexpr double kOracleTol1d = 1e-9;
inline constexpr double kOracleTolNd = 1e-9;

// Reference solution of the firm problem.
struct OracleSolution {
    PriceVector lambda_star;
    Plan plan_star;    // plan stimulated by lambda_star
    double F_star = 0.0;  // primal value of plan_star
    double G_star = 0.0;  // dual value at lambda_star
    double residual = 0.0;  // |excess at lambda_star|
    // Excess supply was already >= 0 at zero price; lambda_star = 0 is a boundary answer.
    bool boundary = false;
    long iterations = 0;
};

// Bisection of the non-decreasing scalar excess on [0, Kprime + 1]. Stops when
// |excess| <= tol or the bracket is narrower than 1e-12. Requires d = 1.
OracleSolution dual_bisection_1d(const FirmInstance& instance, double tol = kOracleTol1d);

// Gradient descent on G with step 1/kappa from zero until |excess| <= tol.
OracleSolution dual_descent_nd(const FirmInstance& instance, double tol = kOracleTolNd,
                               long max_iterations = 10'000'000);

// Bisection for d = 1, descent otherwise.
OracleSolution solve_oracle(const FirmInstance& instance);

struct GridSearchResult {
    Plan plan;
    double F = 0.0;
};

// Exhaustive search over feasible plans x = y on {0, step, ..., c}^d for m = n = 1.
GridSearchResult grid_bruteforce_primal(const FirmInstance& instance, double step);

struct BoundPair {
    double gap = 0.0;       // optimality-gap bound
    double residual = 0.0;  // feasibility-residual bound
};

// Fast-gradient bounds at iteration t: 2K/sqrt(sigma eta) * dist/(t+1) and
// 2 sqrt(kappa/eta) * dist/(t+1). Requires eta <= 1/kappa.
BoundPair theorem2_bound(const RegularityConstants& consts, double eta, double lambda0_dist,
                         long t);

// SOLO averaged-price bounds after T rounds:
//   gap      <= K sqrt((m+n)c/sigma) sqrt(|lambda*|^2 + 12.5) (d/T)^(1/4)
//   residual <= sqrt(kappa (m+n) c)  sqrt(|lambda*|^2 + 12.5) (d/T)^(1/4)
BoundPair theorem3_bounds(const RegularityConstants& consts, int divisions, double c, int d,
                          double lambda_star_norm, long T);

// SOLO regret bound from realized gradient statistics:
//   (|lambda|^2/2 + 2.75) sqrt(sq_sum) + 3.5 sqrt(T-1) max_grad
double solo_regret_rhs(double lambda_norm, double sq_sum, double max_grad, long T);

// Largest step allowed by the fast-gradient bound.
inline double default_eta(const RegularityConstants& consts) { return 1.0 / consts.kappa; }

// Minimizer of the sample-average dual over `samples` instances drawn at rounds
// 0..samples-1 of the sampler's stream, by gradient descent with step 1/mean(kappa).
PriceVector expected_dual_saa(const SamplerSpec& spec, int samples, double tol,
                              kernels::Exec exec = kernels::Exec::Parallel,
                              long max_iterations = 1'000'000);

}  // namespace tprice
