#include "tprice/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tprice {
namespace {

constexpr double kMinBracket = 1e-12;

OracleSolution solution_at(const FirmInstance& instance, const PriceVector& lambda, long iterations,
                           bool boundary) {
    auto e = evaluate_at(instance, lambda);
    OracleSolution sol;
    sol.lambda_star = lambda;
    sol.F_star = e.primal;
    sol.G_star = e.dual;
    sol.residual = e.excess.norm();
    sol.plan_star = std::move(e.plan);
    sol.boundary = boundary;
    sol.iterations = iterations;
    return sol;
}

double scalar_excess(const FirmInstance& instance, double lambda) {
    return excess_supply(instance, PriceVector::Constant(1, lambda))[0];
}

}  // namespace

OracleSolution dual_bisection_1d(const FirmInstance& instance, double tol) {
    if (instance.dim() != 1) throw Error("dual_bisection_1d requires d = 1");
    if (!(tol >= 0.0)) throw Error("dual_bisection_1d: tol must be non-negative");

    double lo = 0.0;
    if (scalar_excess(instance, lo) >= 0.0) {
        return solution_at(instance, PriceVector::Zero(1), 0, true);
    }
    // Above Kprime every sales division stops buying, so excess is non-negative there.
    double hi = regularity_constants(instance).Kprime + 1.0;
    long iterations = 0;
    while (scalar_excess(instance, hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++iterations > 200) throw NonConvergence("dual_bisection_1d bracketing", iterations);
    }

    double lambda = 0.5 * (lo + hi);
    for (;;) {
        ++iterations;
        const double e = scalar_excess(instance, lambda);
        if (std::abs(e) <= tol) break;
        (e < 0.0 ? lo : hi) = lambda;
        if (hi - lo <= kMinBracket) {
            lambda = 0.5 * (lo + hi);
            break;
        }
        lambda = 0.5 * (lo + hi);
    }
    return solution_at(instance, PriceVector::Constant(1, lambda), iterations, false);
}

OracleSolution dual_descent_nd(const FirmInstance& instance, double tol, long max_iterations) {
    if (!(tol > 0.0)) throw Error("dual_descent_nd: tol must be positive");
    const double step = 1.0 / regularity_constants(instance).kappa;
    PriceVector lambda = PriceVector::Zero(instance.dim());
    for (long it = 0; it < max_iterations; ++it) {
        const Vector g = excess_supply(instance, lambda);
        if (g.norm() <= tol) return solution_at(instance, lambda, it, false);
        lambda -= step * g;
    }
    throw NonConvergence("dual_descent_nd", max_iterations);
}

OracleSolution solve_oracle(const FirmInstance& instance) {
    return instance.dim() == 1 ? dual_bisection_1d(instance) : dual_descent_nd(instance);
}

GridSearchResult grid_bruteforce_primal(const FirmInstance& instance, double step) {
    if (instance.m() != 1 || instance.n() != 1) throw Error("grid search needs m = n = 1");
    if (instance.dim() > 2) throw Error("grid search needs d <= 2");
    if (!(step > 0.0)) throw Error("grid search: step must be positive");
    const double c = instance.box();
    const long per_axis = static_cast<long>(std::floor(c / step + 1e-9)) + 1;
    const double points = std::pow(static_cast<double>(per_axis), instance.dim());
    if (points > 1e8) throw Error("grid search: grid exceeds 1e8 points");

    const auto& sales = instance.sales().front();
    const auto& prod = instance.production().front();
    Bundle q(instance.dim());
    Bundle best = Bundle::Zero(instance.dim());
    double best_value = -std::numeric_limits<double>::infinity();

    auto visit = [&]() {
        const double value = sales.evaluate(q) - prod.evaluate(q);
        if (value > best_value) {
            best_value = value;
            best = q;
        }
    };
    auto coord = [&](long k) { return std::min(static_cast<double>(k) * step, c); };
    if (instance.dim() == 1) {
        for (long i = 0; i < per_axis; ++i) {
            q[0] = coord(i);
            visit();
        }
    } else {
        for (long i = 0; i < per_axis; ++i) {
            q[0] = coord(i);
            for (long j = 0; j < per_axis; ++j) {
                q[1] = coord(j);
                visit();
            }
        }
    }
    return {Plan{{best}, {best}}, best_value};
}

BoundPair theorem2_bound(const RegularityConstants& consts, double eta, double lambda0_dist, long t) {
    if (!(eta > 0.0)) throw Error("theorem2_bound: eta must be positive");
    if (eta > 1.0 / consts.kappa) throw Error("theorem2_bound: requires eta <= 1/kappa");
    if (t < 0) throw Error("theorem2_bound: t must be non-negative");
    const double decay = lambda0_dist / static_cast<double>(t + 1);
    return {2.0 * consts.K / std::sqrt(consts.sigma * eta) * decay,
            2.0 * std::sqrt(consts.kappa / eta) * decay};
}

BoundPair theorem3_bounds(const RegularityConstants& consts, int divisions, double c, int d,
                          double lambda_star_norm, long T) {
    if (T < 1) throw Error("theorem3_bounds: T must be at least 1");
    const double common = std::sqrt(lambda_star_norm * lambda_star_norm + 12.5) *
                          std::pow(static_cast<double>(d) / static_cast<double>(T), 0.25);
    return {consts.K * std::sqrt(divisions * c / consts.sigma) * common,
            std::sqrt(consts.kappa * divisions * c) * common};
}

double solo_regret_rhs(double lambda_norm, double sq_sum, double max_grad, long T) {
    if (T < 1) throw Error("solo_regret_rhs: T must be at least 1");
    return (0.5 * lambda_norm * lambda_norm + 2.75) * std::sqrt(sq_sum) +
           3.5 * std::sqrt(static_cast<double>(T - 1)) * max_grad;
}

PriceVector expected_dual_saa(const SamplerSpec& spec, int samples, double tol, kernels::Exec exec,
                              long max_iterations) {
    if (samples < 1) throw Error("expected_dual_saa: samples must be at least 1");
    if (!(tol > 0.0)) throw Error("expected_dual_saa: tol must be positive");
    const ScenarioStream stream(spec);
    std::vector<FirmInstance> pool;
    pool.reserve(static_cast<std::size_t>(samples));
    double kappa = 0.0;
    for (int s = 0; s < samples; ++s) {
        pool.push_back(stream.instance_at(static_cast<std::uint64_t>(s)));
        kappa += regularity_constants(pool.back()).kappa;
    }
    const double step = static_cast<double>(samples) / kappa;

    PriceVector lambda = PriceVector::Zero(spec.d);
    for (long it = 0; it < max_iterations; ++it) {
        const Vector g = kernels::pool_mean_excess(pool, lambda, exec);
        if (g.norm() <= tol) return lambda;
        lambda -= step * g;
    }
    throw NonConvergence("expected_dual_saa", max_iterations);
}

}  // namespace tprice
