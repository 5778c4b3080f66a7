#pragma once

#include "tprice/divisions.hpp"
#include "tprice/types.hpp"

#include <vector>

namespace tprice {

// m sales divisions and n production divisions trading d commodities on [0, c]^d.
class FirmInstance {
public:
    // eps <= 0 selects eps = c (every feasible set is the full box).
    FirmInstance(int d, std::vector<DivisionModel> sales, std::vector<DivisionModel> production,
                 double c, double eps = 0.0);

    int dim() const noexcept { return d_; }
    int m() const noexcept { return static_cast<int>(sales_.size()); }
    int n() const noexcept { return static_cast<int>(production_.size()); }
    double box() const noexcept { return c_; }
    double eps() const noexcept { return eps_; }
    const std::vector<DivisionModel>& sales() const noexcept { return sales_; }
    const std::vector<DivisionModel>& production() const noexcept { return production_; }

private:
    int d_;
    std::vector<DivisionModel> sales_;
    std::vector<DivisionModel> production_;
    double c_;
    double eps_;
};

struct Plan {
    std::vector<Bundle> x;  // sales quantities, one bundle per sales division
    std::vector<Bundle> y;  // production quantities
};

struct RegularityConstants {
    double sigma = 0.0;   // strong convexity of -F on the plan space
    double K = 0.0;       // Lipschitz constant of F
    double kappa = 0.0;   // smoothness of the dual G
    double Kprime = 0.0;  // largest sales Lipschitz constant
    double b_bound = 0.0; // Kprime + 1, bound on SOLO price components
};

RegularityConstants regularity_constants(const FirmInstance& instance);

// Everything the coordinator and diagnostics need at one price, from a single pass over
// the divisions.
struct Evaluation {
    Plan plan;
    Vector excess;  // total production minus total sales; the dual gradient
    double primal = 0.0;
    double dual = 0.0;
};

Plan stimulated_plan(const FirmInstance& instance, const PriceVector& lambda);
Vector excess_supply(const FirmInstance& instance, const PriceVector& lambda);
double primal_value(const FirmInstance& instance, const Plan& plan);
double dual_value(const FirmInstance& instance, const PriceVector& lambda);
double lagrangian(const FirmInstance& instance, const Plan& plan, const PriceVector& lambda);
Evaluation evaluate_at(const FirmInstance& instance, const PriceVector& lambda);

// Sum of y minus sum of x, accumulated in division order.
Vector plan_excess(const Plan& plan, int d);

// Plan-space Euclidean distance, stacking all bundles.
double plan_distance(const Plan& a, const Plan& b);

// (m + n) c sqrt(d): bound on every dual gradient.
double gradient_norm_bound(const FirmInstance& instance);

}  // namespace tprice
