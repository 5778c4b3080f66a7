#include "tprice/firm.hpp"

#include "tprice/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tprice {

FirmInstance::FirmInstance(int d, std::vector<DivisionModel> sales,
                           std::vector<DivisionModel> production, double c, double eps)
    : d_(d), sales_(std::move(sales)), production_(std::move(production)), c_(c),
      eps_(eps > 0.0 ? eps : c) {
    if (d_ < 1) throw Error("firm: d must be at least 1");
    if (sales_.empty() || production_.empty()) {
        throw Error("firm: needs at least one sales and one production division");
    }
    if (!(c_ > 0.0)) throw Error("firm: box bound c must be positive");
    if (eps_ > c_) throw Error("firm: eps must not exceed c");
    auto check = [&](const DivisionModel& model, Role role, const char* what) {
        if (model.role() != role) throw Error(std::string("firm: wrong role in ") + what + " list");
        if (model.dim() != d_) throw Error(std::string("firm: ") + what + " model dimension differs from d");
        if (model.box() != c_) throw Error(std::string("firm: ") + what + " model box differs from c");
    };
    for (const auto& s : sales_) check(s, Role::Sales, "sales");
    for (const auto& p : production_) check(p, Role::Production, "production");
}

RegularityConstants regularity_constants(const FirmInstance& instance) {
    RegularityConstants k;
    k.sigma = std::numeric_limits<double>::infinity();
    double k_sq = 0.0;
    for (const auto& s : instance.sales()) {
        k.sigma = std::min(k.sigma, s.modulus());
        k.kappa += 1.0 / s.modulus();
        k_sq += s.lipschitz() * s.lipschitz();
        k.Kprime = std::max(k.Kprime, s.lipschitz());
    }
    for (const auto& p : instance.production()) {
        k.sigma = std::min(k.sigma, p.modulus());
        k.kappa += 1.0 / p.modulus();
        k_sq += p.lipschitz() * p.lipschitz();
    }
    if (!(k.sigma > 0.0) || !std::isfinite(k.kappa)) {
        throw Error("regularity constants: degenerate strong-convexity modulus");
    }
    k.K = std::sqrt(k_sq);
    k.b_bound = k.Kprime + 1.0;
    return k;
}

Vector plan_excess(const Plan& plan, int d) {
    Vector excess = Vector::Zero(d);
    for (const auto& y : plan.y) excess += y;
    for (const auto& x : plan.x) excess -= x;
    return excess;
}

double plan_distance(const Plan& a, const Plan& b) {
    if (a.x.size() != b.x.size() || a.y.size() != b.y.size()) {
        throw Error("plan_distance: plans have different shapes");
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) sq += (a.x[i] - b.x[i]).squaredNorm();
    for (std::size_t j = 0; j < a.y.size(); ++j) sq += (a.y[j] - b.y[j]).squaredNorm();
    return std::sqrt(sq);
}

double gradient_norm_bound(const FirmInstance& instance) {
    return (instance.m() + instance.n()) * instance.box() * std::sqrt(static_cast<double>(instance.dim()));
}

Plan stimulated_plan(const FirmInstance& instance, const PriceVector& lambda) {
    Plan plan;
    kernels::best_responses_serial(instance, lambda, plan);
    return plan;
}

Vector excess_supply(const FirmInstance& instance, const PriceVector& lambda) {
    return plan_excess(stimulated_plan(instance, lambda), instance.dim());
}

double primal_value(const FirmInstance& instance, const Plan& plan) {
    if (plan.x.size() != static_cast<std::size_t>(instance.m()) ||
        plan.y.size() != static_cast<std::size_t>(instance.n())) {
        throw Error("primal_value: plan does not match the firm's divisions");
    }
    double revenue = 0.0;
    double cost = 0.0;
    for (int i = 0; i < instance.m(); ++i) revenue += instance.sales()[i].evaluate(plan.x[i]);
    for (int j = 0; j < instance.n(); ++j) cost += instance.production()[j].evaluate(plan.y[j]);
    return revenue - cost;
}

double lagrangian(const FirmInstance& instance, const Plan& plan, const PriceVector& lambda) {
    require_dim(lambda, instance.dim(), "price");
    const double F = primal_value(instance, plan);
    double bought = 0.0;
    double sold = 0.0;
    for (const auto& y : plan.y) bought += lambda.dot(y);
    for (const auto& x : plan.x) sold += lambda.dot(x);
    return F + bought - sold;
}

double dual_value(const FirmInstance& instance, const PriceVector& lambda) {
    return lagrangian(instance, stimulated_plan(instance, lambda), lambda);
}

Evaluation evaluate_at(const FirmInstance& instance, const PriceVector& lambda) {
    return kernels::evaluate(instance, lambda, kernels::Exec::Serial);
}

}  // namespace tprice
