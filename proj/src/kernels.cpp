#include "tprice/kernels.hpp"

#include <cstddef>
#include <exception>

namespace tprice::kernels {
namespace {

void prepare(const FirmInstance& instance, const PriceVector& lambda, Plan& out) {
    require_dim(lambda, instance.dim(), "price");
    require_finite(lambda, "price");
    out.x.resize(static_cast<std::size_t>(instance.m()));
    out.y.resize(static_cast<std::size_t>(instance.n()));
}

Evaluation finish(const FirmInstance& instance, const PriceVector& lambda, Plan plan) {
    Evaluation e;
    e.excess = plan_excess(plan, instance.dim());
    e.primal = primal_value(instance, plan);
    e.dual = lagrangian(instance, plan, lambda);
    e.plan = std::move(plan);
    return e;
}

}  // namespace

void best_responses_serial(const FirmInstance& instance, const PriceVector& lambda, Plan& out) {
    prepare(instance, lambda, out);
    for (int i = 0; i < instance.m(); ++i) out.x[i] = instance.sales()[i].best_response(lambda);
    for (int j = 0; j < instance.n(); ++j) out.y[j] = instance.production()[j].best_response(lambda);
}

void best_responses_parallel(const FirmInstance& instance, const PriceVector& lambda, Plan& out) {
    prepare(instance, lambda, out);
    const int m = instance.m();
    const int total = m + instance.n();
    // Exceptions must not escape an OpenMP region; capture the first and rethrow.
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < total; ++k) {
        try {
            if (k < m) {
                out.x[k] = instance.sales()[k].best_response(lambda);
            } else {
                out.y[k - m] = instance.production()[k - m].best_response(lambda);
            }
        } catch (...) {
#pragma omp critical(tprice_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

Evaluation evaluate(const FirmInstance& instance, const PriceVector& lambda, Exec exec) {
    Plan plan;
    if (exec == Exec::Parallel) {
        best_responses_parallel(instance, lambda, plan);
    } else {
        best_responses_serial(instance, lambda, plan);
    }
    return finish(instance, lambda, std::move(plan));
}

Vector pool_mean_excess_serial(std::span<const FirmInstance> pool, const PriceVector& lambda) {
    if (pool.empty()) throw Error("pool_mean_excess: empty pool");
    Vector sum = Vector::Zero(pool.front().dim());
    for (const auto& inst : pool) sum += excess_supply(inst, lambda);
    return sum / static_cast<double>(pool.size());
}

Vector pool_mean_excess_parallel(std::span<const FirmInstance> pool, const PriceVector& lambda) {
    if (pool.empty()) throw Error("pool_mean_excess: empty pool");
    const auto count = static_cast<std::ptrdiff_t>(pool.size());
    std::vector<Vector> slots(pool.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t s = 0; s < count; ++s) {
        try {
            slots[s] = excess_supply(pool[s], lambda);
        } catch (...) {
#pragma omp critical(tprice_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    Vector sum = Vector::Zero(pool.front().dim());
    for (const auto& v : slots) sum += v;
    return sum / static_cast<double>(pool.size());
}

Vector pool_mean_excess(std::span<const FirmInstance> pool, const PriceVector& lambda, Exec exec) {
    return exec == Exec::Parallel ? pool_mean_excess_parallel(pool, lambda)
                                  : pool_mean_excess_serial(pool, lambda);
}

std::vector<Evaluation> evaluate_batch_serial(const FirmInstance& instance,
                                              std::span<const PriceVector> prices) {
    std::vector<Evaluation> out;
    out.reserve(prices.size());
    for (const auto& p : prices) out.push_back(evaluate(instance, p, Exec::Serial));
    return out;
}

std::vector<Evaluation> evaluate_batch_parallel(const FirmInstance& instance,
                                                std::span<const PriceVector> prices) {
    const auto count = static_cast<std::ptrdiff_t>(prices.size());
    std::vector<Evaluation> out(prices.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t s = 0; s < count; ++s) {
        try {
            out[s] = evaluate(instance, prices[s], Exec::Serial);
        } catch (...) {
#pragma omp critical(tprice_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace tprice::kernels
