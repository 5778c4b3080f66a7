#pragma once

#include "tprice/firm.hpp"

#include <span>
#include <vector>

// Data-parallel kernels behind the firm evaluation. Each kernel has a serial reference
// and an OpenMP version. The OpenMP versions write per-item results into preallocated
// slots and reduce serially in index order, so both produce bit-identical output.
namespace tprice::kernels {

enum class Exec { Serial, Parallel };

// Best responses of every division to one price.
void best_responses_serial(const FirmInstance& instance, const PriceVector& lambda, Plan& out);
void best_responses_parallel(const FirmInstance& instance, const PriceVector& lambda, Plan& out);

Evaluation evaluate(const FirmInstance& instance, const PriceVector& lambda, Exec exec);

// Mean dual gradient of a pool of instances at one price.
Vector pool_mean_excess_serial(std::span<const FirmInstance> pool, const PriceVector& lambda);
Vector pool_mean_excess_parallel(std::span<const FirmInstance> pool, const PriceVector& lambda);
Vector pool_mean_excess(std::span<const FirmInstance> pool, const PriceVector& lambda, Exec exec);

// Full evaluations of one instance at many prices.
std::vector<Evaluation> evaluate_batch_serial(const FirmInstance& instance,
                                              std::span<const PriceVector> prices);
std::vector<Evaluation> evaluate_batch_parallel(const FirmInstance& instance,
                                                std::span<const PriceVector> prices);

}  // namespace tprice::kernels
