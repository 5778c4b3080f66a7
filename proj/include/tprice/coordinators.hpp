#pragma once

#include "tprice/firm.hpp"
#include "tprice/trace.hpp"
#include "tprice/types.hpp"

#include <optional>
#include <string_view>
#include <utility>

namespace tprice {

enum class Algorithm { GradientDescent, Nesterov, Solo };

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);  // "gd", "nesterov", "solo"

struct GdConfig {
    double eta = 0.0;
};

// lambda - eta * gradient
PriceVector gd_step(const PriceVector& lambda, const Vector& gradient, const GdConfig& cfg);

// Fast gradient method in the form
//   lambda_t = mu_{t-1} - eta * grad(mu_{t-1})
//   mu_t     = lambda_t + (t-1)/(t+2) * (lambda_t - lambda_{t-1}),  mu_0 = lambda_0.
struct NesterovState {
    PriceVector lambda_prev;
    PriceVector lambda_cur;
    PriceVector mu;
    long t = 0;
    double eta = 0.0;

    static NesterovState start(const PriceVector& lambda0, double eta);
};

NesterovState nesterov_step(const NesterovState& state, const Vector& gradient_at_mu);

// Scale-free FTRL: price = -grad_sum / sqrt(sq_sum), and 0 while sq_sum == 0.
struct SoloState {
    Vector grad_sum;
    double sq_sum = 0.0;
    long t = 0;  // gradients absorbed so far

    static SoloState start(int d);
    PriceVector price() const;
};

// Absorbs the gradient observed at the last emitted price and emits the next price.
std::pair<SoloState, PriceVector> solo_step(const SoloState& state, const Vector& gradient);

struct StaticRunConfig {
    Algorithm algo = Algorithm::Solo;
    long T = 1;
    // Step size for GD / Nesterov; defaults to 1 / kappa.
    std::optional<double> eta;
    // Starting price for GD / Nesterov; defaults to zero. SOLO always starts at zero.
    std::optional<PriceVector> lambda0;
};

// Runs T rounds against a fixed instance.
//
// GD and SOLO: record t holds the t-th announced price (the first is the starting
// price, zero for SOLO) and the excess observed there. Nesterov: record t holds the
// iterate lambda_t, t = 1..T, evaluated for diagnostics, while the gradient step uses
// the excess at mu_{t-1} (stored in `query`).
RunResult run_static(const FirmInstance& instance, const StaticRunConfig& cfg);

// Mean of the trace prices.
PriceVector average_price(const std::vector<TraceRecord>& trace);

}  // namespace tprice
