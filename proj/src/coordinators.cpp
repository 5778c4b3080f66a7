#include "tprice/coordinators.hpp"

#include "trace_builder.hpp"

#include <cmath>
#include <string>
#include <tuple>

namespace tprice {

std::string_view to_string(Algorithm algo) {
    switch (algo) {
        case Algorithm::GradientDescent: return "gd";
        case Algorithm::Nesterov: return "nesterov";
        case Algorithm::Solo: return "solo";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "gd") return Algorithm::GradientDescent;
    if (name == "nesterov") return Algorithm::Nesterov;
    if (name == "solo") return Algorithm::Solo;
    throw Error("unknown algorithm '" + std::string(name) + "' (expected gd, nesterov or solo)");
}

PriceVector gd_step(const PriceVector& lambda, const Vector& gradient, const GdConfig& cfg) {
    require_finite(lambda, "gd price");
    require_finite(gradient, "gd gradient");
    require_dim(gradient, lambda.size(), "gd gradient");
    if (!(cfg.eta > 0.0) || !std::isfinite(cfg.eta)) throw Error("gd: eta must be positive");
    return lambda - cfg.eta * gradient;
}

NesterovState NesterovState::start(const PriceVector& lambda0, double eta) {
    require_finite(lambda0, "nesterov start");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw Error("nesterov: eta must be positive");
    return {lambda0, lambda0, lambda0, 0, eta};
}

NesterovState nesterov_step(const NesterovState& state, const Vector& gradient_at_mu) {
    require_finite(gradient_at_mu, "nesterov gradient");
    require_dim(gradient_at_mu, state.mu.size(), "nesterov gradient");
    NesterovState next;
    next.eta = state.eta;
    next.t = state.t + 1;
    next.lambda_prev = state.lambda_cur;
    next.lambda_cur = state.mu - state.eta * gradient_at_mu;
    const double momentum = static_cast<double>(next.t - 1) / static_cast<double>(next.t + 2);
    next.mu = next.lambda_cur + momentum * (next.lambda_cur - next.lambda_prev);
    return next;
}

SoloState SoloState::start(int d) {
    if (d < 1) throw Error("solo: dimension must be at least 1");
    return {Vector::Zero(d), 0.0, 0};
}

PriceVector SoloState::price() const {
    if (sq_sum == 0.0) return PriceVector::Zero(grad_sum.size());
    return -grad_sum / std::sqrt(sq_sum);
}

std::pair<SoloState, PriceVector> solo_step(const SoloState& state, const Vector& gradient) {
    require_finite(gradient, "solo gradient");
    require_dim(gradient, state.grad_sum.size(), "solo gradient");
    SoloState next{state.grad_sum + gradient, state.sq_sum + gradient.squaredNorm(), state.t + 1};
    PriceVector price = next.price();
    return {std::move(next), std::move(price)};
}

PriceVector average_price(const std::vector<TraceRecord>& trace) {
    if (trace.empty()) throw Error("average_price: empty trace");
    Vector sum = Vector::Zero(trace.front().lambda.size());
    for (const auto& r : trace) sum += r.lambda;
    return sum / static_cast<double>(trace.size());
}

RunResult run_static(const FirmInstance& instance, const StaticRunConfig& cfg) {
    if (cfg.T < 1) throw Error("run_static: T must be at least 1");
    const auto consts = regularity_constants(instance);
    const int d = instance.dim();
    const double eta = cfg.eta.value_or(1.0 / consts.kappa);
    PriceVector lambda0 = cfg.lambda0.value_or(PriceVector::Zero(d));
    require_dim(lambda0, d, "starting price");

    detail::TraceBuilder builder(d, cfg.T);
    const double kprime = consts.Kprime;
    switch (cfg.algo) {
        case Algorithm::GradientDescent: {
            const GdConfig gd{eta};
            PriceVector lambda = lambda0;
            for (long t = 1; t <= cfg.T; ++t) {
                const auto e = evaluate_at(instance, lambda);
                builder.add(lambda, e, lambda, kprime);
                lambda = gd_step(lambda, e.excess, gd);
            }
            return builder.finish(false);
        }
        case Algorithm::Nesterov: {
            auto state = NesterovState::start(lambda0, eta);
            for (long t = 1; t <= cfg.T; ++t) {
                const PriceVector query = state.mu;
                const Vector gradient = evaluate_at(instance, query).excess;
                state = nesterov_step(state, gradient);
                builder.add(state.lambda_cur, evaluate_at(instance, state.lambda_cur), query, kprime);
            }
            return builder.finish(false);
        }
        case Algorithm::Solo: {
            auto state = SoloState::start(d);
            PriceVector lambda = state.price();
            for (long t = 1; t <= cfg.T; ++t) {
                const auto e = evaluate_at(instance, lambda);
                builder.add(lambda, e, lambda, kprime);
                if (t == 1 && e.excess.squaredNorm() == 0.0) {
                    // Zero price already clears the market.
                    return builder.finish(true);
                }
                std::tie(state, lambda) = solo_step(state, e.excess);
            }
            return builder.finish(false);
        }
    }
    throw Error("run_static: unknown algorithm");
}

}  // namespace tprice
