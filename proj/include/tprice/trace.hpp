#pragma once

#include "tprice/types.hpp"

#include <optional>
#include <vector>

namespace tprice {

// One coordinator round.
struct TraceRecord {
    long t = 0;
    PriceVector lambda;      // announced price
    Vector excess;           // excess supply observed at `lambda`
    double F = 0.0;          // primal value of the plan stimulated by `lambda`
    double G = 0.0;          // dual value at `lambda`
    Vector avg_excess;       // running mean of `excess` over rounds 1..t
    std::optional<double> oracle_gap;
    // Point at which the coordinator queried the gradient (Nesterov: mu_{t-1}). Equals
    // `lambda` for GD and SOLO. Kept in memory only.
    PriceVector query;
};

struct RunResult {
    std::vector<TraceRecord> trace;
    PriceVector final_price;    // lambda of the last record
    PriceVector average_price;  // mean of the trace prices
    // SOLO: the run stopped because the first observed gradient was exactly zero.
    bool converged = false;
    // Iterate-bound constant K' in force at each round (static: constant; dynamic: running max
    // of the sales Lipschitz constants of rounds before t).
    std::vector<double> kprime;
};

}  // namespace tprice
