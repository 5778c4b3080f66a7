#pragma once

#include "tprice/coordinators.hpp"
#include "tprice/firm.hpp"
#include "tprice/trace.hpp"

namespace tprice::detail {

// Appends rounds to a RunResult, maintaining the running excess average.
class TraceBuilder {
public:
    TraceBuilder(int d, long reserve) : sum_(Vector::Zero(d)) {
        result_.trace.reserve(static_cast<std::size_t>(reserve));
        result_.kprime.reserve(static_cast<std::size_t>(reserve));
    }

    TraceRecord& add(const PriceVector& lambda, const Evaluation& e, const PriceVector& query,
                     double kprime) {
        sum_ += e.excess;
        TraceRecord r;
        r.t = static_cast<long>(result_.trace.size()) + 1;
        r.lambda = lambda;
        r.excess = e.excess;
        r.F = e.primal;
        r.G = e.dual;
        r.avg_excess = sum_ / static_cast<double>(r.t);
        r.query = query;
        result_.trace.push_back(std::move(r));
        result_.kprime.push_back(kprime);
        return result_.trace.back();
    }

    RunResult finish(bool converged) {
        result_.converged = converged;
        result_.final_price = result_.trace.back().lambda;
        result_.average_price = average_price(result_.trace);
        return std::move(result_);
    }

private:
    RunResult result_;
    Vector sum_;
};

}  // namespace tprice::detail
