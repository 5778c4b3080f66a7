#include "tprice/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tprice {
namespace {

using nlohmann::json;

json to_json(const Vector& v) {
    json a = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
    return a;
}

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

BoundCheck compare(std::string name, double lhs, double rhs, double slack = kCheckSlack) {
    const bool ok = std::isfinite(lhs) && lhs <= rhs + slack;
    return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, lhs, rhs, {}};
}

BoundCheck skipped(std::string name, std::string note) {
    return {std::move(name), CheckStatus::Skipped, 0.0, 0.0, std::move(note)};
}

// Largest amount by which a price component leaves [-1, kprime_t + 1].
double component_excursion(const RunResult& result) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const auto& lambda = result.trace[i].lambda;
        const double upper = result.kprime[i] + 1.0;
        worst = std::max({worst, lambda.maxCoeff() - upper, -1.0 - lambda.minCoeff()});
    }
    return worst;
}

double max_gradient_norm(const std::vector<TraceRecord>& trace) {
    double g = 0.0;
    for (const auto& r : trace) g = std::max(g, r.excess.norm());
    return g;
}

json final_json(const RunResult& result) {
    const auto& last = result.trace.back();
    return {{"t", last.t},
            {"lambda", to_json(last.lambda)},
            {"excess", to_json(last.excess)},
            {"excess_norm", last.excess.norm()},
            {"F", last.F},
            {"G", last.G},
            {"converged", result.converged}};
}

json checks_json(const std::vector<BoundCheck>& checks) {
    json j = json::object();
    for (const auto& c : checks) {
        json entry = {{"status", to_string(c.status)}};
        if (c.status != CheckStatus::Skipped) {
            entry["lhs"] = c.lhs;
            entry["rhs"] = c.rhs;
        }
        if (!c.note.empty()) entry["note"] = c.note;
        j[c.name] = entry;
    }
    return j;
}

json config_json(const ExperimentConfig& cfg) {
    json j = to_json(cfg);
    j["T_is_default"] = !cfg.T.has_value();
    return j;
}

void require_nonempty(const RunResult& result) {
    if (result.trace.empty()) throw Error("summarize: empty trace");
    if (result.kprime.size() != result.trace.size()) {
        throw Error("summarize: per-round constants do not match the trace");
    }
}

}  // namespace

bool SummaryReport::passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const BoundCheck& c) { return c.status == CheckStatus::Fail; });
}

std::string dump_summary(const SummaryReport& report) { return report.json.dump(2) + "\n"; }

RegretStats solo_regret(const std::vector<TraceRecord>& trace, double G_ref, long T) {
    if (T < 1 || T > static_cast<long>(trace.size())) {
        throw Error("solo_regret: T must lie in [1, trace length]");
    }
    RegretStats s;
    s.T = T;
    for (long t = 0; t < T; ++t) {
        const auto& r = trace[static_cast<std::size_t>(t)];
        s.regret += r.G - G_ref;
        const double g2 = r.excess.squaredNorm();
        s.sq_sum += g2;
        s.max_grad = std::max(s.max_grad, std::sqrt(g2));
    }
    return s;
}

long lemma1_violations(const RunResult& result, double slack) {
    if (result.kprime.size() != result.trace.size()) {
        throw Error("lemma1_violations: per-round constants do not match the trace");
    }
    long count = 0;
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const double upper = result.kprime[i] + 1.0 + slack;
        for (const double v : result.trace[i].lambda) {
            if (v < -1.0 - slack || v > upper) ++count;
        }
    }
    return count;
}

SummaryReport summarize_static(const ExperimentConfig& cfg, const FirmInstance& instance,
                               const RunResult& result, const OracleSolution* oracle) {
    require_nonempty(result);
    const auto consts = regularity_constants(instance);
    const double eta = cfg.eta.value_or(default_eta(consts));
    const long T = static_cast<long>(result.trace.size());
    const int d = instance.dim();
    const int divisions = instance.m() + instance.n();

    SummaryReport report;
    auto& checks = report.checks;
    checks.push_back(compare("gradient_bound", max_gradient_norm(result.trace),
                             gradient_norm_bound(instance)));

    const auto at_avg = evaluate_at(instance, result.average_price);
    json average = {{"lambda", to_json(result.average_price)},
                    {"excess", to_json(at_avg.excess)},
                    {"residual", at_avg.excess.norm()},
                    {"F", at_avg.primal},
                    {"G", at_avg.dual},
                    {"avg_excess", to_json(result.trace.back().avg_excess)},
                    {"avg_excess_norm", result.trace.back().avg_excess.norm()}};
    if (oracle) average["gap"] = oracle->F_star - at_avg.primal;

    if (cfg.algo == Algorithm::Solo) {
        checks.push_back(compare("price_component_bound", component_excursion(result), 0.0, 1e-9));
        if (oracle) {
            const double lnorm = oracle->lambda_star.norm();
            const auto s = solo_regret(result.trace, oracle->G_star, T);
            const double rhs = solo_regret_rhs(lnorm, s.sq_sum, s.max_grad, T);
            checks.push_back(compare("solo_regret", s.regret, rhs));
            average["regret"] = s.regret;
            const auto b = theorem3_bounds(consts, divisions, instance.box(), d, lnorm, T);
            checks.push_back(compare("theorem3_gap", std::abs(oracle->F_star - at_avg.primal), b.gap));
            checks.push_back(compare("theorem3_residual", at_avg.excess.norm(), b.residual));
        } else {
            for (const char* name : {"solo_regret", "theorem3_gap", "theorem3_residual"}) {
                checks.push_back(skipped(name, "needs the oracle (--with-oracle)"));
            }
        }
    }

    if (cfg.algo == Algorithm::Nesterov) {
        const char* names[] = {"theorem2_dual_rate", "theorem2_gap", "theorem2_residual"};
        if (!oracle) {
            for (const char* name : names) checks.push_back(skipped(name, "needs the oracle (--with-oracle)"));
        } else if (eta > default_eta(consts)) {
            for (const char* name : names) checks.push_back(skipped(name, "requires eta <= 1/kappa"));
        } else {
            const double dist = (result.trace.front().query - oracle->lambda_star).norm();
            // Worst value of measured minus bound over all rounds.
            double rate = -std::numeric_limits<double>::infinity();
            double gap = rate;
            double residual = rate;
            for (const auto& r : result.trace) {
                const double tp1 = static_cast<double>(r.t + 1);
                rate = std::max(rate, (r.G - oracle->G_star) - 2.0 * dist * dist / (eta * tp1 * tp1));
                const auto b = theorem2_bound(consts, eta, dist, r.t);
                gap = std::max(gap, std::abs(r.F - oracle->F_star) - b.gap);
                residual = std::max(residual, r.excess.norm() - b.residual);
            }
            checks.push_back(compare(names[0], rate, 0.0));
            checks.push_back(compare(names[1], gap, 0.0));
            checks.push_back(compare(names[2], residual, 0.0));
        }
    }

    json oracle_json = nullptr;
    if (oracle) {
        oracle_json = {{"lambda_star", to_json(oracle->lambda_star)},
                       {"F_star", oracle->F_star},
                       {"G_star", oracle->G_star},
                       {"duality_gap", oracle->F_star - oracle->G_star},
                       {"residual", oracle->residual},
                       {"boundary", oracle->boundary},
                       {"iterations", oracle->iterations}};
    }

    report.json = {{"config", config_json(cfg)},
                   {"constants",
                    {{"sigma", consts.sigma},
                     {"K", consts.K},
                     {"kappa", consts.kappa},
                     {"Kprime", consts.Kprime},
                     {"b", consts.b_bound},
                     {"gradient_bound", gradient_norm_bound(instance)},
                     {"eta", eta}}},
                   {"oracle", oracle_json},
                   {"bounds", checks_json(checks)},
                   {"final", final_json(result)},
                   {"average", average}};
    report.json["bounds"]["all_passed"] = report.passed();
    return report;
}

SummaryReport summarize_dynamic(const ExperimentConfig& cfg, const RunResult& result) {
    require_nonempty(result);
    const double sqrt_d = std::sqrt(static_cast<double>(cfg.d));
    const double grad_bound = (cfg.m + cfg.n) * cfg.c * sqrt_d;

    SummaryReport report;
    auto& checks = report.checks;
    checks.push_back(compare("gradient_bound", max_gradient_norm(result.trace), grad_bound));
    checks.push_back(compare("price_component_bound", component_excursion(result), 0.0, 1e-9));
    double norm_excursion = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        norm_excursion = std::max(norm_excursion,
                                  result.trace[i].lambda.norm() - (result.kprime[i] + 1.0) * sqrt_d);
    }
    checks.push_back(compare("price_norm_bound", norm_excursion, 0.0, 1e-9));

    const auto& last = result.trace.back();
    const bool finite = result.average_price.allFinite() && last.avg_excess.allFinite();
    checks.push_back({"finite_average", finite ? CheckStatus::Pass : CheckStatus::Fail,
                      finite ? 1.0 : 0.0, 1.0, {}});

    json oracle_json = nullptr;
    if (cfg.with_oracle) {
        double sum = 0.0;
        for (const auto& r : result.trace) {
            if (!r.oracle_gap) throw Error("summarize: oracle gap missing from a round");
            sum += *r.oracle_gap;
        }
        oracle_json = {{"mean_gap", sum / static_cast<double>(result.trace.size())}};
    }

    report.json = {{"config", config_json(cfg)},
                   {"constants",
                    {{"Kprime", result.kprime.back()},
                     {"b", result.kprime.back() + 1.0},
                     {"gradient_bound", grad_bound}}},
                   {"oracle", oracle_json},
                   {"bounds", checks_json(checks)},
                   {"final", final_json(result)},
                   {"average",
                    {{"lambda", to_json(result.average_price)},
                     {"avg_excess", to_json(last.avg_excess)},
                     {"avg_excess_norm", last.avg_excess.norm()}}}};
    report.json["bounds"]["all_passed"] = report.passed();
    return report;
}

}  // namespace tprice
