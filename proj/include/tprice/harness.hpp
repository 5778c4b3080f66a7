#pragma once

#include "tprice/coordinators.hpp"
#include "tprice/oracle.hpp"
#include "tprice/scenario.hpp"
#include "tprice/trace.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tprice {

// ---- trace persistence -------------------------------------------------------------

// Header: t,lambda_0..,excess_0..,F,G,avg_excess_0..[,oracle_gap]. The gap column is
// written when every record carries one.
std::string trace_csv_header(int d, bool with_gap);
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);
// Inverse of write_trace_csv; `query` is restored as a copy of `lambda`.
std::vector<TraceRecord> read_trace_csv(std::istream& in);
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);

// 17 significant digits: parse_real(format_real(v)) == v for every finite v.
std::string format_real(double v);
double parse_real(std::string_view text);

// ---- rates -------------------------------------------------------------------------

// Least-squares slope of log v against log T. Needs at least 3 points, all positive.
double rate_fit(std::span<const std::pair<double, double>> points);

// ---- regret and iterate-bound diagnostics ------------------------------------------

struct RegretStats {
    double regret = 0.0;    // sum over rounds of G(lambda_t) - G(lambda)
    double sq_sum = 0.0;    // sum of squared gradient norms
    double max_grad = 0.0;  // largest gradient norm
    long T = 0;
};

// Over the first T records of a static trace, against the comparator value G_ref.
RegretStats solo_regret(const std::vector<TraceRecord>& trace, double G_ref, long T);

// Number of price components outside [-1 - slack, kprime_t + 1 + slack].
long lemma1_violations(const RunResult& result, double slack);

// ---- experiments -------------------------------------------------------------------

enum class Mode { Static, Dynamic };

struct ExperimentConfig {
    Mode mode = Mode::Static;
    Algorithm algo = Algorithm::Solo;
    Family model = Family::Power;
    int d = 1;
    int m = 15;
    int n = 25;
    double c = 10.0;
    double delta = 0.1;
    std::optional<long> T;  // unset: 2000 static, 20000 dynamic
    std::uint64_t seed = 1;
    std::optional<double> eta;
    bool with_oracle = false;
    std::filesystem::path out = "out";

    long rounds() const;
    void validate() const;
    SamplerSpec sampler() const;
};

inline constexpr long kDefaultStaticT = 2000;
inline constexpr long kDefaultDynamicT = 20000;

std::string_view to_string(Mode mode);
std::string_view to_string(Family family);
Mode parse_mode(std::string_view name);
Family parse_family(std::string_view name);

nlohmann::json to_json(const ExperimentConfig& cfg);
// Fields absent from `j` keep their value in `cfg`. Unknown keys are rejected.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& j);

// ---- summaries ---------------------------------------------------------------------

enum class CheckStatus { Pass, Fail, Skipped };

struct BoundCheck {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;
};

struct SummaryReport {
    nlohmann::json json;
    std::vector<BoundCheck> checks;

    bool passed() const;
};

inline constexpr double kCheckSlack = 1e-8;

// Static run against its instance. Checks needing the oracle are skipped without one.
SummaryReport summarize_static(const ExperimentConfig& cfg, const FirmInstance& instance,
                               const RunResult& result, const OracleSolution* oracle);
SummaryReport summarize_dynamic(const ExperimentConfig& cfg, const RunResult& result);

struct ExperimentOutcome {
    RunResult result;
    SummaryReport summary;
};

// Samples, runs, summarizes, and writes <out>/trace.csv and <out>/summary.json.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

// Exact text written to summary.json.
std::string dump_summary(const SummaryReport& report);

}  // namespace tprice
