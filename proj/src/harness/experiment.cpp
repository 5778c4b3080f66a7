#include "tprice/harness.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace tprice {

using nlohmann::json;

std::string_view to_string(Mode mode) { return mode == Mode::Static ? "static" : "dynamic"; }

std::string_view to_string(Family family) {
    return family == Family::Power ? "power" : "quadratic";
}

Mode parse_mode(std::string_view name) {
    if (name == "static") return Mode::Static;
    if (name == "dynamic") return Mode::Dynamic;
    throw Error("unknown mode '" + std::string(name) + "' (expected static or dynamic)");
}

Family parse_family(std::string_view name) {
    if (name == "power") return Family::Power;
    if (name == "quadratic") return Family::Quadratic;
    throw Error("unknown model '" + std::string(name) + "' (expected power or quadratic)");
}

long ExperimentConfig::rounds() const {
    return T.value_or(mode == Mode::Static ? kDefaultStaticT : kDefaultDynamicT);
}

void ExperimentConfig::validate() const {
    if (d < 1 || m < 1 || n < 1) throw Error("config: d, m and n must be at least 1");
    if (!(c > 0.0) || !std::isfinite(c)) throw Error("config: c must be positive");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw Error("config: delta must be positive");
    if (rounds() < 1) throw Error("config: T must be at least 1");
    if (mode == Mode::Dynamic && algo != Algorithm::Solo) {
        throw Error("config: dynamic mode runs solo only");
    }
    if (model == Family::Power && d != 1) throw Error("config: the power model needs d = 1");
    if (eta) {
        if (algo == Algorithm::Solo) throw Error("config: eta applies to gd and nesterov only");
        if (!(*eta > 0.0) || !std::isfinite(*eta)) throw Error("config: eta must be positive");
    }
}

SamplerSpec ExperimentConfig::sampler() const {
    SamplerSpec s = model == Family::Power ? SamplerSpec::preset_power(seed)
                                           : SamplerSpec::preset_quadratic(seed);
    s.d = d;
    s.m = m;
    s.n = n;
    s.c = c;
    s.delta = delta;
    return s;
}

json to_json(const ExperimentConfig& cfg) {
    return {{"mode", to_string(cfg.mode)},
            {"algo", to_string(cfg.algo)},
            {"model", to_string(cfg.model)},
            {"d", cfg.d},
            {"m", cfg.m},
            {"n", cfg.n},
            {"c", cfg.c},
            {"delta", cfg.delta},
            {"T", cfg.rounds()},
            {"seed", cfg.seed},
            {"eta", cfg.eta ? json(*cfg.eta) : json(nullptr)},
            {"with_oracle", cfg.with_oracle},
            {"out", cfg.out.generic_string()}};
}

void apply_json(ExperimentConfig& cfg, const json& j) {
    if (!j.is_object()) throw Error("config: expected a JSON object");
    static const std::set<std::string> known = {"mode", "algo", "model", "d", "m", "n", "c",
                                                "delta", "T", "seed", "eta", "with_oracle", "out"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw Error("config: unknown key '" + key + "'");
    }
    try {
        if (j.contains("mode")) cfg.mode = parse_mode(j["mode"].get<std::string>());
        if (j.contains("algo")) cfg.algo = parse_algorithm(j["algo"].get<std::string>());
        if (j.contains("model")) cfg.model = parse_family(j["model"].get<std::string>());
        if (j.contains("d")) cfg.d = j["d"].get<int>();
        if (j.contains("m")) cfg.m = j["m"].get<int>();
        if (j.contains("n")) cfg.n = j["n"].get<int>();
        if (j.contains("c")) cfg.c = j["c"].get<double>();
        if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
        if (j.contains("T")) cfg.T = j["T"].get<long>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("eta")) {
            if (j["eta"].is_null()) {
                cfg.eta.reset();
            } else {
                cfg.eta = j["eta"].get<double>();
            }
        }
        if (j.contains("with_oracle")) cfg.with_oracle = j["with_oracle"].get<bool>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    } catch (const json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec) throw Error("cannot create output directory " + cfg.out.string() + ": " + ec.message());

    ExperimentOutcome outcome;
    if (cfg.mode == Mode::Static) {
        ScenarioStream stream(cfg.sampler());
        const FirmInstance instance = stream.next();
        std::optional<OracleSolution> oracle;
        if (cfg.with_oracle) oracle = solve_oracle(instance);

        StaticRunConfig run;
        run.algo = cfg.algo;
        run.T = cfg.rounds();
        run.eta = cfg.eta;
        outcome.result = run_static(instance, run);
        if (oracle) {
            for (auto& r : outcome.result.trace) r.oracle_gap = oracle->F_star - r.F;
        }
        outcome.summary = summarize_static(cfg, instance, outcome.result, oracle ? &*oracle : nullptr);
    } else {
        outcome.result = run_dynamic(cfg.sampler(), {cfg.rounds(), cfg.with_oracle});
        outcome.summary = summarize_dynamic(cfg, outcome.result);
    }

    write_trace_csv(cfg.out / "trace.csv", outcome.result.trace);
    std::ofstream summary(cfg.out / "summary.json", std::ios::binary);
    if (!summary) throw Error("cannot open " + (cfg.out / "summary.json").string() + " for writing");
    summary << dump_summary(outcome.summary);
    if (!summary) throw Error("writing summary.json failed");
    return outcome;
}

}  // namespace tprice
