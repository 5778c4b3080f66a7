// tpsim: transfer-price coordination experiments from the command line.
//
//   tpsim static  --algo solo --model power --T 2000 --seed 1 --with-oracle --out run1
//   tpsim dynamic --model quadratic --T 20000 --out run2
//   tpsim oracle  --model quadratic --seed 3 [--out dir]
//   tpsim ratefit run1/trace.csv
//
// Exit status: 0 when the run completed and every enabled bound check passed, 1 when a
// check failed, 2 on errors.

#include "tprice/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using tprice::ExperimentConfig;
using nlohmann::json;

struct RunFlags {
    std::string algo;
    std::string model;
    int d = 0;
    int m = 0;
    int n = 0;
    double c = 0.0;
    double delta = 0.0;
    long T = 0;
    std::uint64_t seed = 0;
    double eta = 0.0;
    bool with_oracle = false;
    std::string out;
    std::string config;

    CLI::Option* o_algo = nullptr;
    CLI::Option* o_model = nullptr;
    CLI::Option* o_d = nullptr;
    CLI::Option* o_m = nullptr;
    CLI::Option* o_n = nullptr;
    CLI::Option* o_c = nullptr;
    CLI::Option* o_delta = nullptr;
    CLI::Option* o_T = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_eta = nullptr;
    CLI::Option* o_oracle = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_config = nullptr;

    void attach(CLI::App* app, bool run_flags) {
        o_model = app->add_option("--model", model, "power or quadratic");
        o_d = app->add_option("--d", d, "number of commodities");
        o_m = app->add_option("--m", m, "sales divisions");
        o_n = app->add_option("--n", n, "production divisions");
        o_c = app->add_option("--c", c, "box bound on every bundle");
        o_delta = app->add_option("--delta", delta, "quadratic curvature floor");
        o_seed = app->add_option("--seed", seed, "sampler seed");
        o_out = app->add_option("--out", out, "output directory");
        o_config = app->add_option("--config", config, "JSON config file; flags override it")
                       ->check(CLI::ExistingFile);
        if (run_flags) {
            o_algo = app->add_option("--algo", algo, "gd, nesterov or solo");
            o_T = app->add_option("--T", T, "rounds");
            o_eta = app->add_option("--eta", eta, "step size for gd and nesterov (default 1/kappa)");
            o_oracle = app->add_flag("--with-oracle", with_oracle, "solve for the optimum and check bounds");
        }
    }

    ExperimentConfig resolve(tprice::Mode mode) const {
        ExperimentConfig cfg;
        bool d_given = false;
        if (*o_config) {
            std::ifstream in(config);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw tprice::Error("config " + config + ": " + e.what());
            }
            tprice::apply_json(cfg, j);
            d_given = j.contains("d");
        }
        cfg.mode = mode;
        if (o_algo && *o_algo) cfg.algo = tprice::parse_algorithm(algo);
        if (*o_model) cfg.model = tprice::parse_family(model);
        if (*o_d) {
            cfg.d = d;
            d_given = true;
        }
        if (*o_m) cfg.m = m;
        if (*o_n) cfg.n = n;
        if (*o_c) cfg.c = c;
        if (*o_delta) cfg.delta = delta;
        if (o_T && *o_T) cfg.T = T;
        if (*o_seed) cfg.seed = seed;
        if (o_eta && *o_eta) cfg.eta = eta;
        if (o_oracle && *o_oracle) cfg.with_oracle = with_oracle;
        if (*o_out) cfg.out = out;
        // The quadratic preset trades two commodities.
        if (!d_given && cfg.model == tprice::Family::Quadratic) cfg.d = 2;
        return cfg;
    }
};

int report(const tprice::ExperimentOutcome& outcome, const ExperimentConfig& cfg) {
    const auto& s = outcome.summary;
    std::cout << "wrote " << (cfg.out / "trace.csv").string() << " and "
              << (cfg.out / "summary.json").string() << '\n';
    for (const auto& c : s.checks) {
        const char* tag = c.status == tprice::CheckStatus::Pass   ? "pass"
                          : c.status == tprice::CheckStatus::Fail ? "FAIL"
                                                                  : "skip";
        std::cout << "  " << tag << "  " << c.name;
        if (c.status != tprice::CheckStatus::Skipped) std::cout << "  " << c.lhs << " <= " << c.rhs;
        if (!c.note.empty()) std::cout << "  (" << c.note << ')';
        std::cout << '\n';
    }
    return s.passed() ? 0 : 1;
}

int run_oracle(const ExperimentConfig& cfg, bool write_file) {
    ExperimentConfig c = cfg;
    c.validate();
    tprice::ScenarioStream stream(c.sampler());
    const auto instance = stream.next();
    const auto sol = tprice::solve_oracle(instance);
    const auto k = tprice::regularity_constants(instance);
    json lambda = json::array();
    for (const double v : sol.lambda_star) lambda.push_back(v);
    const json j = {{"config", tprice::to_json(c)},
                    {"constants", {{"sigma", k.sigma}, {"K", k.K}, {"kappa", k.kappa}, {"Kprime", k.Kprime}}},
                    {"lambda_star", lambda},
                    {"F_star", sol.F_star},
                    {"G_star", sol.G_star},
                    {"residual", sol.residual},
                    {"boundary", sol.boundary},
                    {"iterations", sol.iterations}};
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (write_file) {
        std::filesystem::create_directories(c.out);
        std::ofstream out(c.out / "oracle.json", std::ios::binary);
        if (!(out << text)) throw tprice::Error("cannot write " + (c.out / "oracle.json").string());
    }
    return 0;
}

// Two-column "T,value" CSV, or a trace CSV (|avg_excess| sampled at t = 2, 4, 8, ...).
std::vector<std::pair<double, double>> load_points(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tprice::Error("cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::vector<std::pair<double, double>> points;
    if (header.rfind("t,lambda_0", 0) == 0) {
        in.seekg(0);
        const auto trace = tprice::read_trace_csv(in);
        for (std::size_t t = 2; t <= trace.size(); t *= 2) {
            points.emplace_back(static_cast<double>(t), trace[t - 1].avg_excess.norm());
        }
        return points;
    }
    std::string line;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw tprice::Error(path + " line " + std::to_string(line_no) + ": expected T,value");
        }
        points.emplace_back(tprice::parse_real(std::string_view(line).substr(0, comma)),
                            tprice::parse_real(std::string_view(line).substr(comma + 1)));
    }
    return points;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transfer-price coordination between sales and production divisions"};
    app.require_subcommand(1);

    RunFlags static_flags, dynamic_flags, oracle_flags;
    auto* static_cmd = app.add_subcommand("static", "coordinate one sampled firm for T rounds");
    static_flags.attach(static_cmd, true);
    auto* dynamic_cmd = app.add_subcommand("dynamic", "SOLO on a fresh firm every round");
    dynamic_flags.attach(dynamic_cmd, true);
    auto* oracle_cmd = app.add_subcommand("oracle", "solve one sampled firm and print the optimum");
    oracle_flags.attach(oracle_cmd, false);
    auto* ratefit_cmd = app.add_subcommand("ratefit", "log-log slope of a decaying quantity");
    std::string points_path;
    ratefit_cmd->add_option("points", points_path, "T,value CSV or a trace CSV")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*static_cmd) {
            const auto cfg = static_flags.resolve(tprice::Mode::Static);
            return report(tprice::run_experiment(cfg), cfg);
        }
        if (*dynamic_cmd) {
            const auto cfg = dynamic_flags.resolve(tprice::Mode::Dynamic);
            return report(tprice::run_experiment(cfg), cfg);
        }
        if (*oracle_cmd) {
            return run_oracle(oracle_flags.resolve(tprice::Mode::Static), oracle_flags.o_out->count() > 0);
        }
        const auto points = load_points(points_path);
        std::cout << json{{"points", points.size()}, {"slope", tprice::rate_fit(points)}}.dump() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "tpsim: " << e.what() << '\n';
        return 2;
    }
}
