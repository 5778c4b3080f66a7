// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance          run all criteria
//   acceptance 3 6      run a subset
//
// Exit status is 0 only when every selected criterion passes.

#include "tprice/harness.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tprice;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

PriceVector scalar(double v) { return PriceVector::Constant(1, v); }

// ---- 1 -------------------------------------------------------------------------------

// Closed-form responses written out again, independently of the library, so the root of
// x(lambda) = y(lambda) can be found by a separate bracketing solver.
struct PowerPair {
    double A, alpha, eps1, B, beta, eps2, c;

    double x(double l) const {
        if (l <= 0.0) return c;
        return std::clamp(std::pow(A / l, 1.0 / (1.0 - alpha)) - eps1, 0.0, c);
    }
    double y(double l) const {
        if (l <= 0.0) return 0.0;
        return std::clamp(std::pow(l / B, 1.0 / (beta - 1.0)) - eps2, 0.0, c);
    }
    double h(double l) const { return y(l) - x(l); }
};

Outcome oracle_cross_validation() {
    Outcome out;
    double worst_grid = 0.0;
    double worst_root = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto spec = SamplerSpec::preset_power(seed);
        spec.m = 1;
        spec.n = 1;
        const auto inst = ScenarioStream(spec).next();
        const auto consts = regularity_constants(inst);
        const auto sol = dual_bisection_1d(inst, 0.0);

        const auto grid = grid_bruteforce_primal(inst, 1e-3);
        const double grid_err = std::abs(grid.F - sol.G_star);
        const double grid_tol = consts.K * 1e-3 + 1e-6;
        worst_grid = std::max(worst_grid, grid_err / grid_tol);
        if (grid_err > grid_tol) {
            out.pass = false;
            out.detail += fmt(" seed %llu: |grid F - G*| = %.3g > %.3g;", (unsigned long long)seed, grid_err, grid_tol);
        }

        const auto& s = std::get<PowerSalesParams>(inst.sales()[0].params());
        const auto& p = std::get<PowerProductionParams>(inst.production()[0].params());
        const PowerPair pair{s.A, s.alpha, s.eps1, p.B, p.beta, p.eps2, spec.c};
        const double lam = sol.lambda_star[0];
        if (pair.h(0.0) >= 0.0) {
            if (lam != 0.0) {
                out.pass = false;
                out.detail += fmt(" seed %llu: expected boundary answer;", (unsigned long long)seed);
            }
            continue;
        }
        double hi = consts.Kprime + 1.0;
        while (pair.h(hi) < 0.0) hi *= 2.0;
        std::uintmax_t iters = 500;
        const auto [a, b] = boost::math::tools::toms748_solve(
            [&](double l) { return pair.h(l); }, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), iters);
        // A flat zero of h (no trade on an interval) admits any price in it.
        const double root = 0.5 * (a + b);
        const double err = pair.h(lam) == 0.0 && pair.x(lam) == 0.0 ? 0.0 : std::abs(lam - root);
        worst_root = std::max(worst_root, err);
        if (err > 1e-9) {
            out.pass = false;
            out.detail += fmt(" seed %llu: |lambda - root| = %.3g;", (unsigned long long)seed, err);
        }
    }
    out.detail = fmt("20 instances, worst grid error %.3g of tolerance, worst root error %.3g",
                     worst_grid, worst_root) + out.detail;
    return out;
}

// ---- shared instance sets ------------------------------------------------------------

std::vector<FirmInstance> mixed_instances(int power, int quad_d1, int quad_d2, std::uint64_t base) {
    std::vector<FirmInstance> v;
    for (int i = 0; i < power; ++i) v.push_back(ScenarioStream(SamplerSpec::preset_power(base + i)).next());
    for (int i = 0; i < quad_d1; ++i) {
        auto spec = SamplerSpec::preset_quadratic(base + 100 + i);
        spec.d = 1;
        v.push_back(ScenarioStream(spec).next());
    }
    for (int i = 0; i < quad_d2; ++i) v.push_back(ScenarioStream(SamplerSpec::preset_quadratic(base + 200 + i)).next());
    return v;
}

// ---- 2 -------------------------------------------------------------------------------

Outcome strong_duality() {
    Outcome out;
    double worst_gap = 0.0;
    double min_lambda = INFINITY;
    const auto instances = mixed_instances(25, 10, 15, 1);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto sol = solve_oracle(instances[i]);
        const double gap = std::abs(sol.F_star - sol.G_star);
        worst_gap = std::max(worst_gap, gap);
        min_lambda = std::min(min_lambda, sol.lambda_star.minCoeff());
        if (gap > 1e-6 || sol.lambda_star.minCoeff() < -1e-9) {
            out.pass = false;
            out.detail += fmt(" instance %zu: |F*-G*| = %.3g, min lambda* = %.3g;", i, gap, sol.lambda_star.minCoeff());
        }
    }
    out.detail = fmt("50 instances (25 power, 10 quadratic d=1, 15 quadratic d=2), max |F*-G*| = %.3g, min lambda* = %.3g",
                     worst_gap, min_lambda) + out.detail;
    return out;
}

// ---- 3 -------------------------------------------------------------------------------

Outcome inequality_suite() {
    Outcome out;
    const double slack = 1e-8;
    long violations[4] = {0, 0, 0, 0};
    double worst[4] = {-INFINITY, -INFINITY, -INFINITY, -INFINITY};
    std::mt19937_64 rng(2024);
    const auto instances = mixed_instances(10, 0, 10, 40);
    for (const auto& inst : instances) {
        const auto k = regularity_constants(inst);
        const auto sol = solve_oracle(inst);
        std::uniform_real_distribution<double> price(-1.0, k.Kprime + 1.0);
        for (int s = 0; s < 50; ++s) {
            PriceVector lam(inst.dim());
            for (int j = 0; j < inst.dim(); ++j) lam[j] = price(rng);
            const auto e = evaluate_at(inst, lam);
            const double dG = e.dual - sol.G_star;
            const double dG_pos = std::max(dG, 0.0);
            const double dist = plan_distance(e.plan, sol.plan_star);
            // Each entry: measured minus allowed; <= slack passes.
            const double margin[4] = {
                0.5 * k.sigma * dist * dist - dG,                                     // dual growth
                std::abs(e.primal - sol.F_star) - k.K * std::sqrt(2.0 / k.sigma * dG_pos),  // optimality gap
                e.excess.norm() - std::sqrt(2.0 * k.kappa * dG_pos),                  // residual
                e.excess.norm() - gradient_norm_bound(inst),                          // gradient bound
            };
            for (int q = 0; q < 4; ++q) {
                worst[q] = std::max(worst[q], margin[q]);
                if (margin[q] > slack) ++violations[q];
            }
        }
    }
    const long total = violations[0] + violations[1] + violations[2] + violations[3];
    out.pass = total == 0;
    out.detail = fmt("20 instances x 50 prices; violations growth/gap/residual/gradient = %ld/%ld/%ld/%ld; "
                     "worst margins %.3g/%.3g/%.3g/%.3g",
                     violations[0], violations[1], violations[2], violations[3], worst[0], worst[1], worst[2], worst[3]);
    return out;
}

// ---- 4 -------------------------------------------------------------------------------

Outcome fast_gradient() {
    Outcome out;
    long rate_violations = 0;
    long bound_violations = 0;
    double worst_rate = -INFINITY;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto inst = ScenarioStream(SamplerSpec::preset_power(seed)).next();
        const auto k = regularity_constants(inst);
        const double eta = 1.0 / k.kappa;
        const auto sol = solve_oracle(inst);
        const auto r = run_static(inst, {Algorithm::Nesterov, 2000, eta, PriceVector::Zero(1)});
        const double dist = (r.trace.front().query - sol.lambda_star).norm();
        for (const auto& rec : r.trace) {
            const double tp1 = static_cast<double>(rec.t + 1);
            const double rate = (rec.G - sol.G_star) - 2.0 * dist * dist / (eta * tp1 * tp1);
            worst_rate = std::max(worst_rate, rate);
            if (rate > 1e-8) ++rate_violations;
            const auto b = theorem2_bound(k, eta, dist, rec.t);
            if (std::abs(rec.F - sol.F_star) > b.gap || rec.excess.norm() > b.residual) ++bound_violations;
        }
    }
    out.pass = rate_violations == 0 && bound_violations == 0;
    out.detail = fmt("20 power presets x 2000 iterations; dual-rate violations %ld (worst margin %.3g), "
                     "gap/residual bound violations %ld",
                     rate_violations, worst_rate, bound_violations);
    return out;
}

// ---- 5 -------------------------------------------------------------------------------

Outcome lemma1() {
    Outcome out;
    long violations = 0;
    double lo = INFINITY;
    double hi_margin = -INFINITY;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto spec = seed <= 25 ? SamplerSpec::preset_power(seed) : SamplerSpec::preset_quadratic(seed);
        const auto inst = ScenarioStream(spec).next();
        const auto r = run_static(inst, {Algorithm::Solo, 5000});
        violations += lemma1_violations(r, 1e-9);
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            lo = std::min(lo, r.trace[i].lambda.minCoeff());
            hi_margin = std::max(hi_margin, r.trace[i].lambda.maxCoeff() - r.kprime[i] - 1.0);
        }
    }
    out.pass = violations == 0;
    out.detail = fmt("50 runs (25 power, 25 quadratic), T=5000; violations %ld, min component %.3g, "
                     "max component - (K'+1) = %.3g",
                     violations, lo, hi_margin);
    return out;
}

// ---- 6 -------------------------------------------------------------------------------

Outcome solo_regret_and_average() {
    Outcome out;
    const long checkpoints[] = {16, 256, 4096, 65536};
    std::string rows;
    for (const auto& spec : {SamplerSpec::preset_power(1), SamplerSpec::preset_quadratic(1)}) {
        const auto inst = ScenarioStream(spec).next();
        const auto k = regularity_constants(inst);
        const auto sol = solve_oracle(inst);
        const double lnorm = sol.lambda_star.norm();
        const auto r = run_static(inst, {Algorithm::Solo, checkpoints[3]});
        std::vector<std::pair<double, double>> residuals;
        Vector sum = Vector::Zero(inst.dim());
        long next = 0;
        for (const long T : checkpoints) {
            while (next < T) sum += r.trace[static_cast<std::size_t>(next++)].lambda;
            const PriceVector avg = sum / static_cast<double>(T);
            const auto at_avg = evaluate_at(inst, avg);
            const auto reg = solo_regret(r.trace, sol.G_star, T);
            const double rhs = solo_regret_rhs(lnorm, reg.sq_sum, reg.max_grad, T);
            const auto b = theorem3_bounds(k, inst.m() + inst.n(), inst.box(), inst.dim(), lnorm, T);
            const double gap = std::abs(sol.F_star - at_avg.primal);
            const double res = at_avg.excess.norm();
            residuals.emplace_back(static_cast<double>(T), res);
            const bool ok = reg.regret <= rhs && gap <= b.gap && res <= b.residual;
            out.pass = out.pass && ok;
            rows += fmt(" [d=%d T=%ld regret %.3g<=%.3g gap %.3g<=%.3g res %.3g<=%.3g%s]", inst.dim(), T,
                        reg.regret, rhs, gap, b.gap, res, b.residual, ok ? "" : " VIOLATED");
        }
        const double slope = rate_fit(residuals);
        rows += fmt(" [d=%d residual slope %.3f]", inst.dim(), slope);
        if (!(slope <= -0.20)) out.pass = false;
    }
    out.detail = "preset-1 and preset-2;" + rows;
    return out;
}

// ---- 7 -------------------------------------------------------------------------------

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome dynamic_average_equilibrium() {
    Outcome out;
    std::string rows;
    for (int family = 0; family < 2; ++family) {
        std::vector<double> early, late;
        long lemma_violations = 0;
        bool finite = true;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto spec = family == 0 ? SamplerSpec::preset_power(seed) : SamplerSpec::preset_quadratic(seed);
            const auto r = run_dynamic(spec, {100'000, false});
            early.push_back(r.trace[999].avg_excess.norm());
            late.push_back(r.trace.back().avg_excess.norm());
            finite = finite && r.average_price.allFinite() && r.trace.back().avg_excess.allFinite();
            const double sqrt_d = std::sqrt(static_cast<double>(spec.d));
            for (std::size_t i = 0; i < r.trace.size(); ++i) {
                if (r.trace[i].lambda.norm() > (r.kprime[i] + 1.0) * sqrt_d + 1e-9) ++lemma_violations;
            }
        }
        const double m3 = median(early);
        const double m5 = median(late);
        const bool ok = m5 <= 0.5 * m3 && finite && lemma_violations == 0;
        out.pass = out.pass && ok;
        rows += fmt(" [%s: median |avg excess| T=1e3 %.4g, T=1e5 %.4g (ratio %.3f), iterate-bound violations %ld%s]",
                    family == 0 ? "power" : "quadratic", m3, m5, m5 / m3, lemma_violations, finite ? "" : ", NON-FINITE");
    }
    out.detail = "10 seeds per sampler;" + rows;
    return out;
}

// ---- 8 -------------------------------------------------------------------------------

Outcome gradient_identity() {
    Outcome out;
    const double h = 1e-4;
    std::mt19937_64 rng(808);
    const auto instances = mixed_instances(10, 5, 10, 70);
    long failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto& inst = instances[static_cast<std::size_t>(trial) % instances.size()];
        const auto k = regularity_constants(inst);
        std::uniform_real_distribution<double> price(-1.0, k.Kprime + 1.0);
        PriceVector lam(inst.dim());
        for (int j = 0; j < inst.dim(); ++j) lam[j] = price(rng);
        const int coord = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.dim()));
        const PriceVector e = PriceVector::Unit(inst.dim(), coord) * h;
        const double fd = (dual_value(inst, lam + e) - dual_value(inst, lam - e)) / (2.0 * h);
        const double err = std::abs(fd - excess_supply(inst, lam)[coord]);
        const double tol = k.kappa * h + 1e-5;
        worst = std::max(worst, err / tol);
        if (err > tol) ++failures;
    }
    out.pass = failures == 0;
    out.detail = fmt("200 (instance, lambda, k) triples, h=1e-4; failures %ld, worst error %.3g of tolerance", failures, worst);
    return out;
}

// ---- 9 -------------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome out;
    const auto root = std::filesystem::temp_directory_path() / "tprice_acceptance_determinism";
    int presets = 0;
    for (auto mode : {Mode::Static, Mode::Dynamic}) {
        for (auto model : {Family::Power, Family::Quadratic}) {
            for (auto algo : {Algorithm::GradientDescent, Algorithm::Nesterov, Algorithm::Solo}) {
                if (mode == Mode::Dynamic && algo != Algorithm::Solo) continue;
                ExperimentConfig cfg;
                cfg.mode = mode;
                cfg.model = model;
                cfg.algo = algo;
                cfg.d = model == Family::Power ? 1 : 2;
                cfg.with_oracle = mode == Mode::Static;
                cfg.out = root / fmt("%s_%s_%s", std::string(to_string(mode)).c_str(),
                                     std::string(to_string(model)).c_str(), std::string(to_string(algo)).c_str());
                std::filesystem::remove_all(cfg.out);
                run_experiment(cfg);
                const auto csv = slurp(cfg.out / "trace.csv");
                const auto json = slurp(cfg.out / "summary.json");
                run_experiment(cfg);
                ++presets;
                if (csv != slurp(cfg.out / "trace.csv") || json != slurp(cfg.out / "summary.json")) {
                    out.pass = false;
                    out.detail += " " + cfg.out.filename().string() + " differs;";
                }
            }
        }
    }
    std::filesystem::remove_all(root);
    out.detail = fmt("%d presets at default T run twice; CSV and JSON compared byte for byte", presets) + out.detail;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "oracle cross-validation", 10, oracle_cross_validation},
        {2, "strong duality and nonnegative optimal price", 60, strong_duality},
        {3, "inequality suite (dual growth, optimality gap, residual, gradient bound)", 60, inequality_suite},
        {4, "fast-gradient rate and bounds", 120, fast_gradient},
        {5, "SOLO iterate bounds", 120, lemma1},
        {6, "SOLO regret, averaged-price bounds and residual rate", 600, solo_regret_and_average},
        {7, "dynamic average equilibrium", 900, dynamic_average_equilibrium},
        {8, "gradient identity", 60, gradient_identity},
        {9, "determinism", 600, determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    bool all = true;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= c.time_limit_s) {
            o.pass = false;
            o.detail += fmt("; runtime limit %.0f s exceeded", c.time_limit_s);
        }
        all = all && o.pass;
        std::printf("%s [%d] %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
