#include "tprice/scenario.hpp"

#include "tprice/oracle.hpp"
#include "trace_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tprice {
namespace {

enum PowerParam : std::uint64_t { kScale = 0, kExponent = 1, kShift = 2 };
enum QuadParam : std::uint64_t { kCurvature = 0, kMargin = 1 };

void check_range(Range r, const char* what) {
    if (!(r.lo >= 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
        throw Error(std::string("sampler: range for ") + what + " must satisfy 0 <= lo <= hi");
    }
}

Matrix sample_curvature(const SubstreamRng& rng, const SamplerSpec& spec, std::uint64_t round,
                        Role role, std::uint64_t division) {
    const int d = spec.d;
    Matrix C(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            C(r, c) = spec.quadratic.curvature_scale *
                      rng.standard_normal(round, role, division, kCurvature,
                                          static_cast<std::uint64_t>(r * d + c));
        }
    }
    // C^T C + delta I, filled one triangle and mirrored so it is exactly symmetric.
    Matrix M(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += C(k, i) * C(k, j);
            M(i, j) = s;
            M(j, i) = s;
        }
        M(i, i) += spec.delta;
    }
    return M;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double SubstreamRng::uniform01(std::uint64_t round, Role role, std::uint64_t division,
                               std::uint64_t parameter, std::uint64_t index) const {
    std::uint64_t key = splitmix64(seed_);
    key = splitmix64(key ^ round);
    key = splitmix64(key ^ (role == Role::Sales ? 0x5a1e5ULL : 0x960dULL));
    key = splitmix64(key ^ division);
    key = splitmix64(key ^ parameter);
    key = splitmix64(key ^ index);
    // 53 high bits, centred in their cell: strictly inside (0, 1).
    return (static_cast<double>(key >> 11) + 0.5) * 0x1.0p-53;
}

double SubstreamRng::uniform(Range r, std::uint64_t round, Role role, std::uint64_t division,
                             std::uint64_t parameter, std::uint64_t index) const {
    if (r.lo == r.hi) return r.lo;
    return r.lo + (r.hi - r.lo) * uniform01(round, role, division, parameter, index);
}

double SubstreamRng::standard_normal(std::uint64_t round, Role role, std::uint64_t division,
                                     std::uint64_t parameter, std::uint64_t index) const {
    const double u1 = uniform01(round, role, division, parameter, 2 * index);
    const double u2 = uniform01(round, role, division, parameter, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SamplerSpec::validate() const {
    if (d < 1 || m < 1 || n < 1) throw Error("sampler: d, m, n must be at least 1");
    if (!(c > 0.0)) throw Error("sampler: c must be positive");
    if (family == Family::Power) {
        if (d != 1) throw Error("sampler: the power family is defined for d = 1 only");
        check_range(power.A, "A");
        check_range(power.one_minus_alpha, "1 - alpha");
        check_range(power.eps1_shift, "eps1 - 0.1");
        check_range(power.B, "B");
        check_range(power.beta_minus_one, "beta - 1");
        check_range(power.eps2_shift, "eps2 - 0.1");
        if (power.one_minus_alpha.hi > 1.0) throw Error("sampler: 1 - alpha must stay below 1");
    } else {
        if (!(delta > 0.0)) throw Error("sampler: delta must be positive");
        if (!(quadratic.curvature_scale >= 0.0)) throw Error("sampler: curvature scale must be >= 0");
        check_range(quadratic.margin, "monotonicity margin");
    }
}

SamplerSpec SamplerSpec::preset_power(std::uint64_t seed) {
    SamplerSpec s;
    s.family = Family::Power;
    s.d = 1;
    s.seed = seed;
    return s;
}

SamplerSpec SamplerSpec::preset_quadratic(std::uint64_t seed) {
    SamplerSpec s;
    s.family = Family::Quadratic;
    s.d = 2;
    s.delta = 0.1;
    s.seed = seed;
    return s;
}

ScenarioStream::ScenarioStream(SamplerSpec spec) : spec_(std::move(spec)), rng_(spec_.seed) {
    spec_.validate();
}

FirmInstance ScenarioStream::instance_at(std::uint64_t round) const {
    const auto& s = spec_;
    std::vector<DivisionModel> sales;
    std::vector<DivisionModel> production;
    sales.reserve(static_cast<std::size_t>(s.m));
    production.reserve(static_cast<std::size_t>(s.n));

    if (s.family == Family::Power) {
        const auto& law = s.power;
        for (int i = 0; i < s.m; ++i) {
            const auto div = static_cast<std::uint64_t>(i);
            const double A = rng_.uniform(law.A, round, Role::Sales, div, kScale);
            const double alpha = 1.0 - rng_.uniform(law.one_minus_alpha, round, Role::Sales, div, kExponent);
            const double eps1 = 0.1 + rng_.uniform(law.eps1_shift, round, Role::Sales, div, kShift);
            sales.push_back(DivisionModel::power_sales(A, alpha, eps1, s.c));
        }
        for (int j = 0; j < s.n; ++j) {
            const auto div = static_cast<std::uint64_t>(j);
            const double B = rng_.uniform(law.B, round, Role::Production, div, kScale);
            const double beta = 1.0 + rng_.uniform(law.beta_minus_one, round, Role::Production, div, kExponent);
            const double eps2 = 0.1 + rng_.uniform(law.eps2_shift, round, Role::Production, div, kShift);
            production.push_back(DivisionModel::power_production(B, beta, eps2, s.c));
        }
    } else {
        for (int i = 0; i < s.m; ++i) {
            const auto div = static_cast<std::uint64_t>(i);
            Matrix A = sample_curvature(rng_, s, round, Role::Sales, div);
            Vector a(s.d);
            for (int k = 0; k < s.d; ++k) {
                double pos = 0.0;
                for (int j = 0; j < s.d; ++j) pos += std::max(A(k, j), 0.0);
                a[k] = s.c * pos + rng_.uniform(s.quadratic.margin, round, Role::Sales, div, kMargin,
                                                static_cast<std::uint64_t>(k));
            }
            sales.push_back(DivisionModel::quad_sales(std::move(a), std::move(A), s.c));
        }
        for (int i = 0; i < s.n; ++i) {
            const auto div = static_cast<std::uint64_t>(i);
            Matrix B = sample_curvature(rng_, s, round, Role::Production, div);
            Vector b(s.d);
            for (int k = 0; k < s.d; ++k) {
                double neg = 0.0;
                for (int j = 0; j < s.d; ++j) neg += std::min(B(k, j), 0.0);
                b[k] = -s.c * neg + rng_.uniform(s.quadratic.margin, round, Role::Production, div, kMargin,
                                                 static_cast<std::uint64_t>(k));
            }
            production.push_back(DivisionModel::quad_production(std::move(b), std::move(B), s.c));
        }
    }
    return FirmInstance(s.d, std::move(sales), std::move(production), s.c);
}

FirmInstance ScenarioStream::next() { return instance_at(round_++); }

FirmInstance sample_instance(ScenarioStream& stream) { return stream.next(); }

RunResult run_dynamic(const SamplerSpec& spec, const DynamicRunConfig& cfg) {
    if (cfg.T < 1) throw Error("run_dynamic: T must be at least 1");
    ScenarioStream stream(spec);
    auto state = SoloState::start(spec.d);
    PriceVector lambda = state.price();
    detail::TraceBuilder builder(spec.d, cfg.T);
    // Largest sales Lipschitz constant over the rounds that shaped the current price.
    double kprime = 0.0;

    for (long t = 1; t <= cfg.T; ++t) {
        const FirmInstance instance = stream.next();
        const auto e = evaluate_at(instance, lambda);
        auto& record = builder.add(lambda, e, lambda, kprime);
        if (cfg.with_oracle) {
            record.oracle_gap = solve_oracle(instance).F_star - e.primal;
        }
        for (const auto& s : instance.sales()) kprime = std::max(kprime, s.lipschitz());
        std::tie(state, lambda) = solo_step(state, e.excess);
    }
    return builder.finish(false);
}

}  // namespace tprice
