#pragma once

#include "tprice/coordinators.hpp"
#include "tprice/divisions.hpp"
#include "tprice/firm.hpp"
#include "tprice/trace.hpp"

#include <cstdint>

namespace tprice {

// Closed interval for a uniform draw; lo == hi gives a constant.
struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

// Power family laws. Each parameter is an offset plus a uniform draw:
//   A ~ U(A), alpha = 1 - U(one_minus_alpha), eps1 = 0.1 + U(eps1_shift),
//   B ~ U(B), beta = 1 + U(beta_minus_one),   eps2 = 0.1 + U(eps2_shift).
struct PowerLaws {
    Range A{0.0, 15.0};
    Range one_minus_alpha{0.0, 1.0};
    Range eps1_shift{0.0, 1.0};
    Range B{0.0, 10.0};
    Range beta_minus_one{0.0, 3.0};
    Range eps2_shift{0.0, 1.0};
};

// Quadratic family laws: curvature = s^2 C^T C + delta I with C standard normal and
// s = curvature_scale; linear terms sit at the monotonicity threshold plus U(margin).
struct QuadraticLaws {
    double curvature_scale = 1.0;
    Range margin{0.0, 1.0};
};

struct SamplerSpec {
    Family family = Family::Power;
    int d = 1;
    int m = 15;
    int n = 25;
    double c = 10.0;
    double delta = 0.1;
    PowerLaws power;
    QuadraticLaws quadratic;
    std::uint64_t seed = 1;

    void validate() const;

    // One commodity, power revenues and costs, m = 15, n = 25, c = 10.
    static SamplerSpec preset_power(std::uint64_t seed);
    // Two commodities, quadratic revenues and costs, m = 15, n = 25, c = 10, delta = 0.1.
    static SamplerSpec preset_quadratic(std::uint64_t seed);
};

// Counter-based random source.
//
// Every draw is a pure function of (seed, round, role, division, parameter, index):
// the key is folded through SplitMix64 one coordinate at a time and the final word
// becomes a double in (0, 1). One substream per round, per division and per parameter;
// no draw depends on how many draws came before it.
class SubstreamRng {
public:
    explicit SubstreamRng(std::uint64_t seed) : seed_(seed) {}

    double uniform01(std::uint64_t round, Role role, std::uint64_t division,
                     std::uint64_t parameter, std::uint64_t index = 0) const;
    double uniform(Range r, std::uint64_t round, Role role, std::uint64_t division,
                   std::uint64_t parameter, std::uint64_t index = 0) const;
    // Box-Muller on draws 2*index and 2*index + 1 of the substream.
    double standard_normal(std::uint64_t round, Role role, std::uint64_t division,
                           std::uint64_t parameter, std::uint64_t index = 0) const;

private:
    std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Sequence of i.i.d. firm instances. Advancing is the only mutation.
class ScenarioStream {
public:
    explicit ScenarioStream(SamplerSpec spec);

    const SamplerSpec& spec() const noexcept { return spec_; }
    std::uint64_t round() const noexcept { return round_; }

    // Instance for an arbitrary round, without advancing.
    FirmInstance instance_at(std::uint64_t round) const;
    FirmInstance next();

private:
    SamplerSpec spec_;
    SubstreamRng rng_;
    std::uint64_t round_ = 0;
};

FirmInstance sample_instance(ScenarioStream& stream);

struct DynamicRunConfig {
    long T = 1;
    // Solve each round's problem to log F_t(z*_t) - F_t(z~_t(lambda_t)).
    bool with_oracle = false;
};

// SOLO on a freshly sampled instance each round. Record t holds the price built from
// rounds 1..t-1 and what round t's instance does with it.
RunResult run_dynamic(const SamplerSpec& spec, const DynamicRunConfig& cfg);

}  // namespace tprice
