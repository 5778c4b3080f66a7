#include "tprice/kernels.hpp"
#include "tprice/scenario.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <cstring>

using namespace tprice;

namespace {

bool same_bits(const Vector& a, const Vector& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

class Kernels : public ::testing::Test {
protected:
    void SetUp() override {
        saved_ = omp_get_max_threads();
        omp_set_num_threads(4);
    }
    void TearDown() override { omp_set_num_threads(saved_); }

private:
    int saved_ = 1;
};

}  // namespace

TEST_F(Kernels, EvaluateSerialEqualsParallelBitwise) {
    for (const auto& spec : {SamplerSpec::preset_power(3), SamplerSpec::preset_quadratic(3)}) {
        ScenarioStream stream(spec);
        for (int round = 0; round < 5; ++round) {
            const auto inst = stream.next();
            for (double p : {-0.5, 0.0, 1.7, 6.25, 30.0}) {
                const PriceVector lam = PriceVector::Constant(spec.d, p);
                const auto s = kernels::evaluate(inst, lam, kernels::Exec::Serial);
                const auto q = kernels::evaluate(inst, lam, kernels::Exec::Parallel);
                ASSERT_TRUE(same_bits(s.excess, q.excess));
                ASSERT_TRUE(same_bits(s.primal, q.primal));
                ASSERT_TRUE(same_bits(s.dual, q.dual));
                for (std::size_t i = 0; i < s.plan.x.size(); ++i) ASSERT_TRUE(same_bits(s.plan.x[i], q.plan.x[i]));
                for (std::size_t j = 0; j < s.plan.y.size(); ++j) ASSERT_TRUE(same_bits(s.plan.y[j], q.plan.y[j]));
            }
        }
    }
}

TEST_F(Kernels, PoolMeanSerialEqualsParallelBitwise) {
    ScenarioStream stream(SamplerSpec::preset_quadratic(8));
    std::vector<FirmInstance> pool;
    for (int i = 0; i < 37; ++i) pool.push_back(stream.next());
    PriceVector lam(2);
    lam << 5.5, 6.5;
    EXPECT_TRUE(same_bits(kernels::pool_mean_excess_serial(pool, lam),
                          kernels::pool_mean_excess_parallel(pool, lam)));
    EXPECT_THROW(kernels::pool_mean_excess_serial({}, lam), Error);
    EXPECT_THROW(kernels::pool_mean_excess_parallel({}, lam), Error);
}

TEST_F(Kernels, BatchSerialEqualsParallelBitwise) {
    ScenarioStream stream(SamplerSpec::preset_power(2));
    const auto inst = stream.next();
    std::vector<PriceVector> prices;
    for (int i = 0; i < 64; ++i) prices.push_back(PriceVector::Constant(1, -1.0 + 0.3 * i));
    const auto s = kernels::evaluate_batch_serial(inst, prices);
    const auto q = kernels::evaluate_batch_parallel(inst, prices);
    ASSERT_EQ(s.size(), q.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_TRUE(same_bits(s[i].excess, q[i].excess));
        EXPECT_TRUE(same_bits(s[i].dual, q[i].dual));
    }
}

TEST_F(Kernels, ParallelErrorsPropagate) {
    ScenarioStream stream(SamplerSpec::preset_power(2));
    const auto inst = stream.next();
    EXPECT_THROW(kernels::evaluate(inst, PriceVector::Constant(1, NAN), kernels::Exec::Parallel), Error);
    EXPECT_THROW(kernels::evaluate(inst, PriceVector::Zero(2), kernels::Exec::Parallel), Error);
    std::vector<PriceVector> prices{PriceVector::Zero(1), PriceVector::Zero(3)};
    EXPECT_THROW(kernels::evaluate_batch_parallel(inst, prices), Error);
}
