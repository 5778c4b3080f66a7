#pragma once

#include "tprice/types.hpp"

#include <variant>

namespace tprice {

enum class Role { Sales, Production };
enum class Family { Power, Quadratic };

// f(x) = A/alpha * ((x + eps1)^alpha - eps1^alpha), one commodity.
struct PowerSalesParams {
    double A = 1.0;
    double alpha = 0.5;
    double eps1 = 0.1;
};

// g(y) = B/beta * ((y + eps2)^beta - eps2^beta), one commodity.
struct PowerProductionParams {
    double B = 1.0;
    double beta = 2.0;
    double eps2 = 0.1;
};

// f(x) = <a, x> - 1/2 <A x, x>
struct QuadSalesParams {
    Vector a;
    Matrix A;
};

// g(y) = <b, y> + 1/2 <B y, y>
struct QuadProductionParams {
    Vector b;
    Matrix B;
};

// Whether to insist that a quadratic model is non-decreasing on the whole box.
enum class Monotonicity { Enforce, Relaxed };

// One division: a revenue (sales) or cost (production) function on the box [0, c]^d.
//
// Immutable after construction. The strong-convexity modulus and a Lipschitz constant
// valid on the box are computed once and cached.
class DivisionModel {
public:
    using Params = std::variant<PowerSalesParams, PowerProductionParams, QuadSalesParams,
                                QuadProductionParams>;

    DivisionModel(Params params, double c, Monotonicity monotonicity = Monotonicity::Enforce);

    static DivisionModel power_sales(double A, double alpha, double eps1, double c);
    static DivisionModel power_production(double B, double beta, double eps2, double c);
    static DivisionModel quad_sales(Vector a, Matrix A, double c,
                                    Monotonicity monotonicity = Monotonicity::Enforce);
    static DivisionModel quad_production(Vector b, Matrix B, double c,
                                         Monotonicity monotonicity = Monotonicity::Enforce);

    Role role() const noexcept { return role_; }
    Family family() const noexcept { return family_; }
    int dim() const noexcept { return dim_; }
    double box() const noexcept { return c_; }
    const Params& params() const noexcept { return params_; }

    // Strong concavity (sales) or convexity (production) modulus on the box.
    double modulus() const noexcept { return modulus_; }
    // Upper bound on the gradient norm over the box.
    double lipschitz() const noexcept { return lipschitz_; }

    // f(q) for sales, g(q) for production.
    double evaluate(const Bundle& q) const;
    // f(q) - <lambda, q> for sales, <lambda, q> - g(q) for production.
    double payoff(const Bundle& q, const PriceVector& lambda) const;
    // Maximizer of payoff over the box.
    Bundle best_response(const PriceVector& lambda) const;

private:
    Params params_;
    double c_;
    Role role_;
    Family family_;
    int dim_;
    double modulus_ = 0.0;
    double lipschitz_ = 0.0;
};

// Tolerance on the box-QP projected gradient used by quadratic best responses.
inline constexpr double kQpResponseTol = 1e-7;

double evaluate(const DivisionModel& model, const Bundle& q);
Bundle best_response_sales(const DivisionModel& model, const PriceVector& lambda);
Bundle best_response_production(const DivisionModel& model, const PriceVector& lambda);

}  // namespace tprice
