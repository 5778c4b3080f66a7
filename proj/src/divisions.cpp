#include "tprice/divisions.hpp"

#include "tprice/box_qp.hpp"

#include <algorithm>
#include <cmath>

namespace tprice {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kBoxSlack = 1e-12;

void require_symmetric(const Matrix& m, std::string_view what) {
    if (m.rows() != m.cols()) throw Error(std::string(what) + " must be square");
    if (!m.allFinite()) throw Error(std::string(what) + " has non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(std::string(what) + " must be symmetric");
    }
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// Per-component range of (linear - sign * curvature q) over q in [0, c]^d gives the
// largest gradient magnitude, component by component.
double quad_lipschitz(const Vector& linear, const Matrix& curvature, double sign, double c) {
    Vector worst(linear.size());
    for (Eigen::Index k = 0; k < linear.size(); ++k) {
        double pos = 0.0;
        double neg = 0.0;
        for (Eigen::Index j = 0; j < curvature.cols(); ++j) {
            const double v = sign * curvature(k, j);
            (v > 0.0 ? pos : neg) += v;
        }
        const double lo = linear[k] - c * pos;
        const double hi = linear[k] - c * neg;
        worst[k] = std::max(std::abs(lo), std::abs(hi));
    }
    return worst.norm();
}

}  // namespace

DivisionModel::DivisionModel(Params params, double c, Monotonicity monotonicity)
    : params_(std::move(params)), c_(c) {
    if (!(c_ > 0.0) || !std::isfinite(c_)) throw Error("division box bound must be positive");

    std::visit(
        overloaded{
            [&](const PowerSalesParams& p) {
                if (!(p.A > 0.0)) throw Error("power sales: A must be positive");
                if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw Error("power sales: alpha must lie in (0,1)");
                if (!(p.eps1 > 0.0)) throw Error("power sales: eps1 must be positive");
                role_ = Role::Sales;
                family_ = Family::Power;
                dim_ = 1;
                // |f''| is smallest at the right end of the box; f' is largest at 0.
                modulus_ = p.A * (1.0 - p.alpha) * std::pow(c_ + p.eps1, p.alpha - 2.0);
                lipschitz_ = p.A * std::pow(p.eps1, p.alpha - 1.0);
            },
            [&](const PowerProductionParams& p) {
                if (!(p.B > 0.0)) throw Error("power production: B must be positive");
                if (!(p.beta > 1.0)) throw Error("power production: beta must exceed 1");
                if (!(p.eps2 > 0.0)) throw Error("power production: eps2 must be positive");
                role_ = Role::Production;
                family_ = Family::Power;
                dim_ = 1;
                modulus_ = p.B * (p.beta - 1.0) *
                           std::min(std::pow(p.eps2, p.beta - 2.0), std::pow(c_ + p.eps2, p.beta - 2.0));
                lipschitz_ = p.B * std::pow(c_ + p.eps2, p.beta - 1.0);
            },
            [&](const QuadSalesParams& p) {
                require_symmetric(p.A, "quadratic sales curvature");
                if (p.a.size() != p.A.rows()) throw Error("quadratic sales: a and A dimensions differ");
                require_finite(p.a, "quadratic sales linear term");
                role_ = Role::Sales;
                family_ = Family::Quadratic;
                dim_ = static_cast<int>(p.a.size());
                modulus_ = min_eigenvalue(p.A);
                if (monotonicity == Monotonicity::Enforce) {
                    for (Eigen::Index k = 0; k < p.a.size(); ++k) {
                        double pos = 0.0;
                        for (Eigen::Index j = 0; j < p.A.cols(); ++j) pos += std::max(p.A(k, j), 0.0);
                        if (p.a[k] < c_ * pos) throw Error("quadratic sales: revenue not non-decreasing on the box");
                    }
                }
                lipschitz_ = quad_lipschitz(p.a, p.A, 1.0, c_);
            },
            [&](const QuadProductionParams& p) {
                require_symmetric(p.B, "quadratic production curvature");
                if (p.b.size() != p.B.rows()) throw Error("quadratic production: b and B dimensions differ");
                require_finite(p.b, "quadratic production linear term");
                role_ = Role::Production;
                family_ = Family::Quadratic;
                dim_ = static_cast<int>(p.b.size());
                modulus_ = min_eigenvalue(p.B);
                if (monotonicity == Monotonicity::Enforce) {
                    for (Eigen::Index k = 0; k < p.b.size(); ++k) {
                        double neg = 0.0;
                        for (Eigen::Index j = 0; j < p.B.cols(); ++j) neg += std::min(p.B(k, j), 0.0);
                        if (p.b[k] < -c_ * neg) throw Error("quadratic production: cost not non-decreasing on the box");
                    }
                }
                lipschitz_ = quad_lipschitz(p.b, p.B, -1.0, c_);
            },
        },
        params_);

    if (dim_ < 1) throw Error("division dimension must be at least 1");
    if (!(modulus_ > 0.0)) throw Error("division curvature modulus must be positive");
}

DivisionModel DivisionModel::power_sales(double A, double alpha, double eps1, double c) {
    return DivisionModel(PowerSalesParams{A, alpha, eps1}, c);
}

DivisionModel DivisionModel::power_production(double B, double beta, double eps2, double c) {
    return DivisionModel(PowerProductionParams{B, beta, eps2}, c);
}

DivisionModel DivisionModel::quad_sales(Vector a, Matrix A, double c, Monotonicity monotonicity) {
    return DivisionModel(QuadSalesParams{std::move(a), std::move(A)}, c, monotonicity);
}

DivisionModel DivisionModel::quad_production(Vector b, Matrix B, double c,
                                             Monotonicity monotonicity) {
    return DivisionModel(QuadProductionParams{std::move(b), std::move(B)}, c, monotonicity);
}

double DivisionModel::evaluate(const Bundle& q) const {
    require_dim(q, dim_, "division bundle");
    for (Eigen::Index k = 0; k < q.size(); ++k) {
        if (!(q[k] >= -kBoxSlack && q[k] <= c_ + kBoxSlack)) {
            throw Error("division bundle outside the box [0, c]");
        }
    }
    return std::visit(
        overloaded{
            [&](const PowerSalesParams& p) {
                return p.A / p.alpha * (std::pow(q[0] + p.eps1, p.alpha) - std::pow(p.eps1, p.alpha));
            },
            [&](const PowerProductionParams& p) {
                return p.B / p.beta * (std::pow(q[0] + p.eps2, p.beta) - std::pow(p.eps2, p.beta));
            },
            [&](const QuadSalesParams& p) { return p.a.dot(q) - 0.5 * q.dot(p.A * q); },
            [&](const QuadProductionParams& p) { return p.b.dot(q) + 0.5 * q.dot(p.B * q); },
        },
        params_);
}

double DivisionModel::payoff(const Bundle& q, const PriceVector& lambda) const {
    const double value = evaluate(q);
    const double cost = lambda.dot(q);
    return role_ == Role::Sales ? value - cost : cost - value;
}

Bundle DivisionModel::best_response(const PriceVector& lambda) const {
    require_dim(lambda, dim_, "price");
    require_finite(lambda, "price");
    return std::visit(
        overloaded{
            [&](const PowerSalesParams& p) -> Bundle {
                // f'(x) = A (x + eps1)^(alpha - 1) = lambda, clipped to the box.
                const double l = lambda[0];
                double x = c_;
                if (l > 0.0) {
                    x = std::clamp(std::pow(p.A / l, 1.0 / (1.0 - p.alpha)) - p.eps1, 0.0, c_);
                }
                return Bundle::Constant(1, x);
            },
            [&](const PowerProductionParams& p) -> Bundle {
                // g'(y) = B (y + eps2)^(beta - 1) = lambda, clipped to the box.
                const double l = lambda[0];
                double y = 0.0;
                if (l > 0.0) {
                    y = std::clamp(std::pow(l / p.B, 1.0 / (p.beta - 1.0)) - p.eps2, 0.0, c_);
                }
                return Bundle::Constant(1, y);
            },
            [&](const QuadSalesParams& p) -> Bundle {
                return box_qp_maximize(p.a - lambda, p.A, c_, kQpResponseTol);
            },
            [&](const QuadProductionParams& p) -> Bundle {
                return box_qp_maximize(lambda - p.b, p.B, c_, kQpResponseTol);
            },
        },
        params_);
}

double evaluate(const DivisionModel& model, const Bundle& q) { return model.evaluate(q); }

Bundle best_response_sales(const DivisionModel& model, const PriceVector& lambda) {
    if (model.role() != Role::Sales) throw Error("best_response_sales called on a production model");
    return model.best_response(lambda);
}

Bundle best_response_production(const DivisionModel& model, const PriceVector& lambda) {
    if (model.role() != Role::Production) {
        throw Error("best_response_production called on a sales model");
    }
    return model.best_response(lambda);
}

}  // namespace tprice
