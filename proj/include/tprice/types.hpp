#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace tprice {

// Transfer prices; components may be negative on SOLO iterates.
using PriceVector = Eigen::VectorXd;
// Commodity quantities, each in [0, c].
using Bundle = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by iterative solvers that hit their iteration cap.
class NonConvergence : public Error {
public:
    NonConvergence(std::string_view what, long iterations)
        : Error(std::string(what) + " did not converge after " + std::to_string(iterations) +
                " iterations"),
          iterations_(iterations) {}

    long iterations() const noexcept { return iterations_; }

private:
    long iterations_;
};

inline void require_finite(const Vector& v, std::string_view what) {
    if (!v.allFinite()) {
        throw Error(std::string(what) + " has non-finite components");
    }
}

inline void require_dim(const Vector& v, Eigen::Index d, std::string_view what) {
    if (v.size() != d) {
        throw Error(std::string(what) + ": dimension " + std::to_string(v.size()) +
                    ", expected " + std::to_string(d));
    }
}

}  // namespace tprice
