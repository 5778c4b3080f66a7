#include "tprice/harness.hpp"

#include <cmath>

namespace tprice {

double rate_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw Error("rate_fit: needs at least 3 points");
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [T, v] : points) {
        if (!(T > 0.0) || !(v > 0.0) || !std::isfinite(T) || !std::isfinite(v)) {
            throw Error("rate_fit: every T and value must be positive and finite");
        }
        sx += std::log(T);
        sy += std::log(v);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [T, v] : points) {
        const double dx = std::log(T) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(v) - my);
    }
    if (sxx == 0.0) throw Error("rate_fit: all T values coincide");
    return sxy / sxx;
}

}  // namespace tprice
