#include "critsqueeze/analysis_fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "critsqueeze/errors.hpp"

namespace critsqueeze {

FitResult fit_power_law(std::span<const std::pair<double, double>> points, FitWindow window) {
    const bool all = !(window.x_max > window.x_min);
    std::vector<double> lx, ly;
    FitResult out;
    out.window = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& [x, y] : points) {
        if (!all && (x < window.x_min || x > window.x_max)) continue;
        if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
            throw DomainError("fit_power_law: data must be positive and finite");
        }
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
        out.window.x_min = std::min(out.window.x_min, x);
        out.window.x_max = std::max(out.window.x_max, x);
    }
    if (lx.size() < 4) throw DomainError("fit_power_law: need at least 4 points in the window");

    const auto n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DomainError("fit_power_law: abscissae must not all coincide");
    const double slope = sxy / sxx;
    out.exponent = -slope;
    out.prefactor = std::exp(my - slope * mx);
    out.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    out.sample_count = lx.size();
    return out;
}

}  // namespace critsqueeze
