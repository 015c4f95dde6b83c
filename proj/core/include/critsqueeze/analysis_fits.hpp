#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace critsqueeze {

struct FitWindow {
    double x_min = 0.0;
    double x_max = 0.0;
};

/// y = prefactor * x^{-exponent}: exponent is minus the log-log slope, so a
/// decaying power law has exponent > 0.
struct FitResult {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::size_t sample_count = 0;
    FitWindow window;
};

/// Unweighted least squares on (ln x, ln y) over the points with x inside
/// the window (all points if the window is empty). Throws DomainError on
/// nonpositive data in the window or fewer than 4 points.
FitResult fit_power_law(std::span<const std::pair<double, double>> points, FitWindow window = {});

}  // namespace critsqueeze
