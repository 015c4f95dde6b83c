#pragma once

#include <string>
#include <vector>

namespace critsqueeze::cli {

/// Parses a parameter range:
///   "1,2,4"            explicit list
///   "log:10:1000:9"    9 log-spaced points, both ends included
///   "lin:0.25:6:24"    24 evenly spaced points
/// "inf" is accepted as a list element. Throws std::invalid_argument.
std::vector<double> parse_range(const std::string& text);

}  // namespace critsqueeze::cli
