#include "ranges.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace critsqueeze::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw) {
    const std::string s = trim(raw);
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || std::isnan(v)) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty range");
    if (t.rfind("log:", 0) == 0 || t.rfind("lin:", 0) == 0) {
        const auto parts = split(t, ':');
        if (parts.size() != 4) throw std::invalid_argument("expected kind:start:stop:count, got '" + t + "'");
        const double a = parse_number(parts[1]);
        const double b = parse_number(parts[2]);
        const double c = parse_number(parts[3]);
        if (!(c >= 1.0) || c != std::floor(c)) throw std::invalid_argument("count must be a positive integer");
        if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("range ends must be finite");
        const auto n = static_cast<std::size_t>(c);
        const bool log = parts[0] == "log";
        if (log && !(a > 0.0 && b > 0.0)) throw std::invalid_argument("log range needs positive ends");
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            out[i] = log ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
        }
        // Pin the ends exactly.
        out.front() = a;
        if (n > 1) out.back() = b;
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(t, ',')) out.push_back(parse_number(item));
    return out;
}

}  // namespace critsqueeze::cli
