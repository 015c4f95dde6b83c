#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ranges.hpp"

namespace critsqueeze::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, ConfigEntry> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, ConfigEntry> out;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(number) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
        if (out.count(key) != 0) {
            throw ConfigError(path + ":" + std::to_string(number) + ": duplicate key '" + key + "'");
        }
        out[key] = {value, number};
    }
    return out;
}

void Params::set(const std::string& key, std::string value, std::string source) {
    values_[key] = {std::move(value), std::move(source)};
}

bool Params::has(const std::string& key) const { return values_.count(key) != 0; }

bool Params::given(const std::string& key) const { return has(key) && !get(key).value.empty(); }

const Param& Params::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("internal: unknown parameter '" + key + "'");
    return it->second;
}

void Params::fail(const std::string& key, const std::string& message) const {
    const Param& p = get(key);
    throw ConfigError("field '" + key + "' (" + p.source + ", value '" + p.value + "'): " + message);
}

void Params::require(bool pred, const std::string& key, const std::string& message) const {
    if (!pred) fail(key, message);
}

const std::string& Params::text(const std::string& key) const { return get(key).value; }

double Params::number(const std::string& key) const {
    std::vector<double> v;
    try {
        v = parse_range(get(key).value);
    } catch (const std::invalid_argument& e) {
        fail(key, e.what());
    }
    if (v.size() != 1) fail(key, "expected a single number");
    return v.front();
}

std::size_t Params::count(const std::string& key) const {
    const double v = number(key);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) fail(key, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

bool Params::flag(const std::string& key) const {
    const std::string& v = get(key).value;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off" || v.empty()) return false;
    fail(key, "expected true or false");
}

std::vector<double> Params::range(const std::string& key) const {
    try {
        return parse_range(get(key).value);
    } catch (const std::invalid_argument& e) {
        fail(key, e.what());
    }
}

}  // namespace critsqueeze::cli
