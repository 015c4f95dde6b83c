#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace critsqueeze::cli {

/// Bad configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfigEntry {
    std::string value;
    std::size_t line = 0;
};

/// Plain-text key-value file: one "key = value" per line, '#' starts a
/// comment, blank lines ignored. Dashes in keys are read as underscores.
std::map<std::string, ConfigEntry> read_config_file(const std::string& path);

/// One resolved parameter and where its value came from.
struct Param {
    std::string value;
    std::string source;  ///< "default", "flag" or "config line N"
};

/// Typed access with errors that name the field and its source.
class Params {
public:
    void set(const std::string& key, std::string value, std::string source);
    bool has(const std::string& key) const;
    /// True when the value is non-empty.
    bool given(const std::string& key) const;

    const std::string& text(const std::string& key) const;
    double number(const std::string& key) const;
    std::size_t count(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::vector<double> range(const std::string& key) const;
    /// Fails with field context when pred is false.
    void require(bool pred, const std::string& key, const std::string& message) const;

    const std::map<std::string, Param>& all() const noexcept { return values_; }

private:
    const Param& get(const std::string& key) const;
    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

    std::map<std::string, Param> values_;
};

}  // namespace critsqueeze::cli
