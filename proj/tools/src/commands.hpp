#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace critsqueeze::cli {

struct RunContext {
    double tol = 1e-10;
    unsigned workers = 1;
};

struct ParamSpec {
    std::string key;  ///< also the flag name, with '_' shown as '-'
    std::string default_value;
    std::string help;
    bool is_flag = false;
};

struct CommandSpec {
    std::string name;
    std::string help;
    bool hidden = false;
    std::vector<ParamSpec> params;
    std::function<Table(const Params&, const RunContext&)> run;
};

const std::vector<CommandSpec>& command_specs();

}  // namespace critsqueeze::cli
