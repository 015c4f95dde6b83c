#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "critsqueeze/errors.hpp"
#include "table.hpp"

#ifndef CRITSQUEEZE_VERSION
#define CRITSQUEEZE_VERSION "unknown"
#endif

namespace critsqueeze::cli {

namespace {

std::string flag_name(std::string key) {
    for (char& c : key)
        if (c == '_') c = '-';
    return "--" + key;
}

// Command-line values for one subcommand, before resolution.
struct Raw {
    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> options;
};

struct Common {
    std::string config;
    std::string out = "-";
    std::string format = "csv";
    std::string workers = "1";
    std::string tol = "1e-10";
    std::string seed = "0";
};

const char* const kCommonKeys[] = {"out", "format", "workers", "tol", "seed"};

std::string config_hash(const std::string& command, const Params& params, double tol, unsigned long long seed) {
    std::ostringstream canon;
    canon << command << '\n';
    for (const auto& [k, v] : params.all()) canon << k << '=' << v.value << '\n';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", tol);
    canon << "tol=" << buf << "\nseed=" << seed << '\n';
    std::snprintf(buf, sizeof buf, "%016zx", std::hash<std::string>{}(canon.str()));
    return buf;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Critical squeezing cycles: dynamics, work statistics, coherence and scaling", "critsq"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.set_version_flag("--version", CRITSQUEEZE_VERSION);

    Common common;
    std::map<std::string, CLI::Option*> common_opts;
    common_opts["config"] = app.add_option("--config", common.config, "key = value file; flags win over it");
    common_opts["out"] = app.add_option("--out", common.out, "output path, - for stdout");
    common_opts["format"] = app.add_option("--format", common.format, "csv | json");
    common_opts["workers"] = app.add_option("--workers", common.workers, "worker threads");
    common_opts["tol"] = app.add_option("--tol", common.tol, "integrator relative tolerance");
    common_opts["seed"] = app.add_option("--seed", common.seed, "seed recorded in the output metadata");

    const auto& specs = command_specs();
    std::vector<Raw> raws(specs.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& spec = specs[i];
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        if (spec.hidden) sub->group("");
        for (const auto& ps : spec.params) {
            if (ps.is_flag) {
                raws[i].options[ps.key] = sub->add_flag(flag_name(ps.key), raws[i].flags[ps.key], ps.help);
            } else {
                raws[i].options[ps.key] =
                    sub->add_option(flag_name(ps.key), raws[i].text[ps.key], ps.help + " [" + ps.default_value + "]");
            }
        }
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    std::size_t which = 0;
    while (which < subs.size() && !subs[which]->parsed()) ++which;
    const CommandSpec& spec = specs[which];
    const Raw& raw = raws[which];

    try {
        std::map<std::string, ConfigEntry> file;
        if (!common.config.empty()) file = read_config_file(common.config);
        for (const auto& [key, entry] : file) {
            bool known = false;
            for (const auto& ps : spec.params) known = known || ps.key == key;
            for (const char* k : kCommonKeys) known = known || key == k;
            if (!known) {
                throw ConfigError(common.config + ":" + std::to_string(entry.line) + ": unknown key '" + key +
                                  "' for command '" + spec.name + "'");
            }
        }
        auto resolve = [&](Params& into, const std::string& key, const std::string& cli_value, bool on_cli,
                           const std::string& fallback) {
            if (on_cli) {
                into.set(key, cli_value, "flag " + flag_name(key));
            } else if (const auto it = file.find(key); it != file.end()) {
                into.set(key, it->second.value, common.config + " line " + std::to_string(it->second.line));
            } else {
                into.set(key, fallback, "default");
            }
        };

        Params params;
        for (const auto& ps : spec.params) {
            const bool on_cli = raw.options.at(ps.key)->count() > 0;
            const std::string value = ps.is_flag ? (raw.flags.at(ps.key) ? "true" : "false") : raw.text.at(ps.key);
            resolve(params, ps.key, value, on_cli, ps.default_value);
        }
        const Common defaults;
        Params shared;
        resolve(shared, "out", common.out, common_opts["out"]->count() > 0, defaults.out);
        resolve(shared, "format", common.format, common_opts["format"]->count() > 0, defaults.format);
        resolve(shared, "workers", common.workers, common_opts["workers"]->count() > 0, defaults.workers);
        resolve(shared, "tol", common.tol, common_opts["tol"]->count() > 0, defaults.tol);
        resolve(shared, "seed", common.seed, common_opts["seed"]->count() > 0, defaults.seed);

        const std::string format = shared.text("format");
        shared.require(format == "csv" || format == "json", "format", "expected csv or json");
        const std::size_t workers = shared.count("workers");
        shared.require(workers >= 1 && workers <= 1024, "workers", "must lie in [1, 1024]");
        const double tol = shared.number("tol");
        shared.require(tol > 0.0 && tol <= 1e-3, "tol", "must lie in (0, 1e-3]");
        const auto seed = static_cast<unsigned long long>(shared.count("seed"));

        RunContext ctx;
        ctx.tol = tol;
        ctx.workers = static_cast<unsigned>(workers);
        const Table table = spec.run(params, ctx);

        OutputMeta meta;
        meta.version = CRITSQUEEZE_VERSION;
        meta.command = spec.name;
        meta.config_hash = config_hash(spec.name, params, tol, seed);
        meta.tol = tol;
        meta.seed = seed;
        for (const auto& [k, v] : params.all()) meta.params.emplace_back(k, v.value);

        std::ostringstream buffer;
        if (format == "csv") {
            write_csv(buffer, meta, table);
        } else {
            write_json(buffer, meta, table);
        }
        const std::string path = shared.text("out");
        if (path.empty() || path == "-") {
            out << buffer.str();
        } else {
            std::ofstream file_out(path, std::ios::binary);
            if (!file_out) throw ConfigError("cannot open output file '" + path + "'");
            file_out << buffer.str();
            if (!file_out) throw ConfigError("failed writing '" + path + "'");
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace critsqueeze::cli
