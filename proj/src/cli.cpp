#include "qctl/cli.h"

#include <cmath>
#include <numbers>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "qctl/error_analysis.h"
#include "qctl/io.h"
#include "qctl/scenarios.h"

namespace qctl {

namespace {

const std::set<std::string> kCommands = {"transfer", "sweep", "cyclic", "pulse-table", "audit"};

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw usage_error("field " + key + ": not a number: '" + value + "'");
    }
    if (used != value.size()) {
        throw usage_error("field " + key + ": not a number: '" + value + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v)) {
        throw usage_error("field " + key + ": not an integer: '" + value + "'");
    }
    return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) {
        throw usage_error("field " + key + ": empty list");
    }
    return out;
}

std::string join(const std::vector<double>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out << ',';
        }
        out << format_sci(values[i]);
    }
    return out.str();
}

struct ConfigBuilder {
    RunConfig config;
    std::set<std::string> provided;

    void apply(const std::string& key, const std::string& value) {
        provided.insert(key);
        if (key == "command") {
            config.command = value;
        } else if (key == "model") {
            config.model = value;
        } else if (key == "lambda") {
            config.lambda = parse_double(key, value);
        } else if (key == "lambdas") {
            config.lambdas = parse_list(key, value);
        } else if (key == "epsilon") {
            config.epsilon = parse_double(key, value);
        } else if (key == "eps-min") {
            config.eps_min = parse_double(key, value);
        } else if (key == "eps-max") {
            config.eps_max = parse_double(key, value);
        } else if (key == "eps-step") {
            config.eps_step = parse_double(key, value);
        } else if (key == "loops") {
            config.loops = parse_int(key, value);
        } else if (key == "n-steps") {
            config.n_steps = parse_int(key, value);
        } else if (key == "output") {
            config.output = value;
        } else if (key == "format") {
            config.format = value;
        } else {
            throw usage_error("unknown field: " + key);
        }
    }
};

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

void apply_text(ConfigBuilder& builder, const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = strip(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw usage_error("config line is not 'key = value': " + line);
        }
        builder.apply(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
}

void validate(const ConfigBuilder& builder) {
    const RunConfig& c = builder.config;
    if (!kCommands.count(c.command)) {
        throw usage_error("unknown command: '" + c.command + "'");
    }
    if (c.model != "none" && c.model != "commutative" && c.model != "noncommutative") {
        throw usage_error("field model: must be none, commutative or noncommutative");
    }
    if (std::abs(c.epsilon) > 0.5) {
        throw usage_error("field epsilon: out of range [-0.5, 0.5]");
    }
    if (std::abs(c.eps_min) > 0.5 || std::abs(c.eps_max) > 0.5) {
        throw usage_error("field eps-min/eps-max: out of range [-0.5, 0.5]");
    }
    if (c.eps_step <= 0.0) {
        throw usage_error("field eps-step: must be positive");
    }
    if (c.eps_min > c.eps_max) {
        throw usage_error("field eps-min: exceeds eps-max");
    }
    if (c.lambda < 0.0) {
        throw usage_error("field lambda: must be nonnegative");
    }
    for (double lam : c.lambdas) {
        if (lam < 0.0) {
            throw usage_error("field lambdas: entries must be nonnegative");
        }
    }
    if (c.loops < 1) {
        throw usage_error("field loops: must be >= 1");
    }
    if (c.n_steps != 0 && c.n_steps < 1000) {
        throw usage_error("field n-steps: must be >= 1000");
    }
    if (c.format != "csv" && c.format != "json") {
        throw usage_error("field format: must be csv or json");
    }
    const bool needs_epsilon =
        c.command == "transfer" || c.command == "cyclic" || c.command == "audit";
    if (needs_epsilon && !builder.provided.count("epsilon")) {
        throw usage_error("missing required field: epsilon");
    }
    if (c.command == "pulse-table" && c.format != "csv") {
        throw usage_error("field format: pulse-table emits csv");
    }
    if (c.command == "audit" && c.model == "none") {
        throw usage_error("field model: audit needs commutative or noncommutative");
    }
}

ErrorModel::Kind kind_of(const std::string& model) {
    if (model == "commutative") {
        return ErrorModel::Kind::commutative;
    }
    if (model == "noncommutative") {
        return ErrorModel::Kind::noncommutative;
    }
    return ErrorModel::Kind::none;
}

std::vector<double> epsilon_grid(const RunConfig& c) {
    std::vector<double> grid;
    const int count = static_cast<int>(std::round((c.eps_max - c.eps_min) / c.eps_step));
    if (count > 100000) {
        throw usage_error("field eps-step: grid would exceed 100000 points");
    }
    for (int i = 0; i <= count; ++i) {
        grid.push_back(c.eps_min + i * c.eps_step);
    }
    return grid;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    if (args.empty()) {
        throw usage_error("missing command (transfer, sweep, cyclic, pulse-table or audit)");
    }
    ConfigBuilder builder;
    builder.apply("command", args[0]);

    // collect flags; --config is read first so flags override it
    std::vector<std::pair<std::string, std::string>> flags;
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string arg = args[i];
        if (arg.rfind("--", 0) != 0) {
            throw usage_error("expected a --flag, got: '" + arg + "'");
        }
        arg = arg.substr(2);
        std::string value;
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            value = arg.substr(eq + 1);
            arg = arg.substr(0, eq);
        } else {
            if (i + 1 >= args.size()) {
                throw usage_error("flag --" + arg + " needs a value");
            }
            value = args[++i];
        }
        if (arg == "config") {
            config_path = value;
        } else {
            flags.emplace_back(arg, value);
        }
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw usage_error("cannot read config file: " + config_path);
        }
        std::ostringstream text;
        text << in.rdbuf();
        const std::string command = builder.config.command;
        apply_text(builder, text.str());
        builder.apply("command", command);  // the argv command wins
    }
    for (const auto& [key, value] : flags) {
        builder.apply(key, value);
    }
    if (builder.config.command == "audit" && !builder.provided.count("format")) {
        builder.config.format = "json";
    }
    validate(builder);
    return builder.config;
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out << "command = " << config.command << '\n';
    out << "model = " << config.model << '\n';
    out << "lambda = " << format_sci(config.lambda) << '\n';
    out << "lambdas = " << join(config.lambdas) << '\n';
    out << "epsilon = " << format_sci(config.epsilon) << '\n';
    out << "eps-min = " << format_sci(config.eps_min) << '\n';
    out << "eps-max = " << format_sci(config.eps_max) << '\n';
    out << "eps-step = " << format_sci(config.eps_step) << '\n';
    out << "loops = " << config.loops << '\n';
    out << "n-steps = " << config.n_steps << '\n';
    out << "output = " << config.output << '\n';
    out << "format = " << config.format << '\n';
    return out.str();
}

RunConfig parse_config_text(const std::string& text) {
    ConfigBuilder builder;
    apply_text(builder, text);
    validate(builder);
    return builder.config;
}

int run(const RunConfig& config) {
    try {
        std::string output = config.output;
        if (output.empty()) {
            output = config.command + "." + config.format;
        }
        const ErrorModel model{kind_of(config.model), config.epsilon};

        if (config.command == "transfer") {
            TransferSpec spec;
            spec.lambda = config.lambda;
            spec.model = model;
            spec.n_steps = config.n_steps > 0 ? config.n_steps : default_steps(config.lambda);
            const SimulationResult result = single_transfer(spec);
            write_file(output, config.format == "csv" ? timeseries_csv(result)
                                                      : transfer_json(spec, result));
        } else if (config.command == "sweep") {
            const std::vector<SweepRow> rows =
                epsilon_sweep(config.lambdas, epsilon_grid(config), model.kind, config.n_steps);
            write_file(output, config.format == "csv" ? sweep_csv(rows) : sweep_json(rows));
            bool any_failed = false;
            for (const SweepRow& row : rows) {
                if (!row.ok) {
                    any_failed = true;
                    std::cerr << "sweep point lambda=" << row.lambda
                              << " epsilon=" << row.epsilon << " failed: " << row.message
                              << '\n';
                }
            }
            if (any_failed) {
                return 3;
            }
        } else if (config.command == "cyclic") {
            CyclicSpec spec;
            spec.lambda = config.lambda;
            spec.model = model;
            spec.loops = config.loops;
            spec.n_steps_per_period = config.n_steps > 0 ? config.n_steps : 4800;
            const SimulationResult result = cyclic_transfer(spec);
            write_file(output, config.format == "csv" ? timeseries_csv(result)
                                                      : cyclic_json(spec, result));
        } else if (config.command == "pulse-table") {
            const PathSchedule schedule =
                single_transfer_schedule(config.lambda, std::numbers::pi / 2.0, 1.0);
            const int n = config.n_steps > 0 ? config.n_steps : default_steps(config.lambda);
            std::vector<FieldSet> table;
            table.reserve(n + 1);
            for (int i = 0; i <= n; ++i) {
                table.push_back(
                    synthesize_fields_lambda(schedule, static_cast<double>(i) / n));
            }
            write_file(output, pulse_table_csv(table));
        } else if (config.command == "audit") {
            const int n = config.n_steps > 0 ? config.n_steps : default_steps(config.lambda);
            write_file(output, audit_json(audit(config.lambda, model, n)));
        }
        return 0;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace qctl
