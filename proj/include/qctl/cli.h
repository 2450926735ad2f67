#pragma once

#include <string>
#include <vector>

#include "qctl/types.h"

namespace qctl {

// Fully resolved invocation of one batch command. Defaults mirror the
// figure-reproduction grids.
struct RunConfig {
    std::string command;  // transfer | sweep | cyclic | pulse-table | audit
    std::string model = "commutative";
    std::vector<double> lambdas = {0.0, 3.0, 5.0, 10.0};
    double lambda = 5.0;
    double epsilon = 0.0;
    double eps_min = -0.2;
    double eps_max = 0.2;
    double eps_step = 0.01;
    int loops = 2;
    int n_steps = 0;  // 0 = choose per lambda
    std::string output;
    std::string format = "csv";

    bool operator==(const RunConfig&) const = default;
};

// argv-style parsing: first token is the command, then --key value flags.
// A --config FILE is read first (flat key = value lines, '#' comments) and
// command-line flags override it. Throws usage_error naming the bad field.
RunConfig parse_config(const std::vector<std::string>& args);

// Round-trippable key = value form of a config.
std::string serialize_config(const RunConfig& config);
RunConfig parse_config_text(const std::string& text);

// Executes the command and writes its output files.
// Returns 0 on success; I/O problems exit 2, scenario failures exit 3.
int run(const RunConfig& config);

}  // namespace qctl
