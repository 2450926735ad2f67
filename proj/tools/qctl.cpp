#include <iostream>
#include <string>
#include <vector>

#include "qctl/cli.h"

namespace {

constexpr const char* kUsage =
    "usage: qctl <command> [--flag value ...]\n"
    "\n"
    "commands:\n"
    "  transfer     one population transfer; --lambda --epsilon --model [--n-steps]\n"
    "  sweep        fidelity vs error grid; --model [--lambdas] [--eps-min --eps-max --eps-step]\n"
    "  cyclic       repeated transfer loops; --lambda --epsilon --model [--loops] [--n-steps]\n"
    "  pulse-table  control-field time series; --lambda [--n-steps]\n"
    "  audit        error-rotation diagnostics; --lambda --epsilon --model\n"
    "\n"
    "common flags: --output PATH, --format csv|json, --config FILE (flags override the file)\n";

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cerr << kUsage;
        return args.empty() ? 1 : 0;
    }
    try {
        return qctl::run(qctl::parse_config(args));
    } catch (const qctl::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << kUsage;
        return 1;
    }
}
