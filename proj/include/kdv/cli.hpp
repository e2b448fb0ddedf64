#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kdv/outputs.hpp"
#include "kdv/sim.hpp"

namespace kdv {

/// Raised when --help is requested; what() carries the usage text.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliOptions {
    SimConfig config;
    RunOutputs outputs;
    std::string out_prefix = "out/";
    bool dump_kernels = false;
    bool dump_states = false;
};

/// Parse command line flags into a run configuration. Throws
/// std::invalid_argument on unknown flags, malformed values, or
/// out-of-range parameters.
CliOptions parse_cli(const std::vector<std::string>& args);

}  // namespace kdv
