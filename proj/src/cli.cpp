#include "kdv/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <stdexcept>

namespace kdv {

namespace {

std::vector<std::string> reversed(const std::vector<std::string>& args) {
    // CLI11 consumes arguments in reverse order.
    return {args.rbegin(), args.rend()};
}

}  // namespace

CliOptions parse_cli(const std::vector<std::string>& args) {
    CliOptions opts;
    SimConfig& c = opts.config;

    CLI::App app{"Boundary-feedback stabilization of the linearized KdV equation"};
    app.name("kdvctrl");

    app.add_option("--length", c.length, "Domain length L")->capture_default_str();
    auto* lam = app.add_option("--lambda", c.lambda, "Controller kernel parameter lambda")
                    ->capture_default_str();
    auto* lamt = app.add_option("--lambda-tilde", c.lambda_tilde,
                                "Observer kernel parameter (defaults to --lambda)");
    std::string epsilon = "auto";
    app.add_option("--epsilon", epsilon, "Young-inequality parameter, or 'auto'")
        ->capture_default_str();
    app.add_option("--grid-points", c.grid_points, "Number of grid intervals J")
        ->capture_default_str();
    app.add_option("--dt", c.dt, "Time step")->capture_default_str();
    app.add_option("--t-final", c.t_final, "Simulation horizon")->capture_default_str();
    app.add_option("--n-iter", c.n_iter, "Kernel fixed-point iterations")
        ->capture_default_str();
    app.add_option("--m-iter", c.m_iter, "Transform-inverse succession iterations")
        ->capture_default_str();
    std::string mode = "two-controller";
    app.add_option("--mode", mode, "uncontrolled | two-controller | single-controller")
        ->capture_default_str()
        ->check(CLI::IsMember({"uncontrolled", "two-controller", "single-controller"}));
    app.add_option("--u0", c.u0, "Plant initial datum: one-minus-cos | zero | file:<path>")
        ->capture_default_str();
    app.add_option("--uhat0", c.uhat0, "Observer initial datum")->capture_default_str();
    app.add_option("--record-every", c.record_every, "Record every k-th step")
        ->capture_default_str();
    app.add_option("--out", opts.out_prefix,
                   "Output prefix; a trailing '/' makes it a directory")
        ->capture_default_str();
    app.add_flag("--dump-kernels", opts.dump_kernels, "Write kernel coefficient tables");
    app.add_flag("--dump-states", opts.dump_states, "Write full states to states.csv");

    try {
        auto rargs = reversed(args);
        app.parse(rargs);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    if (lam->count() > 0 && lamt->count() == 0) c.lambda_tilde = c.lambda;
    c.mode = mode_from_string(mode);
    if (epsilon == "auto") {
        c.epsilon.reset();
    } else {
        try {
            size_t pos = 0;
            const double v = std::stod(epsilon, &pos);
            if (pos != epsilon.size()) throw std::invalid_argument("trailing characters");
            c.epsilon = v;
        } catch (const std::exception&) {
            throw std::invalid_argument("--epsilon expects a number or 'auto', got '" +
                                        epsilon + "'");
        }
    }
    c.record_states = opts.dump_states;

    validate(c);
    opts.outputs = RunOutputs::from_prefix(opts.out_prefix);
    return opts;
}

}  // namespace kdv
