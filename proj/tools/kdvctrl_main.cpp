#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "kdv/cli.hpp"
#include "kdv/outputs.hpp"
#include "kdv/sim.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const kdv::CliOptions opts = kdv::parse_cli(args);
        const kdv::DecayReport report = kdv::run(opts.config);

        kdv::write_norms_csv(report, opts.outputs.norms_path);
        kdv::write_report_json(report, opts.outputs.report_path);
        if (opts.dump_states) kdv::write_states_csv(report, opts.outputs.states_path);
        if (opts.dump_kernels && opts.config.mode != kdv::SimMode::uncontrolled) {
            const kdv::KernelSet ks =
                kdv::make_kernel_set(opts.config.lambda, opts.config.lambda_tilde,
                                     opts.config.length, opts.config.n_iter);
            kdv::write_kernel_csvs(ks, opts.outputs.kernel_dir);
        }

        std::printf("mode               %s\n", kdv::to_string(opts.config.mode));
        std::printf("steps              %ld\n",
                    std::lround(opts.config.t_final / opts.config.dt));
        if (opts.config.mode != kdv::SimMode::uncontrolled) {
            const kdv::DecayConstants& dc = report.constants;
            std::printf("alpha, kappa       %.6g, %.6g\n", dc.alpha, dc.kappa);
            std::printf("beta, mu           %.6g, %.6g\n", dc.beta, dc.mu);
            std::printf("epsilon            %.6g\n", dc.epsilon);
            if (!dc.two_controller_ordered())
                std::printf("warning: decay constants not ordered (alpha > kappa > 0 fails); "
                            "the theory's smallness conditions do not hold here\n");
            std::printf("picard residual    %.3g\n", report.picard_residual);
            std::printf("succession resid   %.3g\n", report.succession_residual);
        }
        std::printf("fitted rates       u %.6g, err %.6g, uhat %.6g\n", report.fitted_rate_u,
                    report.fitted_rate_err, report.fitted_rate_uhat);
        std::printf("wrote              %s, %s\n", opts.outputs.norms_path.c_str(),
                    opts.outputs.report_path.c_str());
        std::printf("runtime            %.2f s\n", report.runtime_seconds);
        return 0;
    } catch (const kdv::HelpRequested& h) {
        std::printf("%s\n", h.what());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
