#include "kdv/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace kdv {

namespace {

std::string fmt17(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("refusing to write non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    try {
        const fs::path target(path);
        if (target.has_parent_path()) fs::create_directories(target.parent_path());
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
            out << content;
            if (!out) throw std::runtime_error("write failed for " + tmp.string());
        }
        fs::rename(tmp, target);
    } catch (const fs::filesystem_error& e) {
        throw std::runtime_error("while writing " + path + ": " + e.what());
    }
}

void append_poly_rows(std::string& csv, const Poly1& p) {
    for (int m = 0; m <= p.degree(); ++m) {
        const double c = p.coeff(m);
        if (c == 0.0) continue;
        csv += std::to_string(m) + ",0," + fmt17(c) + "\n";
    }
}

void append_poly_rows(std::string& csv, const BiPoly& p) {
    for (int m = 0; m <= p.deg1(); ++m)
        for (int n = 0; n <= p.deg2(); ++n) {
            const double c = p.coeff(m, n);
            if (c == 0.0) continue;
            csv += std::to_string(m) + "," + std::to_string(n) + "," + fmt17(c) + "\n";
        }
}

template <typename Poly>
void write_kernel_csv(const std::string& dir, const char* name, const Poly& p) {
    std::string csv = "m,n,coeff\n";
    append_poly_rows(csv, p);
    write_atomic((std::filesystem::path(dir) / name).string(), csv);
}

}  // namespace

RunOutputs RunOutputs::from_prefix(const std::string& prefix) {
    RunOutputs o;
    o.norms_path = prefix + "norms.csv";
    o.states_path = prefix + "states.csv";
    o.report_path = prefix + "report.json";
    o.kernel_dir = prefix + "kernels";
    return o;
}

void write_norms_csv(const DecayReport& report, const std::string& path) {
    std::string csv = "t,l2_u,l2_uhat,l2_err,h3_err,U,V\n";
    for (size_t i = 0; i < report.times.size(); ++i) {
        csv += fmt17(report.times[i]) + "," + fmt17(report.l2_u[i]) + "," +
               fmt17(report.l2_uhat[i]) + "," + fmt17(report.l2_err[i]) + "," +
               fmt17(report.h3_err[i]) + "," + fmt17(report.u_signal[i]) + "," +
               fmt17(report.v_signal[i]) + "\n";
    }
    write_atomic(path, csv);
}

void write_states_csv(const DecayReport& report, const std::string& path) {
    if (report.states.empty() && !report.times.empty())
        throw std::runtime_error("states.csv requested but the run did not record states");
    const Grid grid(report.config.length, report.config.grid_points);
    std::string csv = "t,x,u,uhat,uerr\n";
    for (const StateSnapshot& snap : report.states) {
        for (int j = 0; j < grid.points(); ++j) {
            csv += fmt17(snap.time) + "," + fmt17(grid.node(j)) + "," + fmt17(snap.u[j]) +
                   "," + fmt17(snap.uhat[j]) + "," + fmt17(snap.uerr[j]) + "\n";
        }
    }
    write_atomic(path, csv);
}

void write_kernel_csvs(const KernelSet& ks, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_kernel_csv(dir, "k.csv", ks.k);
    write_kernel_csv(dir, "p.csv", ks.p);
    write_kernel_csv(dir, "P1.csv", ks.gain_p1);
    write_kernel_csv(dir, "P2.csv", ks.gain_p2);
    write_kernel_csv(dir, "Psi1.csv", ks.psi1);
    write_kernel_csv(dir, "Psi2.csv", ks.psi2);
}

void write_report_json(const DecayReport& report, const std::string& path) {
    nlohmann::json j;
    j["format_version"] = 1;
    const SimConfig& c = report.config;
    j["config"] = {
        {"length", c.length},
        {"lambda", c.lambda},
        {"lambda_tilde", c.lambda_tilde},
        {"epsilon", c.epsilon ? nlohmann::json(*c.epsilon) : nlohmann::json("auto")},
        {"grid_points", c.grid_points},
        {"dt", c.dt},
        {"t_final", c.t_final},
        {"n_iter", c.n_iter},
        {"m_iter", c.m_iter},
        {"mode", to_string(c.mode)},
        {"u0", c.u0},
        {"uhat0", c.uhat0},
        {"record_every", c.record_every},
    };
    j["constants"] = {
        {"alpha", report.constants.alpha},   {"kappa", report.constants.kappa},
        {"beta", report.constants.beta},     {"mu", report.constants.mu},
        {"epsilon", report.constants.epsilon},
    };
    j["fitted_rates"] = {
        {"u", report.fitted_rate_u},
        {"err", report.fitted_rate_err},
        {"uhat", report.fitted_rate_uhat},
    };
    j["picard_residual"] = report.picard_residual;
    j["succession_residual"] = report.succession_residual;
    j["runtime_seconds"] = report.runtime_seconds;
    write_atomic(path, j.dump(2) + "\n");
}

}  // namespace kdv
