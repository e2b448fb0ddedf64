#pragma once

#include <string>

#include "kdv/kernel.hpp"
#include "kdv/sim.hpp"

namespace kdv {

/// Output locations derived from a single prefix. A prefix ending in '/'
/// is treated as a directory (created on demand). Files are written to a
/// temporary sibling and renamed into place.
struct RunOutputs {
    std::string norms_path;
    std::string states_path;
    std::string kernel_dir;
    std::string report_path;

    static RunOutputs from_prefix(const std::string& prefix);
};

/// norms.csv: header t,l2_u,l2_uhat,l2_err,h3_err,U,V and one row per
/// recorded step, 17 significant digits, '\n' line endings. Refuses
/// non-finite values.
void write_norms_csv(const DecayReport& report, const std::string& path);

/// states.csv: header t,x,u,uhat,uerr; requires a report produced with
/// record_states enabled.
void write_states_csv(const DecayReport& report, const std::string& path);

/// One CSV per kernel polynomial (k, p, P1, P2, Psi1, Psi2) with columns
/// m,n,coeff; univariate polynomials use n = 0.
void write_kernel_csvs(const KernelSet& ks, const std::string& dir);

/// Machine-readable summary; format_version 1.
void write_report_json(const DecayReport& report, const std::string& path);

}  // namespace kdv
