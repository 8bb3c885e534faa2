#pragma once

#include "cli/config.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bhvqe::cli {

inline constexpr const char *kSweepHeader =
    "run_id,method,ansatz,layout,lattice_n,mass,radius,rho,energy,energy_exact,"
    "temperature,power,iterations,seed,converged";

struct FitOptions {
  std::string in;
  std::string curve = "mass"; // mass | radius
  std::string method = "exact";
  std::optional<double> at;            // radius for mass curves, mass for radius curves
  std::optional<std::uint64_t> seed;   // VQE rows only
};

void cmd_hamiltonian(const RunConfig &cfg, const std::string &format, std::ostream &out);

void cmd_exact(const RunConfig &cfg, std::ostream &out);

/// One summary line per (point, seed). A failing run is reported on `err`
/// and the batch continues; returns the number of failed runs.
int cmd_vqe(const RunConfig &cfg, const std::optional<std::string> &trace, std::ostream &out,
            std::ostream &err);

/// Writes the CSV and `<out>.manifest.json`; both go through a `.partial`
/// file that is renamed once complete.
void cmd_sweep(const RunConfig &cfg, const std::string &out_path, unsigned threads);

FitResult cmd_fit(const FitOptions &opts, std::ostream &out);

/// CSV rows in the frozen column order, header first.
std::vector<std::string> sweep_csv_lines(const RunConfig &cfg, const std::vector<SweepRecord> &recs);

/// Trace file for run `index` of `count`: the path itself for a single run,
/// otherwise `<stem>.p<point>.s<seed><ext>`.
std::string trace_path(const std::string &base, std::size_t count, std::size_t point,
                       std::uint64_t seed);

std::string sha256_file(const std::string &path);

/// Runs fn and maps exceptions to exit codes, printing the message to err.
int guarded(std::ostream &err, const std::function<int()> &fn);

} // namespace bhvqe::cli
