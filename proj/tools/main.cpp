#include "cli/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace bhvqe::cli;

namespace {

struct Flags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "pauli";
  std::size_t shots = 0;
  std::string trace;

  std::string layout, mass_unit, radius_mode, ansatz;
  int dims = 0, reps = 0, max_iter = 0;
  std::size_t lattice_n = 0;
  std::vector<double> masses, radii;
  std::vector<std::string> methods;
  double kappa_t = 0, kappa_p = 0;
  bool inner_half = false, normalize = false;
};

template <class T, class U> void apply(const CLI::App &app, const char *name, T &dst, const U &src) {
  if (app.count(name) > 0)
    dst = src;
}

RunConfig resolve(const CLI::App &app, const Flags &f) {
  RunConfig c = load_config(f.config_path);
  apply(app, "--seed", c.seeds, std::vector<std::uint64_t>{f.seed});
  apply(app, "--shots", c.shots, f.shots);
  apply(app, "--layout", c.layout, f.layout);
  apply(app, "--dims", c.dims, f.dims);
  apply(app, "--lattice-n", c.lattice_n, f.lattice_n);
  apply(app, "--mass", c.mass_grid, f.masses);
  apply(app, "--mass-unit", c.mass_unit, f.mass_unit);
  apply(app, "--radius", c.radius_grid, f.radii);
  apply(app, "--radius-mode", c.radius_mode, f.radius_mode);
  apply(app, "--methods", c.methods, f.methods);
  apply(app, "--ansatz", c.ansatz, f.ansatz);
  apply(app, "--reps", c.reps, f.reps);
  apply(app, "--max-iter", c.spsa.max_iter, f.max_iter);
  apply(app, "--kappa-t", c.kappa_t, f.kappa_t);
  apply(app, "--kappa-p", c.kappa_p, f.kappa_p);
  apply(app, "--inner-half", c.inner_half, f.inner_half);
  apply(app, "--normalize-prefactor", c.normalize_prefactor, f.normalize);
  c.validate();
  return c;
}

/// Text output to --out when given, else stdout.
template <class Fn> int with_output(const std::string &path, Fn &&fn) {
  if (path.empty())
    return fn(std::cout);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw IoError("cannot write '" + path + "'");
  const int rc = fn(f);
  if (!f.flush())
    throw IoError("write to '" + path + "' failed");
  return rc;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Black-hole Hamiltonian ground states by exact diagonalization and VQE"};
  app.set_version_flag("--version", std::string(bhvqe::kVersion));
  app.require_subcommand(1);
  Flags f;

  app.add_option("--config", f.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed, "Base seed (replaces the seeds list)");
  app.add_option("--out", f.out, "Output path");
  app.add_option("--format", f.format, "Hamiltonian output format")
      ->check(CLI::IsMember({"pauli", "matrix"}));
  app.add_option("--shots", f.shots, "Measurement shots per expectation (0 = exact)");
  app.add_option("--trace", f.trace, "Energy trace CSV for vqe runs");

  app.add_option("--layout", f.layout, "paper-chain or disjoint");
  app.add_option("--dims", f.dims, "Spatial dimensions for the disjoint layout");
  app.add_option("--lattice-n", f.lattice_n, "Grid points per dimension");
  app.add_option("--mass", f.masses, "Mass grid");
  app.add_option("--mass-unit", f.mass_unit, "planck or solar");
  app.add_option("--radius", f.radii, "Radius grid");
  app.add_option("--radius-mode", f.radius_mode, "absolute or gm-multiple");
  app.add_option("--methods", f.methods, "Sweep methods: exact, vqe");
  app.add_option("--ansatz", f.ansatz, "ansatz1, ansatz2 or ansatz3");
  app.add_option("--reps", f.reps, "Ansatz repetitions");
  app.add_option("--max-iter", f.max_iter, "SPSA iteration cap");
  app.add_option("--kappa-t", f.kappa_t, "Temperature constant");
  app.add_option("--kappa-p", f.kappa_p, "Power constant");
  app.add_flag("--inner-half", f.inner_half, "Halve the inner-qubit momentum blocks");
  app.add_flag("--normalize-prefactor", f.normalize, "Use prefactor 1");

  auto *ham = app.add_subcommand("hamiltonian", "Print the Pauli decomposition or dense matrix");
  auto *exact = app.add_subcommand("exact", "Exact ground energy per grid point");
  auto *vqe = app.add_subcommand("vqe", "VQE per grid point and seed");
  auto *sweep = app.add_subcommand("sweep", "Grid sweep to CSV with a manifest");
  auto *fit = app.add_subcommand("fit", "Fit E = a(b + c x)^(1/4) to a sweep CSV");

  FitOptions fo;
  fit->add_option("--in", fo.in, "Sweep CSV")->required();
  fit->add_option("--curve", fo.curve, "mass or radius")->check(CLI::IsMember({"mass", "radius"}));
  fit->add_option("--method", fo.method, "Rows to fit: exact or vqe");
  fit->add_option("--at", "Held-fixed radius (mass curve) or mass (radius curve)");
  fit->add_option("--row-seed", "Only VQE rows with this seed");

  for (auto *sub : {ham, exact, vqe, sweep, fit})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  return guarded(std::cerr, [&]() -> int {
    if (fit->parsed()) {
      if (auto *o = fit->get_option("--at"); o->count())
        fo.at = o->as<double>();
      if (auto *o = fit->get_option("--row-seed"); o->count())
        fo.seed = o->as<std::uint64_t>();
      return with_output(f.out, [&](std::ostream &os) {
        cmd_fit(fo, os);
        return 0;
      });
    }

    const RunConfig cfg = resolve(app, f);
    if (ham->parsed())
      return with_output(f.out, [&](std::ostream &os) {
        cmd_hamiltonian(cfg, f.format, os);
        return 0;
      });
    if (exact->parsed())
      return with_output(f.out, [&](std::ostream &os) {
        cmd_exact(cfg, os);
        return 0;
      });
    if (vqe->parsed()) {
      const std::optional<std::string> trace =
          f.trace.empty() ? std::nullopt : std::optional<std::string>(f.trace);
      return with_output(f.out, [&](std::ostream &os) {
        return cmd_vqe(cfg, trace, os, std::cerr) > 0 ? kExitNumerical : kExitOk;
      });
    }
    cmd_sweep(cfg, f.out, thread_budget());
    return kExitOk;
  });
}
