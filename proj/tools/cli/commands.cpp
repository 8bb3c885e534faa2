#include "cli/commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace bhvqe::cli {

namespace fs = std::filesystem;

namespace {

struct GridPoint {
  std::size_t index;
  double mass;
  double radius; // absolute
};

std::vector<GridPoint> grid_points(const RunConfig &cfg) {
  const auto masses = cfg.planck_masses();
  std::vector<GridPoint> out;
  for (std::size_t mi = 0; mi < masses.size(); ++mi)
    for (std::size_t ri = 0; ri < cfg.radius_grid.size(); ++ri) {
      const double r = cfg.radius_mode == "gm-multiple" ? cfg.radius_grid[ri] * masses[mi]
                                                        : cfg.radius_grid[ri];
      out.push_back({out.size(), masses[mi], r});
    }
  return out;
}

PauliHamiltonian hamiltonian_at(const RunConfig &cfg, const GridPoint &p) {
  return assemble({p.mass, p.radius}, cfg.hamiltonian_layout(), LatticeSpec(cfg.lattice_n),
                  cfg.assemble_options());
}

std::string fmt(const char *spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string g17(double v) { return fmt("%.17g", v); }
std::string g12(double v) { return fmt("%.12g", v); }

std::string matrix_entry(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

void write_lines(const std::string &path, const std::vector<std::string> &lines) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw IoError("cannot write '" + path + "'");
  for (const auto &l : lines)
    f << l << '\n';
  f.flush();
  if (!f)
    throw IoError("write to '" + path + "' failed");
}

void commit(const std::string &partial, const std::string &final_path) {
  std::error_code ec;
  fs::rename(partial, final_path, ec);
  if (ec)
    throw IoError("cannot rename '" + partial + "' to '" + final_path + "': " + ec.message());
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

double parse_number(const std::string &s, std::size_t lineno) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size())
      return v;
  } catch (const std::exception &) {
  }
  throw ConfigError("line " + std::to_string(lineno) + ": '" + s + "' is not a number");
}

bool same_value(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

} // namespace

void cmd_hamiltonian(const RunConfig &cfg, const std::string &format, std::ostream &out) {
  if (format != "pauli" && format != "matrix")
    throw ConfigError("--format must be 'pauli' or 'matrix'");
  const auto points = grid_points(cfg);
  for (const auto &p : points) {
    const PauliHamiltonian h = hamiltonian_at(cfg, p);
    if (points.size() > 1)
      out << "# mass=" << g12(p.mass) << " radius=" << g12(p.radius)
          << " rho=" << g12(BlackHoleParams{p.mass, p.radius}.rho()) << '\n';
    if (format == "pauli") {
      write_pauli_text(out, h);
      continue;
    }
    const ComplexMatrix m = to_matrix(h);
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t j = 0; j < m.dim(); ++j)
        out << (j ? " " : "") << matrix_entry(m(i, j));
      out << '\n';
    }
  }
}

void cmd_exact(const RunConfig &cfg, std::ostream &out) {
  for (const auto &p : grid_points(cfg)) {
    const double e = exact_ground_energy(hamiltonian_at(cfg, p));
    out << g12(p.mass) << ' ' << g12(p.radius) << ' '
        << g12(BlackHoleParams{p.mass, p.radius}.rho()) << ' ' << fmt("%.6f", e) << '\n';
  }
}

std::string trace_path(const std::string &base, std::size_t count, std::size_t point,
                       std::uint64_t seed) {
  if (count == 1)
    return base;
  const fs::path p(base);
  fs::path stem = p;
  stem.replace_extension();
  return stem.string() + ".p" + std::to_string(point) + ".s" + std::to_string(seed) +
         p.extension().string();
}

int cmd_vqe(const RunConfig &cfg, const std::optional<std::string> &trace, std::ostream &out,
            std::ostream &err) {
  const auto points = grid_points(cfg);
  const AnsatzKind kind = cfg.ansatz_kind();
  const std::size_t runs = points.size() * cfg.seeds.size();
  int failures = 0;
  for (const auto &p : points) {
    const BlackHoleParams params{p.mass, p.radius};
    for (std::uint64_t base : cfg.seeds) {
      try {
        const PauliHamiltonian h = hamiltonian_at(cfg, p);
        const double exact = exact_ground_energy(h);
        SpsaConfig spsa = cfg.spsa;
        spsa.seed = point_seed(base, p.index);
        const VqeResult res = vqe_run(h, kind, spsa, cfg.shots);
        out << g12(p.mass) << ' ' << g12(p.radius) << ' ' << g12(params.rho()) << ' ' << base
            << ' ' << fmt("%.6f", res.best_energy) << ' ' << fmt("%.6f", exact) << ' '
            << res.iterations_used << ' ' << (res.converged ? 1 : 0) << '\n';
        if (trace) {
          std::vector<std::string> lines;
          for (std::size_t k = 0; k < res.trace.size(); ++k)
            lines.push_back(std::to_string(k + 1) + "," + g17(res.trace[k]));
          write_lines(trace_path(*trace, runs, p.index, base), lines);
        }
      } catch (const Error &e) {
        ++failures;
        err << "vqe failed at mass=" << g12(p.mass) << " radius=" << g12(p.radius)
            << " seed=" << base << ": " << e.what() << '\n';
      }
    }
  }
  return failures;
}

std::vector<std::string> sweep_csv_lines(const RunConfig &cfg,
                                         const std::vector<SweepRecord> &recs) {
  const bool want_exact =
      std::find(cfg.methods.begin(), cfg.methods.end(), "exact") != cfg.methods.end();
  const std::string ansatz(ansatz_name(cfg.ansatz_kind().family));
  std::vector<std::string> lines{kSweepHeader};
  std::size_t run_id = 0;
  for (const auto &r : recs) {
    const bool vqe = r.method == SweepMethod::Vqe;
    if (!vqe && !want_exact)
      continue;
    std::string row = std::to_string(run_id++);
    row += vqe ? ",vqe," : ",exact,";
    row += vqe ? ansatz : "";
    row += "," + cfg.layout + "," + std::to_string(cfg.lattice_n);
    for (double v : {r.mass, r.radius, r.rho, r.energy(), r.e_exact, r.temperature, r.power})
      row += "," + g17(v);
    row += "," + std::to_string(r.iterations);
    row += vqe ? "," + std::to_string(r.seed) : ",";
    row += r.converged ? ",1" : ",0";
    lines.push_back(std::move(row));
  }
  return lines;
}

std::string sha256_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw IoError("cannot read '" + path + "'");
  EVP_MD_CTX *ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (f.read(buf, sizeof buf) || f.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(f.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char digits[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < len; ++i) {
    hex += digits[md[i] >> 4];
    hex += digits[md[i] & 0xf];
  }
  return hex;
}

void cmd_sweep(const RunConfig &cfg, const std::string &out_path, unsigned threads) {
  if (out_path.empty())
    throw ConfigError("sweep needs --out PATH");
  SweepConfig sc = cfg.sweep_config();
  sc.threads = threads;
  const std::vector<SweepRecord> recs = sweep(sc);

  const std::string partial = out_path + ".partial";
  write_lines(partial, sweep_csv_lines(cfg, recs));
  commit(partial, out_path);

  const nlohmann::json manifest = {
      {"config", config_to_json(cfg)},
      {"version", kVersion},
      {"timestamp_utc", utc_timestamp()},
      {"seeds", cfg.seeds},
      {"outputs", {{{"path", out_path}, {"sha256", sha256_file(out_path)}}}},
  };
  const std::string manifest_path = out_path + ".manifest.json";
  write_lines(manifest_path + ".partial", {manifest.dump(2)});
  commit(manifest_path + ".partial", manifest_path);
}

FitResult cmd_fit(const FitOptions &opts, std::ostream &out) {
  if (opts.curve != "mass" && opts.curve != "radius")
    throw ConfigError("--curve must be 'mass' or 'radius'");
  if (opts.method != "exact" && opts.method != "vqe")
    throw ConfigError("--method must be 'exact' or 'vqe'");
  std::ifstream f(opts.in);
  if (!f)
    throw IoError("cannot open '" + opts.in + "'");

  std::string line;
  if (!std::getline(f, line) || line != kSweepHeader)
    throw ConfigError("'" + opts.in + "' does not start with the sweep CSV header");

  // Rows grouped by the held-fixed coordinate (radius for mass curves).
  std::map<double, std::vector<std::pair<double, double>>> groups;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty())
      continue;
    const auto cols = split_csv(line);
    if (cols.size() != 15)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 15 columns");
    if (cols[1] != opts.method)
      continue;
    if (opts.seed && cols[13] != std::to_string(*opts.seed))
      continue;
    const double mass = parse_number(cols[5], lineno);
    const double radius = parse_number(cols[6], lineno);
    const double energy = parse_number(cols[8], lineno);
    const double fixed = opts.curve == "mass" ? radius : mass;
    const double x = opts.curve == "mass" ? mass : radius;
    if (opts.at && !same_value(fixed, *opts.at))
      continue;
    groups[fixed].emplace_back(x, energy);
  }

  const char *held = opts.curve == "mass" ? "radius" : "mass";
  if (groups.empty())
    throw Error(ErrorKind::DegenerateData,
                "no '" + opts.method + "' rows selected; a fit needs at least 3 points");
  if (groups.size() > 1)
    throw ConfigError(std::string("rows span ") + std::to_string(groups.size()) + " " + held +
                      " values; select one with --at");

  const auto &pts = groups.begin()->second;
  if (pts.size() < 3)
    throw Error(ErrorKind::DegenerateData,
                "a fit needs at least 3 points at distinct " + std::string(opts.curve) +
                    " values, got " + std::to_string(pts.size()));
  const FitResult fit = opts.curve == "mass" ? fit_energy_vs_mass(pts) : fit_energy_vs_radius(pts);
  out << "a=" << fmt("%.9g", fit.a) << " b=1 c=" << fmt("%.9g", fit.c)
      << " rms=" << fmt("%.9g", fit.rms_residual) << '\n';
  return fit;
}

int guarded(std::ostream &err, const std::function<int()> &fn) {
  try {
    return fn();
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

} // namespace bhvqe::cli
