#include "cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

namespace bhvqe::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "layout",      "dims",         "lattice_n",   "mass_grid",           "mass_unit",
    "solar_mass_planck",           "radius_grid", "radius_mode",         "methods",
    "ansatz",      "reps",         "spsa",        "shots",               "seeds",
    "inner_half",  "normalize_prefactor",         "kappa_t",             "kappa_p",
};

const std::set<std::string> kSpsaKeys = {"a",           "c",        "alpha", "gamma",
                                         "stability_a", "max_iter", "tol",   "window"};

template <class T> void read(const json &j, const char *key, T &out) {
  if (!j.contains(key))
    return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

} // namespace

void RunConfig::validate() const {
  if (layout != "paper-chain" && layout != "disjoint")
    throw ConfigError("layout must be 'paper-chain' or 'disjoint', got '" + layout + "'");
  if (dims < 1 || dims > 3)
    throw ConfigError("dims must be 1, 2 or 3");
  if (lattice_n < 2 || !is_power_of_two(lattice_n))
    throw ConfigError("lattice_n must be a power of two >= 2");
  if (layout == "paper-chain" && lattice_n != 4)
    throw ConfigError("layout paper-chain requires lattice_n = 4");
  if (layout == "disjoint" && log2_exact(lattice_n) * static_cast<std::size_t>(dims) > kMaxExactQubits)
    throw ConfigError("disjoint layout exceeds " + std::to_string(kMaxExactQubits) +
                      " qubits; lower dims or lattice_n");
  if (mass_grid.empty() || radius_grid.empty())
    throw ConfigError("mass_grid and radius_grid must be non-empty");
  for (double m : mass_grid)
    if (!(m > 0.0) || !std::isfinite(m))
      throw ConfigError("mass_grid values must be positive");
  for (double r : radius_grid)
    if (!(r > 0.0) || !std::isfinite(r))
      throw ConfigError("radius_grid values must be positive");
  if (mass_unit != "planck" && mass_unit != "solar")
    throw ConfigError("mass_unit must be 'planck' or 'solar'");
  if (!(solar_mass_planck > 0.0))
    throw ConfigError("solar_mass_planck must be positive");
  if (radius_mode != "absolute" && radius_mode != "gm-multiple")
    throw ConfigError("radius_mode must be 'absolute' or 'gm-multiple'");
  if (methods.empty())
    throw ConfigError("methods must list at least one of 'exact', 'vqe'");
  for (const auto &m : methods)
    if (m != "exact" && m != "vqe")
      throw ConfigError("unknown method '" + m + "'");
  if (!parse_ansatz(ansatz))
    throw ConfigError("ansatz must be ansatz1, ansatz2 or ansatz3, got '" + ansatz + "'");
  if (reps < 0)
    throw ConfigError("reps must be >= 1 (or 0 for the ansatz default)");
  if (seeds.empty())
    throw ConfigError("seeds must be non-empty");
  if (!(kappa_t > 0.0) || !(kappa_p > 0.0))
    throw ConfigError("kappa_t and kappa_p must be positive");
  try {
    spsa.validate();
    const auto qubits = layout == "paper-chain"
                            ? std::size_t{4}
                            : log2_exact(lattice_n) * static_cast<std::size_t>(dims);
    build_ansatz(ansatz_kind(), qubits);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
}

bool RunConfig::wants_vqe() const {
  return std::find(methods.begin(), methods.end(), "vqe") != methods.end();
}

HamiltonianLayout RunConfig::hamiltonian_layout() const {
  return layout == "paper-chain" ? HamiltonianLayout::paper_chain()
                                 : HamiltonianLayout::disjoint(dims);
}

AnsatzKind RunConfig::ansatz_kind() const {
  const AnsatzFamily f = parse_ansatz(ansatz).value_or(AnsatzFamily::U3Ry);
  return {f, reps > 0 ? reps : AnsatzKind::default_reps(f)};
}

AssembleOptions RunConfig::assemble_options() const {
  return {inner_half, normalize_prefactor};
}

std::vector<double> RunConfig::planck_masses() const {
  std::vector<double> out = mass_grid;
  if (mass_unit == "solar")
    for (auto &m : out)
      m *= solar_mass_planck;
  return out;
}

SweepConfig RunConfig::sweep_config() const {
  SweepConfig s;
  s.mass_grid = planck_masses();
  s.radius_grid = radius_grid;
  s.radius_mode = radius_mode == "gm-multiple" ? RadiusMode::GmMultiple : RadiusMode::Absolute;
  s.layout = hamiltonian_layout();
  s.lattice_n = lattice_n;
  s.assemble_options = assemble_options();
  s.run_vqe = wants_vqe();
  s.ansatz = ansatz_kind();
  s.spsa = spsa;
  s.shots = shots;
  s.seeds = seeds;
  s.kappa_t = kappa_t;
  s.kappa_p = kappa_p;
  return s;
}

RunConfig config_from_json(const json &j) {
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  for (const auto &[key, _] : j.items())
    if (!kKnownKeys.contains(key))
      throw ConfigError("unknown config field '" + key + "'");

  RunConfig c;
  read(j, "layout", c.layout);
  read(j, "dims", c.dims);
  read(j, "lattice_n", c.lattice_n);
  read(j, "mass_grid", c.mass_grid);
  read(j, "mass_unit", c.mass_unit);
  read(j, "solar_mass_planck", c.solar_mass_planck);
  read(j, "radius_grid", c.radius_grid);
  read(j, "radius_mode", c.radius_mode);
  read(j, "methods", c.methods);
  read(j, "ansatz", c.ansatz);
  read(j, "reps", c.reps);
  read(j, "shots", c.shots);
  read(j, "seeds", c.seeds);
  read(j, "inner_half", c.inner_half);
  read(j, "normalize_prefactor", c.normalize_prefactor);
  read(j, "kappa_t", c.kappa_t);
  read(j, "kappa_p", c.kappa_p);
  if (j.contains("spsa")) {
    const json &s = j.at("spsa");
    if (!s.is_object())
      throw ConfigError("config field 'spsa' must be an object");
    for (const auto &[key, _] : s.items())
      if (!kSpsaKeys.contains(key))
        throw ConfigError("unknown spsa field '" + key + "'");
    read(s, "a", c.spsa.a);
    read(s, "c", c.spsa.c);
    read(s, "alpha", c.spsa.alpha);
    read(s, "gamma", c.spsa.gamma);
    read(s, "stability_a", c.spsa.stability_a);
    read(s, "max_iter", c.spsa.max_iter);
    read(s, "tol", c.spsa.tol);
    read(s, "window", c.spsa.window);
  }
  return c;
}

json config_to_json(const RunConfig &c) {
  return {
      {"layout", c.layout},
      {"dims", c.dims},
      {"lattice_n", c.lattice_n},
      {"mass_grid", c.mass_grid},
      {"mass_unit", c.mass_unit},
      {"solar_mass_planck", c.solar_mass_planck},
      {"radius_grid", c.radius_grid},
      {"radius_mode", c.radius_mode},
      {"methods", c.methods},
      {"ansatz", c.ansatz},
      {"reps", c.ansatz_kind().reps},
      {"spsa",
       {{"a", c.spsa.a},
        {"c", c.spsa.c},
        {"alpha", c.spsa.alpha},
        {"gamma", c.spsa.gamma},
        {"stability_a", c.spsa.stability_a},
        {"max_iter", c.spsa.max_iter},
        {"tol", c.spsa.tol},
        {"window", c.spsa.window}}},
      {"shots", c.shots},
      {"seeds", c.seeds},
      {"inner_half", c.inner_half},
      {"normalize_prefactor", c.normalize_prefactor},
      {"kappa_t", c.kappa_t},
      {"kappa_p", c.kappa_p},
  };
}

RunConfig load_config(const std::string &path) {
  if (path.empty())
    return {};
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error &e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

unsigned thread_budget() {
  if (const char *env = std::getenv("BHVQE_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<unsigned>(v);
    throw ConfigError(std::string("BHVQE_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace bhvqe::cli
