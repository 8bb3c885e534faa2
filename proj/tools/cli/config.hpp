#pragma once

#include "bhvqe/bhvqe.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhvqe::cli {

/// Invalid configuration or command line; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output; maps to exit status 4.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

/// 1 M_sun in Planck masses.
inline constexpr double kDefaultSolarMassPlanck = 9.136e37;

struct RunConfig {
  std::string layout = "paper-chain"; // paper-chain | disjoint
  int dims = 3;
  std::size_t lattice_n = 4;

  std::vector<double> mass_grid{1.0};
  std::string mass_unit = "planck"; // planck | solar
  double solar_mass_planck = kDefaultSolarMassPlanck;

  std::vector<double> radius_grid{10.0};
  std::string radius_mode = "absolute"; // absolute | gm-multiple

  std::vector<std::string> methods{"exact"}; // exact, vqe
  std::string ansatz = "ansatz3";
  int reps = 0; // 0 selects the ansatz default
  SpsaConfig spsa{};
  std::size_t shots = 0;
  std::vector<std::uint64_t> seeds{0};

  bool inner_half = false;
  bool normalize_prefactor = false;
  double kappa_t = 1.0;
  double kappa_p = 1.0;

  /// Throws ConfigError on any violated constraint.
  void validate() const;

  bool wants_vqe() const;
  HamiltonianLayout hamiltonian_layout() const;
  AnsatzKind ansatz_kind() const;
  AssembleOptions assemble_options() const;
  /// Mass grid converted to Planck masses.
  std::vector<double> planck_masses() const;
  /// Sweep description; threads is left for the caller.
  SweepConfig sweep_config() const;
};

RunConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const RunConfig &c);

/// Reads a JSON config file; the empty path yields defaults.
RunConfig load_config(const std::string &path);

/// Worker count from BHVQE_THREADS, else the hardware concurrency.
unsigned thread_budget();

} // namespace bhvqe::cli
