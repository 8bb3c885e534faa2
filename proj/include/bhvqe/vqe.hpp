#pragma once

// SPSA optimizer and the variational loop around it.

#include "bhvqe/ansatz.hpp"
#include "bhvqe/circuit.hpp"
#include "bhvqe/errors.hpp"
#include "bhvqe/hamiltonian.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bhvqe {

/// Gain sequences a_k = a/(A+k+1)^α and c_k = c/(k+1)^γ. Iteration stops after
/// `max_iter` updates or once |E_k − E_{k−1}| < tol holds for `window`
/// consecutive updates.
///
/// Defaults pair a wide perturbation with a faster-shrinking γ than the usual
/// 0.101. The product-state landscape of the black-hole Hamiltonian has
/// spin-flip local minima that narrow early probes settle into.
struct SpsaConfig {
  double a = 5.0;
  double c = 1.0;
  double alpha = 0.602;
  double gamma = 0.3;
  double stability_a = 10.0;
  int max_iter = 500;
  double tol = 1e-4;
  int window = 10;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(a > 0.0) || !(c > 0.0))
      throw Error(ErrorKind::InvalidArgument, "SPSA gains a and c must be positive");
    if (!(gamma > 0.0 && gamma < alpha && alpha <= 1.0))
      throw Error(ErrorKind::InvalidArgument,
                  "SPSA exponents must satisfy 0 < gamma < alpha <= 1");
    if (!(stability_a >= 0.0))
      throw Error(ErrorKind::InvalidArgument, "SPSA stability constant must be >= 0");
    if (max_iter < 1)
      throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");
    if (!(tol >= 0.0))
      throw Error(ErrorKind::InvalidArgument, "tol must be >= 0");
    if (window < 1)
      throw Error(ErrorKind::InvalidArgument, "window must be >= 1");
  }
};

struct VqeResult {
  std::vector<double> best_params;
  double best_energy = std::numeric_limits<double>::infinity();
  std::vector<double> trace; // energy of the iterate after each update
  bool converged = false;
  int iterations_used = 0;
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(mix_seed(base) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

using Objective = std::function<double(std::span<const double>)>;

namespace detail {
inline double checked(const Objective &f, std::span<const double> x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw Error(ErrorKind::NonFiniteObjective, "objective returned " + std::to_string(v));
  return v;
}
} // namespace detail

/// Minimizes f from theta0. The best evaluated iterate (including theta0) is
/// returned, not the final one.
inline VqeResult spsa_minimize(const Objective &f, std::vector<double> theta,
                               const SpsaConfig &cfg) {
  cfg.validate();
  const std::size_t d = theta.size();
  std::mt19937_64 rng(derive_seed(cfg.seed, 1));

  VqeResult out;
  double prev = detail::checked(f, theta);
  out.best_energy = prev;
  out.best_params = theta;
  out.trace.reserve(static_cast<std::size_t>(cfg.max_iter));

  std::vector<double> delta(d), plus(d), minus(d);
  int quiet = 0;
  for (int k = 0; k < cfg.max_iter; ++k) {
    const double ak = cfg.a / std::pow(cfg.stability_a + k + 1.0, cfg.alpha);
    const double ck = cfg.c / std::pow(k + 1.0, cfg.gamma);
    for (std::size_t i = 0; i < d; ++i) {
      delta[i] = (rng() >> 63) ? 1.0 : -1.0;
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    const double diff = detail::checked(f, plus) - detail::checked(f, minus);
    for (std::size_t i = 0; i < d; ++i)
      theta[i] -= ak * diff / (2.0 * ck * delta[i]);

    const double e = detail::checked(f, theta);
    out.trace.push_back(e);
    out.iterations_used = k + 1;
    if (e < out.best_energy) {
      out.best_energy = e;
      out.best_params = theta;
    }
    quiet = std::abs(e - prev) < cfg.tol ? quiet + 1 : 0;
    prev = e;
    if (quiet >= cfg.window) {
      out.converged = true;
      break;
    }
  }
  return out;
}

/// Runs VQE for h with the given ansatz. shots == 0 uses exact expectation
/// values; otherwise every objective evaluation is a fresh shot-noise sample.
/// Initial parameters are uniform in [−π, π) drawn from cfg.seed.
inline VqeResult vqe_run(const PauliHamiltonian &h, const Circuit &circuit,
                         const SpsaConfig &cfg, std::size_t shots = 0) {
  if (circuit.n_qubits() != h.n_qubits())
    throw Error(ErrorKind::QubitMismatch,
                "ansatz acts on " + std::to_string(circuit.n_qubits()) +
                    " qubits, Hamiltonian on " + std::to_string(h.n_qubits()));

  std::uint64_t evaluation = 0;
  const std::uint64_t shot_base = derive_seed(cfg.seed, 2);
  Objective objective = [&](std::span<const double> theta) {
    const StateVector s = run(circuit, theta);
    if (shots == 0)
      return expectation(s, h);
    return sampled_expectation(s, h, shots, derive_seed(shot_base, evaluation++));
  };
  return spsa_minimize(objective,
                       random_parameters(circuit.n_params(), derive_seed(cfg.seed, 0)),
                       cfg);
}

inline VqeResult vqe_run(const PauliHamiltonian &h, const AnsatzKind &kind,
                         const SpsaConfig &cfg, std::size_t shots = 0) {
  return vqe_run(h, build_ansatz(kind, h.n_qubits()), cfg, shots);
}

} // namespace bhvqe
