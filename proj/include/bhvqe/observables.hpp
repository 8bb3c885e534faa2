#pragma once

// Hawking-radiation observables: curve fits of ground energy against mass and
// radius, inversion of the fitted curve back to mass, temperature and power,
// and the (mass, radius) sweep that ties the pipeline together.

#include "bhvqe/ansatz.hpp"
#include "bhvqe/errors.hpp"
#include "bhvqe/hamiltonian.hpp"
#include "bhvqe/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace bhvqe {

/// E = a·(b + c·x)^{1/4} with b pinned to 1; x is M or 1/r.
struct FitResult {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double rms_residual = 0.0;
  int n_points = 0;

  double evaluate(double x) const { return a * std::pow(std::max(0.0, b + c * x), 0.25); }
};

struct FitPoint {
  double x = 0.0;
  double energy = 0.0;
};

/// Ordinary least squares on E⁴ = β₀ + β₁·x, then a = β₀^{1/4}, c = β₁/β₀.
inline FitResult fit_quartic_law(const std::vector<FitPoint> &points) {
  if (points.size() < 3)
    throw Error(ErrorKind::DegenerateData,
                "curve fit needs at least 3 points, got " + std::to_string(points.size()));
  std::set<double> distinct;
  for (const auto &p : points) {
    if (!(p.energy > 0.0) || !std::isfinite(p.energy))
      throw Error(ErrorKind::DegenerateData,
                  "energies must be positive and finite, got " + std::to_string(p.energy));
    if (!std::isfinite(p.x))
      throw Error(ErrorKind::DegenerateData, "non-finite regressor");
    if (!distinct.insert(p.x).second)
      throw Error(ErrorKind::DegenerateData,
                  "regressor values must be distinct, repeated " + std::to_string(p.x));
  }

  const auto n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto &p : points) {
    mx += p.x;
    my += std::pow(p.energy, 4);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto &p : points) {
    const double dx = p.x - mx;
    sxx += dx * dx;
    sxy += dx * (std::pow(p.energy, 4) - my);
  }
  const double beta1 = sxy / sxx;
  const double beta0 = my - beta1 * mx;
  if (!(beta0 > 0.0))
    throw Error(ErrorKind::NegativeIntercept,
                "fitted E^4 intercept is " + std::to_string(beta0) + ", not positive");

  FitResult fit;
  fit.a = std::pow(beta0, 0.25);
  fit.c = beta1 / beta0;
  fit.n_points = static_cast<int>(points.size());
  double ss = 0.0;
  for (const auto &p : points) {
    const double r = fit.evaluate(p.x) - p.energy;
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

/// Fits E = a(b + cM)^{1/4} to (M, E) pairs.
inline FitResult fit_energy_vs_mass(const std::vector<std::pair<double, double>> &mass_energy) {
  std::vector<FitPoint> pts;
  pts.reserve(mass_energy.size());
  for (auto [m, e] : mass_energy)
    pts.push_back({m, e});
  return fit_quartic_law(pts);
}

/// Fits E = a(b + c/r)^{1/4} to (r, E) pairs.
inline FitResult fit_energy_vs_radius(const std::vector<std::pair<double, double>> &radius_energy) {
  std::vector<FitPoint> pts;
  pts.reserve(radius_energy.size());
  for (auto [r, e] : radius_energy) {
    if (!(r > 0.0))
      throw Error(ErrorKind::DegenerateData, "radii must be positive");
    pts.push_back({1.0 / r, e});
  }
  return fit_quartic_law(pts);
}

/// M = ((E/a)⁴ − b)/c, the inverse of the mass fit.
inline double mass_from_energy(const FitResult &fit, double energy) {
  if (fit.c == 0.0)
    throw Error(ErrorKind::DomainError, "fit has c = 0; energy does not depend on mass");
  const double floor = fit.a * std::pow(fit.b, 0.25);
  if (!(energy > floor))
    throw Error(ErrorKind::OutOfRange,
                "energy " + std::to_string(energy) + " is not above the M = 0 floor " +
                    std::to_string(floor));
  return (std::pow(energy / fit.a, 4) - fit.b) / fit.c;
}

/// A radius fit at fixed mass has c = GM/2, so the mass it encodes is 2c/G.
inline double mass_from_radius_fit(const FitResult &fit, double g_const = 1.0) {
  return 2.0 * fit.c / g_const;
}

inline double temperature(double mass, double kappa_t = 1.0) {
  if (!(mass > 0.0))
    throw Error(ErrorKind::DomainError, "temperature needs M > 0, got " + std::to_string(mass));
  return kappa_t / mass;
}

inline double power(double mass, double kappa_p = 1.0) {
  if (!(mass > 0.0))
    throw Error(ErrorKind::DomainError, "power needs M > 0, got " + std::to_string(mass));
  return kappa_p / (mass * mass);
}

// ---------------------------------------------------------------------------
// Sweeps

enum class RadiusMode { Absolute, GmMultiple };

enum class SweepMethod { Exact, Vqe };

struct SweepConfig {
  std::vector<double> mass_grid;   // Planck masses
  std::vector<double> radius_grid; // absolute, or multiples of G·M
  RadiusMode radius_mode = RadiusMode::Absolute;
  double g_const = 1.0;

  HamiltonianLayout layout = HamiltonianLayout::paper_chain();
  std::size_t lattice_n = 4;
  AssembleOptions assemble_options{};

  bool run_vqe = false;
  AnsatzKind ansatz = AnsatzKind::of(AnsatzFamily::U3Ry);
  SpsaConfig spsa{};
  std::size_t shots = 0;
  std::vector<std::uint64_t> seeds{0};

  double kappa_t = 1.0;
  double kappa_p = 1.0;

  unsigned threads = 1;
};

enum class MassSource { Fit, Direct };

struct SweepRecord {
  std::size_t point_index = 0;
  SweepMethod method = SweepMethod::Exact;
  double mass = 0.0;
  double radius = 0.0; // absolute
  double rho = 0.0;
  double e_exact = 0.0;
  std::optional<double> e_vqe;

  /// Observables from the mass recovered through the fitted E(M) curve, or
  /// from the grid mass when the curve cannot be inverted (see mass_source).
  double temperature = 0.0;
  double power = 0.0;
  double inferred_mass = 0.0;
  MassSource mass_source = MassSource::Direct;

  /// T(M), P(M) at the grid mass.
  double temperature_direct = 0.0;
  double power_direct = 0.0;

  // VQE metadata, zero for exact rows.
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = true;

  double energy() const { return e_vqe.value_or(e_exact); }
};

namespace detail {

/// Runs fn(i) for i in [0, n) on up to `threads` workers; the first exception
/// is rethrown after all workers join.
template <class Fn> void parallel_for(std::size_t n, unsigned threads, Fn &&fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  for (auto &th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

/// Invertibility guard: the fitted energy must actually rise over the column.
inline bool fit_is_informative(const FitResult &fit, double x_span) {
  return fit.c > 0.0 && fit.c * x_span > 1e-9;
}

inline void fill_observables(std::vector<SweepRecord *> &column, const SweepConfig &cfg) {
  for (auto *rec : column) {
    rec->temperature_direct = temperature(rec->mass, cfg.kappa_t);
    rec->power_direct = power(rec->mass, cfg.kappa_p);
    rec->temperature = rec->temperature_direct;
    rec->power = rec->power_direct;
    rec->inferred_mass = rec->mass;
    rec->mass_source = MassSource::Direct;
  }
  if (column.size() < 3)
    return;
  std::vector<std::pair<double, double>> pts;
  double lo = column.front()->mass, hi = lo;
  for (const auto *rec : column) {
    pts.emplace_back(rec->mass, rec->energy());
    lo = std::min(lo, rec->mass);
    hi = std::max(hi, rec->mass);
  }
  FitResult fit;
  try {
    fit = fit_energy_vs_mass(pts);
  } catch (const Error &) {
    return;
  }
  if (!fit_is_informative(fit, hi - lo))
    return;
  for (auto *rec : column) {
    try {
      const double m = mass_from_energy(fit, rec->energy());
      if (!(m > 0.0) || !std::isfinite(m))
        continue;
      rec->inferred_mass = m;
      rec->temperature = temperature(m, cfg.kappa_t);
      rec->power = power(m, cfg.kappa_p);
      rec->mass_source = MassSource::Fit;
    } catch (const Error &) {
    }
  }
}

} // namespace detail

/// Seed used for VQE at grid point `point` under base seed `base`.
inline std::uint64_t point_seed(std::uint64_t base, std::size_t point) {
  return derive_seed(base, 0x5eed0000ULL + point);
}

/// Evaluates every (mass, radius) point. Records come back in grid order:
/// mass-major, then radius; within a point the exact record precedes the VQE
/// records, which follow the order of cfg.seeds.
///
/// Temperature and power are derived the way the plotted curves were: for
/// each radius column (and each method/seed stream) E(M) is fitted and each
/// energy is mapped back to a mass through the fitted curve. When a column has
/// fewer than three masses, or its fitted curve is flat (as happens in
/// G·M-multiple radius mode where ρ is mass-independent), the grid mass is
/// used instead.
inline std::vector<SweepRecord> sweep(const SweepConfig &cfg) {
  if (cfg.mass_grid.empty() || cfg.radius_grid.empty())
    throw Error(ErrorKind::InvalidArgument, "mass and radius grids must be non-empty");
  for (double m : cfg.mass_grid)
    if (!(m > 0.0) || !std::isfinite(m))
      throw Error(ErrorKind::DomainError, "mass grid values must be positive");
  for (double r : cfg.radius_grid)
    if (!(r > 0.0) || !std::isfinite(r))
      throw Error(ErrorKind::DomainError, "radius grid values must be positive");
  if (cfg.run_vqe) {
    if (cfg.seeds.empty())
      throw Error(ErrorKind::InvalidArgument, "VQE sweep needs at least one seed");
    cfg.spsa.validate();
  }

  const LatticeSpec lattice(cfg.lattice_n);
  const std::size_t n_r = cfg.radius_grid.size();
  const std::size_t n_points = cfg.mass_grid.size() * n_r;
  const std::size_t per_point = 1 + (cfg.run_vqe ? cfg.seeds.size() : 0);

  std::vector<SweepRecord> records(n_points * per_point);
  const PauliHamiltonian bracket =
      assemble_normalized(cfg.layout, lattice, cfg.assemble_options.inner_half);

  detail::parallel_for(records.size(), cfg.threads, [&](std::size_t task) {
    const std::size_t point = task / per_point;
    const std::size_t slot = task % per_point;
    const double mass = cfg.mass_grid[point / n_r];
    const double r_in = cfg.radius_grid[point % n_r];

    SweepRecord rec;
    rec.point_index = point;
    rec.mass = mass;
    rec.radius = cfg.radius_mode == RadiusMode::GmMultiple ? r_in * cfg.g_const * mass : r_in;
    const BlackHoleParams params{rec.mass, rec.radius, cfg.g_const};
    rec.rho = params.rho();
    const double pref =
        cfg.assemble_options.normalize_prefactor ? 1.0 : metric_prefactor(params);
    const PauliHamiltonian h = bracket.scaled(pref);
    rec.e_exact = exact_ground_energy(h);

    if (slot > 0) {
      const std::uint64_t base = cfg.seeds[slot - 1];
      SpsaConfig spsa = cfg.spsa;
      spsa.seed = point_seed(base, point);
      const VqeResult res = vqe_run(h, cfg.ansatz, spsa, cfg.shots);
      rec.method = SweepMethod::Vqe;
      rec.e_vqe = res.best_energy;
      rec.seed = base;
      rec.iterations = res.iterations_used;
      rec.converged = res.converged;
    }
    records[task] = std::move(rec);
  });

  // Mass columns: same radius index, same method/seed stream.
  for (std::size_t ri = 0; ri < n_r; ++ri)
    for (std::size_t slot = 0; slot < per_point; ++slot) {
      std::vector<SweepRecord *> column;
      for (std::size_t mi = 0; mi < cfg.mass_grid.size(); ++mi)
        column.push_back(&records[(mi * n_r + ri) * per_point + slot]);
      detail::fill_observables(column, cfg);
    }
  return records;
}

} // namespace bhvqe
