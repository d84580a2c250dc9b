#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// Combined power nonlinearity F(u) = lambda1 |u|^p1 u + lambda2 |u|^p2 u.
/// Unvalidated: a zero coupling simply disables that term.
struct Nonlinearity {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double p1 = 2.0;
  double p2 = 4.0;

  /// lambda1 |u|^p1 + lambda2 |u|^p2 evaluated from |u|^2.
  double potential_rate(double abs_sq) const noexcept;
  bool is_zero() const noexcept { return lambda1 == 0.0 && lambda2 == 0.0; }
};

enum class Profile { gaussian, chirped_gaussian, ring, sample_file };

std::string to_string(Profile p);

struct InitialDataSpec {
  Profile profile = Profile::gaussian;
  double amplitude = 1.0;
  double width = 1.0;        ///< sigma
  double chirp = 0.0;        ///< b in exp(i b |x - x0|^2)
  double ring_radius = 0.0;  ///< ring profile only
  std::vector<double> offset;
  std::string sample_file;   ///< sample_file profile only
};

/// Post-processing knobs used by the run pipeline.
struct AnalysisOptions {
  double scattering_window = 5.0;      ///< Cauchy increment span Delta in u+(t+Delta) - u+(t)
  double scattering_threshold = 1e-3;  ///< certificate threshold on the increment
  double checkpoint_interval = 1.0;    ///< spacing of stored u+ checkpoints
  double scattering_t_start = 5.0;     ///< tail start for the monotonicity checks
  bool linear_flow = true;             ///< keep pulled-back checkpoints for linear-flow distances
  double decay_t1 = 5.0;
  double decay_t2 = 40.0;
  bool morawetz = true;                ///< interaction Morawetz terms (n >= 3 only)
  double kinetic_growth_limit = 400.0; ///< "bounded kinetic energy" means sup <= limit * initial scale
};

struct SimulationConfig {
  std::string name = "run";

  int n = 3;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double p1 = 2.0;
  double p2 = 4.0;

  std::size_t points = 64;
  double length = 40.0;

  double t_end = 1.0;
  double dt_init = 1e-3;
  double dt_min = 1e-6;
  double dt_max = 1e-2;
  double accuracy_target = 1e-6;
  std::size_t max_steps = 10'000'000;
  std::vector<double> snapshot_times;
  double snapshot_interval = 0.0;  ///< uniform schedule used when snapshot_times is empty

  double eps_tail = 1e-4;
  double eps_bnd = 1e-4;
  std::size_t sentinel_interval = 1;
  double blowup_gradient_factor = 20.0;

  InitialDataSpec initial;
  AnalysisOptions analysis;

  /// Every violated constraint, empty when valid.
  std::vector<std::string> validate() const;
  /// Throws ConfigError listing all violations.
  void require_valid() const;

  Grid grid() const { return Grid(n, points, length); }
  Nonlinearity nonlinearity() const { return {lambda1, lambda2, p1, p2}; }
  /// snapshot_times, else a uniform schedule at snapshot_interval, else {t_end}.
  std::vector<double> effective_snapshot_times() const;

  /// dt is adapted only when dt_min < dt_max.
  bool adaptive() const noexcept { return dt_min < dt_max; }

  /// Informational flags: out-of-paper regime (n < 3), conditional endpoint
  /// p1 = 4/n, below the Strauss exponent, and so on.
  std::vector<std::string> regime_flags() const;
};

/// t0, t0 + step, ..., up to and including t1 (within roundoff).
std::vector<double> uniform_times(double t0, double t1, double step);

/// (2 - n + sqrt(n^2 + 12 n + 4)) / (2 n).
double strauss_exponent(int n);

/// 4/n.
inline double mass_critical_power(int n) { return 4.0 / n; }
/// 4/(n-2), infinite for n <= 2.
double energy_critical_power(int n);

}  // namespace nlslab
