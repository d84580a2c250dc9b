#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

/// Exact flow of i u_t = (lambda1 |u|^p1 + lambda2 |u|^p2) u over time tau:
/// u * exp(-i tau (lambda1 |u|^p1 + lambda2 |u|^p2)).
/// Throws AmplitudeOverflowError if the phase rate is not finite.
ComplexField nonlinear_phase_step(const ComplexField& u, double tau, const Nonlinearity& nl);

/// One Strang step: half phase, free_propagate(dt), half phase. No range check on dt.
ComplexField strang_step(const ComplexField& u, double dt, const Nonlinearity& nl);

/// Same as above, requiring dt in [cfg.dt_min, cfg.dt_max] and cfg.grid() == u.grid().
ComplexField strang_step(const ComplexField& u, double dt, const SimulationConfig& cfg);

struct SentinelReading {
  double tail_fraction = 0.0;      ///< L2 mass fraction with max_a |m_a| > N/4
  double boundary_fraction = 0.0;  ///< mass fraction with some |x_a| > 3L/8
  bool ok = true;
};

SentinelReading resolution_sentinel(const ComplexField& u, double eps_tail, double eps_bnd);
SentinelReading resolution_sentinel(const ComplexField& u, const SimulationConfig& cfg);

struct StepRecord {
  double t = 0.0;  ///< time after the step
  double dt_used = 0.0;
  double local_error_estimate = 0.0;  ///< step-doubling estimate; 0 in fixed-step mode
  double tail_fraction = 0.0;         ///< latest sentinel reading
  double boundary_fraction = 0.0;
};

enum class RunOutcome { completed, blowup_detected, resolution_lost };

std::string to_string(RunOutcome o);

struct Snapshot {
  double t;
  ComplexField u;
};

/// Called with the current field at every snapshot time.
using Observer = std::function<void(double t, const ComplexField& u)>;

struct EvolveOptions {
  bool keep_snapshots = true;
};

struct EvolveResult {
  std::vector<Snapshot> snapshots;
  std::vector<StepRecord> steps;
  RunOutcome outcome = RunOutcome::completed;
  std::string stop_reason;
  double t_final = 0.0;
  double gradient_norm_initial = 0.0;
  double gradient_norm_final = 0.0;
  std::optional<ComplexField> u_final;
};

/// Integrates cfg from its initial-data spec. Snapshot times default to
/// {t_end} when none are configured.
EvolveResult evolve(const SimulationConfig& cfg, const std::vector<Observer>& observers = {},
                    EvolveOptions options = {});

/// Integrates from an explicit u0 that must live on cfg.grid().
EvolveResult evolve_from(const ComplexField& u0, const SimulationConfig& cfg,
                         const std::vector<Observer>& observers = {}, EvolveOptions options = {});

}  // namespace nlslab
