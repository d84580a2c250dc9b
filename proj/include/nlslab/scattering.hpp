#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/field.hpp"
#include "nlslab/integrator.hpp"

namespace nlslab {

/// Components of H(t)u = x u + 2 i t grad u, one field per axis.
std::vector<ComplexField> galilean_apply(const ComplexField& u, double t);

/// ||H(t)u||_2^2 summed over axes.
double galilean_norm_sq(const ComplexField& u, double t);

struct PseudoconformalValue {
  double h = 0.0;      ///< ||H(t)u||^2 + 8 t^2 sum_i l_i/(p_i+2) ||u||_{p_i+2}^{p_i+2}
  double theta = 0.0;  ///< sum_i l_i 4(4 - p_i n)/(p_i+2) ||u||_{p_i+2}^{p_i+2}, h' = t theta
};

/// True for l1, l2 > 0, p2 = 4/(n-2), n >= 3.
bool pseudoconformal_regime(const SimulationConfig& cfg);

/// Throws InapplicableError outside pseudoconformal_regime.
PseudoconformalValue pseudoconformal_energy(const ComplexField& u, double t,
                                            const SimulationConfig& cfg);

/// The same quadratures for arbitrary couplings.
PseudoconformalValue pseudoconformal_terms(const ComplexField& u, double t,
                                           const Nonlinearity& nl);

/// Streaming trapezoid for u+(t) = u0 - i \int_0^t exp(-is Delta) F(u(s)) ds.
/// The integral is kept on the frequency lattice, so each sample costs one FFT.
class DuhamelAccumulator {
 public:
  DuhamelAccumulator(const ComplexField& u0, Nonlinearity nl);

  /// Adds the sample at time t; times must increase. The first sample is at t = 0.
  void add(double t, const ComplexField& u);
  double time() const noexcept { return t_; }
  std::size_t samples() const noexcept { return samples_; }
  /// u+(time()).
  ComplexField state() const;

 private:
  Grid grid_;
  Nonlinearity nl_;
  ComplexField u0_;
  CVector integral_hat_;
  CVector prev_hat_;
  double t_ = 0.0;
  std::size_t samples_ = 0;
};

/// u+(t_cut) from snapshots on [0, t_cut] (t = 0 must be present).
ComplexField duhamel_scattering_state(const std::vector<Snapshot>& snapshots,
                                      const SimulationConfig& cfg, double t_cut);

/// Same, refusing runs that did not complete (UnavailableError).
ComplexField duhamel_scattering_state(const EvolveResult& run, const SimulationConfig& cfg,
                                      double t_cut);

struct ScatteringRecord {
  double t = 0.0;
  std::optional<ComplexField> u_plus_partial;
  double h1_distance = 0.0;     ///< ||exp(-it Delta) u(t) - u+||_{H^1}, u+ at the horizon
  double sigma_distance = 0.0;  ///< h1_distance + ||H(t)(u(t) - exp(it Delta) u+)||_2
  double h = 0.0;
  double theta = 0.0;
};

struct CauchyIncrement {
  double t = 0.0;
  double increment = 0.0;  ///< ||u+(t + window) - u+(t)||_{H^1}
};

struct ScatteringSummary {
  std::vector<CauchyIncrement> increments;
  bool increments_monotone = false;  ///< nonincreasing for t >= t_start
  std::optional<double> certified_time;  ///< first t >= t_start with increment < threshold
  std::vector<ScatteringRecord> linear_flow;  ///< distances at checkpoints
  bool linear_flow_decreasing = false;        ///< nonincreasing for t >= t_start
  double final_time = 0.0;
};

/// Feeds on the snapshot stream of a run and assembles Cauchy increments and
/// linear-flow distances at checkpoint times (multiples of the interval).
class ScatteringTracker {
 public:
  ScatteringTracker(const ComplexField& u0, const SimulationConfig& cfg);

  void add(double t, const ComplexField& u);
  ScatteringSummary finish() const;

 private:
  struct Checkpoint {
    double t;
    ComplexField u_plus;
  };

  SimulationConfig cfg_;
  DuhamelAccumulator duhamel_;
  std::deque<Checkpoint> ring_;
  std::vector<CauchyIncrement> increments_;
  std::vector<std::pair<double, ComplexField>> pulled_back_;  ///< exp(-it Delta) u(t)
  double next_checkpoint_ = 0.0;
  std::size_t checkpoint_index_ = 0;
};

struct DecayFit {
  double slope = 0.0;
  double bound_slope = 0.0;  ///< -min(2, p n / 2)
  bool pass = false;         ///< slope <= bound_slope + 0.2
  std::size_t samples = 0;
};

/// Least-squares slope of log(values) against log(t) over [t1, t2].
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& values, double p,
                   int n, double t1, double t2);

}  // namespace nlslab
