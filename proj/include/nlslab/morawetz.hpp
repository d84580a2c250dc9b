#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/field.hpp"
#include "nlslab/integrator.hpp"

namespace nlslab {

/// Exponent in [1, inf] held as an exact rational or infinity.
class Exponent {
 public:
  constexpr Exponent(std::int64_t value) : num_(value), den_(1) {}
  Exponent(std::int64_t num, std::int64_t den);
  static constexpr Exponent infinity() { return Exponent(); }

  bool is_infinite() const noexcept { return den_ == 0; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept;

 private:
  constexpr Exponent() : num_(1), den_(0) {}
  std::int64_t num_, den_;
};

/// 2/q + n/r = n/2 with 2 <= q, r <= inf, in exact arithmetic.
bool admissible_pair(Exponent q, Exponent r, int n);

/// Average of |x|^{-s} over the centered cell [-dx/2, dx/2]^n.
double coulomb_cell_average(int n, double s, double dx);

/// rho * |.|^{-s} on the periodic grid. The kernel is |d|^{-s} at the minimum
/// image d, zero for |d| >= L/2, and the cell average at the origin. Only the
/// real part of rho is used. Throws NonIntegrableKernelError when s >= n.
ComplexField coulomb_convolve(const ComplexField& rho, double s);

struct MorawetzRecord {
  double t = 0.0;
  double M_interact = 0.0;
  double term_A = 0.0;   ///< -Delta(1/|x|) pairing of |u|^2 with itself
  double term_B1 = 0.0;  ///< 2(n-1) l_1 p_1/(p_1+2) \iint |u(y)|^2 |u(x)|^{p_1+2} / |x-y|
  double term_B2 = 0.0;

  /// (n-1) term_A + term_B1 + term_B2.
  double integrand(int n) const { return (n - 1) * term_A + term_B1 + term_B2; }
};

/// Requires n >= 3 (InapplicableError otherwise).
MorawetzRecord interaction_terms(const ComplexField& u, const SimulationConfig& cfg,
                                 double t = 0.0);

struct MorawetzBudgetReport {
  bool applicable = false;
  double integrated_lhs = 0.0;
  double budget = 0.0;        ///< 4 (sup_t ||u||_{H^1})^4
  double sharp_budget = 0.0;  ///< 4 sup ||u||_2^3 sup ||grad u||_2
  double ratio = 0.0;         ///< integrated_lhs / budget
  bool within_budget = false; ///< integrated_lhs <= 1.05 budget
  bool integrand_nonnegative = false;
  bool accumulation_monotone = false;
  std::vector<double> cumulative;  ///< running trapezoid integral per record
  double z_norm = 0.0;             ///< ||u||_{L^{n+1}_t L^{2(n+1)/(n-1)}_x}
  double z_ratio = 0.0;            ///< z_norm / sup ||u||_{H^1}
  std::string note;
};

/// `fields` are the snapshots matching `records` one to one.
MorawetzBudgetReport morawetz_budget_check(const std::vector<MorawetzRecord>& records,
                                           const std::vector<Snapshot>& fields,
                                           const SimulationConfig& cfg);

/// Same, from precomputed per-snapshot ||u||_{H^1}, ||u||_2, ||grad u||_2 and
/// ||u||_{L^{2(n+1)/(n-1)}} values (streaming use).
struct NormSample {
  double t = 0.0;
  double h1 = 0.0;
  double l2 = 0.0;
  double grad = 0.0;
  double z_space = 0.0;
};
MorawetzBudgetReport morawetz_budget_check(const std::vector<MorawetzRecord>& records,
                                           const std::vector<NormSample>& norms,
                                           const SimulationConfig& cfg);

struct SpacetimeNormSpec {
  double q = 2.0;  ///< time exponent, may be infinite
  double r = 2.0;  ///< space exponent, may be infinite
  double t_a = 0.0;
  double t_b = 0.0;
};

enum class SpacetimeKind { plain, gradient };

/// (\int ||u(t)||_r^q dt)^{1/q} by trapezoid over snapshots inside
/// [t_a, t_b]; sup when q is infinite. The gradient kind uses the
/// Euclidean length of the spectral gradient.
double spacetime_norm(const SpacetimeNormSpec& spec, const std::vector<Snapshot>& snapshots,
                      SpacetimeKind kind = SpacetimeKind::plain);

/// Same, from already evaluated spatial norms at times t.
double spacetime_norm(const SpacetimeNormSpec& spec, const std::vector<double>& t,
                      const std::vector<double>& spatial_norms);

}  // namespace nlslab
