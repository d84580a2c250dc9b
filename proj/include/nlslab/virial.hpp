#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/conserved.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

/// A weighted integral plus a flag raised when the field carries more than
/// eps_bnd of its mass near the box boundary, where |x| weights wrap.
struct WeightedValue {
  double value = 0.0;
  bool untrusted = false;
};

/// V = \int |x|^2 |u|^2.
WeightedValue variance(const ComplexField& u, double eps_bnd = 1e-4);

/// y = -Im \int conj(u) x.grad u, so that V' = -4y.
WeightedValue mass_current_y(const ComplexField& u, double eps_bnd = 1e-4);

struct VirialRecord {
  double t = 0.0;
  double V = 0.0;
  double y = 0.0;
  double V2_formula = 0.0;     ///< 8 K + sum_i 4 n l_i p_i/(p_i+2) ||u||_{p_i+2}^{p_i+2}
  double y_lower_bound = 0.0;  ///< c K for the active blowup case, else 0
  double gradient_sq = 0.0;    ///< K = ||grad u||_2^2
  bool untrusted = false;
};

VirialRecord virial_record(const ComplexField& u, double t, const SimulationConfig& cfg,
                           double c = 0.0);

struct VirialConsistencyReport {
  double first_mismatch = 0.0;   ///< FD(V) vs -4y, sup-normalized
  double second_mismatch = 0.0;  ///< FD(-4y) vs V2_formula, sup-normalized
  std::size_t interior_points = 0;
};

/// Central differences on >= 5 uniformly spaced records.
VirialConsistencyReport virial_consistency(const std::vector<VirialRecord>& series);

enum class BlowupCase { none = 0, case1 = 1, case2 = 2, case3 = 3 };

enum class VerdictStatus {
  no_criterion,  ///< no case hypotheses hold
  inconclusive,  ///< a case holds but y0 <= 0
  predicted,     ///< a case holds and y0 > 0: blowup before t_star
};

std::string to_string(VerdictStatus s);

struct CriterionVerdict {
  VerdictStatus status = VerdictStatus::no_criterion;
  BlowupCase which = BlowupCase::none;
  double c = 0.0;        ///< lower-bound constant in y' >= c ||grad u||^2
  double C = 0.0;        ///< case 3: E + C M < 0 threshold constant
  double epsilon = 0.0;  ///< case 3 internals
  double theta = 0.0;
  double delta = 0.0;
  double energy = 0.0;
  double mass = 0.0;
  double V0 = 0.0;
  double y0 = 0.0;
  std::optional<double> t_star;  ///< V0 / (c y0)
  std::vector<std::string> reasons;

  bool has_case() const { return which != BlowupCase::none; }
  std::string summary() const;
};

CriterionVerdict blowup_criteria(const ComplexField& u0, const SimulationConfig& cfg);

struct MonitorReport {
  bool applicable = false;
  std::size_t checked = 0;
  std::size_t y_growth_violations = 0;  ///< y'_FD < c K (1 - 5%)
  std::size_t y_monotone_violations = 0;
  std::size_t v_monotone_violations = 0;
  std::size_t concavity_violations = 0;
  double worst_growth_margin = 0.0;  ///< min (y'_FD - cK)/(cK)
  std::optional<double> detected_time;
  std::optional<double> t_star;
  bool within_bound = false;
  std::string note;

  std::size_t critical_violations() const {
    return y_growth_violations + y_monotone_violations + v_monotone_violations +
           concavity_violations;
  }
};

/// Checks the blowup mechanism along snapshot records (nonuniform spacing allowed).
MonitorReport blowup_monitor(const std::vector<VirialRecord>& virial,
                             const std::vector<ConservedRecord>& conserved,
                             const CriterionVerdict& verdict,
                             std::optional<double> detected_time);

}  // namespace nlslab
