#pragma once

#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

struct ConservedRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;     ///< 1/2 ||grad u||^2
  double potential1 = 0.0;  ///< lambda1/(p1+2) ||u||_{p1+2}^{p1+2}
  double potential2 = 0.0;
};

double mass(const ComplexField& u);

ConservedRecord energy(const ComplexField& u, const Nonlinearity& nl, double t = 0.0);
ConservedRecord energy(const ComplexField& u, const SimulationConfig& cfg, double t = 0.0);

/// max_{s >= 0} |l1| s^p1/(p1+2) - |l2| s^p2/(p2+2) for l1 < 0 < l2, the
/// smallest C with P1 + P2 >= -C M pointwise.
double focusing_defocusing_constant(double lambda1, double lambda2, double p1, double p2);

/// Largest ratio ||u||_{p+2}^{p+2} / (M^{1-(n-2)p/4} ||grad u||^{np/2}) over
/// a fixed family of smooth reference fields on a periodic grid. Cached.
double gagliardo_nirenberg_constant(int n, double p);

enum class KineticBoundKind { defocusing, mixed, focusing_subcritical, none };

struct KineticBoundReport {
  KineticBoundKind kind = KineticBoundKind::none;
  bool applicable = false;
  double bound = 0.0;          ///< bound on ||grad u||_2^2
  double constant = 0.0;       ///< C(l1, l2) for the mixed case
  double max_relative_violation = 0.0;  ///< max over records of (K - bound)/bound, <= 0 if none
  std::size_t violations = 0;  ///< hard failures
  std::size_t marginal = 0;    ///< flagged, within 10% (fitted-constant chain only)
  std::string note;
};

/// Evaluates the a-priori kinetic bound applicable to the coupling signs,
/// using E and M from the first record.
KineticBoundReport kinetic_bound_check(const std::vector<ConservedRecord>& series,
                                       const SimulationConfig& cfg);

}  // namespace nlslab
