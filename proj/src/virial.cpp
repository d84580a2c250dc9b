#include "nlslab/virial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlslab/integrator.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {
namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Three-point derivative weights on a possibly nonuniform stencil.
double fd_first(double fm, double f0, double fp, double h1, double h2) {
  return -h2 / (h1 * (h1 + h2)) * fm + (h2 - h1) / (h1 * h2) * f0 + h1 / (h2 * (h1 + h2)) * fp;
}
double fd_second(double fm, double f0, double fp, double h1, double h2) {
  return 2.0 * (fm / (h1 * (h1 + h2)) - f0 / (h1 * h2) + fp / (h2 * (h1 + h2)));
}

}  // namespace

WeightedValue variance(const ComplexField& u, double eps_bnd) {
  const auto r = resolution_sentinel(u, 1.0, eps_bnd);
  return {weighted_norm_sq(u), r.boundary_fraction >= eps_bnd};
}

WeightedValue mass_current_y(const ComplexField& u, double eps_bnd) {
  const Grid& g = u.grid();
  const auto grad = gradient(u);
  const auto coords = g.axis_coords();
  double im = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cplx radial{};
    for (int a = 0; a < g.dim(); ++a) radial += coords[g.axis_index(i, a)] * grad[a][i];
    im += (std::conj(u[i]) * radial).imag();
  }
  const auto r = resolution_sentinel(u, 1.0, eps_bnd);
  return {-im * g.cell_volume(), r.boundary_fraction >= eps_bnd};
}

VirialRecord virial_record(const ComplexField& u, double t, const SimulationConfig& cfg,
                           double c) {
  VirialRecord r;
  r.t = t;
  const auto v = variance(u, cfg.eps_bnd);
  const auto y = mass_current_y(u, cfg.eps_bnd);
  r.V = v.value;
  r.y = y.value;
  r.untrusted = v.untrusted || y.untrusted;
  r.gradient_sq = gradient_norm_sq(u);
  const double n = cfg.n;
  r.V2_formula = 8.0 * r.gradient_sq +
                 4.0 * n * cfg.lambda1 * cfg.p1 / (cfg.p1 + 2.0) * lp_power(u, cfg.p1 + 2.0) +
                 4.0 * n * cfg.lambda2 * cfg.p2 / (cfg.p2 + 2.0) * lp_power(u, cfg.p2 + 2.0);
  r.y_lower_bound = c * r.gradient_sq;
  return r;
}

VirialConsistencyReport virial_consistency(const std::vector<VirialRecord>& s) {
  if (s.size() < 5) throw DataError("virial_consistency needs at least 5 records");
  const double h = s[1].t - s[0].t;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (std::abs((s[k].t - s[k - 1].t) - h) > 1e-6 * std::abs(h))
      throw DataError("virial_consistency needs uniformly spaced records");

  std::vector<double> d1, r1, d2, r2;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double fd_v = (s[k + 1].V - s[k - 1].V) / (2.0 * h);
    const double fd_w = -4.0 * (s[k + 1].y - s[k - 1].y) / (2.0 * h);
    d1.push_back(fd_v + 4.0 * s[k].y);
    r1.push_back(-4.0 * s[k].y);
    d2.push_back(fd_w - s[k].V2_formula);
    r2.push_back(s[k].V2_formula);
  }
  VirialConsistencyReport rep;
  rep.interior_points = d1.size();
  const double s1 = max_abs(r1), s2 = max_abs(r2);
  rep.first_mismatch = s1 > 0.0 ? max_abs(d1) / s1 : max_abs(d1);
  rep.second_mismatch = s2 > 0.0 ? max_abs(d2) / s2 : max_abs(d2);
  return rep;
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::no_criterion: return "no-blowup-criterion";
    case VerdictStatus::inconclusive: return "inconclusive";
    case VerdictStatus::predicted: return "blowup-predicted";
  }
  return "?";
}

std::string CriterionVerdict::summary() const {
  std::ostringstream os;
  os << to_string(status);
  if (has_case()) os << " case=" << static_cast<int>(which) << " c=" << c;
  if (which == BlowupCase::case3) os << " C=" << C;
  if (t_star) os << " t_star<=" << *t_star;
  for (const auto& r : reasons) os << "; " << r;
  return os.str();
}

CriterionVerdict blowup_criteria(const ComplexField& u0, const SimulationConfig& cfg) {
  CriterionVerdict v;
  const auto rec = energy(u0, cfg);
  v.energy = rec.energy;
  v.mass = rec.mass;
  v.V0 = weighted_norm_sq(u0);
  v.y0 = mass_current_y(u0, cfg.eps_bnd).value;

  const int n = cfg.n;
  const double l1 = cfg.lambda1, l2 = cfg.lambda2, p1 = cfg.p1, p2 = cfg.p2;
  const double pc = mass_critical_power(n);
  if (!(l2 < 0.0)) {
    v.reasons.push_back("lambda2 >= 0: no focusing leading term");
    return v;
  }
  if (!(p2 > pc) || p2 > energy_critical_power(n) * (1.0 + 1e-12)) {
    v.reasons.push_back("p2 outside (4/n, 4/(n-2)]");
    return v;
  }

  if (l1 > 0.0) {
    if (v.energy < 0.0) {
      v.which = BlowupCase::case1;
      v.c = (p2 * n - 4.0) / 2.0;
    } else {
      v.reasons.push_back("case 1 requires E < 0");
    }
  } else if (p1 > pc) {
    if (v.energy < 0.0) {
      v.which = BlowupCase::case2;
      v.c = (p1 * n - 4.0) / 2.0;
    } else {
      v.reasons.push_back("case 2 requires E < 0");
    }
  } else {
    v.epsilon = std::min(1.0, (p2 * n / 2.0 - 2.0) / 2.0);
    v.theta = 2.0 * (2.0 + v.epsilon) / (p2 * n);
    const double a = n * std::abs(l1) * v.theta * (p2 - p1) / (p1 + 2.0);
    const double b = n * std::abs(l2) * p2 * (1.0 - v.theta) / (p2 + 2.0);
    v.delta = 0.5 * b / a;
    const double young =
        (1.0 - p1 / p2) * std::pow(p1 / (v.delta * p2), p1 / (p2 - p1));
    v.C = a * young / (p2 * n * v.theta);
    if (v.energy + v.C * v.mass < 0.0) {
      v.which = BlowupCase::case3;
      v.c = v.epsilon;
    } else {
      v.reasons.push_back("case 3 requires E + C M < 0");
    }
  }
  if (!v.has_case()) return v;

  if (v.y0 > 0.0) {
    v.status = VerdictStatus::predicted;
    v.t_star = v.V0 / (v.c * v.y0);
  } else {
    v.status = VerdictStatus::inconclusive;
    v.reasons.push_back("y0 <= 0: outgoing-flux hypothesis fails");
  }
  return v;
}

MonitorReport blowup_monitor(const std::vector<VirialRecord>& virial,
                             const std::vector<ConservedRecord>& conserved,
                             const CriterionVerdict& verdict,
                             std::optional<double> detected_time) {
  MonitorReport rep;
  rep.detected_time = detected_time;
  rep.t_star = verdict.t_star;
  if (!verdict.has_case()) {
    rep.note = "inapplicable: no blowup case holds";
    return rep;
  }
  rep.applicable = true;
  rep.note = "t_star uses the constant 1/c from the ODE y' >= c ||grad u||^2";

  const bool use_conserved = conserved.size() == virial.size();
  const auto k_of = [&](std::size_t k) {
    return use_conserved ? 2.0 * conserved[k].kinetic : virial[k].gradient_sq;
  };

  rep.worst_growth_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < virial.size(); ++k) {
    if (virial[k + 1].t <= 0.0) continue;
    if (!(virial[k + 1].y > virial[k].y)) ++rep.y_monotone_violations;
    if (!(virial[k + 1].V < virial[k].V)) ++rep.v_monotone_violations;
  }
  for (std::size_t k = 1; k + 1 < virial.size(); ++k) {
    const double h1 = virial[k].t - virial[k - 1].t;
    const double h2 = virial[k + 1].t - virial[k].t;
    const double dy = fd_first(virial[k - 1].y, virial[k].y, virial[k + 1].y, h1, h2);
    const double ck = verdict.c * k_of(k);
    ++rep.checked;
    if (ck > 0.0) rep.worst_growth_margin = std::min(rep.worst_growth_margin, (dy - ck) / ck);
    if (dy < ck * (1.0 - 0.05)) ++rep.y_growth_violations;
    const double d2v = fd_second(virial[k - 1].V, virial[k].V, virial[k + 1].V, h1, h2);
    if (d2v > 0.05 * std::abs(virial[k].V2_formula)) ++rep.concavity_violations;
  }
  if (rep.checked == 0) rep.worst_growth_margin = 0.0;
  rep.within_bound = detected_time && rep.t_star && *detected_time <= *rep.t_star;
  return rep;
}

}  // namespace nlslab
