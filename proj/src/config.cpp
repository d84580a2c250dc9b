#include "nlslab/config.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nlslab {
namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double Nonlinearity::potential_rate(double abs_sq) const noexcept {
  const auto term = [abs_sq](double lambda, double p) {
    if (lambda == 0.0 || abs_sq < std::numeric_limits<double>::min()) return 0.0;
    if (p == 2.0) return lambda * abs_sq;
    if (p == 4.0) return lambda * abs_sq * abs_sq;
    if (p == 1.0) return lambda * std::sqrt(abs_sq);
    return lambda * std::exp(0.5 * p * std::log(abs_sq));
  };
  return term(lambda1, p1) + term(lambda2, p2);
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::gaussian: return "gaussian";
    case Profile::chirped_gaussian: return "chirped-gaussian";
    case Profile::ring: return "ring";
    case Profile::sample_file: return "custom-sample-file";
  }
  return "?";
}

double energy_critical_power(int n) {
  return n > 2 ? 4.0 / (n - 2) : std::numeric_limits<double>::infinity();
}

double strauss_exponent(int n) {
  const double nd = n;
  return (2.0 - nd + std::sqrt(nd * nd + 12.0 * nd + 4.0)) / (2.0 * nd);
}

std::vector<double> uniform_times(double t0, double t1, double step) {
  std::vector<double> out;
  if (!(step > 0.0) || t1 < t0) return out;
  const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9));
  out.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) out.push_back(t0 + static_cast<double>(k) * step);
  if (std::abs(out.back() - t1) <= 1e-9 * step) out.back() = t1;
  return out;
}

std::vector<std::string> SimulationConfig::validate() const {
  std::vector<std::string> v;
  if (n < 1 || n > 5) v.push_back("dimension n must be in [1, 5], got " + std::to_string(n));
  if (lambda1 == 0.0) v.push_back("lambda1 must be a nonzero real constant");
  if (lambda2 == 0.0) v.push_back("lambda2 must be a nonzero real constant");
  if (!(p1 > 0.0)) v.push_back("p1 must be positive (0 < p1 < p2), got " + fmt(p1));
  if (!(p1 < p2)) v.push_back("powers must satisfy 0 < p1 < p2, got p1=" + fmt(p1) + " p2=" + fmt(p2));
  if (n >= 3 && p2 > energy_critical_power(n) * (1.0 + 1e-12))
    v.push_back("p2 must not exceed the energy-critical power 4/(n-2) = " +
                fmt(energy_critical_power(n)));
  if (points < 2 || (points & (points - 1)) != 0)
    v.push_back("grid.N must be a power of two, got " + std::to_string(points));
  if (!(length > 0.0) || !std::isfinite(length)) v.push_back("grid.L must be positive");
  if (!(t_end >= 0.0)) v.push_back("time.t_end must be nonnegative");
  if (!(dt_min > 0.0)) v.push_back("time.dt_min must be positive");
  if (!(dt_min <= dt_init && dt_init <= dt_max))
    v.push_back("time steps must satisfy dt_min <= dt_init <= dt_max");
  if (adaptive() && !(accuracy_target > 0.0))
    v.push_back("time.accuracy must be positive for adaptive stepping");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const double t = snapshot_times[i];
    if (t < 0.0 || t > t_end * (1.0 + 1e-12) + 1e-15) {
      v.push_back("snapshot time " + fmt(t) + " lies outside [0, t_end]");
      break;
    }
    if (i > 0 && !(t > snapshot_times[i - 1])) {
      v.push_back("snapshot times must be strictly increasing");
      break;
    }
  }
  if (snapshot_interval < 0.0) v.push_back("time.snapshot_interval must be nonnegative");
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) v.push_back("sentinel.eps_tail must lie in (0, 1)");
  if (!(eps_bnd > 0.0 && eps_bnd < 1.0)) v.push_back("sentinel.eps_bnd must lie in (0, 1)");
  if (sentinel_interval == 0) v.push_back("sentinel.interval must be at least 1");
  if (!(blowup_gradient_factor > 1.0)) v.push_back("blowup.gradient_factor must exceed 1");

  const auto& ic = initial;
  if (ic.profile != Profile::sample_file) {
    if (!(ic.width > 0.0)) v.push_back("initial.sigma must be positive");
    if (!std::isfinite(ic.amplitude)) v.push_back("initial.amplitude must be finite");
    if (!ic.offset.empty() && static_cast<int>(ic.offset.size()) != n)
      v.push_back("initial.offset must have n = " + std::to_string(n) + " components");
    if (ic.profile == Profile::gaussian && ic.chirp != 0.0)
      v.push_back("initial.chirp requires profile = chirped-gaussian or ring");
    if (ic.profile == Profile::ring && !(ic.ring_radius > 0.0))
      v.push_back("initial.radius must be positive for the ring profile");
  } else if (ic.sample_file.empty()) {
    v.push_back("initial.file is required for profile = custom-sample-file");
  }

  const auto& a = analysis;
  if (!(a.scattering_window > 0.0)) v.push_back("analysis.scattering_window must be positive");
  if (!(a.scattering_threshold > 0.0)) v.push_back("analysis.scattering_threshold must be positive");
  if (!(a.checkpoint_interval > 0.0)) v.push_back("analysis.checkpoint_interval must be positive");
  if (!(a.scattering_t_start >= 0.0)) v.push_back("analysis.scattering_t_start must be >= 0");
  if (!(a.decay_t1 >= 1.0 && a.decay_t2 > a.decay_t1))
    v.push_back("analysis decay window must satisfy 1 <= T1 < T2");
  return v;
}

std::vector<double> SimulationConfig::effective_snapshot_times() const {
  if (!snapshot_times.empty()) return snapshot_times;
  if (snapshot_interval > 0.0) {
    auto times = uniform_times(0.0, t_end, snapshot_interval);
    if (times.back() != t_end) times.push_back(t_end);
    return times;
  }
  return {t_end};
}

void SimulationConfig::require_valid() const {
  auto v = validate();
  if (!v.empty()) throw ConfigError(std::move(v));
}

std::vector<std::string> SimulationConfig::regime_flags() const {
  std::vector<std::string> flags;
  if (n < 3) flags.push_back("out-of-paper-regime: n < 3 leaves the energy-critical bound void");
  if (lambda2 > 0.0 && near(p1, mass_critical_power(n)))
    flags.push_back("conditional: p1 = 4/n endpoint results assume a global L2-critical theory");
  if (lambda1 > 0.0 && lambda2 > 0.0 && n >= 3 && p1 <= strauss_exponent(n) * (1.0 + 1e-12))
    flags.push_back("outside-sigma-scattering-hypotheses: p1 <= Strauss exponent " +
                    fmt(strauss_exponent(n)));
  return flags;
}

}  // namespace nlslab
