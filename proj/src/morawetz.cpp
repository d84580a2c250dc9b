#include "nlslab/morawetz.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <tuple>

#include "nlslab/fft.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

// ---------------------------------------------------------------------------
// Admissibility

Exponent::Exponent(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0 || num <= 0 || den < 0) throw DataError("exponent must be a positive rational");
  const auto g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

double Exponent::value() const noexcept {
  return is_infinite() ? std::numeric_limits<double>::infinity()
                       : static_cast<double>(num_) / static_cast<double>(den_);
}

bool admissible_pair(Exponent q, Exponent r, int n) {
  // 1/e as a fraction (0 for infinity); compare against 1/2 for the lower bound.
  const auto inv = [](Exponent e) {
    return e.is_infinite() ? std::pair<std::int64_t, std::int64_t>{0, 1}
                           : std::pair<std::int64_t, std::int64_t>{e.den(), e.num()};
  };
  const auto [qa, qb] = inv(q);
  const auto [ra, rb] = inv(r);
  if (2 * qa > qb || 2 * ra > rb) return false;  // q, r >= 2
  // 2 qa/qb + n ra/rb == n/2  <=>  4 qa rb + 2 n ra qb == n qb rb
  return 4 * qa * rb + 2 * static_cast<std::int64_t>(n) * ra * qb ==
         static_cast<std::int64_t>(n) * qb * rb;
}

// ---------------------------------------------------------------------------
// Coulomb convolution

double coulomb_cell_average(int n, double s, double dx) {
  if (s >= n) throw NonIntegrableKernelError("|x|^{-s} is not locally integrable for s >= n");
  using Gauss = boost::math::quadrature::gauss<double, 30>;
  // Unit cube = 2n pyramids over its faces; the radial integral is exact and
  // the face integral of |(1/2, y)|^{-s} over [-1/2, 1/2]^{n-1} is smooth.
  std::function<double(int, double)> face = [&](int remaining, double r2) -> double {
    if (remaining == 0) return std::pow(r2, -0.5 * s);
    return Gauss::integrate([&](double y) { return face(remaining - 1, r2 + y * y); }, -0.5, 0.5);
  };
  const double unit = 2.0 * n * 0.5 / (n - s) * face(n - 1, 0.25);
  return unit * std::pow(dx, -s);
}

namespace {

enum class KernelKind { power, unit_component };

using KernelKey = std::tuple<int, std::size_t, double, int, double>;

std::shared_ptr<const CVector> kernel_spectrum(const Grid& g, KernelKind kind, double param) {
  static std::mutex mutex;
  static std::map<KernelKey, std::shared_ptr<const CVector>> cache;
  const KernelKey key{g.dim(), g.points_per_axis(), g.length(), static_cast<int>(kind), param};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const double dx = g.dx();
  const double half = 0.5 * g.length();
  const auto modes = g.axis_modes();
  const int axis = static_cast<int>(param);
  const double origin = kind == KernelKind::power ? coulomb_cell_average(g.dim(), param, dx) : 0.0;

  auto spec = std::make_shared<CVector>(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double d = modes[g.axis_index(k, a)] * dx;
      r2 += d * d;
    }
    const double r = std::sqrt(r2);
    double value = 0.0;
    if (k == 0) {
      value = origin;
    } else if (r < half) {
      value = kind == KernelKind::power ? std::pow(r, -param)
                                        : modes[g.axis_index(k, axis)] * dx / r;
    }
    (*spec)[k] = value;
  }
  fft::forward(g, spec->data());

  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(spec));
  return it->second;
}

ComplexField convolve_with(const ComplexField& rho, const CVector& kernel_hat) {
  ComplexField out = rho;
  fft::forward(out);
  const double w = rho.grid().cell_volume();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= kernel_hat[k] * w;
  fft::inverse(out);
  return out;
}

ComplexField real_part(const ComplexField& f) {
  ComplexField out = f;
  for (auto& v : out.values()) v = v.real();
  return out;
}

double integrate_real(const ComplexField& a, const ComplexField& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i].real() * b[i].real();
  return sum * a.grid().cell_volume();
}

}  // namespace

ComplexField coulomb_convolve(const ComplexField& rho, double s) {
  rho.require_finite("coulomb_convolve");
  const Grid& g = rho.grid();
  if (s >= g.dim()) throw NonIntegrableKernelError("|x|^{-s} is not locally integrable for s >= n");
  return real_part(convolve_with(real_part(rho), *kernel_spectrum(g, KernelKind::power, s)));
}

MorawetzRecord interaction_terms(const ComplexField& u, const SimulationConfig& cfg, double t) {
  const Grid& g = u.grid();
  const int n = g.dim();
  if (n < 3) throw InapplicableError("interaction Morawetz terms require n >= 3");
  u.require_finite("interaction_terms");

  MorawetzRecord rec;
  rec.t = t;
  ComplexField rho(g);
  for (std::size_t i = 0; i < u.size(); ++i) rho[i] = std::norm(u[i]);

  if (n == 3) {
    rec.term_A = 4.0 * std::numbers::pi * lp_power(u, 4.0);
  } else {
    rec.term_A = (n - 3) * integrate_real(rho, coulomb_convolve(rho, 3.0));
  }

  const ComplexField pot = coulomb_convolve(rho, 1.0);
  const auto b_term = [&](double lambda, double p) {
    if (lambda == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      sum += pot[i].real() * abs_pow(std::abs(u[i]), p + 2.0);
    return 2.0 * (n - 1) * lambda * p / (p + 2.0) * sum * g.cell_volume();
  };
  rec.term_B1 = b_term(cfg.lambda1, cfg.p1);
  rec.term_B2 = b_term(cfg.lambda2, cfg.p2);

  const auto grad = gradient(u);
  double m = 0.0;
  for (int a = 0; a < n; ++a) {
    ComplexField current(g);
    for (std::size_t i = 0; i < u.size(); ++i) current[i] = (std::conj(u[i]) * grad[a][i]).imag();
    const auto kernel = kernel_spectrum(g, KernelKind::unit_component, a);
    m += integrate_real(current, real_part(convolve_with(rho, *kernel)));
  }
  rec.M_interact = 2.0 * m;
  return rec;
}

// ---------------------------------------------------------------------------
// Budget and spacetime norms

MorawetzBudgetReport morawetz_budget_check(const std::vector<MorawetzRecord>& records,
                                           const std::vector<NormSample>& norms,
                                           const SimulationConfig& cfg) {
  MorawetzBudgetReport rep;
  if (!(cfg.lambda1 > 0.0 && cfg.lambda2 > 0.0)) {
    rep.note = "inapplicable: budget requires defocusing couplings";
    return rep;
  }
  if (records.size() != norms.size()) throw DataError("records and norm samples differ in length");
  rep.applicable = true;
  if (records.empty()) {
    rep.within_budget = rep.integrand_nonnegative = rep.accumulation_monotone = true;
    return rep;
  }

  double sup_h1 = 0.0, sup_l2 = 0.0, sup_grad = 0.0, scale = 0.0;
  for (const auto& s : norms) {
    sup_h1 = std::max(sup_h1, s.h1);
    sup_l2 = std::max(sup_l2, s.l2);
    sup_grad = std::max(sup_grad, s.grad);
  }
  std::vector<double> f(records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    f[k] = records[k].integrand(cfg.n);
    scale = std::max(scale, std::abs(f[k]));
  }
  rep.integrand_nonnegative =
      std::all_of(f.begin(), f.end(), [&](double v) { return v >= -1e-12 * scale; });

  rep.cumulative.assign(records.size(), 0.0);
  rep.accumulation_monotone = true;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const double dt = records[k].t - records[k - 1].t;
    rep.cumulative[k] = rep.cumulative[k - 1] + 0.5 * dt * (f[k] + f[k - 1]);
    if (rep.cumulative[k] < rep.cumulative[k - 1]) rep.accumulation_monotone = false;
  }
  rep.integrated_lhs = rep.cumulative.back();
  rep.budget = 4.0 * std::pow(sup_h1, 4.0);
  rep.sharp_budget = 4.0 * std::pow(sup_l2, 3.0) * sup_grad;
  rep.ratio = rep.budget > 0.0 ? rep.integrated_lhs / rep.budget : 0.0;
  rep.within_budget = rep.integrated_lhs <= rep.budget * 1.05;

  std::vector<double> t(norms.size()), z(norms.size());
  for (std::size_t k = 0; k < norms.size(); ++k) {
    t[k] = norms[k].t;
    z[k] = norms[k].z_space;
  }
  if (norms.size() >= 2) {
    const double rz = 2.0 * (cfg.n + 1) / (cfg.n - 1.0);
    rep.z_norm = spacetime_norm({static_cast<double>(cfg.n + 1), rz, t.front(), t.back()}, t, z);
    rep.z_ratio = sup_h1 > 0.0 ? rep.z_norm / sup_h1 : 0.0;
  }
  return rep;
}

MorawetzBudgetReport morawetz_budget_check(const std::vector<MorawetzRecord>& records,
                                           const std::vector<Snapshot>& fields,
                                           const SimulationConfig& cfg) {
  const double rz = 2.0 * (cfg.n + 1) / (cfg.n - 1.0);
  std::vector<NormSample> norms;
  norms.reserve(fields.size());
  for (const auto& s : fields) {
    const double l2 = std::sqrt(lp_power(s.u, 2.0));
    const double grad = std::sqrt(gradient_norm_sq(s.u));
    norms.push_back({s.t, std::sqrt(l2 * l2 + grad * grad), l2, grad,
                     std::pow(lp_power(s.u, rz), 1.0 / rz)});
  }
  return morawetz_budget_check(records, norms, cfg);
}

double spacetime_norm(const SpacetimeNormSpec& spec, const std::vector<double>& t,
                      const std::vector<double>& spatial) {
  if (!(spec.q >= 1.0) || !(spec.r >= 1.0)) throw DataError("spacetime exponents must be >= 1");
  if (t.size() != spatial.size()) throw DataError("time and norm samples differ in length");
  const double tol = 1e-9 * std::max({1.0, std::abs(spec.t_a), std::abs(spec.t_b)});
  std::vector<double> ts, vs;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (t[k] >= spec.t_a - tol && t[k] <= spec.t_b + tol) {
      ts.push_back(t[k]);
      vs.push_back(spatial[k]);
    }
  if (std::isinf(spec.q)) {
    if (vs.empty()) throw DataError("no snapshots inside the time interval");
    return *std::max_element(vs.begin(), vs.end());
  }
  if (ts.size() < 2) throw DataError("a finite time exponent needs at least two snapshots");
  double sum = 0.0;
  for (std::size_t k = 1; k < ts.size(); ++k)
    sum += 0.5 * (ts[k] - ts[k - 1]) * (std::pow(vs[k], spec.q) + std::pow(vs[k - 1], spec.q));
  return std::pow(sum, 1.0 / spec.q);
}

double spacetime_norm(const SpacetimeNormSpec& spec, const std::vector<Snapshot>& snapshots,
                      SpacetimeKind kind) {
  std::vector<double> t, v;
  const NormSpec space = NormSpec::Lr(spec.r);
  for (const auto& s : snapshots) {
    t.push_back(s.t);
    if (kind == SpacetimeKind::plain) {
      v.push_back(sobolev_norm(s.u, space));
    } else {
      const auto grad = gradient(s.u);
      ComplexField mag(s.u.grid());
      for (std::size_t i = 0; i < mag.size(); ++i) {
        double sq = 0.0;
        for (const auto& g : grad) sq += std::norm(g[i]);
        mag[i] = std::sqrt(sq);
      }
      v.push_back(sobolev_norm(mag, space));
    }
  }
  return spacetime_norm(spec, t, v);
}

}  // namespace nlslab
