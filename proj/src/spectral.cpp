#include "nlslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlslab/fft.hpp"

namespace nlslab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Expands per-axis factors into the full separable product over the grid.
CVector separable_product(const Grid& grid, const std::vector<cplx>& axis_factor) {
  CVector out(1, cplx{1.0, 0.0});
  const std::size_t n = grid.points_per_axis();
  for (int a = 0; a < grid.dim(); ++a) {
    CVector next(out.size() * n);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t k = 0; k < n; ++k) next[i * n + k] = out[i] * axis_factor[k];
    out.swap(next);
  }
  return out;
}

// (-1)^(sum of FFT indices): the phase that moves the DFT origin from the
// corner sample to the centered origin cell.
std::vector<cplx> checkerboard_axis(const Grid& grid) {
  std::vector<cplx> s(grid.points_per_axis());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = (k % 2 == 0) ? 1.0 : -1.0;
  return s;
}

}  // namespace

double abs_pow(double abs_value, double r) noexcept {
  if (abs_value < 1e-300) return 0.0;
  if (r == 2.0) return abs_value * abs_value;
  if (r == 4.0) {
    const double s = abs_value * abs_value;
    return s * s;
  }
  if (r == 6.0) {
    const double s = abs_value * abs_value;
    return s * s * s;
  }
  return std::exp(r * std::log(abs_value));
}

ComplexField transform(const ComplexField& f, Direction direction) {
  f.require_finite("transform");
  const Grid& g = f.grid();
  const CVector sign = separable_product(g, checkerboard_axis(g));
  ComplexField out = f;
  if (direction == Direction::forward) {
    fft::forward(out);
    const double w = g.cell_volume();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= w * sign[i].real();
  } else {
    const double w = 1.0 / g.cell_volume();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= w * sign[i].real();
    fft::inverse(out);
  }
  return out;
}

ComplexField apply_multiplier(const ComplexField& f,
                              const std::function<cplx(std::size_t)>& multiplier) {
  ComplexField out = f;
  fft::forward(out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= multiplier(k);
  fft::inverse(out);
  return out;
}

ComplexField free_propagate(const ComplexField& f, double t) {
  f.require_finite("free_propagate");
  if (t == 0.0) return f;
  const Grid& g = f.grid();
  const auto freqs = g.axis_freqs();
  std::vector<cplx> axis(freqs.size());
  const double c = -2.0 * kTwoPi * std::numbers::pi * t;  // -4 pi^2 t
  for (std::size_t k = 0; k < freqs.size(); ++k) axis[k] = std::polar(1.0, c * freqs[k] * freqs[k]);
  const CVector mult = separable_product(g, axis);
  ComplexField out = f;
  fft::forward(out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= mult[k];
  fft::inverse(out);
  return out;
}

ComplexField fractional_derivative(const ComplexField& f, double s, MeanMode mean_mode) {
  f.require_finite("fractional_derivative");
  if (s == 0.0) return f;
  const auto xi2 = f.grid().freq_sq();
  ComplexField out = f;
  fft::forward(out);
  if (s < 0.0 && mean_mode == MeanMode::reject) {
    double total = 0.0;
    for (const auto& v : out.values()) total += std::norm(v);
    if (std::abs(out[0]) > 1e-12 * std::sqrt(total))
      throw SingularModeError(
          "negative-order derivative of a field with nonzero mean; zero the mean or use "
          "MeanMode::zero");
  }
  out[0] = 0.0;
  for (std::size_t k = 1; k < out.size(); ++k) out[k] *= std::pow(kTwoPi * std::sqrt(xi2[k]), s);
  fft::inverse(out);
  return out;
}

std::vector<ComplexField> gradient(const ComplexField& f) {
  f.require_finite("gradient");
  const Grid& g = f.grid();
  ComplexField spec = f;
  fft::forward(spec);
  const auto freqs = g.axis_freqs();
  const auto modes = g.axis_modes();
  const int nyquist = -static_cast<int>(g.points_per_axis() / 2);
  std::vector<ComplexField> out;
  out.reserve(g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    ComplexField d = spec;
    for (std::size_t k = 0; k < d.size(); ++k) {
      const std::size_t ka = g.axis_index(k, a);
      d[k] *= modes[ka] == nyquist ? cplx{} : cplx{0.0, kTwoPi * freqs[ka]};
    }
    fft::inverse(d);
    out.push_back(std::move(d));
  }
  return out;
}

ComplexField laplacian(const ComplexField& f) {
  f.require_finite("laplacian");
  const auto xi2 = f.grid().freq_sq();
  const double c = -kTwoPi * kTwoPi;
  ComplexField out = f;
  fft::forward(out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= c * xi2[k];
  fft::inverse(out);
  return out;
}

double lp_bump(double r) noexcept {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const auto smooth = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double a = smooth(2.0 - r);
  const double b = smooth(r - 1.0);
  return a / (a + b);
}

ComplexField lp_project(const ComplexField& f, LpKind kind, double n_scale, double m_scale) {
  f.require_finite("lp_project");
  if (!(n_scale > 0.0)) throw DataError("Littlewood-Paley scale must be positive");
  if (kind == LpKind::annulus && !(m_scale > 0.0 && m_scale < n_scale))
    throw DataError("annulus projection requires 0 < M < N");
  const auto xi2 = f.grid().freq_sq();
  ComplexField out = f;
  fft::forward(out);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double r = std::sqrt(xi2[k]);
    double m = 0.0;
    switch (kind) {
      case LpKind::band: m = lp_bump(r / n_scale) - lp_bump(2.0 * r / n_scale); break;
      case LpKind::low: m = lp_bump(r / n_scale); break;
      case LpKind::high: m = 1.0 - lp_bump(r / n_scale); break;
      case LpKind::annulus: m = lp_bump(r / n_scale) - lp_bump(r / m_scale); break;
    }
    out[k] *= m;
  }
  fft::inverse(out);
  return out;
}

std::vector<double> lp_dyadic_scales(const Grid& grid) {
  const double lowest = 1.0 / grid.length();
  const double highest =
      std::sqrt(static_cast<double>(grid.dim())) * 0.5 * grid.points_per_axis() / grid.length();
  double scale = std::exp2(std::floor(std::log2(lowest)));
  std::vector<double> scales;
  while (true) {
    scales.push_back(scale);
    if (scale >= highest) break;
    scale *= 2.0;
  }
  return scales;
}

double lp_power(const ComplexField& f, double r) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += abs_pow(std::abs(v), r);
  return sum * f.grid().cell_volume();
}

double sup_norm(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double gradient_norm_sq(const ComplexField& f) {
  const auto xi2 = f.grid().freq_sq();
  ComplexField spec = f;
  fft::forward(spec);
  double sum = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) sum += xi2[k] * std::norm(spec[k]);
  return kTwoPi * kTwoPi * sum * f.grid().cell_volume() / static_cast<double>(f.size());
}

double weighted_norm_sq(const ComplexField& f) {
  const auto r2 = f.grid().radius_sq();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += r2[i] * std::norm(f[i]);
  return sum * f.grid().cell_volume();
}

double inner_product_re(const ComplexField& f, const ComplexField& g) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += (f[i] * std::conj(g[i])).real();
  return sum * f.grid().cell_volume();
}

double sobolev_norm(const ComplexField& f, NormSpec spec) {
  switch (spec.kind) {
    case NormKind::l2: return std::sqrt(lp_power(f, 2.0));
    case NormKind::h1_dot: return std::sqrt(gradient_norm_sq(f));
    case NormKind::h1: return std::sqrt(lp_power(f, 2.0) + gradient_norm_sq(f));
    case NormKind::hs_dot: {
      // Mean mode is excluded for negative orders (zeroed-mode convention).
      const auto xi2 = f.grid().freq_sq();
      ComplexField s = f;
      fft::forward(s);
      double sum = spec.exponent == 0.0 ? std::norm(s[0]) : 0.0;
      for (std::size_t k = 1; k < s.size(); ++k)
        sum += std::pow(kTwoPi * kTwoPi * xi2[k], spec.exponent) * std::norm(s[k]);
      return std::sqrt(sum * f.grid().cell_volume() / static_cast<double>(f.size()));
    }
    case NormKind::lr: {
      if (std::isinf(spec.exponent)) return sup_norm(f);
      if (!(spec.exponent >= 1.0)) throw DataError("L^r norm requires r >= 1");
      return std::pow(lp_power(f, spec.exponent), 1.0 / spec.exponent);
    }
    case NormKind::weight: return std::sqrt(weighted_norm_sq(f));
    case NormKind::sigma:
      return std::sqrt(lp_power(f, 2.0) + gradient_norm_sq(f)) + std::sqrt(weighted_norm_sq(f));
  }
  return 0.0;
}

}  // namespace nlslab
