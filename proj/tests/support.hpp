#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "nlslab/field.hpp"

namespace testing {

using nlslab::ComplexField;
using nlslab::cplx;
using nlslab::Grid;

// SplitMix64; small, seedable, identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

inline double coord(const Grid& g, std::size_t i, int axis) {
  return g.axis_coords()[g.axis_index(i, axis)];
}

inline double radius_sq(const Grid& g, std::size_t i) {
  double r2 = 0.0;
  for (int a = 0; a < g.dim(); ++a) r2 += coord(g, i, a) * coord(g, i, a);
  return r2;
}

// Complex Gaussian exp(-alpha |x - c|^2) with Re alpha > 0.
inline ComplexField complex_gaussian(const Grid& g, cplx amplitude, cplx alpha,
                                     const std::vector<double>& centre = {}) {
  ComplexField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double d = coord(g, i, a) - (centre.empty() ? 0.0 : centre[a]);
      r2 += d * d;
    }
    f[i] = amplitude * std::exp(-alpha * r2);
  }
  return f;
}

// Exact free Schroedinger flow i u_t + Delta u = 0 of A exp(-alpha |x|^2):
// A (1 + 4 i alpha t)^{-n/2} exp(-alpha |x|^2 / (1 + 4 i alpha t)).
inline ComplexField free_gaussian(const Grid& g, cplx amplitude, cplx alpha, double t) {
  const cplx d = 1.0 + cplx(0.0, 4.0 * t) * alpha;
  return complex_gaussian(g, amplitude * std::pow(d, -0.5 * g.dim()), alpha / d);
}

// Smooth random field: a few random Gaussians with random linear phases.
inline ComplexField random_smooth(const Grid& g, Rng& rng, double width_lo, double width_hi,
                                  double amp = 1.0) {
  ComplexField f(g);
  const double half = 0.2 * g.length();
  const int bumps = rng.integer(1, 3);
  for (int b = 0; b < bumps; ++b) {
    const double w = rng.uniform(width_lo, width_hi);
    const cplx a{rng.uniform(-amp, amp), rng.uniform(-amp, amp)};
    std::vector<double> c(g.dim()), k(g.dim());
    for (int d = 0; d < g.dim(); ++d) {
      c[d] = rng.uniform(-half, half);
      k[d] = rng.uniform(-0.5, 0.5);
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      double r2 = 0.0, phase = 0.0;
      for (int d = 0; d < g.dim(); ++d) {
        const double x = coord(g, i, d) - c[d];
        r2 += x * x;
        phase += k[d] * x;
      }
      f[i] += a * std::exp(-r2 / (2.0 * w * w)) * std::polar(1.0, phase);
    }
  }
  return f;
}

// White noise, for properties that must hold on arbitrary lattice data.
inline ComplexField random_noise(const Grid& g, Rng& rng) {
  ComplexField f(g);
  for (auto& v : f.values()) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return f;
}

inline double l2_sq(const ComplexField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return s * f.grid().cell_volume();
}

inline double rel_l2(const ComplexField& a, const ComplexField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

inline double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Direct O(N^2n) quadrature of \int f(x) exp(-2 pi i x.xi) dx at xi = m/L.
inline ComplexField brute_force_transform(const ComplexField& f) {
  const Grid& g = f.grid();
  ComplexField out(g);
  const auto freqs = g.axis_freqs();
  for (std::size_t k = 0; k < g.size(); ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      double phase = 0.0;
      for (int a = 0; a < g.dim(); ++a) phase += coord(g, j, a) * freqs[g.axis_index(k, a)];
      acc += f[j] * std::polar(1.0, -2.0 * std::numbers::pi * phase);
    }
    out[k] = acc * g.cell_volume();
  }
  return out;
}

// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing
