#pragma once

#include <functional>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

// Fourier conventions used throughout the library:
//
//   \hat f(xi) = \int exp(-2 pi i x.xi) f(x) dx
//
// so the free propagator exp(it Delta) is the multiplier exp(-4 pi^2 i t |xi|^2),
// d/dx_j is 2 pi i xi_j, and |grad|^s is (2 pi |xi|)^s. With this choice
// |grad|^2 = -Delta exactly and the kinetic energy 1/2 ||grad u||^2 has no
// stray factors of 2 pi.

enum class Direction { forward, inverse };

/// Fourier transform sampled on the dual lattice (FFT order).
///
/// Forward returns dx^n-weighted DFT samples equal to quadrature values of
/// \hat f at each lattice frequency; inverse undoes it exactly.
ComplexField transform(const ComplexField& f, Direction direction);

/// exp(it Delta) f via the exact spectral multiplier.
ComplexField free_propagate(const ComplexField& f, double t);

/// What to do with the xi = 0 mode under a negative-power multiplier.
enum class MeanMode { reject, zero };

/// |grad|^s f, multiplier (2 pi |xi|)^s. For s < 0 the mean mode is either
/// rejected (SingularModeError when nonzero) or zeroed.
ComplexField fractional_derivative(const ComplexField& f, double s,
                                   MeanMode mean_mode = MeanMode::reject);

/// Spectral partial derivatives d/dx_j for every axis. The Nyquist mode is
/// dropped since an odd-order multiplier has no symmetric value there.
std::vector<ComplexField> gradient(const ComplexField& f);

/// Spectral Laplacian, multiplier -4 pi^2 |xi|^2.
ComplexField laplacian(const ComplexField& f);

/// Multiplies the raw DFT of `f` by `multiplier(k)` for every lattice index k
/// and transforms back.
ComplexField apply_multiplier(const ComplexField& f,
                              const std::function<cplx(std::size_t)>& multiplier);

// ---------------------------------------------------------------------------
// Littlewood-Paley projections.

/// Smooth radial bump equal to 1 on [0, 1] and 0 on [2, inf).
double lp_bump(double r) noexcept;

enum class LpKind { band, low, high, annulus };

/// Smooth Littlewood-Paley projection with dyadic scale `n_scale`:
///   band:    phi(xi/N) - phi(2 xi/N)   (P_N)
///   low:     phi(xi/N)                 (P_{<=N})
///   high:    1 - phi(xi/N)             (P_{>N})
///   annulus: phi(xi/N) - phi(xi/M)     (P_{M < . <= N}, requires M < N)
ComplexField lp_project(const ComplexField& f, LpKind kind, double n_scale,
                        double m_scale = 0.0);

/// Dyadic scales whose bands cover every nonzero lattice frequency; summing
/// P_N over them reproduces f minus its mean mode.
std::vector<double> lp_dyadic_scales(const Grid& grid);

// ---------------------------------------------------------------------------
// Norms and integrals (cell quadrature with weight dx^n).

enum class NormKind { l2, h1_dot, h1, hs_dot, lr, weight, sigma };

/// Norm selector. `exponent` is s for hs_dot and r for lr (r = inf allowed).
struct NormSpec {
  NormKind kind = NormKind::l2;
  double exponent = 0.0;

  static NormSpec L2() { return {NormKind::l2, 0.0}; }
  static NormSpec H1dot() { return {NormKind::h1_dot, 0.0}; }
  static NormSpec H1() { return {NormKind::h1, 0.0}; }
  static NormSpec Hdot(double s) { return {NormKind::hs_dot, s}; }
  static NormSpec Lr(double r) { return {NormKind::lr, r}; }
  /// ||x f||_2 with the grid's centered coordinates.
  static NormSpec Weight() { return {NormKind::weight, 0.0}; }
  /// ||f||_{H^1} + ||x f||_2.
  static NormSpec Sigma() { return {NormKind::sigma, 0.0}; }
};

double sobolev_norm(const ComplexField& f, NormSpec spec);

/// \int |f|^r dx. Amplitudes below 1e-300 contribute zero.
double lp_power(const ComplexField& f, double r);
/// max |f|.
double sup_norm(const ComplexField& f);
/// ||grad f||_2^2 via Parseval.
double gradient_norm_sq(const ComplexField& f);
/// ||x f||_2^2.
double weighted_norm_sq(const ComplexField& f);
/// Real L^2 inner product Re \int f conj(g).
double inner_product_re(const ComplexField& f, const ComplexField& g);

/// |u|^r with the underflow flush used by every quadrature in the library.
double abs_pow(double abs_value, double r) noexcept;

}  // namespace nlslab
