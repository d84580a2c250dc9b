#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <new>
#include <span>
#include <vector>

#include "nlslab/errors.hpp"

namespace nlslab {

using cplx = std::complex<double>;

/// Minimal 64-byte aligned allocator so field storage can be handed straight
/// to FFTW's SIMD kernels.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), alignment));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using CVector = std::vector<cplx, AlignedAllocator<cplx>>;

/// Periodic box [-L/2, L/2)^n sampled with N points per axis.
///
/// Sample j on an axis sits at x_j = (j - N/2) dx, so the origin is the cell
/// with index N/2 on every axis. The dual lattice is stored in FFT order:
/// index m maps to xi = m/L for m < N/2 and (m - N)/L otherwise, which is the
/// exact DFT dual of the coordinate lattice under the exp(-2 pi i x.xi)
/// convention.
///
/// Grids are cheap to copy; the coordinate tables are shared and immutable.
class Grid {
 public:
  static constexpr int kMaxDim = 5;

  Grid(int dim, std::size_t points_per_axis, double length);

  int dim() const noexcept { return dim_; }
  std::size_t points_per_axis() const noexcept { return n_axis_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / static_cast<double>(n_axis_); }
  double cell_volume() const noexcept { return cell_volume_; }
  std::size_t size() const noexcept { return size_; }

  /// Coordinates x_j along one axis (all axes are identical).
  std::span<const double> axis_coords() const noexcept;
  /// Frequencies along one axis in FFT order.
  std::span<const double> axis_freqs() const noexcept;
  /// Signed integer frequency index along one axis in FFT order.
  std::span<const int> axis_modes() const noexcept;
  /// |x|^2 at every point.
  std::span<const double> radius_sq() const noexcept;
  /// |xi|^2 at every point of the dual lattice (FFT order).
  std::span<const double> freq_sq() const noexcept;

  /// Stride of axis `a` in the row-major layout (axis 0 slowest).
  std::size_t stride(int axis) const noexcept;
  /// Index along `axis` of linear index `i`.
  std::size_t axis_index(std::size_t i, int axis) const noexcept {
    return (i >> (log2_n_ * (dim_ - 1 - axis))) & (n_axis_ - 1);
  }

  bool operator==(const Grid& other) const noexcept {
    return dim_ == other.dim_ && n_axis_ == other.n_axis_ && length_ == other.length_;
  }

 private:
  struct Tables;

  int dim_;
  std::size_t n_axis_;
  int log2_n_;
  double length_;
  double cell_volume_;
  std::size_t size_;
  std::shared_ptr<const Tables> tables_;
};

/// Complex samples over a Grid. Used both for physical-space fields and for
/// spectra on the dual lattice; which one is meant is a property of the
/// producing operation.
class ComplexField {
 public:
  explicit ComplexField(Grid grid);
  ComplexField(Grid grid, CVector values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<cplx> values() noexcept { return values_; }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx* data() noexcept { return values_.data(); }
  const cplx* data() const noexcept { return values_.data(); }

  cplx& operator[](std::size_t i) noexcept { return values_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }

  bool all_finite() const noexcept;
  /// Throws DataError naming `what` if any sample is NaN or infinite.
  void require_finite(const char* what) const;

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(cplx factor) noexcept;

 private:
  Grid grid_;
  CVector values_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(cplx factor, ComplexField a);

}  // namespace nlslab
