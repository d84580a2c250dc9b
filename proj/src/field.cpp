#include "nlslab/field.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace nlslab {

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error([&] {
        std::ostringstream os;
        os << "invalid configuration (" << violations.size() << " problem"
           << (violations.size() == 1 ? "" : "s") << ")";
        for (const auto& v : violations) os << "\n  - " << v;
        return os.str();
      }()),
      violations_(std::move(violations)) {}

struct Grid::Tables {
  std::vector<double> coords;
  std::vector<double> freqs;
  std::vector<int> modes;
  std::vector<double> radius_sq;
  std::vector<double> freq_sq;
  std::vector<std::size_t> strides;
};

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Fills out[i] = sum over axes of axis_values[index along axis]^2.
void fill_separable_sq(std::vector<double>& out, const std::vector<double>& axis_values,
                       int dim) {
  const std::size_t n = axis_values.size();
  out.assign(1, 0.0);
  for (int a = 0; a < dim; ++a) {
    std::vector<double> next(out.size() * n);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t k = 0; k < n; ++k)
        next[i * n + k] = out[i] + axis_values[k] * axis_values[k];
    out.swap(next);
  }
}

}  // namespace

Grid::Grid(int dim, std::size_t points_per_axis, double length)
    : dim_(dim), n_axis_(points_per_axis), log2_n_(0), length_(length) {
  if (dim < 1 || dim > kMaxDim)
    throw DataError("grid dimension must be in [1, 5], got " + std::to_string(dim));
  if (!is_power_of_two(points_per_axis) || points_per_axis < 2)
    throw DataError("points per axis must be a power of two >= 2, got " +
                    std::to_string(points_per_axis));
  if (!(length > 0.0) || !std::isfinite(length))
    throw DataError("box length must be positive and finite");

  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= n_axis_;
  log2_n_ = std::countr_zero(n_axis_);
  cell_volume_ = std::pow(dx(), dim);

  auto t = std::make_shared<Tables>();
  const auto n = static_cast<long>(n_axis_);
  t->coords.resize(n_axis_);
  t->freqs.resize(n_axis_);
  t->modes.resize(n_axis_);
  for (long j = 0; j < n; ++j) {
    t->coords[j] = static_cast<double>(j - n / 2) * dx();
    const long m = j < n / 2 ? j : j - n;
    t->modes[j] = static_cast<int>(m);
    t->freqs[j] = static_cast<double>(m) / length;
  }
  fill_separable_sq(t->radius_sq, t->coords, dim);
  fill_separable_sq(t->freq_sq, t->freqs, dim);
  t->strides.resize(dim);
  std::size_t s = 1;
  for (int a = dim - 1; a >= 0; --a) {
    t->strides[a] = s;
    s *= n_axis_;
  }
  tables_ = std::move(t);
}

std::span<const double> Grid::axis_coords() const noexcept { return tables_->coords; }
std::span<const double> Grid::axis_freqs() const noexcept { return tables_->freqs; }
std::span<const int> Grid::axis_modes() const noexcept { return tables_->modes; }
std::span<const double> Grid::radius_sq() const noexcept { return tables_->radius_sq; }
std::span<const double> Grid::freq_sq() const noexcept { return tables_->freq_sq; }
std::size_t Grid::stride(int axis) const noexcept { return tables_->strides[axis]; }

ComplexField::ComplexField(Grid grid) : grid_(std::move(grid)), values_(grid_.size()) {}

ComplexField::ComplexField(Grid grid, CVector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DataError("field has " + std::to_string(values_.size()) + " samples, grid expects " +
                    std::to_string(grid_.size()));
}

bool ComplexField::all_finite() const noexcept {
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void ComplexField::require_finite(const char* what) const {
  if (!all_finite()) throw DataError(std::string(what) + ": field contains non-finite samples");
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  if (!(grid_ == other.grid_)) throw DataError("field arithmetic on mismatched grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  if (!(grid_ == other.grid_)) throw DataError("field arithmetic on mismatched grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(cplx factor) noexcept {
  for (auto& v : values_) v *= factor;
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(cplx factor, ComplexField a) { return a *= factor; }

}  // namespace nlslab
