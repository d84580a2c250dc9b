#pragma once

#include <string>

#include "nlslab/config.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

/// Samples u0 for the given profile on `grid`.
///   gaussian / chirped: A exp(-|x-x0|^2 / (2 sigma^2)) exp(i b |x-x0|^2)
///   ring:               A exp(-(|x-x0| - R)^2 / (2 sigma^2)) exp(i b |x-x0|^2)
///   sample file:        read via read_sample_file, grid must match.
ComplexField make_initial_data(const InitialDataSpec& spec, const Grid& grid);

// NLSF sample files. Header (32 bytes, little-endian):
//   0  char[4]  "NLSF"
//   4  u32      version (1)
//   8  u32      n
//   12 u32      N (points per axis, same on every axis)
//   16 f64      L
//   24 u64      reserved, zero
// followed by N^n (re, im) f64 pairs, row-major with axis 0 slowest.

ComplexField read_sample_file(const std::string& path);
void write_sample_file(const std::string& path, const ComplexField& field);

}  // namespace nlslab
