#pragma once

#include "nlslab/field.hpp"

namespace nlslab::fft {

// Thin FFTW wrapper. Plans are created once per (dim, N) with FFTW_ESTIMATE so
// that results are bit-reproducible across runs and threads; plan creation is
// serialized, execution is thread-safe.

/// Unnormalized in-place DFT, out[m] = sum_j in[j] exp(-2 pi i j.m / N).
void forward(const Grid& grid, cplx* data);
/// In-place inverse DFT including the 1/N^n normalization.
void inverse(const Grid& grid, cplx* data);

inline void forward(ComplexField& f) { forward(f.grid(), f.data()); }
inline void inverse(ComplexField& f) { inverse(f.grid(), f.data()); }

}  // namespace nlslab::fft
