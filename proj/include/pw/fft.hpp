#pragma once

#include <vector>

#include "pw/field.hpp"

// Discrete Fourier machinery in the e^{-2 pi i x xi} convention: the forward
// continuous transform is F(xi) = int f(x) e^{-2 pi i x xi} dx and frequencies
// are in cycles per unit length.

namespace pw {

// Raw unnormalized DFT along a vector / both axes of a row-major matrix.
// sign = -1 is the forward transform; the inverse helpers divide by n.
void dft_inplace(CVec& v, int sign);
void idft_inplace(CVec& v);
void dft2_inplace(CMat& m, int sign);
void idft2_inplace(CMat& m);

// Per-row transforms of a row-major matrix (length = cols, one per row).
void dft_rows_inplace(CMat& m, int sign);
void idft_rows_inplace(CMat& m);

// Frequencies (cycles/unit) in FFT storage order for a grid.
std::vector<double> fft_freq(const Grid1D& g);

// Continuous-normalized centered spectrum: F(xi_m) on freq_grid(g), with
// xi = 0 stored at node n/2.
Profile1D spectrum(const Profile1D& f);
// Inverse of `spectrum` back onto the original grid.
Profile1D inverse_spectrum(const Profile1D& spec, const Grid1D& target);

// 2D centered spectrum of a speed field: axes (xi, eta), values(ieta, ixi).
SpeedField spectrum2(const SpeedField& f);
SpeedField inverse_spectrum2(const SpeedField& spec, const Grid1D& gz, const Grid1D& gc);

// Apply the spectral multiplier m(xi) in place (f given in physical space).
template <class Fn>
void apply_multiplier(Profile1D& f, Fn&& mult) {
  CVec v = f.values;
  dft_inplace(v, -1);
  const auto xi = fft_freq(f.grid_z);
  for (int k = 0; k < f.grid_z.n_points; ++k) v[k] *= mult(xi[k]);
  idft_inplace(v);
  f.values = std::move(v);
}

}  // namespace pw
