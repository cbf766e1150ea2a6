#pragma once

#include <utility>

#include "pw/field.hpp"

namespace pw {

struct PwtOptions {
  int interp_order = 3;       // local polynomial order for off-grid lookups
  double support_tol = 1e-10; // numerical-support threshold for truncation checks
  int pad_factor = 2;         // zero padding for the spectral route
  double xval_tol = 1e-4;     // cross-validation tolerance (spectral vs direct)
};

struct TransformStats {
  bool truncated = false;        // integrand support left the z box
  long off_grid_hits = 0;        // evaluations that fell outside the z box
  bool bandwidth_warning = false;// k grid too narrow (product_transform)
  double residual = 0.0;         // residual vs the direct route, when computed
};

// Direct quadrature of (Tf)(x,y) = int f(x - c y, c) dc on the target grids.
PhysField2D pwt_direct(const SpeedField& f, const Grid1D& gx, const Grid1D& gy,
                       const PwtOptions& opt = {}, TransformStats* stats = nullptr);

// Fourier-slice evaluation: per y-row, sample the 2D spectrum of f along
// eta = y xi and invert in xi.
PhysField2D pwt_spectral(const SpeedField& f, const Grid1D& gx, const Grid1D& gy,
                         const PwtOptions& opt = {}, TransformStats* stats = nullptr);

// Sample a centered 2D spectrum (axes xi, eta) along the line eta = slope*xi.
// slope == 0 returns the stored eta = 0 row bitwise; off-grid points are 0.
Profile1D spectrum_line_sample(const SpeedField& spec, double slope, int order = 3);

// Slice inversion: recovers the part of f whose z-spectrum avoids the band
// |xi| < xi_cutoff. Output grids default to (u.grid_x, u.grid_y).
SpeedField pwt_inverse(const PhysField2D& u, double xi_cutoff,
                       const PwtOptions& opt = {}, const Grid1D* gz = nullptr,
                       const Grid1D* gc = nullptr);

// grad(Tf) = (T(f_z), -T(c f_z)) with spectral z-differentiation.
std::pair<PhysField2D, PhysField2D> pwt_gradient(const SpeedField& f, const Grid1D& gx,
                                                 const Grid1D& gy,
                                                 const PwtOptions& opt = {});

// Spectral z-derivative of every slice.
SpeedField dz(const SpeedField& f);
Profile1D dz(const Profile1D& f);

// Pairing identity: lhs = int (Tf)(x,y) g(x,y) dx dy with g read on its own
// grids as a physical field; rhs = int f(z,c) (Tg)(z,-c) dz dc.
std::pair<cd, cd> parseval_pairing(const SpeedField& f, const SpeedField& g,
                                   const PwtOptions& opt = {});

struct L2SpectrumResult {
  double value = 0.0;   // quadrature of |F_z f|^2 / |xi| outside the cutoff band
  bool divergent = false;
};

// ||Tf||_{L2}^2 via the 1/|xi| spectral weight. The |xi| < cutoff band is
// excised (default: the xi = 0 cell); the divergence flag fires when the
// integrand keeps growing into the smallest resolved frequencies.
L2SpectrumResult l2_norm_via_spectrum(const SpeedField& f, double xi_cutoff = 0.0,
                                      double growth_factor = 1.5);

// Interpolation bound ||Tf||_p^2 <= int |c-c'|^{-2/p} ||f(c)||_{p/2} ||f(c')||_{p/2}.
// Singular cells |i-j| <= 1 are integrated with the exact power-law
// antiderivative. Requires p > 2.
std::pair<double, double> lp_bound_pair(const SpeedField& f, double p, const Grid1D& gx,
                                        const Grid1D& gy, const PwtOptions& opt = {});

// T(f1 (x) f2)(., y): equals f1 * f2 for y = 1, f1 * Theta_y f2 in general and
// (int f2) f1 for y = 0.
Profile1D convolve_via_pwt(const Profile1D& f1, const Profile1D& f2, double y,
                           const Grid1D& target_x, const PwtOptions& opt = {});

// T(fg) via the modulated-product identity, quadratured over k_grid.
PhysField2D product_transform(const SpeedField& f, const SpeedField& g,
                              const Grid1D& k_grid, const Grid1D& gx, const Grid1D& gy,
                              const PwtOptions& opt = {}, TransformStats* stats = nullptr);

struct XNormReport {
  double l1c_h1z = 0.0;   // ||f||_{L1_c(H1_z)}
  double linfc_l2z = 0.0; // ||f||_{Linf_c(L2_z)}
  double x_norm = 0.0;    // their sum
};
XNormReport x_norm(const SpeedField& f);

struct StabilityWeights {
  double m_decay = 0.0; // ||f/(1+c^2)^{1/2}||_{L1_c(L1_z)}
  double m_grad = 0.0;  // ||f_z||_{L1_c(L1_z)}
  double m_h2 = 0.0;    // ||f||_{L1_c(H2_z)}
  double m_ch2 = 0.0;   // ||c f||_{L1_c(H2_z)}
  double m_total = 0.0;
};
StabilityWeights stability_weights(const SpeedField& f);

struct GwpWeight {
  double l1c_h2 = 0.0;  // ||(1+c^3)(1+|z|) f||_{L1_c(H2_z)}
  double linfc_h2 = 0.0;// same in Linf_c
};
GwpWeight gwp_weight(const SpeedField& f);

}  // namespace pw
