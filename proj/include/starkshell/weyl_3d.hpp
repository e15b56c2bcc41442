// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>

#include "starkshell/types.hpp"

namespace starkshell {

// Propagator kernel of exp(-i t H_F), H_F = -Delta + F x1:
//   (4 pi i t)^{-3/2} exp( i|x-y|^2/(4t) - i F t (x1+y1)/2 - i F^2 t^3/12 )
// valid for complex t with Re(it) >= 0 (principal (4 pi i t)^{-3/2}).
cplx stark_propagator_kernel(const Eigen::Vector3d& x, const Eigen::Vector3d& y, cplx t,
                             double F);
cplx stark_propagator_kernel_1d(double x, double y, cplx t, double F);

// |(i d_t - H_F acting on x) P| / |H_F P| at a sample point, by central
// finite differences (interior diagnostic for the kernel phases)
double propagator_pde_residual(const Eigen::Vector3d& x, const Eigen::Vector3d& y, cplx t,
                               double F);

// Two-leg time contour for the resolvent integral i int_0^inf e^{izt} ... dt:
// leg A descends the negative imaginary axis, t = -i sigma^2 for
// sigma in [0, sqrt(t_bend)] with t_bend = a^2/(2 lambda0); leg B continues
// t = -i t_bend + s e^{i theta} with theta in (-pi/3, 0) so that the cubic
// field phase decays (sin 3 theta < 0). Leg B is truncated once the
// integrand exponent reaches -decay_target and split into 4 geometric panels.
struct WeylQuadrature {
  int n_sigma = 48;
  int n_s = 48;
  double lambda0 = 6.0;
  int L_pad = 14;            // internal Legendre cut L_max + L_pad
  double decay_target = 45.0;
};

struct WeylMatrix {
  Eigen::MatrixXcd entries;  // dimension (L_max+1)^2, index l(l+1)+m
  cplx z;
  double theta = 0.0;
  double F = 0.0;
  double a = 0.0;
  int L_max = 0;
  std::string quad_meta;
};

inline int sh_index(int l, int m) { return l * (l + 1) + m; }

// Boundary Weyl operator matrix <Y_lm, M_F(z) Y_l'm'> on the shell in the
// orthonormal spherical-harmonic basis: diag(mu_l(z)) plus the contour
// integral of the propagator difference (exact at F = 0, where the
// difference vanishes). m is conserved; blocks with the same |m| coincide.
WeylMatrix weyl_matrix(cplx z, double theta, const ShellParams& params, int L_max,
                       const WeylQuadrature& quad = {});

// diag(mu_l) recovered from the same contour (normalization pin; F = 0 path)
cplx mu_ell_time_integral(int ell, cplx z, double a, double theta = -0.75,
                          const WeylQuadrature& quad = {});

// 1D reduction of the same contour machinery against the closed Airy kernel
cplx stark_green_1d_from_propagator(double x, double y, cplx z, double F,
                                    double theta = -0.75, const WeylQuadrature& quad = {});

struct DeterminantValue {
  cplx value;
  int p = 3;
  int L_max = 0;
  int eig_count_used = 0;
  bool on_zero_factor = false;  // some |1 - lambda_j| < 1e-14
};

// Regularized determinant det_p(I + alpha M), vanishing exactly on the
// secular condition 1 + alpha mu = 0: prod (1 - lambda) exp(sum_{k<p}
// lambda^k/k) over the eigenvalues lambda of -alpha M. p >= 3 makes the
// product insensitive to the Legendre tail.
DeterminantValue det_p(const WeylMatrix& mat, double alpha, int p = 3);
cplx det_p_from_eigenvalues(const Eigen::VectorXcd& lambdas, int p);

struct Resonance3D {
  ResonancePoint point;    // root at L_max
  cplx z_refined;          // root recomputed at L_max + 2
  double truncation_shift = 0.0;
  int L_max = 0;
};

// Newton on z -> det_p(I + alpha M(z)); cross-validated at L_max and
// L_max + 2 (shift above 1e-4 raises numerical_error carrying both roots).
Resonance3D find_resonance_3d(cplx seed, double theta, const ShellParams& params, int L_max,
                              const WeylQuadrature& quad = {});

}  // namespace starkshell
