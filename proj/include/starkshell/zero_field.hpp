// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "starkshell/types.hpp"

namespace starkshell {

// Boundary Weyl eigenvalue of the free resolvent on the shell, partial wave l:
//   mu_l(E) = a^2 kappa i_l(kappa a) k_l(kappa a),  kappa = sqrt(-E), E < 0.
// For l = 0 this equals (1 - e^{-2 kappa a})/(2 kappa) identically.
double mu_ell(int ell, double E, double a);

// analytic continuation, kappa = sqrt(-z) with Re kappa > 0 (z off [0, inf))
cplx mu_ell_z(int ell, cplx z, double a);

// d mu_l/dE: closed form for l = 0, Richardson-extrapolated central
// differences otherwise
double mu_prime(int ell, double E, double a);

// channel l supports a bound state iff alpha < alpha_c(l) = -(2l+1)/a
double critical_strength(int ell, double a);

// Independent evaluation of mu_l: Legendre projection of the free kernel
// restricted to the shell. With cos(gamma) = 1 - 2u^2 the projection
// integral collapses to mu_l = a int_0^1 e^{-2 kappa a u} P_l(1 - 2u^2) du,
// which is smooth on [0, 1]; n_nodes-point Gauss-Legendre.
double mu_ell_surface_quadrature(int ell, double E, double a, int n_nodes = 64);

// All bound states with l <= ell_max, sorted by energy (params.F ignored).
// Each secular root 1 + alpha mu_l(E) = 0 is bracketed on kappa in
// (0, |alpha|] and polished by Newton to |residual| < 1e-13.
std::vector<PartialWaveBoundState> find_bound_states(const ShellParams& params, int ell_max);

}  // namespace starkshell
