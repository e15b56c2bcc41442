// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "starkshell/types.hpp"

namespace starkshell {

// Outgoing Green function of -d^2/dx^2 + F x on the line,
//   G_F(x, y; z) = (pi/F^{1/3}) Ci(xi(min)) Ai(xi(max)),
//   xi(u) = F^{1/3}(u - z/F),  Ci = Bi + i Ai.
// Analytic in z across the real axis; F > 0.
cplx stark_green_1d(double x, double y, cplx z, double F);

// F = 0 kernel (i/(2 sqrt z)) e^{i sqrt z |x - y|}, Im sqrt z > 0 branch
cplx free_green_1d(double x, double y, cplx z);

// boundary determinant D(z) = 1 + alpha G_F(a, a; z) of the point
// interaction at x = a (params.a). Resonances are its lower-half-plane zeros.
cplx boundary_condition(cplx z, const ShellParams& params);

// Newton iteration on D with central-difference derivative (step
// 1e-7 (1 + |z|)); converged when |D| < 1e-12 and |step| < 1e-12.
// Upper-half-plane zeros raise anti_resonance_error.
ResonancePoint find_resonance(cplx seed, const ShellParams& params);

// Resonance trajectory over a strictly increasing field list. Seeds with the
// zero-field energy -alpha^2/4 and then extrapolates linearly; guards branch
// continuity via |dz| <= 10 dF (|dz/dF|_prev + 1).
Trajectory sweep(const ShellParams& params_base, const std::vector<double>& F_values);

// Barrier action S(F) = int_a^{-E0/F} sqrt(F s - E0) ds by 20-node
// Gauss-Legendre; the integrand is analytic on the interval, so the rule is
// exact to machine precision.
double agmon_action(double E0, double a, double F);

// The quadrature value next to the closed forms it arbitrates between.
struct AgmonReport {
  double integral;           // source of truth
  double antiderivative;     // (2/(3F)) [(-2E0)^{3/2} - (F a - E0)^{3/2}]
  double outer_only;         // (2/(3F)) (F a - E0)^{3/2}
  double asymptote;          // (2/(3F)) |E0|^{3/2}
  double barrier_action;     // (2/(3F)) (|E0| - F a)^{3/2}; width law uses 2x this
};
AgmonReport agmon_report(double E0, double a, double F);

// Weighted least squares of log Gamma = log C + b log F - c/F over the
// trajectory (unit weights); requires >= 6 points with width > 1e-300.
WidthFit width_fit(const Trajectory& traj);
WidthFit width_fit_points(const std::vector<double>& F, const std::vector<double>& Gamma);

struct Grid1D {
  double x_lo = -60.0, x_hi = 60.0;
  int n = 48000;  // intervals; n + 1 nodes
  double h() const { return (x_hi - x_lo) / n; }
  double x(int i) const { return x_lo + i * h(); }
};

// R_0(z) f on the grid nodes by trapezoid quadrature of the closed-form
// kernel; O(N) through the separable structure of the kernel. Im z > 0.
Eigen::VectorXcd apply_free_resolvent_1d(const Eigen::VectorXcd& f, cplx z, double F,
                                         const Grid1D& grid);

// Resolvent of the operator with the point interaction, via the rank-one
// update R f = R_0 f - [alpha/(1 + alpha G(a, a))] (R_0 f)(a) G(., a).
// Throws numerical_error near the pole of the update.
Eigen::VectorXcd krein_apply_1d(const Eigen::VectorXcd& f, cplx z, const ShellParams& params,
                                const Grid1D& grid);

// Direct second-order finite-difference solve of
// (-d^2/dx^2 + F x + alpha delta_h(x - a) - z) u = f, Dirichlet ends
// (independent cross-check path; delta_h = grid delta at the node nearest a).
Eigen::VectorXcd fd_resolve_1d(const Eigen::VectorXcd& f, cplx z, const ShellParams& params,
                               const Grid1D& grid);

}  // namespace starkshell
