// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "starkshell/types.hpp"

namespace starkshell {

// Radial quadrature controls for the field matrix elements. The radial line
// is split at the shell radius (integrand kink) and truncated at
// R_cut = a + r_cut_multiplier/kappa; each refinement level doubles the node
// counts and the levels must agree to 1e-6 relative.
struct QuadratureSpec {
  int nodes_inner = 48;
  int nodes_outer = 48;
  double r_cut_multiplier = 24.0;
  int refinement_levels = 2;
};

struct ShiftResult {
  double E0 = 0.0;
  double a1 = 0.0;  // first order; vanishes by parity
  double a2 = 0.0;  // E(F) = E0 + a2 F^2 + O(F^4)
  double m1_elem = 0.0;     // <e00, M1(E0) e10>
  double m2_elem = 0.0;     // <e00, M2(E0) e00>
  double mu1_at_E0 = 0.0;
  double mu0_prime = 0.0;
  double oracle_rel_err = 0.0;  // agreement between refinement levels
};

// Q1(t) = t (i0 k1 + i1 k0); algebraically 1/t.
double q1(double t);
// Q2(t) = i0 k0 + Q1(t)
double q2(double t);

// First field correction of the boundary operator between the s- and
// p-channel surface harmonics, by radial quadrature of the layered kernel:
//   <e00, M1(E0) e10> = -a^2 kappa^2 sqrt(4 pi/3) g(0,1)
//                        int_0^inf r^3 [i0 k0](r, a) [i1 k1](r, a) dr,
// where [i l k l](x, y) = i_l(kappa min) k_l(kappa max).
double m1_element_oracle(double E0, double a, const QuadratureSpec& quad = {});

// Second field correction on the s-channel diagonal (double radial integral
// through the intermediate p-wave free kernel):
//   <e00, M2(E0) e00> = (a^2 kappa^3/3)
//     int int r^3 s^3 [i0 k0](r, a) [i1 k1](r, s) [i0 k0](s, a) dr ds.
double m2_element_oracle(double E0, double a, const QuadratureSpec& quad = {});

// Quadratic Stark coefficient of the s-wave bound state of params
// (params.F ignored). Throws degeneracy_error if |1 + alpha mu_1(E0)| < 1e-8.
ShiftResult a2_coefficient(const ShellParams& params, const QuadratureSpec& quad = {});

// Same, at a caller-supplied s-wave energy. Exists so the degeneracy guard
// can be driven directly; a2_coefficient derives E0 from params.
ShiftResult a2_from_state(double E0, const ShellParams& params, const QuadratureSpec& quad = {});

// Calibration of the single-variable forms -(a/3) Q1(kappa a) and
// (a^2/3) Q2(kappa a) against the quadrature elements over a small
// (E0, a) grid. A form is accepted as an equivalent rescaling only if the
// ratio element/form is constant to 1e-6 across the grid.
struct CalibrationEntry {
  double E0, a;
  double ratio1, ratio2;
};
struct CalibrationReport {
  std::vector<CalibrationEntry> grid;
  double mean1 = 0.0, spread1 = 0.0;  // spread = max |ratio/mean - 1|
  double mean2 = 0.0, spread2 = 0.0;
  bool constant1 = false, constant2 = false;
};
CalibrationReport calibrate_compact_forms(const QuadratureSpec& quad = {});

}  // namespace starkshell
