// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace starkshell {

using cplx = std::complex<double>;

// Physical configuration: delta shell of strength alpha on the sphere |x| = a,
// constant field F along x1. a = 0 selects the 1D line model.
struct ShellParams {
  double a = 1.0;
  double alpha = -1.0;
  double F = 0.0;
};

struct PartialWaveBoundState {
  int ell = 0;
  double energy = 0.0;  // E < 0
  double kappa = 0.0;   // sqrt(-E)
  int multiplicity = 1;
  double secular_residual = 0.0;  // |1 + alpha mu_l(E)|
  bool shallow = false;           // |E| < 1e-10
};

struct ResonancePoint {
  cplx z{};
  double width = 0.0;  // Gamma = -2 Im z
  double F = 0.0;
  double newton_residual = 0.0;
  int iterations = 0;
  std::string method;
};

struct Trajectory {
  ShellParams params;
  std::vector<ResonancePoint> points;  // strictly increasing F
};

// Parameters of the small-field width law Gamma(F) ~ C F^b exp(-c/F).
struct WidthFit {
  double c = 0.0;
  double b = 0.0;
  double logC = 0.0;
  double rms_residual = 0.0;
  double F_lo = 0.0, F_hi = 0.0;
  int n_points = 0;
};

// Numerical failure (non-convergence, unusable quadrature, pole proximity).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested order/argument combination cannot be evaluated stably.
class unstable_regime_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// 1 + alpha mu_1(E0) ~ 0: the nondegenerate shift formula does not apply.
class degeneracy_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// Root iteration failed; carries the last iterate for diagnostics.
class nonconvergence_error : public numerical_error {
 public:
  nonconvergence_error(const std::string& what, cplx last, double res, int it)
      : numerical_error(what), last_iterate(last), residual(res), iterations(it) {}
  cplx last_iterate;
  double residual;
  int iterations;
};

// Newton converged to a zero in the upper half-plane (the mirror of a
// resonance); reported as an error, never as a resonance.
class anti_resonance_error : public numerical_error {
 public:
  anti_resonance_error(const std::string& what, cplx where)
      : numerical_error(what), z(where) {}
  cplx z;
};

}  // namespace starkshell
