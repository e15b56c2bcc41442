// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "starkshell/types.hpp"

namespace starkshell {

// Modified spherical Bessel functions in the convention
//   i0(t) = sinh(t)/t,   i1(t) = (t cosh t - sinh t)/t^2,
//   k0(t) = exp(-t)/t,   k1(t) = exp(-t)(t + 1)/t^2,
// so that the Wronskian is i_l'(t) k_l(t) - i_l(t) k_l'(t) = +1/t^2.
// Orders 0 <= ell <= 64. sph_i uses the ascending series for |t| <= 8 and a
// normalized downward recurrence beyond; sph_k uses the (stable) upward
// recurrence from the closed l = 0, 1 forms. For real arguments sph_k
// requires t > 0.
double sph_i(int ell, double t);
cplx sph_i(int ell, cplx t);
double sph_k(int ell, double t);
cplx sph_k(int ell, cplx t);

// i_l'(t) = i_{l-1}(t) - (l+1)/t i_l(t), with i_{-1}(t) = cosh(t)/t
// k_l'(t) = -k_{l-1}(t) - (l+1)/t k_l(t), with k_{-1} = k_0
double sph_i_deriv(int ell, double t);
cplx sph_i_deriv(int ell, cplx t);
double sph_k_deriv(int ell, double t);
cplx sph_k_deriv(int ell, cplx t);

struct AiryPair {
  cplx value;
  cplx derivative;
};

struct AiryBoth {
  AiryPair ai;
  AiryPair bi;
};

// Ai, Ai', Bi, Bi' at complex z. Maclaurin series in compensated (double-
// double) arithmetic for |z| <= 9; asymptotic expansions plus the exact
// rotation connection formulas beyond. Conjugate symmetry is enforced, and
// results on the real axis have exactly zero imaginary part. |z| <= 1e4.
// Overflow of Bi (Re zeta beyond exp range) throws std::overflow_error;
// underflow of Ai quietly returns 0. Non-finite inputs throw
// std::domain_error; outputs are always finite.
AiryBoth airy(cplx z);

// Outgoing combination Ci = Bi + i Ai and its derivative.
// Wronskian: Ci(z) Ai'(z) - Ci'(z) Ai(z) = -1/pi.
AiryPair airy_outgoing(cplx z);

// integral of Y_{l 0} Y_{1 0} Y_{l' 0} over the unit sphere (closed form;
// nonzero only for |l - l'| = 1)
double gaunt_10(int ell, int ellp);

// Legendre polynomial P_l(x) by upward recurrence
double legendre_p(int ell, double x);

// Normalized associated Legendre functions Pbar_{l m}(u) with
// int_{-1}^{1} Pbar_{l m}^2 du = 1, Condon-Shortley sign, so that
// Y_{l m} = Pbar_{l m}(cos theta) e^{i m phi} / sqrt(2 pi).
// Fills out[l - m] for l = m .. L_max (out must hold L_max + 1 - m values).
void legendre_normalized(int L_max, int m, double u, double* out);

// jhat_L(lambda) = j_L(lambda) e^{i lambda} for L = 0..L_max; stable for
// Im lambda >= 0 where the plain j_L would overflow. Branch selection:
// ascending series for |lambda| < 0.05, exact spherical-Hankel closed form
// for |lambda| > (L_max + 2)^2 / 2 + 30, normalized downward recurrence in
// between.
std::vector<cplx> sph_j_scaled(int L_max, cplx lambda);

}  // namespace starkshell
