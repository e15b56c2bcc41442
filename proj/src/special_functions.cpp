// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#include "starkshell/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace starkshell {

namespace {

// ---------------------------------------------------------------------
// Compensated (double-double) arithmetic. Only the operations needed by
// the Airy Maclaurin sums: the series for Ai at z ~ +9 cancels by a factor
// e^{2 zeta} ~ 4e15, which plain double cannot absorb.
// ---------------------------------------------------------------------

struct dd {
  double hi = 0.0, lo = 0.0;
};

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double d) {
  double q1 = a.hi / d;
  dd p = two_prod(q1, d);
  double q2 = (((a.hi - p.hi) - p.lo) + a.lo) / d;
  return quick_two_sum(q1, q2);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

struct ddc {
  dd re, im;
};

inline ddc ddc_from(cplx z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }

inline ddc ddc_add(ddc a, ddc b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline ddc ddc_neg(ddc a) { return {dd_neg(a.re), dd_neg(a.im)}; }

inline ddc ddc_mul(ddc a, ddc b) {
  return {dd_add(dd_mul(a.re, b.re), dd_neg(dd_mul(a.im, b.im))),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline ddc ddc_mul_dd(ddc a, dd s) { return {dd_mul(a.re, s), dd_mul(a.im, s)}; }

inline ddc ddc_div_d(ddc a, double d) { return {dd_div_d(a.re, d), dd_div_d(a.im, d)}; }

inline double ddc_mag(ddc a) { return std::abs(a.re.hi) + std::abs(a.im.hi); }

inline cplx ddc_collapse(ddc a) {
  return {a.re.hi + a.re.lo, a.im.hi + a.im.lo};
}

// Ai(0) = 3^{-2/3}/Gamma(2/3), -Ai'(0) = 3^{-1/3}/Gamma(1/3), sqrt(3),
// all to double-double precision.
const dd kC1{0.3550280538878172, 2.05233632436212e-17};
const dd kC2{0.2588194037928068, -2.522243111610832e-17};
const dd kSqrt3{1.7320508075688772, 1.0035084221806903e-16};

constexpr double kTwoPiThird = 2.0943951023931953;
const double kSqrtPi = std::sqrt(M_PI);
const cplx kOmega{-0.5, 0.8660254037844386};     // e^{+2 pi i/3}
const cplx kOmegaBar{-0.5, -0.8660254037844386}; // e^{-2 pi i/3}

// ---------------------------------------------------------------------
// Airy Maclaurin region, |z| <= 9. w'' = z w integrated through the two
// entire solutions f (f(0)=1) and g (g(0)=1 after one derivative); the four
// power sums run simultaneously in double-double accumulators.
// ---------------------------------------------------------------------
void airy_series(cplx zc, AiryBoth& out) {
  const ddc z = ddc_from(zc);
  const ddc z2 = ddc_mul(z, z);
  const ddc z3 = ddc_mul(z2, z);

  ddc tf{{1.0, 0.0}, {0.0, 0.0}};
  ddc tg = z;
  ddc tfp = ddc_div_d(z2, 2.0);     // first nonzero term of f'
  ddc tgp{{1.0, 0.0}, {0.0, 0.0}};  // first term of g'
  ddc sf = tf, sg = tg, sfp = tfp, sgp = tgp;

  for (int k = 0; k < 300; ++k) {
    tf = ddc_div_d(ddc_mul(tf, z3), double(3 * k + 2) * double(3 * k + 3));
    tg = ddc_div_d(ddc_mul(tg, z3), double(3 * k + 3) * double(3 * k + 4));
    tgp = ddc_div_d(ddc_mul(tgp, z3), double(3 * k + 1) * double(3 * k + 3));
    tfp = ddc_div_d(ddc_mul_dd(ddc_mul(tfp, z3), dd{double(k + 2), 0.0}),
                    double(k + 1) * double(3 * k + 5) * double(3 * k + 6));
    sf = ddc_add(sf, tf);
    sg = ddc_add(sg, tg);
    sfp = ddc_add(sfp, tfp);
    sgp = ddc_add(sgp, tgp);
    double tm = std::max(std::max(ddc_mag(tf), ddc_mag(tg)),
                         std::max(ddc_mag(tfp), ddc_mag(tgp)));
    double sm = std::max(std::max(ddc_mag(sf), ddc_mag(sg)),
                         std::max(ddc_mag(sfp), ddc_mag(sgp)));
    if (tm < 1e-36 * sm + 1e-300) break;
  }

  ddc c1f = ddc_mul_dd(sf, kC1);
  ddc c2g = ddc_mul_dd(sg, kC2);
  ddc c1fp = ddc_mul_dd(sfp, kC1);
  ddc c2gp = ddc_mul_dd(sgp, kC2);
  out.ai.value = ddc_collapse(ddc_add(c1f, ddc_neg(c2g)));
  out.ai.derivative = ddc_collapse(ddc_add(c1fp, ddc_neg(c2gp)));
  out.bi.value = ddc_collapse(ddc_mul_dd(ddc_add(c1f, c2g), kSqrt3));
  out.bi.derivative = ddc_collapse(ddc_mul_dd(ddc_add(c1fp, c2gp), kSqrt3));
}

// ---------------------------------------------------------------------
// Poincare expansion of Ai for |arg z| <= 2 pi/3, |z| >= 9. Truncated at
// the smallest term; worst case on the switch circle the tail is
// ~ e^{-2|zeta|} = e^{-36} relative.
// ---------------------------------------------------------------------
AiryPair airy_asym_core(cplx z) {
  cplx sq = std::sqrt(z);
  cplx zeta = (2.0 / 3.0) * z * sq;
  if (-zeta.real() > 705.0)
    throw std::overflow_error("airy: growing exponential exceeds double range");
  cplx z14 = std::sqrt(sq);
  cplx izeta = 1.0 / zeta;

  cplx su{1.0, 0.0}, sv{1.0, 0.0};
  cplx pw{1.0, 0.0};
  double uk = 1.0;
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k <= 50; ++k) {
    uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
          (216.0 * k * (2.0 * k - 1.0));
    double vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    pw *= -izeta;
    double tmag = uk * std::abs(pw);
    if (tmag > prev) break;
    su += uk * pw;
    sv += vk * pw;
    prev = tmag;
    if (tmag < 1e-18 * std::abs(su)) break;
  }
  cplx e = std::exp(-zeta);
  cplx ai = e / (2.0 * kSqrtPi * z14) * su;
  cplx aip = -e * z14 / (2.0 * kSqrtPi) * sv;
  return {ai, aip};
}

// Full-plane Ai: direct expansion in-sector, otherwise the connection
// formula Ai(z) = -[wbar Ai(wbar z) + w Ai(w z)], which lands both rotated
// arguments inside |arg| <= 2 pi/3.
AiryPair ai_dispatch(cplx z) {
  if (std::abs(std::arg(z)) <= kTwoPiThird + 1e-12) return airy_asym_core(z);
  AiryPair r1 = airy_asym_core(kOmegaBar * z);
  AiryPair r2 = airy_asym_core(kOmega * z);
  return {-(kOmegaBar * r1.value + kOmega * r2.value),
          -(kOmega * r1.derivative + kOmegaBar * r2.derivative)};
}

AiryBoth airy_large(cplx z) {
  AiryBoth out;
  out.ai = ai_dispatch(z);
  // Bi(z) = e^{i pi/6} Ai(z w) + e^{-i pi/6} Ai(z wbar),
  // Bi'(z) = e^{5 i pi/6} Ai'(z w) + e^{-5 i pi/6} Ai'(z wbar)
  const cplx f6{0.8660254037844386, 0.5};    // e^{i pi/6}
  const cplx f56{-0.8660254037844386, 0.5};  // e^{5 i pi/6}
  AiryPair p = ai_dispatch(z * kOmega);
  AiryPair q = ai_dispatch(z * kOmegaBar);
  out.bi.value = f6 * p.value + std::conj(f6) * q.value;
  out.bi.derivative = f56 * p.derivative + std::conj(f56) * q.derivative;
  return out;
}

inline AiryPair conj_pair(AiryPair p) {
  return {std::conj(p.value), std::conj(p.derivative)};
}

}  // namespace

AiryBoth airy(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("airy: non-finite argument");
  if (std::abs(z) > 1e4) throw std::domain_error("airy: |z| > 1e4 unsupported");

  const bool flip = z.imag() < 0.0;
  const cplx w = flip ? std::conj(z) : z;

  AiryBoth out;
  if (std::abs(w) <= 9.0) {
    airy_series(w, out);
  } else {
    out = airy_large(w);
  }
  if (flip) {
    out.ai = conj_pair(out.ai);
    out.bi = conj_pair(out.bi);
  }
  if (z.imag() == 0.0) {
    out.ai.value.imag(0.0);
    out.ai.derivative.imag(0.0);
    out.bi.value.imag(0.0);
    out.bi.derivative.imag(0.0);
  }
  for (cplx v : {out.ai.value, out.ai.derivative, out.bi.value, out.bi.derivative}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::overflow_error("airy: result exceeds double range");
  }
  return out;
}

AiryPair airy_outgoing(cplx z) {
  AiryBoth b = airy(z);
  return {b.bi.value + cplx(0.0, 1.0) * b.ai.value,
          b.bi.derivative + cplx(0.0, 1.0) * b.ai.derivative};
}

// ---------------------------------------------------------------------
// Modified spherical Bessel functions
// ---------------------------------------------------------------------

namespace {

inline double re_of(double t) { return t; }
inline double re_of(cplx t) { return t.real(); }

template <class S>
S sph_i_impl(int ell, S t) {
  if (ell < 0 || ell > 64) throw std::domain_error("sph_i: ell must lie in [0, 64]");
  if (t == S(0.0)) throw std::domain_error("sph_i: t = 0");
  if (std::abs(re_of(t)) > 700.0)
    throw std::overflow_error("sph_i: |Re t| > 700");
  if (ell == 0) return std::sinh(t) / t;
  // the l = 1 closed form (t cosh t - sinh t)/t^2 cancels like 3 eps/t^2 for
  // small t, so it is only used once the cancellation is below roundoff
  if (ell == 1 && std::abs(t) > 1.0)
    return (t * std::cosh(t) - std::sinh(t)) / (t * t);

  const double at = std::abs(t);
  if (at <= 8.0) {
    // ascending series from t^l/(2l+1)!!
    S pref = S(1.0);
    for (int j = 1; j <= ell; ++j) pref *= t / double(2 * j + 1);
    S t2 = t * t;
    S term = pref, sum = pref;
    for (int k = 1; k <= 400; ++k) {
      term *= t2 / (2.0 * k * double(2 * ell + 2 * k + 1));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    if (std::abs(sum) < 1e-300)
      throw unstable_regime_error("sph_i: underflow (order too large for |t|)");
    return sum;
  }

  // downward recurrence, normalized against the closed-form i_0
  const int Ls = ell + 26 + int(at);
  S above = S(0.0), cur = S(1e-280), at_ell = S(0.0);
  bool recorded = false;
  for (int L = Ls; L >= 1; --L) {
    S below = above + (double(2 * L + 1) / t) * cur;
    above = cur;
    cur = below;
    if (L - 1 == ell) {
      at_ell = cur;
      recorded = true;
    }
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      if (recorded) at_ell *= 1e-250;
    }
  }
  return at_ell * (std::sinh(t) / t) / cur;
}

template <class S>
S sph_k_impl(int ell, S t) {
  if (ell < 0 || ell > 64) throw std::domain_error("sph_k: ell must lie in [0, 64]");
  if (t == S(0.0)) throw std::domain_error("sph_k: t = 0");
  if (re_of(t) <= 0.0 && std::abs(t - S(re_of(t))) == 0.0)
    throw std::domain_error("sph_k: argument on (-inf, 0]");
  S k0 = std::exp(-t) / t;
  if (ell == 0) return k0;
  S k1 = std::exp(-t) * (t + 1.0) / (t * t);
  S prev = k0, cur = k1;
  for (int L = 1; L < ell; ++L) {
    S next = prev + (double(2 * L + 1) / t) * cur;
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(std::abs(cur)))
    throw std::overflow_error("sph_k: overflow");
  return cur;
}

template <class S>
S sph_i_deriv_impl(int ell, S t) {
  S below = (ell == 0) ? std::cosh(t) / t : sph_i_impl(ell - 1, t);
  return below - (double(ell + 1) / t) * sph_i_impl(ell, t);
}

template <class S>
S sph_k_deriv_impl(int ell, S t) {
  S below = (ell == 0) ? sph_k_impl(0, t) : sph_k_impl(ell - 1, t);
  return -below - (double(ell + 1) / t) * sph_k_impl(ell, t);
}

}  // namespace

double sph_i(int ell, double t) { return sph_i_impl(ell, t); }
cplx sph_i(int ell, cplx t) { return sph_i_impl(ell, t); }
double sph_k(int ell, double t) { return sph_k_impl(ell, t); }
cplx sph_k(int ell, cplx t) { return sph_k_impl(ell, t); }
double sph_i_deriv(int ell, double t) { return sph_i_deriv_impl(ell, t); }
cplx sph_i_deriv(int ell, cplx t) { return sph_i_deriv_impl(ell, t); }
double sph_k_deriv(int ell, double t) { return sph_k_deriv_impl(ell, t); }
cplx sph_k_deriv(int ell, cplx t) { return sph_k_deriv_impl(ell, t); }

// ---------------------------------------------------------------------
// Angular pieces
// ---------------------------------------------------------------------

double gaunt_10(int ell, int ellp) {
  if (ell < 0 || ellp < 0) throw std::domain_error("gaunt_10: negative order");
  const double pref = std::sqrt(3.0 / (4.0 * M_PI));
  const double l = ell;
  if (ellp == ell + 1)
    return pref * (l + 1.0) / std::sqrt((2.0 * l + 1.0) * (2.0 * l + 3.0));
  if (ellp == ell - 1)
    return pref * l / std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0));
  return 0.0;
}

double legendre_p(int ell, double x) {
  if (ell < 0) throw std::domain_error("legendre_p: negative order");
  if (ell == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int j = 1; j < ell; ++j) {
    double p2 = ((2 * j + 1) * x * p1 - j * p0) / (j + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void legendre_normalized(int L_max, int m, double u, double* out) {
  if (m < 0 || L_max < m) throw std::domain_error("legendre_normalized: need 0 <= m <= L_max");
  double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  double pmm = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < m; ++k)
    pmm *= -std::sqrt(double(2 * k + 3) / double(2 * k + 2)) * s;
  out[0] = pmm;
  if (L_max == m) return;
  double pup = std::sqrt(double(2 * m + 3)) * u * pmm;
  out[1] = pup;
  double prev = pmm, cur = pup;
  for (int l = m + 2; l <= L_max; ++l) {
    double A = std::sqrt(double(2 * l - 1) * double(2 * l + 1) /
                         (double(l - m) * double(l + m)));
    double B = std::sqrt(double(2 * l + 1) * double(l - m - 1) * double(l + m - 1) /
                         (double(2 * l - 3) * double(l - m) * double(l + m)));
    double next = A * u * cur - B * prev;
    out[l - m] = next;
    prev = cur;
    cur = next;
  }
}

// ---------------------------------------------------------------------
// jhat_L(lambda) = j_L(lambda) e^{i lambda}
// ---------------------------------------------------------------------

namespace {

const cplx kI{0.0, 1.0};

// (e^{2 i lambda} - 1)/(2 i lambda), safe against cancellation for the
// calling ranges (|lambda| >= 0.05)
inline cplx jhat0_closed(cplx lam) {
  return (std::exp(2.0 * kI * lam) - 1.0) / (2.0 * kI * lam);
}

inline cplx jhat1_closed(cplx lam) {
  cplx e2 = std::exp(2.0 * kI * lam);
  return (e2 - 1.0) / (2.0 * kI * lam * lam) - (e2 + 1.0) / (2.0 * lam);
}

}  // namespace

std::vector<cplx> sph_j_scaled(int L_max, cplx lambda) {
  if (L_max < 0 || L_max > 128) throw std::domain_error("sph_j_scaled: L_max out of range");
  if (lambda == cplx(0.0)) throw std::domain_error("sph_j_scaled: lambda = 0");
  std::vector<cplx> out(L_max + 1);
  const double al = std::abs(lambda);

  if (al < 0.05) {
    cplx e = std::exp(kI * lambda);
    cplx l2 = lambda * lambda;
    cplx pw = 1.0;
    double dfact = 1.0;
    for (int L = 0; L <= L_max; ++L) {
      if (L > 0) {
        pw *= lambda;
        dfact *= double(2 * L + 1);
      }
      cplx series = 1.0 - l2 / (2.0 * (2.0 * L + 3.0)) +
                    l2 * l2 / (8.0 * (2.0 * L + 3.0) * (2.0 * L + 5.0)) -
                    l2 * l2 * l2 /
                        (48.0 * (2.0 * L + 3.0) * (2.0 * L + 5.0) * (2.0 * L + 7.0));
      out[L] = e * pw / dfact * series;
    }
    return out;
  }

  if (al > 0.5 * double(L_max + 2) * double(L_max + 2) + 30.0) {
    // exact Hankel split: jhat_L = [(-i)^{L+1} e^{2 i lambda} S_+ + i^{L+1} S_-]/(2 lambda),
    // S_pm = sum_k (L+k)!/(k!(L-k)!) (pm i/(2 lambda))^k; term-decreasing here
    static const cplx kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    cplx e2 = std::exp(2.0 * kI * lambda);
    cplx xp = kI / (2.0 * lambda), xm = -xp;
    for (int L = 0; L <= L_max; ++L) {
      cplx sp = 1.0, sm = 1.0, tp = 1.0, tm = 1.0;
      for (int k = 0; k < L; ++k) {
        double c = double(L - k) * double(L + k + 1) / double(k + 1);
        tp *= xp * c;
        tm *= xm * c;
        sp += tp;
        sm += tm;
      }
      cplx ph_m = kIPow[(L + 1) % 4];  // i^{L+1}
      cplx ph_p = std::conj(ph_m);     // (-i)^{L+1}
      out[L] = (ph_p * e2 * sp + ph_m * sm) / (2.0 * lambda);
    }
    return out;
  }

  // normalized downward recurrence
  const int Ls = L_max + 35 + int(al);
  cplx above = 0.0, cur = cplx(1e-280, 0.0);
  std::vector<cplx> raw(L_max + 1);
  for (int L = Ls; L >= 1; --L) {
    cplx below = (double(2 * L + 1) / lambda) * cur - above;
    above = cur;
    cur = below;
    if (L - 1 <= L_max) raw[L - 1] = cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      for (int j = L - 1; j <= L_max; ++j)
        if (j >= 0) raw[j] *= 1e-250;
    }
  }
  // normalize against whichever of the closed jhat_0, jhat_1 is larger
  // (guards the normalization against zeros of j_0 near the real axis)
  cplx n0 = jhat0_closed(lambda);
  cplx scale = n0 / raw[0];
  if (L_max >= 1) {
    cplx n1 = jhat1_closed(lambda);
    if (std::abs(n1) > std::abs(n0)) scale = n1 / raw[1];
  }
  for (int L = 0; L <= L_max; ++L) out[L] = raw[L] * scale;
  return out;
}

}  // namespace starkshell
