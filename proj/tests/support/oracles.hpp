// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
//
// Independent numerical oracles for the test suites. Everything here is
// deliberately built on different algorithms than the library paths under
// test: Taylor ODE stepping for Airy, RK4 shooting for radial bound states,
// explicit closed-form kernels plus brute quadrature for the second-order
// shift.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "starkshell/quadrature.hpp"

namespace oracles {

using cplxl = std::complex<long double>;

struct AiryOdeValues {
  cplxl ai, aip, bi, bip;
};

// Taylor-series ODE integration of w'' = z w from z = 0 along a straight
// ray, long double arithmetic, step 0.25, 36 coefficients per step.
// Good to ~1e-16 relative for |z| <= 5.5.
inline AiryOdeValues airy_ode_oracle(std::complex<double> z) {
  const long double kC1 = 0.355028053887817239260L;  // Ai(0)
  const long double kC2 = 0.258819403792806798405L;  // -Ai'(0)
  const long double kSqrt3 = 1.732050807568877293527L;
  cplxl val[2] = {cplxl(kC1), cplxl(kSqrt3 * kC1)};
  cplxl der[2] = {cplxl(-kC2), cplxl(kSqrt3 * kC2)};
  cplxl target(z.real(), z.imag());
  int nstep = int(std::abs(z) / 0.25) + 1;
  cplxl z0 = 0.0L;
  cplxl dz = target / cplxl((long double)nstep);
  for (int s = 0; s < nstep; ++s) {
    for (int k = 0; k < 2; ++k) {
      cplxl a[36];
      a[0] = val[k];
      a[1] = der[k];
      a[2] = z0 * a[0] / 2.0L;
      for (int n = 1; n + 2 < 36; ++n)
        a[n + 2] = (z0 * a[n] + a[n - 1]) / cplxl((long double)((n + 1) * (n + 2)));
      cplxl v = 0.0L, d = 0.0L;
      for (int n = 35; n >= 1; --n) {
        v = v * dz + a[n];
        d = d * dz + a[n] * cplxl((long double)n);
      }
      v = v * dz + a[0];
      val[k] = v;
      der[k] = d;
    }
    z0 += dz;
  }
  return {val[0], der[0], val[1], der[1]};
}

// Legendre P_l by the three-term recurrence (local copy so the Gaunt test
// does not depend on the library's own Legendre path)
inline double legendre_local(int l, double u) {
  double p0 = 1.0, p1 = u;
  if (l == 0) return p0;
  for (int n = 2; n <= l; ++n) {
    double p2 = ((2 * n - 1) * u * p1 - (n - 1) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// brute quadrature of int_{S^2} Y_l0 Y_10 Y_l'0 dOmega
inline double gaunt_10_brute(int l, int lp) {
  const starkshell::GaussLegendre& gl = starkshell::gauss_legendre(64);
  auto norm = [](int n) { return std::sqrt((2 * n + 1) / (4.0 * M_PI)); };
  double acc = 0.0;
  for (int i = 0; i < 64; ++i) {
    double u = gl.x[i];
    acc += gl.w[i] * legendre_local(l, u) * legendre_local(1, u) * legendre_local(lp, u);
  }
  return 2.0 * M_PI * norm(l) * norm(1) * norm(lp) * acc;
}

// Radial shooting for the delta-shell secular problem in channel l:
//   -u'' + l(l+1)/r^2 u = E u on (0, a) and (a, R),
//   u(a+) = u(a-),  u'(a+) - u'(a-) = alpha u(a).
// RK4 outward from r0 ~ 0 (u ~ r^{l+1}) and inward from R (u ~ e^{-kappa r});
// the secular function is the Wronskian mismatch at the shell with the jump
// folded in. Bisection on kappa.
class ShootingOracle {
 public:
  ShootingOracle(int ell, double a, double alpha) : ell_(ell), a_(a), alpha_(alpha) {}

  double secular(double kappa) const {
    double uo, upo, ui, upi;
    shoot_out(kappa, uo, upo);
    shoot_in(kappa, ui, upi);
    // jump applied to the outward solution at r = a
    upo += alpha_ * uo;
    return upo * ui - uo * upi;
  }

  // all bound kappas in (kappa_lo, kappa_hi), located by sign scan + bisection
  std::vector<double> find_kappas(double kappa_lo, double kappa_hi, int scan = 400) const {
    std::vector<double> roots;
    double prev = secular(kappa_lo);
    for (int i = 1; i <= scan; ++i) {
      double k = kappa_lo + (kappa_hi - kappa_lo) * i / scan;
      double cur = secular(k);
      if (prev == 0.0) prev = cur;
      if (prev * cur < 0.0) {
        double lo = kappa_lo + (kappa_hi - kappa_lo) * (i - 1) / scan, hi = k;
        double flo = secular(lo);
        for (int b = 0; b < 60; ++b) {
          double mid = 0.5 * (lo + hi);
          double fm = secular(mid);
          if (flo * fm <= 0.0)
            hi = mid;
          else {
            lo = mid;
            flo = fm;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      prev = cur;
    }
    return roots;
  }

 private:
  int ell_;
  double a_, alpha_;

  void rk4(double& u, double& up, double r0, double r1, int n, double kappa) const {
    double h = (r1 - r0) / n;
    auto f = [&](double r, double uu) {
      return (ell_ * (ell_ + 1) / (r * r) + kappa * kappa) * uu;
    };
    double r = r0;
    for (int i = 0; i < n; ++i) {
      double k1u = up, k1p = f(r, u);
      double k2u = up + 0.5 * h * k1p, k2p = f(r + 0.5 * h, u + 0.5 * h * k1u);
      double k3u = up + 0.5 * h * k2p, k3p = f(r + 0.5 * h, u + 0.5 * h * k2u);
      double k4u = up + h * k3p, k4p = f(r + h, u + h * k3u);
      u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
      up += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
      r += h;
    }
  }

  void shoot_out(double kappa, double& u, double& up) const {
    double r0 = 1e-6 * a_;
    u = std::pow(r0, ell_ + 1);
    up = (ell_ + 1) * std::pow(r0, ell_);
    rk4(u, up, r0, a_, 4000, kappa);
    double scale = std::max(std::abs(u), std::abs(up));
    u /= scale;
    up /= scale;
  }

  void shoot_in(double kappa, double& u, double& up) const {
    double R = a_ + 20.0 / kappa;
    u = 1.0;
    up = -kappa;
    rk4(u, up, R, a_, 8000, kappa);
    double scale = std::max(std::abs(u), std::abs(up));
    u /= scale;
    up /= scale;
  }
};

// Second-order Rayleigh-Schroedinger coefficient for the s-wave shell state,
// entirely from closed-form kernels (no library calls):
//   a2 = -(1/3) int int r u0(r) G_{alpha,1}(r, s; E0) s u0(s) dr ds
// with u0 the normalized s-wave radial function and G_{alpha,1} the shell
// p-channel Green kernel, G_l(r,s) = kappa r s i_l(kappa r_<) k_l(kappa r_>).
class RsptOracle {
 public:
  RsptOracle(double E0, double a, double alpha)
      : kappa_(std::sqrt(-E0)), a_(a), alpha_(alpha) {
    double t = kappa_ * a_;
    double n2 = std::sinh(2.0 * t) / (4.0 * kappa_) - a_ / 2.0 +
                std::sinh(t) * std::sinh(t) / (2.0 * kappa_);
    norm_ = std::sqrt(n2);
    g1aa_ = g1(a_, a_);
  }

  double a2() const {
    using starkshell::gauss_legendre;
    const starkshell::GaussLegendre& gl = gauss_legendre(64);
    const double R = a_ + 24.0 / kappa_;
    auto inner = [&](double r) {
      double edges[4] = {0.0, std::min(r, a_), std::max(r, a_), R};
      double acc = 0.0;
      for (int p = 0; p < 3; ++p) {
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        double hw = 0.5 * (edges[p + 1] - edges[p]);
        if (hw <= 0.0) continue;
        for (int i = 0; i < 64; ++i) {
          double s = mid + hw * gl.x[i];
          acc += hw * gl.w[i] * g_alpha1(r, s) * s * u0(s);
        }
      }
      return acc;
    };
    double edges[3] = {0.0, a_, R};
    double acc = 0.0;
    for (int p = 0; p < 2; ++p) {
      double mid = 0.5 * (edges[p] + edges[p + 1]);
      double hw = 0.5 * (edges[p + 1] - edges[p]);
      for (int i = 0; i < 64; ++i) {
        double r = mid + hw * gl.x[i];
        acc += hw * gl.w[i] * r * u0(r) * inner(r);
      }
    }
    return -acc / 3.0;
  }

 private:
  double kappa_, a_, alpha_, norm_, g1aa_;

  double u0(double r) const {
    double t = kappa_ * a_;
    double v = r < a_ ? std::sinh(kappa_ * r) : std::sinh(t) * std::exp(-kappa_ * (r - a_));
    return v / norm_;
  }
  static double i1_closed(double t) { return (t * std::cosh(t) - std::sinh(t)) / (t * t); }
  static double k1_closed(double t) { return std::exp(-t) * (t + 1.0) / (t * t); }
  double g1(double r, double s) const {
    double lo = kappa_ * std::min(r, s), hi = kappa_ * std::max(r, s);
    return kappa_ * r * s * i1_closed(lo) * k1_closed(hi);
  }
  double g_alpha1(double r, double s) const {
    return g1(r, s) - alpha_ * g1(r, a_) * g1(a_, s) / (1.0 + alpha_ * g1aa_);
  }
};

}  // namespace oracles
