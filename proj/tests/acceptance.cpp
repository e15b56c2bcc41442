// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance gate. Ten independent criteria, one line each;
// a criterion fails on a missed tolerance, an exception, or a blown time
// budget. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "starkshell/convention_audit.hpp"
#include "starkshell/resonance_1d.hpp"
#include "starkshell/special_functions.hpp"
#include "starkshell/stark_shift.hpp"
#include "starkshell/weyl_3d.hpp"
#include "starkshell/zero_field.hpp"

using namespace starkshell;

namespace {

struct Check {
  bool ok;
  std::string detail;
};

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

std::string fix(double v, int digits = 6) {
  char b[48];
  std::snprintf(b, sizeof b, "%.*f", digits, v);
  return b;
}

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  return g;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --------------------------------------------------------------------------

Check swave_inversion() {
  std::mt19937 rng(20260814);
  std::uniform_real_distribution<double> ua(0.5, 2.0), uk(0.3, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double a = ua(rng), kappa = uk(rng);
    double alpha = -2.0 * kappa / (1.0 - std::exp(-2.0 * kappa * a));
    std::vector<PartialWaveBoundState> st = find_bound_states({a, alpha, 0.0}, 0);
    if (st.size() != 1) return {false, "expected one s-wave state, got " + std::to_string(st.size())};
    worst = std::max(worst, std::abs(st[0].energy + kappa * kappa) / (kappa * kappa));
  }
  return {worst < 1e-9, "20 random (a, kappa), max rel err " + sci(worst) + " (tol 1e-9)"};
}

Check mu_oracle_gate() {
  const double Es[] = {-0.3, -1.3, -3.7};
  const double as[] = {0.5, 1.0, 2.0};
  double worst = 0.0, worst0 = 0.0;
  for (double E : Es)
    for (double a : as) {
      for (int l = 0; l <= 5; ++l) {
        double closed = mu_ell(l, E, a);
        double quad = mu_ell_surface_quadrature(l, E, a, 96);
        worst = std::max(worst, std::abs(closed - quad) / std::abs(quad));
      }
      double kappa = std::sqrt(-E);
      double mu0 = (1.0 - std::exp(-2.0 * kappa * a)) / (2.0 * kappa);
      worst0 = std::max(worst0, std::abs(mu_ell(0, E, a) - mu0) / mu0);
    }
  return {worst < 1e-8 && worst0 < 1e-12,
          "surface quadrature max rel " + sci(worst) + " (tol 1e-8), mu_0 closed form " +
              sci(worst0) + " (tol 1e-12)"};
}

Check identity_suite() {
  double worst_w = 0.0;
  for (int l = 0; l <= 10; ++l)
    for (int j = 0; j < 40; ++j) {
      double t = std::pow(10.0, -2.0 + 3.5 * j / 39.0);
      double w = t * t * (sph_i_deriv(l, t) * sph_k(l, t) - sph_i(l, t) * sph_k_deriv(l, t));
      worst_w = std::max(worst_w, std::abs(w - 1.0));
    }

  // Airy Wronskian residual measured against its roundoff conditioning: near
  // arg z = +-2pi/3 the two products reach 1e28 and cancel, so the raw
  // residual scales with eps * (|Ai||Bi'| + |Ai'||Bi|) no matter how the
  // values are computed.
  const double eps = 2.220446049250313e-16;
  double worst_a = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      cplx z(-10.0 + 0.5 * i, -10.0 + 0.5 * j);
      AiryBoth b = airy(z);
      cplx w = b.ai.value * b.bi.derivative - b.ai.derivative * b.bi.value;
      double cond = M_PI * (std::abs(b.ai.value) * std::abs(b.bi.derivative) +
                            std::abs(b.ai.derivative) * std::abs(b.bi.value));
      worst_a = std::max(worst_a, std::abs(M_PI * w - 1.0) / (1.0 + 8.0 * eps * cond / 1e-10));
    }

  double worst_d = 0.0;
  const double ts[] = {0.4, 1.1, 2.7, 6.3, 11.0};
  const int ls[] = {0, 1, 2, 5, 8, 10};
  for (int l : ls)
    for (double t : ts) {
      double h = 1e-5 * (1.0 + t);
      double fdi = (sph_i(l, t + h) - sph_i(l, t - h)) / (2.0 * h);
      double fdk = (sph_k(l, t + h) - sph_k(l, t - h)) / (2.0 * h);
      worst_d = std::max(worst_d, std::abs(fdi - sph_i_deriv(l, t)) / std::abs(fdi));
      worst_d = std::max(worst_d, std::abs(fdk - sph_k_deriv(l, t)) / std::abs(fdk));
    }

  return {worst_w < 1e-10 && worst_a < 1e-10 && worst_d < 1e-6,
          "bessel wronskian " + sci(worst_w) + ", airy wronskian " + sci(worst_a) +
              " (roundoff-conditioned), derivative recurrences vs FD " + sci(worst_d)};
}

Check quadratic_shift() {
  ShiftResult s = a2_coefficient({1.0, -2.3130352855, 0.0});
  bool a1_ok = s.a1 == 0.0;
  bool conv = s.oracle_rel_err < 1e-6;

  CalibrationReport rep = calibrate_compact_forms();
  bool grid_ok = rep.grid.size() == 9;
  auto verdict = [](bool constant, double mean, double spread, const char* tag) {
    return std::string(tag) + (constant ? " accepted (ratio " + fix(mean, 8) + ")"
                                        : " rejected (ratio spread " + sci(spread) + ")");
  };
  std::string v = verdict(rep.constant1, rep.mean1, rep.spread1, "Q1") + ", " +
                  verdict(rep.constant2, rep.mean2, rep.spread2, "Q2") +
                  (rep.constant1 && rep.constant2 ? "" : "; quadrature elements adopted");
  return {a1_ok && conv && grid_ok,
          std::string("a1 = 0 ") + (a1_ok ? "exactly" : "VIOLATED") +
              ", refinement agreement " + sci(s.oracle_rel_err) + " (tol 1e-6); " + v};
}

Check width_law_1d() {
  Trajectory traj = sweep({0.0, -2.0, 0.0}, log_grid(0.03, 0.12, 10));
  int lower = 0;
  std::vector<double> logF, logshift;
  for (const ResonancePoint& p : traj.points) {
    if (p.z.imag() < 0.0) ++lower;
    logF.push_back(std::log(p.F));
    logshift.push_back(std::log(std::abs(p.z.real() + 1.0)));  // E0 = -1
  }
  WidthFit fit = width_fit(traj);
  double slope = lsq_slope(logF, logshift);
  bool ok = lower == 10 && fit.c > 4.0 / 3.0 * 0.97 && fit.c < 4.0 / 3.0 * 1.03 &&
            slope > 1.9 && slope < 2.1;
  return {ok, "fit c = " + fix(fit.c, 4) + " (4/3 within 3%), Im z < 0 at " +
                  std::to_string(lower) + "/10, Re-shift slope " + fix(slope, 3) +
                  " (tol [1.9, 2.1])"};
}

Check krein_vs_fd() {
  const cplx z(-1.0, 0.5);
  std::string detail;
  bool ok = true;
  for (double F : {0.0, 0.1}) {
    ShellParams p{1.0, -2.0, F};
    double err[2];
    int k = 0;
    for (int n : {12000, 48000}) {
      Grid1D g;
      g.n = n;
      Eigen::VectorXcd f(n + 1);
      for (int i = 0; i <= n; ++i) f[i] = std::exp(-g.x(i) * g.x(i));
      Eigen::VectorXcd uk = krein_apply_1d(f, z, p, g);
      Eigen::VectorXcd ufd = fd_resolve_1d(f, z, p, g);
      err[k++] = (uk - ufd).norm() / ufd.norm();
    }
    ok = ok && err[1] < 1e-3 && err[1] < err[0];
    detail += "F = " + fix(F, 1) + ": " + sci(err[0]) + " -> " + sci(err[1]) + "  ";
  }
  return {ok, detail + "(tol 1e-3, refining)"};
}

Check det3_zero_field() {
  ShellParams p{1.0, -2.3130352855, 0.0};
  double E0 = find_bound_states(p, 0).at(0).energy;
  Resonance3D r = find_resonance_3d(cplx(-0.9, 0.0), -0.75, p, 6);
  double root_err = std::abs(r.point.z - cplx(E0, 0.0));

  WeylMatrix mat = weyl_matrix(cplx(-0.9, -0.05), -0.75, p, 6);
  double off = 0.0, diag = 0.0;
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) {
      int i = sh_index(l, m);
      for (int j = 0; j < mat.entries.cols(); ++j)
        if (j != i) off = std::max(off, std::abs(mat.entries(i, j)));
      diag = std::max(diag, rel(mat.entries(i, i), mu_ell_z(l, mat.z, p.a)));
    }
  // same diagonal recovered through the contour time integral (the honest
  // quadrature path; the F = 0 matrix itself is diagonal by construction)
  double tmax = 0.0;
  for (int l = 0; l <= 6; ++l)
    tmax = std::max(tmax, rel(mu_ell_time_integral(l, cplx(-1.0, 0.3), p.a),
                              mu_ell_z(l, cplx(-1.0, 0.3), p.a)));

  return {root_err < 1e-6 && off < 1e-8 && diag < 1e-6 && tmax < 1e-6,
          "det3 root vs s-wave energy " + sci(root_err) + " (tol 1e-6), off-diag " + sci(off) +
              ", diag vs mu_ell " + sci(diag) + ", contour mu_ell " + sci(tmax)};
}

Check small_field_3d() {
  ShellParams p{1.0, -2.3130352855, 0.05};
  ShiftResult s = a2_coefficient(p);
  double pred = s.E0 + p.F * p.F * s.a2;
  Resonance3D r6 = find_resonance_3d(cplx(pred, 0.0), -0.75, p, 6);
  Resonance3D rth = find_resonance_3d(cplx(pred, 0.0), -0.55, p, 6);
  double de = std::abs(r6.point.z.real() - pred);
  double dth = std::abs(r6.point.z - rth.point.z);
  return {de < 5e-3 && r6.truncation_shift < 1e-4 && dth < 1e-5,
          "Re z - (E0 + F^2 a2) = " + sci(de) + " (tol 5e-3), L6 -> L8 shift " +
              sci(r6.truncation_shift) + " (tol 1e-4), theta -0.75 vs -0.55: " + sci(dth) +
              " (tol 1e-5)"};
}

Check scaling_covariance() {
  std::vector<PartialWaveBoundState> b1 = find_bound_states({1.0, -6.0, 0.0}, 4);
  std::vector<PartialWaveBoundState> b2 = find_bound_states({2.0, -3.0, 0.0}, 4);
  if (b1.size() != b2.size() || b1.empty())
    return {false, "state counts differ under scaling"};
  double worst_b = 0.0;
  for (size_t i = 0; i < b1.size(); ++i) {
    if (b1[i].ell != b2[i].ell || b1[i].multiplicity != b2[i].multiplicity)
      return {false, "channel/multiplicity mismatch under scaling"};
    worst_b = std::max(worst_b, std::abs(b2[i].energy - b1[i].energy / 4.0) /
                                    std::abs(b1[i].energy / 4.0));
  }
  ResonancePoint zb = find_resonance(cplx(-1.0, -0.05), {0.0, -2.0, 0.4});
  ResonancePoint zs = find_resonance(cplx(-0.25, -0.0125), {0.0, -1.0, 0.05});
  double worst_r = rel(zs.z, zb.z / 4.0);
  return {worst_b < 1e-9 && worst_r < 1e-7,
          "lambda = 2: bound states " + sci(worst_b) + " (tol 1e-9, " +
              std::to_string(b1.size()) + " states), resonance " + sci(worst_r) +
              " (tol 1e-7)"};
}

Check convention_audit() {
  std::vector<AuditItem> items = run_convention_audit();
  if (items.size() != 3)
    return {false, "expected 3 audit items, got " + std::to_string(items.size())};
  bool ok = true;
  std::string detail;
  for (const AuditItem& it : items) {
    ok = ok && it.pass;
    detail += it.name + (it.pass ? " ok (" : " FAILED (") + sci(it.adopted_err) + " vs " +
              sci(it.rejected_err) + ")  ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int n_fail = 0;
  auto run = [&](int idx, const char* name, double budget_s,
                 const std::function<Check()>& body) {
    auto t0 = clock::now();
    Check c{false, ""};
    try {
      c = body();
    } catch (const std::exception& e) {
      c = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(clock::now() - t0).count();
    bool ok = c.ok && dt < budget_s;
    if (!ok) ++n_fail;
    std::printf("[%s] %2d. %-22s %s  [%.2f s / budget %.0f s]\n", ok ? "PASS" : "FAIL", idx,
                name, c.detail.c_str(), dt, budget_s);
    std::fflush(stdout);
  };

  run(1, "s-wave inversion", 1.0, swave_inversion);
  run(2, "mu_ell oracle gate", 10.0, mu_oracle_gate);
  run(3, "identity suite", 5.0, identity_suite);
  run(4, "quadratic shift", 60.0, quadratic_shift);
  run(5, "1d width law", 30.0, width_law_1d);
  run(6, "krein vs fd", 30.0, krein_vs_fd);
  run(7, "3d det, F = 0", 120.0, det3_zero_field);
  run(8, "3d small field", 600.0, small_field_3d);
  run(9, "scaling covariance", 30.0, scaling_covariance);
  run(10, "convention audit", 5.0, convention_audit);

  std::printf("acceptance: %d/10 criteria passed\n", 10 - n_fail);
  return n_fail;
}
