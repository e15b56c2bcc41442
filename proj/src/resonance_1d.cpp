// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#include "starkshell/resonance_1d.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "starkshell/quadrature.hpp"
#include "starkshell/special_functions.hpp"

namespace starkshell {

namespace {

const cplx kI{0.0, 1.0};

// Below this |Im z| the generic complex evaluation of D(z) cannot resolve the
// width: the Im part of the Airy products carries absolute roundoff
// ~1e-15 regardless of how small the true width is. The root is then
// re-solved on the real axis, where every quantity is evaluated
// multiplicatively, and the width comes from first-order perturbation:
//   Re D(E) = 1 + c Ai(xi) Bi(xi) = 0,  c = alpha pi / F^{1/3},
//   Gamma   = -2 F^{2/3} Ai(xi)^2 / (Ai'Bi + AiBi')(xi),
// exact up to O((Gamma/|E|)^2) relative corrections.
constexpr double kPerturbativeWidthCut = 1e-8;

struct RealAxisRoot {
  double E;
  double gamma;  // Im z = -gamma
  double residual;
  int iterations;
};

RealAxisRoot resonance_perturbative(double E_seed, const ShellParams& params) {
  const double F = params.F;
  const double F3 = std::cbrt(F);
  const double c = params.alpha * M_PI / F3;
  const double dxi_dE = -1.0 / (F3 * F3);
  auto xi_of = [&](double E) { return F3 * (params.a - E / F); };
  auto ai_bi = [&](double E) { return airy(cplx(xi_of(E), 0.0)); };

  double E = E_seed;
  int it = 0;
  double g = 0.0;
  for (; it < 100; ++it) {
    AiryBoth ab = ai_bi(E);
    double ai = ab.ai.value.real(), bi = ab.bi.value.real();
    double aip = ab.ai.derivative.real(), bip = ab.bi.derivative.real();
    g = 1.0 + c * ai * bi;
    double gp = c * (aip * bi + ai * bip) * dxi_dE;
    double step = g / gp;
    E -= step;
    if (!std::isfinite(E))
      throw nonconvergence_error("find_resonance: real-axis refinement diverged",
                                 cplx(E, 0.0), std::abs(g), it);
    if (std::abs(g) < 1e-13 && std::abs(step) < 1e-13 * (1.0 + std::abs(E))) break;
  }
  if (it >= 100)
    throw nonconvergence_error("find_resonance: real-axis refinement did not converge",
                               cplx(E, 0.0), std::abs(g), it);
  AiryBoth ab = ai_bi(E);
  double ai = ab.ai.value.real(), bi = ab.bi.value.real();
  double aip = ab.ai.derivative.real(), bip = ab.bi.derivative.real();
  double gamma = -F3 * F3 * ai * ai / (aip * bi + ai * bip);
  if (!(gamma > 0.0))
    throw numerical_error("find_resonance: perturbative width came out non-positive");
  RealAxisRoot r;
  r.E = E;
  r.gamma = gamma;
  r.residual = std::abs(1.0 + c * ai * bi);
  r.iterations = it + 1;
  return r;
}

}  // namespace

cplx stark_green_1d(double x, double y, cplx z, double F) {
  if (!(F > 0.0)) throw std::domain_error("stark_green_1d: F > 0 required");
  double F3 = std::cbrt(F);
  double lo = std::min(x, y), hi = std::max(x, y);
  cplx shift = z / F;
  AiryPair ci = airy_outgoing(F3 * (lo - shift));
  AiryBoth hiv = airy(F3 * (hi - shift));
  return M_PI / F3 * ci.value * hiv.ai.value;
}

cplx free_green_1d(double x, double y, cplx z) {
  cplx sq = std::sqrt(z);
  if (sq.imag() < 0.0) sq = -sq;
  if (!(sq.imag() > 0.0))
    throw std::domain_error("free_green_1d: z on the essential spectrum [0, inf)");
  return kI / (2.0 * sq) * std::exp(kI * sq * std::abs(x - y));
}

cplx boundary_condition(cplx z, const ShellParams& params) {
  return 1.0 + params.alpha * stark_green_1d(params.a, params.a, z, params.F);
}

ResonancePoint find_resonance(cplx seed, const ShellParams& params) {
  if (!(params.F > 0.0)) throw std::domain_error("find_resonance: F > 0 required");
  cplx z = seed;
  int it = 0;
  for (; it < 100; ++it) {
    cplx D = boundary_condition(z, params);
    double h = 1e-7 * (1.0 + std::abs(z));
    cplx Dp = (boundary_condition(z + h, params) - boundary_condition(z - h, params)) /
              (2.0 * h);
    cplx step = D / Dp;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e5)
      throw nonconvergence_error("find_resonance: iteration left the computable region",
                                 z, std::abs(D), it);
    if (std::abs(D) < 1e-12 && std::abs(step) < 1e-12) break;
  }
  double res = std::abs(boundary_condition(z, params));
  if (it >= 100)
    throw nonconvergence_error("find_resonance: Newton did not converge in 100 iterations",
                               z, res, it);
  ResonancePoint pt;
  pt.F = params.F;
  if (std::abs(z.imag()) < kPerturbativeWidthCut * (1.0 + std::abs(z.real()))) {
    // z.imag() here is complex-evaluation noise, sign included
    RealAxisRoot r = resonance_perturbative(z.real(), params);
    pt.z = cplx(r.E, -r.gamma);
    pt.newton_residual = r.residual;
    pt.iterations = it + 1 + r.iterations;
    pt.method = "newton-airy, real-axis width";
  } else {
    if (z.imag() > 0.0) {
      std::ostringstream os;
      os << "find_resonance: converged to the upper-half-plane mirror zero at ("
         << z.real() << ", " << z.imag() << "); not a resonance";
      throw anti_resonance_error(os.str(), z);
    }
    pt.z = z;
    pt.newton_residual = res;
    pt.iterations = it + 1;
    pt.method = "newton-airy";
  }
  pt.width = -2.0 * pt.z.imag();
  return pt;
}

Trajectory sweep(const ShellParams& params_base, const std::vector<double>& F_values) {
  Trajectory tr;
  tr.params = params_base;
  if (F_values.empty()) return tr;
  for (std::size_t i = 0; i < F_values.size(); ++i) {
    if (!(F_values[i] > 0.0))
      throw std::domain_error("sweep: field values must be positive");
    if (i > 0 && !(F_values[i] > F_values[i - 1]))
      throw std::domain_error("sweep: field values must be strictly increasing");
  }

  // zero-field bound state of the 1D point well
  cplx seed(-params_base.alpha * params_base.alpha / 4.0, 0.0);
  cplx slope = 0.0;
  bool have_slope = false;
  double prev_F = 0.0;
  cplx prev_z = 0.0;

  for (std::size_t i = 0; i < F_values.size(); ++i) {
    ShellParams p = params_base;
    p.F = F_values[i];
    cplx start = seed;
    if (i > 0) {
      double dF = F_values[i] - prev_F;
      start = prev_z + (have_slope ? slope * dF : cplx(0.0));
    }
    ResonancePoint pt;
    try {
      pt = find_resonance(start, p);
    } catch (const nonconvergence_error& e) {
      std::ostringstream os;
      os << "sweep: lost the resonance branch at F = " << p.F << " (" << e.what() << ")";
      throw nonconvergence_error(os.str(), e.last_iterate, e.residual, e.iterations);
    }
    if (i > 0) {
      double dF = F_values[i] - prev_F;
      double allowed = 10.0 * dF * (std::abs(slope) + 1.0);
      if (std::abs(pt.z - prev_z) > allowed) {
        std::ostringstream os;
        os << "sweep: branch discontinuity at F = " << p.F << " (|dz| = "
           << std::abs(pt.z - prev_z) << " > " << allowed << ")";
        throw numerical_error(os.str());
      }
      slope = (pt.z - prev_z) / dF;
      have_slope = true;
    }
    prev_z = pt.z;
    prev_F = p.F;
    tr.points.push_back(pt);
  }
  return tr;
}

double agmon_action(double E0, double a, double F) {
  if (!(F > 0.0) || !(E0 < 0.0) || a < 0.0)
    throw std::domain_error("agmon_action: need F > 0, E0 < 0, a >= 0");
  double b = -E0 / F;
  if (b <= a) throw std::domain_error("agmon_action: no barrier (-E0/F <= a)");
  auto f = [&](double s) { return std::sqrt(F * s - E0); };
  return integrate(f, a, b, 20);
}

AgmonReport agmon_report(double E0, double a, double F) {
  AgmonReport r;
  r.integral = agmon_action(E0, a, F);
  r.antiderivative =
      (2.0 / (3.0 * F)) * (std::pow(-2.0 * E0, 1.5) - std::pow(F * a - E0, 1.5));
  r.outer_only = (2.0 / (3.0 * F)) * std::pow(F * a - E0, 1.5);
  r.asymptote = (2.0 / (3.0 * F)) * std::pow(-E0, 1.5);
  r.barrier_action = (2.0 / (3.0 * F)) * std::pow(std::max(0.0, -E0 - F * a), 1.5);
  return r;
}

WidthFit width_fit_points(const std::vector<double>& F, const std::vector<double>& Gamma) {
  if (F.size() != Gamma.size()) throw std::invalid_argument("width_fit: size mismatch");
  std::vector<double> fs, gs;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (Gamma[i] > 1e-300) {
      fs.push_back(F[i]);
      gs.push_back(Gamma[i]);
    }
  }
  if (fs.size() < 6)
    throw numerical_error(
        "width_fit: fewer than 6 usable widths above the underflow floor; "
        "use a larger-F window");
  const int n = int(fs.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = std::log(fs[i]);
    A(i, 2) = -1.0 / fs[i];
    y(i) = std::log(gs[i]);
  }
  Eigen::Vector3d sol = A.colPivHouseholderQr().solve(y);
  WidthFit fit;
  fit.logC = sol(0);
  fit.b = sol(1);
  fit.c = sol(2);
  fit.rms_residual = std::sqrt((A * sol - y).squaredNorm() / n);
  fit.F_lo = fs.front();
  fit.F_hi = fs.back();
  fit.n_points = n;
  return fit;
}

WidthFit width_fit(const Trajectory& traj) {
  std::vector<double> F, G;
  for (const ResonancePoint& p : traj.points) {
    F.push_back(p.F);
    G.push_back(p.width);
  }
  return width_fit_points(F, G);
}

// ---------------------------------------------------------------------
// Grid resolvents
// ---------------------------------------------------------------------

namespace {

void check_grid(const Grid1D& g) {
  if (!(g.x_hi > g.x_lo) || g.n < 16)
    throw std::domain_error("Grid1D: need x_hi > x_lo and n >= 16");
}

// trapezoid weight
inline double trap_w(const Grid1D& g, int i) {
  return (i == 0 || i == g.n) ? 0.5 * g.h() : g.h();
}

}  // namespace

Eigen::VectorXcd apply_free_resolvent_1d(const Eigen::VectorXcd& f, cplx z, double F,
                                         const Grid1D& grid) {
  check_grid(grid);
  if (f.size() != grid.n + 1) throw std::invalid_argument("sample count != grid nodes");
  const int N = grid.n + 1;
  Eigen::VectorXcd lo_part(N), hi_part(N);  // kernel factors at each node
  if (F > 0.0) {
    double F3 = std::cbrt(F);
    cplx shift = z / F;
    for (int i = 0; i < N; ++i) {
      cplx xi = F3 * (grid.x(i) - shift);
      AiryBoth b = airy(xi);
      lo_part[i] = b.bi.value + kI * b.ai.value;  // Ci factor (smaller argument)
      hi_part[i] = b.ai.value;                    // Ai factor (larger argument)
    }
    double C = M_PI / F3;
    // (R0 f)(x_i) = C [ Ai_i sum_{j<=i} w Ci_j f_j + Ci_i sum_{j>i} w Ai_j f_j ]
    Eigen::VectorXcd out(N);
    cplx acc_lo = 0.0;
    for (int i = 0; i < N; ++i) {
      acc_lo += trap_w(grid, i) * lo_part[i] * f[i];
      out[i] = hi_part[i] * acc_lo;
    }
    cplx acc_hi = 0.0;
    for (int i = N - 1; i >= 0; --i) {
      out[i] += lo_part[i] * acc_hi;
      acc_hi += trap_w(grid, i) * hi_part[i] * f[i];
    }
    return C * out;
  }
  if (!(z.imag() > 0.0))
    throw std::domain_error("apply_free_resolvent_1d: Im z > 0 required at F = 0");
  cplx sq = std::sqrt(z);
  if (sq.imag() < 0.0) sq = -sq;
  for (int i = 0; i < N; ++i) {
    lo_part[i] = std::exp(-kI * sq * grid.x(i));  // e^{-i sq x_<}
    hi_part[i] = std::exp(kI * sq * grid.x(i));   // e^{+i sq x_>}
  }
  cplx C = kI / (2.0 * sq);
  Eigen::VectorXcd out(N);
  cplx acc_lo = 0.0;
  for (int i = 0; i < N; ++i) {
    acc_lo += trap_w(grid, i) * lo_part[i] * f[i];
    out[i] = hi_part[i] * acc_lo;
  }
  cplx acc_hi = 0.0;
  for (int i = N - 1; i >= 0; --i) {
    out[i] += lo_part[i] * acc_hi;
    acc_hi += trap_w(grid, i) * hi_part[i] * f[i];
  }
  return C * out;
}

Eigen::VectorXcd krein_apply_1d(const Eigen::VectorXcd& f, cplx z, const ShellParams& params,
                                const Grid1D& grid) {
  check_grid(grid);
  if (!(z.imag() > 0.0)) throw std::domain_error("krein_apply_1d: Im z > 0 required");
  Eigen::VectorXcd r0f = apply_free_resolvent_1d(f, z, params.F, grid);

  auto green = [&](double x, double y) {
    return params.F > 0.0 ? stark_green_1d(x, y, z, params.F) : free_green_1d(x, y, z);
  };
  cplx gaa = green(params.a, params.a);
  cplx denom = 1.0 + params.alpha * gaa;
  if (std::abs(denom) < 1e-10 * (1.0 + std::abs(params.alpha * gaa)))
    throw numerical_error("krein_apply_1d: 1 + alpha G(a, a) ~ 0 (update pole)");

  // (R0 f)(a) by the same trapezoid rule
  cplx r0f_at_a = 0.0;
  for (int j = 0; j <= grid.n; ++j)
    r0f_at_a += trap_w(grid, j) * green(params.a, grid.x(j)) * f[j];

  cplx coef = params.alpha / denom * r0f_at_a;
  Eigen::VectorXcd out(grid.n + 1);
  for (int i = 0; i <= grid.n; ++i) out[i] = r0f[i] - coef * green(grid.x(i), params.a);
  return out;
}

Eigen::VectorXcd fd_resolve_1d(const Eigen::VectorXcd& f, cplx z, const ShellParams& params,
                               const Grid1D& grid) {
  check_grid(grid);
  if (f.size() != grid.n + 1) throw std::invalid_argument("sample count != grid nodes");
  const double h = grid.h();
  const int m = grid.n - 1;  // interior nodes
  const int ia = int(std::lround((params.a - grid.x_lo) / h));  // delta at nearest node
  Eigen::VectorXcd diag(m), rhs(m);
  for (int k = 0; k < m; ++k) {
    int i = k + 1;
    diag[k] = 2.0 / (h * h) + params.F * grid.x(i) - z;
    if (i == ia) diag[k] += params.alpha / h;
    rhs[k] = f[i];
  }
  const cplx off = -1.0 / (h * h);
  // Thomas elimination
  Eigen::VectorXcd c(m);
  c[0] = off / diag[0];
  rhs[0] /= diag[0];
  for (int k = 1; k < m; ++k) {
    cplx denom = diag[k] - off * c[k - 1];
    c[k] = off / denom;
    rhs[k] = (rhs[k] - off * rhs[k - 1]) / denom;
  }
  for (int k = m - 2; k >= 0; --k) rhs[k] -= c[k] * rhs[k + 1];
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(grid.n + 1);
  u.segment(1, m) = rhs;
  return u;
}

}  // namespace starkshell
