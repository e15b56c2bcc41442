// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#include "starkshell/weyl_3d.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "starkshell/parallel.hpp"
#include "starkshell/quadrature.hpp"
#include "starkshell/special_functions.hpp"
#include "starkshell/zero_field.hpp"

namespace starkshell {

namespace {

const cplx kI{0.0, 1.0};

cplx kernel_prefactor(cplx t, double dim_half) {
  // (4 pi i t)^{-d/2}, principal branch; contour keeps Re(it) >= 0
  return std::pow(4.0 * M_PI * kI * t, -dim_half);
}

cplx phase_3d(const Eigen::Vector3d& x, const Eigen::Vector3d& y, cplx t, double F) {
  double d2 = (x - y).squaredNorm();
  return kI * d2 / (4.0 * t) - kI * F * t * (x[0] + y[0]) / 2.0 -
         kI * F * F * t * t * t / 12.0;
}

struct ContourNode {
  cplx t;
  cplx w;  // full dt weight
};

std::vector<ContourNode> contour_nodes(cplx z, double theta, double t_bend, double F,
                                       const WeylQuadrature& q) {
  if (!(theta > -M_PI / 3.0 && theta < 0.0))
    throw std::domain_error("contour angle theta must lie in (-pi/3, 0)");
  if (!(t_bend > 0.0)) throw std::domain_error("contour bend must be positive");

  // leg-B truncation: e^{izt} contributes exp(-lin * s), the field phase
  // contributes exp(F^2 s^3 sin(3 theta)/12)
  double lin = z.real() * std::sin(theta) + z.imag() * std::cos(theta);
  double s3 = -std::sin(3.0 * theta);  // > 0 in the allowed sector
  double s_max = std::numeric_limits<double>::infinity();
  if (lin > 0.0) s_max = q.decay_target / lin;
  if (F > 0.0)
    s_max = std::min(s_max, std::cbrt(12.0 * q.decay_target / (F * F * s3)));
  if (!std::isfinite(s_max))
    throw std::domain_error(
        "contour does not decay for this (z, theta, F); need F > 0 or "
        "Re z sin(theta) + Im z cos(theta) > 0");

  std::vector<ContourNode> nodes;
  nodes.reserve(q.n_sigma + 4 * q.n_s);
  const GaussLegendre& glA = gauss_legendre(q.n_sigma);
  double S = std::sqrt(t_bend);
  for (int i = 0; i < q.n_sigma; ++i) {
    double sig = 0.5 * S * (glA.x[i] + 1.0);
    double w = 0.5 * S * glA.w[i];
    nodes.push_back({-kI * sig * sig, w * (-2.0 * kI * sig)});
  }
  const GaussLegendre& glB = gauss_legendre(q.n_s);
  const cplx dir = std::exp(kI * theta);
  const double edges[5] = {0.0, s_max / 27.0, s_max / 9.0, s_max / 3.0, s_max};
  for (int p = 0; p < 4; ++p) {
    double mid = 0.5 * (edges[p] + edges[p + 1]);
    double hw = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < q.n_s; ++i) {
      double s = mid + hw * glB.x[i];
      nodes.push_back({-kI * t_bend + s * dir, hw * glB.w[i] * dir});
    }
  }
  return nodes;
}

}  // namespace

cplx stark_propagator_kernel(const Eigen::Vector3d& x, const Eigen::Vector3d& y, cplx t,
                             double F) {
  if (t == cplx(0.0)) throw std::domain_error("propagator kernel: t = 0");
  return kernel_prefactor(t, 1.5) * std::exp(phase_3d(x, y, t, F));
}

cplx stark_propagator_kernel_1d(double x, double y, cplx t, double F) {
  if (t == cplx(0.0)) throw std::domain_error("propagator kernel: t = 0");
  cplx ph = kI * (x - y) * (x - y) / (4.0 * t) - kI * F * t * (x + y) / 2.0 -
            kI * F * F * t * t * t / 12.0;
  return kernel_prefactor(t, 0.5) * std::exp(ph);
}

double propagator_pde_residual(const Eigen::Vector3d& x, const Eigen::Vector3d& y, cplx t,
                               double F) {
  const double hx = 2e-3;
  const double ht = 1e-4 * (1.0 + std::abs(t));
  auto P = [&](const Eigen::Vector3d& xx, cplx tt) {
    return stark_propagator_kernel(xx, y, tt, F);
  };
  cplx p0 = P(x, t);
  cplx dt = (P(x, t + ht) - P(x, t - ht)) / (2.0 * ht);
  cplx lap = 0.0;
  for (int d = 0; d < 3; ++d) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[d] = hx;
    lap += (P(x + e, t) - 2.0 * p0 + P(x - e, t)) / (hx * hx);
  }
  cplx hp = -lap + F * x[0] * p0;
  cplx res = kI * dt - hp;
  double scale = std::abs(hp) + std::abs(dt) + 1e-300;
  return std::abs(res) / scale;
}

cplx mu_ell_time_integral(int ell, cplx z, double a, double theta, const WeylQuadrature& q) {
  if (!(a > 0.0)) throw std::domain_error("a > 0 required");
  double t_bend = a * a / (2.0 * q.lambda0);
  std::vector<ContourNode> nodes = contour_nodes(z, theta, t_bend, 0.0, q);
  static const cplx mIl[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^l
  cplx acc = 0.0;
  for (const ContourNode& nd : nodes) {
    cplx lam = a * a / (2.0 * nd.t);
    std::vector<cplx> jh = sph_j_scaled(ell, lam);
    acc += nd.w * std::exp(kI * z * nd.t) * kernel_prefactor(nd.t, 1.5) * 4.0 * M_PI *
           mIl[ell % 4] * jh[ell];
  }
  return kI * a * a * acc;
}

cplx stark_green_1d_from_propagator(double x, double y, cplx z, double F, double theta,
                                    const WeylQuadrature& q) {
  double t_bend = std::max((x - y) * (x - y) / 12.0, 0.02);
  std::vector<ContourNode> nodes = contour_nodes(z, theta, t_bend, F, q);
  cplx acc = 0.0;
  for (const ContourNode& nd : nodes)
    acc += nd.w * std::exp(kI * z * nd.t) * stark_propagator_kernel_1d(x, y, nd.t, F);
  return kI * acc;
}

WeylMatrix weyl_matrix(cplx z, double theta, const ShellParams& params, int L_max,
                       const WeylQuadrature& quad) {
  if (!(params.a > 0.0)) throw std::domain_error("weyl_matrix: a > 0 required");
  if (L_max < 0 || L_max > 30) throw std::domain_error("weyl_matrix: L_max in [0, 30]");
  if (params.F < 0.0) throw std::domain_error("weyl_matrix: F >= 0 required");

  const double a = params.a;
  const int dim = (L_max + 1) * (L_max + 1);
  WeylMatrix out;
  out.z = z;
  out.theta = theta;
  out.F = params.F;
  out.a = a;
  out.L_max = L_max;
  out.entries = Eigen::MatrixXcd::Zero(dim, dim);
  for (int l = 0; l <= L_max; ++l) {
    cplx mu = mu_ell_z(l, z, a);
    for (int m = -l; m <= l; ++m) out.entries(sh_index(l, m), sh_index(l, m)) = mu;
  }
  if (params.F == 0.0) {
    out.quad_meta = "diagonal (F = 0)";
    return out;
  }

  const double F = params.F;
  const double t_bend = a * a / (2.0 * quad.lambda0);
  const std::vector<ContourNode> nodes = contour_nodes(z, theta, t_bend, F, quad);
  const int L_cut = L_max + quad.L_pad;
  const int n_u = std::max(48, L_cut + 16);
  const GaussLegendre& glu = gauss_legendre(n_u);

  // normalized Legendre tables per azimuthal order
  std::vector<Eigen::MatrixXd> pb(L_max + 1);
  std::vector<double> row(L_cut + 1);
  for (int m = 0; m <= L_max; ++m) {
    pb[m].resize(L_cut + 1 - m, n_u);
    for (int i = 0; i < n_u; ++i) {
      legendre_normalized(L_cut, m, glu.x[i], row.data());
      for (int l = m; l <= L_cut; ++l) pb[m](l - m, i) = row[l - m];
    }
  }

  static const cplx mIl[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^L

  // per-node m-blocks, summed afterwards in node order (deterministic
  // under any thread count)
  const int n_nodes = int(nodes.size());
  std::vector<std::vector<Eigen::MatrixXcd>> slot(n_nodes);

  parallel_for(n_nodes, [&](int k) {
    const cplx t = nodes[k].t;
    const cplx cw =
        kI * nodes[k].w * std::exp(kI * z * t) * a * a * kernel_prefactor(t, 1.5) * 4.0 * M_PI;
    const cplx lam = a * a / (2.0 * t);
    const cplx beta = F * t * a / 2.0;
    const cplx gamma = F * F * t * t * t / 12.0;
    const cplx eg = std::exp(-kI * gamma);
    const std::vector<cplx> jh = sph_j_scaled(L_cut, lam);

    // u-weights carrying the field tilt e^{-i beta u}
    Eigen::VectorXcd ew(n_u);
    for (int i = 0; i < n_u; ++i) ew[i] = glu.w[i] * std::exp(-kI * beta * glu.x[i]);

    std::vector<Eigen::MatrixXcd>& blocks = slot[k];
    blocks.resize(L_max + 1);
    for (int m = 0; m <= L_max; ++m) {
      const int nl = L_max + 1 - m;
      const int nL = L_cut + 1 - m;
      Eigen::MatrixXcd C(nl, nL);
      C.setZero();
      for (int i = 0; i < n_u; ++i) {
        const cplx e = ew[i];
        for (int lr = 0; lr < nl; ++lr) {
          const cplx pv = pb[m](lr, i) * e;
          for (int Lc = 0; Lc < nL; ++Lc) C(lr, Lc) += pv * pb[m](Lc, i);
        }
      }
      Eigen::MatrixXcd B(nl, nl);
      for (int lr = 0; lr < nl; ++lr) {
        for (int lc = lr; lc < nl; ++lc) {
          cplx acc = 0.0;
          for (int Lc = 0; Lc < nL; ++Lc) {
            int L = m + Lc;
            acc += mIl[L % 4] * jh[L] * C(lr, Lc) * C(lc, Lc);
          }
          cplx v = eg * acc;
          if (lr == lc) {
            int l = m + lr;
            v -= mIl[l % 4] * jh[l];
          }
          B(lr, lc) = cw * v;
          B(lc, lr) = B(lr, lc);
        }
      }
      blocks[m] = std::move(B);
    }
  });

  for (int k = 0; k < n_nodes; ++k) {
    for (int m = 0; m <= L_max; ++m) {
      const Eigen::MatrixXcd& B = slot[k][m];
      const int nl = L_max + 1 - m;
      for (int lr = 0; lr < nl; ++lr) {
        for (int lc = 0; lc < nl; ++lc) {
          out.entries(sh_index(m + lr, m), sh_index(m + lc, m)) += B(lr, lc);
          if (m > 0)
            out.entries(sh_index(m + lr, -m), sh_index(m + lc, -m)) += B(lr, lc);
        }
      }
    }
  }

  std::ostringstream meta;
  meta << "legA " << quad.n_sigma << " nodes to t_bend = " << t_bend << "; legB 4x"
       << quad.n_s << " nodes, theta = " << theta << "; L_cut = " << L_cut
       << ", n_u = " << n_u;
  out.quad_meta = meta.str();
  return out;
}

cplx det_p_from_eigenvalues(const Eigen::VectorXcd& lambdas, int p) {
  if (p < 3) throw std::domain_error("det_p: p >= 3 required");
  cplx prod = 1.0;
  for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
    cplx lam = lambdas[j];
    cplx corr = 0.0;
    cplx pw = 1.0;
    for (int k = 1; k <= p - 1; ++k) {
      pw *= lam;
      corr += pw / double(k);
    }
    prod *= (1.0 - lam) * std::exp(corr);
  }
  return prod;
}

DeterminantValue det_p(const WeylMatrix& mat, double alpha, int p) {
  // det_p(I + alpha M): factors 1 - lambda with lambda eigenvalues of -alpha M,
  // so the zeros sit exactly on the secular condition 1 + alpha mu = 0
  Eigen::MatrixXcd K = -alpha * mat.entries;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(K, false);
  if (es.info() != Eigen::Success) throw numerical_error("det_p: eigensolver failed");
  DeterminantValue dv;
  dv.p = p;
  dv.L_max = mat.L_max;
  dv.eig_count_used = int(es.eigenvalues().size());
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    if (std::abs(1.0 - es.eigenvalues()[j]) < 1e-14) dv.on_zero_factor = true;
  dv.value = det_p_from_eigenvalues(es.eigenvalues(), p);
  return dv;
}

Resonance3D find_resonance_3d(cplx seed, double theta, const ShellParams& params, int L_max,
                              const WeylQuadrature& quad) {
  auto det_at = [&](cplx z, int L) {
    return det_p(weyl_matrix(z, theta, params, L, quad), params.alpha, 3).value;
  };
  auto newton = [&](cplx z0, int L, int& iters, double& resid) {
    cplx z = z0;
    int it = 0;
    for (; it < 60; ++it) {
      cplx D = det_at(z, L);
      double h = 1e-7 * (1.0 + std::abs(z));
      cplx Dp = (det_at(z + h, L) - det_at(z - h, L)) / (2.0 * h);
      cplx step = D / Dp;
      z -= step;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e3)
        throw nonconvergence_error("find_resonance_3d: iteration diverged", z,
                                   std::abs(D), it);
      if (std::abs(D) < 1e-9 && std::abs(step) < 1e-9) break;
    }
    resid = std::abs(det_at(z, L));
    if (it >= 60)
      throw nonconvergence_error("find_resonance_3d: Newton did not converge", z, resid, it);
    iters = it + 1;
    return z;
  };

  int it1 = 0, it2 = 0;
  double res1 = 0.0, res2 = 0.0;
  cplx root = newton(seed, L_max, it1, res1);
  cplx refined = newton(root, L_max + 2, it2, res2);
  double shift = std::abs(refined - root);
  if (shift > 1e-4) {
    std::ostringstream os;
    os << "find_resonance_3d: truncation instability, root moved " << shift
       << " between L_max = " << L_max << " (" << root << ") and " << (L_max + 2) << " ("
       << refined << ")";
    throw numerical_error(os.str());
  }

  Resonance3D r;
  r.L_max = L_max;
  r.z_refined = refined;
  r.truncation_shift = shift;
  std::ostringstream m;
  m << "det3 contour theta = " << theta << ", L_max = " << L_max << " (L+2 shift " << shift
    << ")";
  r.point.z = root;
  r.point.width = -2.0 * root.imag();
  r.point.F = params.F;
  r.point.newton_residual = res1;
  r.point.iterations = it1;
  r.point.method = m.str();
  return r;
}

}  // namespace starkshell
