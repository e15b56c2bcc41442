// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#include "starkshell/zero_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starkshell/quadrature.hpp"
#include "starkshell/special_functions.hpp"

namespace starkshell {

namespace {

void check_shell(double a) {
  if (!(a > 0.0)) throw std::domain_error("shell radius a must be positive");
}

// d/dkappa of a^2 kappa i_l(kappa a) k_l(kappa a)
double dmu_dkappa(int ell, double kappa, double a) {
  double t = kappa * a;
  double il = sph_i(ell, t), kl = sph_k(ell, t);
  return a * a * (il * kl + t * (sph_i_deriv(ell, t) * kl + il * sph_k_deriv(ell, t)));
}

}  // namespace

double mu_ell(int ell, double E, double a) {
  check_shell(a);
  if (!(E < 0.0)) throw std::domain_error("mu_ell: E < 0 required");
  double kappa = std::sqrt(-E);
  double t = kappa * a;
  return a * a * kappa * sph_i(ell, t) * sph_k(ell, t);
}

cplx mu_ell_z(int ell, cplx z, double a) {
  check_shell(a);
  cplx kappa = std::sqrt(-z);
  if (!(kappa.real() > 0.0))
    throw std::domain_error("mu_ell_z: z on the essential spectrum [0, inf)");
  cplx t = kappa * a;
  return a * a * kappa * sph_i(ell, t) * sph_k(ell, t);
}

double mu_prime(int ell, double E, double a) {
  check_shell(a);
  if (!(E < 0.0)) throw std::domain_error("mu_prime: E < 0 required");
  if (ell == 0) {
    double kappa = std::sqrt(-E);
    double t = kappa * a;
    return (1.0 - (1.0 + 2.0 * t) * std::exp(-2.0 * t)) / (4.0 * kappa * kappa * kappa);
  }
  double h = 1e-5 * std::abs(E);
  auto cd = [&](double step) {
    return (mu_ell(ell, E + step, a) - mu_ell(ell, E - step, a)) / (2.0 * step);
  };
  double d1 = cd(h), d2 = cd(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

double critical_strength(int ell, double a) {
  check_shell(a);
  if (ell < 0) throw std::domain_error("critical_strength: ell >= 0 required");
  return -double(2 * ell + 1) / a;
}

double mu_ell_surface_quadrature(int ell, double E, double a, int n_nodes) {
  check_shell(a);
  if (!(E < 0.0)) throw std::domain_error("E < 0 required");
  double kappa = std::sqrt(-E);
  auto f = [&](double u) {
    return std::exp(-2.0 * kappa * a * u) * legendre_p(ell, 1.0 - 2.0 * u * u);
  };
  return a * integrate(f, 0.0, 1.0, n_nodes);
}

std::vector<PartialWaveBoundState> find_bound_states(const ShellParams& params, int ell_max) {
  check_shell(params.a);
  if (ell_max < 0 || ell_max > 64)
    throw std::domain_error("find_bound_states: ell_max must lie in [0, 64]");
  std::vector<PartialWaveBoundState> states;
  if (params.alpha >= 0.0) return states;

  for (int ell = 0; ell <= ell_max; ++ell) {
    if (params.alpha >= critical_strength(ell, params.a)) break;  // deeper l cannot bind

    auto g = [&](double kappa) {
      return 1.0 + params.alpha * mu_ell(ell, -kappa * kappa, params.a);
    };
    // g(0+) < 0 below the critical coupling, g(|alpha|) > 0 since
    // |alpha| mu_l < 1/2 there
    double lo = 1e-9, hi = std::abs(params.alpha);
    int used = 0;
    double kappa;
    if (g(lo) >= 0.0) {
      // root below the resolution floor: threshold state
      kappa = lo;
    } else {
      while (hi - lo > 1e-3 * hi && used < 200) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
        ++used;
      }
      kappa = 0.5 * (lo + hi);
      for (; used < 200; ++used) {
        double gk = g(kappa);
        double dg = params.alpha * dmu_dkappa(ell, kappa, params.a);
        double step = gk / dg;
        kappa -= step;
        if (!(kappa > 0.0) || !std::isfinite(kappa)) {
          kappa = 0.5 * (lo + hi);  // fall back inside the bracket
          continue;
        }
        if (std::abs(gk) < 1e-13 && std::abs(step) < 1e-12 * (1.0 + kappa)) break;
      }
      if (used >= 200) {
        std::ostringstream os;
        os << "find_bound_states: no convergence for ell = " << ell
           << " (bracket [" << lo << ", " << hi << "], residual " << g(kappa) << ")";
        throw numerical_error(os.str());
      }
    }

    PartialWaveBoundState st;
    st.ell = ell;
    st.kappa = kappa;
    st.energy = -kappa * kappa;
    st.multiplicity = 2 * ell + 1;
    st.secular_residual = std::abs(g(kappa));
    st.shallow = std::abs(st.energy) < 1e-10;
    states.push_back(st);
  }
  std::sort(states.begin(), states.end(),
            [](const PartialWaveBoundState& x, const PartialWaveBoundState& y) {
              return x.energy < y.energy;
            });
  return states;
}

}  // namespace starkshell
