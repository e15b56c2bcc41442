// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#include "starkshell/convention_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starkshell/resonance_1d.hpp"
#include "starkshell/special_functions.hpp"
#include "starkshell/zero_field.hpp"

namespace starkshell {

namespace {

void finalize(AuditItem& item) {
  item.pass = item.adopted_err < item.tolerance &&
              item.rejected_err > 10.0 * item.tolerance;
}

AuditItem audit_mu_prefactor() {
  AuditItem item;
  item.name = "mu-prefactor";
  item.adopted = "mu_l(E) = a^2 kappa i_l(kappa a) k_l(kappa a)";
  item.rejected = "mu_l(E) = a/(2 kappa) i_l(kappa a) k_l(kappa a)";
  item.tolerance = 1e-10;
  // grid avoids 2 a kappa^2 = 1 where the two forms coincide
  const double energies[3] = {-0.3, -1.3, -3.7};
  const double radii[3] = {0.5, 1.0, 2.0};
  item.rejected_err = std::numeric_limits<double>::infinity();
  for (int ell = 0; ell <= 3; ++ell) {
    for (double E : energies) {
      for (double a : radii) {
        double oracle = mu_ell_surface_quadrature(ell, E, a, 96);
        double kappa = std::sqrt(-E);
        double adopted = mu_ell(ell, E, a);
        double rejected = adopted / (2.0 * a * kappa * kappa);
        item.adopted_err =
            std::max(item.adopted_err, std::abs(adopted / oracle - 1.0));
        item.rejected_err =
            std::min(item.rejected_err, std::abs(rejected / oracle - 1.0));
      }
    }
  }
  finalize(item);
  return item;
}

AuditItem audit_wronskian_sign() {
  AuditItem item;
  item.name = "bessel-wronskian-sign";
  item.adopted = "t^2 (i_l'(t) k_l(t) - i_l(t) k_l'(t)) = +1";
  item.rejected = "t^2 (i_l'(t) k_l(t) - i_l(t) k_l'(t)) = -1";
  item.tolerance = 1e-10;
  const double args[3] = {0.5, 2.0, 7.0};
  item.rejected_err = std::numeric_limits<double>::infinity();
  for (int ell = 0; ell <= 1; ++ell) {
    for (double t : args) {
      double w = t * t *
                 (sph_i_deriv(ell, t) * sph_k(ell, t) - sph_i(ell, t) * sph_k_deriv(ell, t));
      item.adopted_err = std::max(item.adopted_err, std::abs(w - 1.0));
      item.rejected_err = std::min(item.rejected_err, std::abs(w + 1.0));
    }
  }
  finalize(item);
  return item;
}

AuditItem audit_agmon_form() {
  AuditItem item;
  item.name = "agmon-action-form";
  item.adopted = "S = (2/(3F)) [(-2 E0)^{3/2} - (F a - E0)^{3/2}]";
  item.rejected = "S = outer antiderivative term alone, or the a-independent asymptote";
  item.tolerance = 1e-10;
  AgmonReport r = agmon_report(-1.0, 0.3, 0.1);
  item.adopted_err = std::abs(r.integral / r.antiderivative - 1.0);
  item.rejected_err = std::min(std::abs(r.outer_only / r.integral - 1.0),
                               std::abs(r.asymptote / r.integral - 1.0));
  finalize(item);
  return item;
}

}  // namespace

std::vector<AuditItem> run_convention_audit() {
  return {audit_mu_prefactor(), audit_wronskian_sign(), audit_agmon_form()};
}

}  // namespace starkshell
