// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace starkshell {

// Machine check of a sign/prefactor convention: the adopted form must agree
// with an independent numerical oracle, and the rejected alternative must
// visibly disagree. pass = adopted_err < tolerance && rejected_err > 10 tolerance.
struct AuditItem {
  std::string name;
  std::string adopted;
  std::string rejected;
  double adopted_err = 0.0;
  double rejected_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// The three conventions the library pins:
//   mu-prefactor            mu_l = a^2 kappa i_l k_l   (not a/(2 kappa) i_l k_l)
//   bessel-wronskian-sign   t^2 (i_l' k_l - i_l k_l') = +1   (not -1)
//   agmon-action-form       int_a^{-E0/F} sqrt(F s - E0) ds equals the full
//                           antiderivative difference (not its outer term or
//                           the a-independent asymptote)
std::vector<AuditItem> run_convention_audit();

}  // namespace starkshell
