// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace starkshell {

struct GaussLegendre {
  Eigen::ArrayXd x;  // nodes on [-1, 1], ascending
  Eigen::ArrayXd w;
};

// Cached n-point Gauss-Legendre rule (thread-safe).
const GaussLegendre& gauss_legendre(int n);

// integral of f over [a, b] with an n-point rule; f may return double or
// std::complex<double>
template <class F>
auto integrate(F&& f, double a, double b, int n) {
  const GaussLegendre& gl = gauss_legendre(n);
  const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  decltype(f(a)) acc{};
  for (int i = 0; i < n; ++i) acc += gl.w[i] * f(mid + hw * gl.x[i]);
  return hw * acc;
}

}  // namespace starkshell
