// Copyright 2026 The ciss-frg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>

#include "ciss/error.hpp"

namespace ciss {

struct QuadratureOptions {
  int initial_points = 256;
  int max_points = 1 << 22;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // |T_N - T_{N/2}|
  int points = 0;
  bool converged = false;
};

// Mean of a 2pi-periodic f over [-pi, pi) by the trapezoid rule, doubling the
// grid until successive estimates agree. Reuses earlier nodes.
template <class F>
QuadratureResult periodic_mean(F&& f, const QuadratureOptions& opt = {}) {
  if (opt.initial_points < 2 || opt.max_points < opt.initial_points)
    throw DomainError("invalid quadrature grid settings");
  const double pi = std::numbers::pi;
  int n = opt.initial_points;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(-pi + 2.0 * pi * i / n);
  double mean = sum / n;
  QuadratureResult r{mean, INFINITY, n, false};
  while (2 * n <= opt.max_points) {
    double add = 0.0;
    for (int i = 0; i < n; ++i) add += f(-pi + 2.0 * pi * (2 * i + 1) / (2.0 * n));
    const double next = 0.5 * (mean + add / n);
    n *= 2;
    r = {next, std::abs(next - mean), n, false};
    mean = next;
    if (r.error <= opt.rel_tol * std::abs(next) || r.error <= opt.abs_tol) {
      r.converged = true;
      return r;
    }
  }
  return r;
}

}  // namespace ciss
