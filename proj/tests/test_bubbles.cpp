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

#include <cmath>
#include <vector>

#include "ciss/bubbles.hpp"
#include "ciss/error.hpp"
#include "doctest.h"

using namespace ciss;

namespace {

ModelParams params(double ts, double tp, double delta, double t) {
  ModelParams p;
  p.t_s = ts;
  p.t_p = tp;
  p.delta = delta;
  p.temperature = t;
  return p;
}

QuadratureOptions tight() {
  QuadratureOptions q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-16;
  return q;
}

}  // namespace

TEST_CASE("cutoff function") {
  CHECK(cutoff_function(0.0, 1.0) == 1.0);
  CHECK(cutoff_function(1e-12, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cutoff_function(1.0, 1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-15));
  CHECK(cutoff_function(1.0, 1.0) == doctest::Approx(0.58198).epsilon(1e-5));
  CHECK(cutoff_function(-1.0, 1.0) == cutoff_function(1.0, 1.0));
  CHECK(cutoff_function(10.0, 0.1) < 1e-40);
  CHECK(cutoff_function(5.0, INFINITY) == 1.0);
  CHECK(cutoff_function(1e6, 1e-6) == 0.0);
  CHECK_THROWS_AS(cutoff_function(1.0, 0.0), DomainError);
}

TEST_CASE("cutoff scale derivative matches finite differences") {
  for (double e : {1e-7, 1e-5, 3e-4, 0.05, 0.7, 1.0, 2.5, 30.0}) {
    const double lam = 1.0, h = 1e-5;
    const double fd =
        (cutoff_function(e, lam * (1 + h)) - cutoff_function(e, lam * (1 - h))) / (2 * h);
    CHECK(cutoff_scale_derivative(e, lam) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(cutoff_scale_derivative(1.0, INFINITY) == 0.0);
  CHECK(cutoff_scale_derivative(1e6, 1e-6) == 0.0);
  CHECK(std::isfinite(cutoff_scale_derivative(800.0, 1.0)));
}

TEST_CASE("kernels agree with direct occupation differences") {
  for (double t : {0.05, 0.3, 2.0})
    for (double a : {-1.3, -0.2, 0.4})
      for (double b : {-0.7, 0.15, 1.1}) {
        const double na = fermi_occupation(a, t), nb = fermi_occupation(b, t);
        CHECK(ph_kernel(a, b, t) == doctest::Approx((na - nb) / (a - b)).epsilon(1e-11));
        CHECK(ph_kernel(a, b, t) == doctest::Approx(ph_kernel(b, a, t)).epsilon(1e-14));
        if (std::abs(a + b) > 1e-3)
          CHECK(pp_kernel(a, b, t) == doctest::Approx((1 - na - nb) / (a + b)).epsilon(1e-11));
      }
}

TEST_CASE("kernel limits") {
  const double t = 0.2;
  const double a = 0.3;
  const double n = fermi_occupation(a, t);
  CHECK(ph_kernel(a, a, t) == doctest::Approx(-n * (1 - n) / t).epsilon(1e-13));
  CHECK(pp_kernel(a, -a, t) == doctest::Approx(n * (1 - n) / t).epsilon(1e-12));
  CHECK(ph_kernel(-1.0, 2.0, 0.0) == doctest::Approx(-1.0 / 3.0));
  CHECK(ph_kernel(1.0, 1.0, 0.0) == 0.0);
  CHECK(pp_kernel(-1.0, -2.0, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(pp_kernel(1.0, -1.0, 0.0) == 0.0);
  // Deep in the tails both branches stay finite and continuous.
  for (double x : {-400.0, -100.0, 100.0, 400.0}) {
    CHECK(std::isfinite(ph_kernel(x, x + 0.5, 0.1)));
    CHECK(std::isfinite(pp_kernel(x, x + 0.5, 0.1)));
  }
  CHECK(ph_kernel(-61.0, 59.0, 0.1) == doctest::Approx(-1.0 / 120.0).epsilon(1e-12));
  CHECK(ph_kernel(-60.0, 60.0, 0.1) == doctest::Approx(-1.0 / 120.0).epsilon(1e-12));
  // Approach to zero temperature.
  CHECK(ph_kernel(-0.5, 0.8, 1e-3) == doctest::Approx(ph_kernel(-0.5, 0.8, 0.0)).epsilon(1e-12));
}

TEST_CASE("bare bubbles at zero temperature") {
  const ModelParams p = params(2, 1, 1, 0);
  CHECK(bubble(BubbleKind::ph, Band::s, Band::s, INFINITY, p).value == 0.0);
  CHECK(bubble(BubbleKind::ph, Band::px, Band::py, INFINITY, p).value == 0.0);
  const double sp = bubble(BubbleKind::ph, Band::s, Band::px, INFINITY, p, tight()).value;
  CHECK(-sp == doctest::Approx(1.0 / std::sqrt(13.0)).epsilon(1e-12));
  CHECK(-sp == doctest::Approx(0.27735).epsilon(1e-5));
  const double ps = bubble(BubbleKind::ph, Band::py, Band::s, INFINITY, p, tight()).value;
  CHECK(ps == doctest::Approx(sp).epsilon(1e-14));
  // pp for s-p is zero at T = 0: [1 - 1 - 0] / (eps_s + eps_p)
  CHECK(bubble(BubbleKind::pp, Band::s, Band::px, INFINITY, p).value == 0.0);
}

TEST_CASE("bubble closed form on a parameter grid") {
  for (double d : {0.01, 0.1, 1.0, 3.0})
    for (double ts : {0.5, 2.0})
      for (double tp : {0.25, 1.0}) {
        const ModelParams p = params(ts, tp, d, 0);
        const double exact = 1.0 / std::sqrt(d * (d + 4 * (ts + tp)));
        CHECK(-bubble(BubbleKind::ph, Band::s, Band::px, INFINITY, p).value ==
              doctest::Approx(exact).epsilon(1e-9));
      }
}

TEST_CASE("bubble scale derivative matches a central difference") {
  const double h = 1e-4;
  for (double t : {0.0, 0.1})
    for (BubbleKind kind : {BubbleKind::ph, BubbleKind::pp})
      for (auto bands : {std::pair{Band::s, Band::px}, std::pair{Band::s, Band::s},
                         std::pair{Band::px, Band::px}})
        for (double lam : {0.05, 0.7, 4.0, 60.0}) {
          const ModelParams p = params(2, 1, 0.3, t);
          const double d =
              bubble_scale_derivative(kind, bands.first, bands.second, lam, p, tight()).value;
          const double fd = (bubble(kind, bands.first, bands.second, lam * (1 + h), p, tight()).value -
                             bubble(kind, bands.first, bands.second, lam * (1 - h), p, tight()).value) /
                            (2 * h);
          if (std::abs(d) < 1e-12) {
            CHECK(std::abs(fd) < 1e-10);
          } else {
            CHECK(d == doctest::Approx(fd).epsilon(1e-5));
          }
        }
}

TEST_CASE("bubble scale derivative limits") {
  const ModelParams p = params(2, 1, 0.5, 0);
  CHECK(bubble_scale_derivative(BubbleKind::ph, Band::s, Band::px, INFINITY, p).value == 0.0);
  CHECK(std::abs(bubble_scale_derivative(BubbleKind::ph, Band::s, Band::px, 1e9, p).value) < 1e-8);
  CHECK(std::abs(bubble_scale_derivative(BubbleKind::ph, Band::s, Band::px, 1e-4, p).value) < 1e-100);
}

TEST_CASE("quadrature failure carries diagnostics") {
  QuadratureOptions q;
  q.initial_points = 64;
  q.max_points = 128;
  q.rel_tol = 1e-15;
  q.abs_tol = 0.0;
  const ModelParams p = params(2, 1, 1e-4, 0);
  try {
    bubble(BubbleKind::ph, Band::s, Band::px, INFINITY, p, q);
    FAIL("expected a numerical failure");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("points=128") != std::string::npos);
  }
}

TEST_CASE("bubble table matches adaptive bubbles") {
  for (double t : {0.0, 0.05, 0.5}) {
    const ModelParams p = params(2, 1, 0.4, t);
    const BubbleTable table(p, 512);
    for (double lam : {double(INFINITY), 800.0, 3.0, 0.2}) {
      const BubbleMatrices m = table.values(lam);
      const BubbleMatrices d = lam == INFINITY ? BubbleMatrices{} : table.scale_derivatives(lam);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const Band ba = kBands[a], bb = kBands[b];
          CHECK(m.ph(a, b) == doctest::Approx(bubble(BubbleKind::ph, ba, bb, lam, p).value).epsilon(1e-9));
          CHECK(m.pp(a, b) == doctest::Approx(bubble(BubbleKind::pp, ba, bb, lam, p).value).epsilon(1e-9));
          if (lam != INFINITY)
            CHECK(d.ph(a, b) ==
                  doctest::Approx(bubble_scale_derivative(BubbleKind::ph, ba, bb, lam, p).value)
                      .epsilon(1e-9));
        }
    }
    CHECK(table.grid_error() < 1e-10);
  }
  CHECK_THROWS_AS(BubbleTable(params(2, 1, 0.4, 0), 32), DomainError);
}

TEST_CASE("zero temperature bubble scales as delta^-1/2") {
  std::vector<double> x, y;
  for (int i = 0; i <= 8; ++i) {
    const double d = std::pow(10.0, -4.0 + 2.0 * i / 8.0);
    const ModelParams p = params(2, 1, d, 0);
    x.push_back(std::log(d));
    y.push_back(std::log(-bubble(BubbleKind::ph, Band::s, Band::px, INFINITY, p).value));
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  CHECK(sxy / sxx == doctest::Approx(-0.5).epsilon(0.01));
}
