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
#include <random>

#include "ciss/error.hpp"
#include "ciss/flow.hpp"
#include "ciss/susceptibility.hpp"
#include "ciss/vertex.hpp"
#include "doctest.h"

using namespace ciss;

namespace {

ModelParams model(double u, double j, double jp, double delta, double t) {
  ModelParams p;
  p.t_s = 2;
  p.t_p = 1;
  p.u = u;
  p.j = j;
  p.jp = jp;
  p.delta = delta;
  p.temperature = t;
  return p;
}

// Second-order expansion of the right-hand side around the bare vertex,
// derived symbolically with bubbles ph/pp in {ss, sp, xx}.
VertexClasses hand_expansion(double u_minus_j, double j, double jp, const BubbleMatrices& d) {
  const double u = u_minus_j;
  const double phss = d.ph(0, 0), phsp = d.ph(0, 1), phxx = d.ph(1, 1);
  const double ppss = d.pp(0, 0), ppsp = d.pp(0, 1), ppxx = d.pp(1, 1);
  VertexClasses c{};
  c[kSsss] = -8 * j * j * phxx + 8 * j * phxx * u - 2 * jp * jp * ppxx + 4 * phxx * u * u;
  c[kXxxx] = -4 * j * j * phss + 4 * j * phss * u - jp * jp * ppss + 2 * phss * u * u;
  c[kSsxx] = -4 * j * jp * phsp - 4 * jp * phsp * u;
  c[kSxsx] = 8 * j * j * phsp - 4 * j * j * ppsp + 4 * j * phsp * u - ppsp * u * u;
  c[kXssx] = 4 * j * ppsp * u - jp * jp * phsp - phsp * u * u;
  c[kXxyy] = -jp * jp * ppss;
  c[kXyxy] = -4 * j * j * phss;
  c[kYxxy] = 4 * j * phss * u + 2 * phss * u * u;
  return c;
}

BubbleMatrices structured(double phss, double phsp, double phxx, double ppss, double ppsp,
                          double ppxx) {
  BubbleMatrices m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const bool ss = a == 0 && b == 0, sp = (a == 0) != (b == 0);
      m.ph(a, b) = ss ? phss : (sp ? phsp : phxx);
      m.pp(a, b) = ss ? ppss : (sp ? ppsp : ppxx);
    }
  return m;
}

}  // namespace

TEST_CASE("initial vertex") {
  auto c = initial_vertex(model(2, 0, 0, 0.1, 0)).classes();
  CHECK(c[kXssx] == 2.0);
  for (int k = 0; k < kVertexClassCount; ++k)
    if (k != kXssx) CHECK(c[k] == 0.0);
  c = initial_vertex(model(2, -1, -0.5, 0.1, 0)).classes();
  CHECK(c[kSsxx] == -0.5);
  CHECK(c[kSxsx] == 2.0);
  CHECK(c[kXssx] == 3.0);
  CHECK(c[kSsss] == 0.0);
  CHECK(c[kXxxx] == 0.0);
  CHECK(initial_vertex(model(0, 0, 0, 0.1, 0)).max_abs() == 0.0);
  const VertexTensor v = initial_vertex(model(2, -1, -0.5, 0.1, 0));
  CHECK(v(0, 0, 2, 2) == -0.5);
  CHECK(v(2, 2, 0, 0) == -0.5);
  CHECK(v(0, 2, 0, 2) == 2.0);
  CHECK(v(0, 1, 1, 0) == 3.0);
  CHECK(v.leakage() == 0.0);
}

TEST_CASE("projection and leakage") {
  VertexTensor v = VertexTensor::from_classes({1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(v.leakage() == 0.0);
  v(0, 0, 0, 1) = 1e-3;
  CHECK(v.leakage() == doctest::Approx(1e-3));
  v = VertexTensor::from_classes({1, 2, 3, 4, 5, 6, 7, 8});
  v(0, 0, 1, 1) += 0.4;
  CHECK(v.leakage() == doctest::Approx(0.3));
}

TEST_CASE("zero vertex is a fixed point") {
  const BubbleMatrices d = structured(0.1, -0.3, 0.2, 0.05, 0.4, -0.1);
  CHECK(flow_rhs(VertexTensor{}, d).max_abs() == 0.0);
}

TEST_CASE("right-hand side matches the second-order hand expansion") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> un(-1, 1);
  for (int trial = 0; trial < 6; ++trial) {
    const BubbleMatrices d = structured(un(rng), un(rng), un(rng), un(rng), un(rng), un(rng));
    const double u = 2 * un(rng), j = un(rng), jp = un(rng);
    ModelParams p = model(u, j, jp, 0.1, 0);
    const VertexTensor rhs = flow_rhs(initial_vertex(p), d);
    CHECK(rhs.leakage() < 1e-14);
    const VertexClasses expect = hand_expansion(u - j, j, jp, d);
    const VertexClasses got = rhs.classes();
    for (int k = 0; k < kVertexClassCount; ++k)
      CHECK_MESSAGE(got[k] == doctest::Approx(expect[k]).epsilon(1e-12), vertex_class_name(k));
  }
}

TEST_CASE("first Euler step from (2,0,0) equals the hand expansion") {
  const ModelParams p = model(2, 0, 0, 0.05, 0.1);
  const BubbleTable table(p, 512);
  const double lambda0 = default_lambda0(p);
  const double dl = 1e-3;
  const VertexTensor v0 = initial_vertex(p);
  const VertexTensor d = flow_rhs(v0, lambda0, table);
  const VertexClasses expect = hand_expansion(2, 0, 0, table.scale_derivatives(lambda0));
  const VertexClasses c0 = v0.classes(), c = d.classes();
  for (int k = 0; k < kVertexClassCount; ++k)
    CHECK(c0[k] + dl * c[k] == doctest::Approx(c0[k] + dl * expect[k]).epsilon(1e-14));
}

TEST_CASE("reduced divergent-only flow") {
  const BubbleMatrices d = structured(0.3, -0.7, 0.2, 0.4, 0.6, -0.1);
  for (double u : {0.5, 2.0}) {
    const VertexTensor v = VertexTensor::from_classes({0, 0, 0, 0, u, 0, 0, 0});
    const VertexClasses r = flow_rhs(v, d, true).classes();
    CHECK(r[kXssx] == doctest::Approx(-d.ph(0, 1) * u * u).epsilon(1e-14));
  }
}

TEST_CASE("free theory converges to the zero vertex") {
  const FlowTrajectory t = integrate_flow(model(0, 0, 0, 0.1, 0.05), {});
  CHECK(t.termination == Termination::converged);
  CHECK(t.final_vertex.max_abs() == 0.0);
}

TEST_CASE("samples increase in l and preserve the symmetry classes") {
  FlowSettings s;
  s.k_points = 256;
  const FlowTrajectory t = integrate_flow(model(2, -1, -0.5, 0.05, 0.4), s);
  REQUIRE(t.samples.size() > 2);
  for (size_t i = 1; i < t.samples.size(); ++i) CHECK(t.samples[i].l > t.samples[i - 1].l);
  CHECK(t.max_leakage < 1e-10);
  CHECK(t.samples.front().l == 0.0);
  CHECK(t.samples.front().lambda == default_lambda0(model(2, -1, -0.5, 0.05, 0.4)));
}

TEST_CASE("strong coupling at low temperature diverges in the spin-orbit class") {
  FlowSettings s;
  s.k_points = 256;
  const ModelParams p = model(2, 0, 0, 0.05, 0.1);
  const FlowTrajectory t = integrate_flow(p, s);
  CHECK(t.termination == Termination::diverged);
  // Several classes grow together; the s-p exchange class is among the largest.
  const VertexClasses c = t.final_vertex.classes();
  CHECK(c[kXssx] > 0.5 * t.final_vertex.max_abs());
  CHECK(c[kSsxx] == 0.0);
  CHECK(t.dominant_class >= 0);
  CHECK(std::isfinite(t.l_div));
  CHECK(t.final_vertex.max_abs() > default_divergence_threshold(p));
}

TEST_CASE("flow determinism") {
  FlowSettings s;
  s.k_points = 128;
  const ModelParams p = model(2, -1, 0.5, 0.05, 0.7);
  const FlowTrajectory a = integrate_flow(p, s);
  const FlowTrajectory b = integrate_flow(p, s);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].l == b.samples[i].l);
    CHECK(a.samples[i].v == b.samples[i].v);
  }
}

TEST_CASE("grid convergence of a converged flow") {
  const ModelParams p = model(0.8, -0.2, 0.1, 0.5, 0.2);
  FlowSettings s;
  s.k_points = 256;
  const FlowTrajectory a = integrate_flow(p, s);
  s.k_points = 512;
  const FlowTrajectory b = integrate_flow(p, s);
  REQUIRE(a.termination == Termination::converged);
  REQUIRE(b.termination == Termination::converged);
  const VertexClasses ca = a.final_vertex.classes(), cb = b.final_vertex.classes();
  for (int k = 0; k < kVertexClassCount; ++k)
    CHECK(std::abs(ca[k] - cb[k]) < 10 * s.ode_tolerance * std::max(1.0, std::abs(cb[k])));
}

TEST_CASE("spin structure of the spin-orbital vertex") {
  FlowSettings s;
  s.k_points = 128;
  const FlowTrajectory t = integrate_flow(model(2, -1, -0.5, 0.05, 0.8), s);
  const VertexTensor& v = t.final_vertex;
  double err = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        for (int d = 0; d < 6; ++d) {
          const double g = gamma_vertex(v, a, b, c, d);
          err = std::max(err, std::abs(g + gamma_vertex(v, b, a, c, d)));
          err = std::max(err, std::abs(g + gamma_vertex(v, a, b, d, c)));
          // Conserved spin: total S_z must match between incoming and outgoing pairs.
          if ((a % 2) + (b % 2) != (c % 2) + (d % 2)) err = std::max(err, std::abs(g));
        }
  CHECK(err < 1e-14 * std::max(1.0, v.max_abs()));
}

TEST_CASE("flow error handling") {
  FlowSettings s;
  s.k_points = 101;
  CHECK_THROWS_AS(integrate_flow(model(1, 0, 0, 0.1, 0.1), s), DomainError);
  s = {};
  s.k_points = 32;
  CHECK_THROWS_AS(integrate_flow(model(1, 0, 0, 0.1, 0.1), s), DomainError);
  s = {};
  s.divergence_threshold = 10;
  CHECK_THROWS_AS(integrate_flow(model(1, 0, 0, 0.1, 0.1), s), DomainError);
  s = {};
  s.lambda0 = 5;
  CHECK_THROWS_AS(integrate_flow(model(1, 0, 0, 0.1, 0.1), s), DomainError);

  s = {};
  s.k_points = 128;
  s.divergence_threshold = 1e300;
  s.min_step = 1e-4;
  try {
    integrate_flow(model(2, 0, 0, 0.05, 0.1), s);
    FAIL("expected a stiffness failure");
  } catch (const NumericalError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("underflow") != std::string::npos);
    CHECK(msg.find("max|v|") != std::string::npos);
  }
}
