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
#include "ciss/susceptibility.hpp"
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

Eigen::Matrix3d bare_ph(const ModelParams& p) {
  return BubbleTable(p, 512).values(default_lambda0(p)).ph;
}

VertexTensor random_vertex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  VertexClasses c;
  for (auto& x : c) x = u(rng);
  return VertexTensor::from_classes(c);
}

}  // namespace

TEST_CASE("zero vertex gives the bare diagonal tensor") {
  const ModelParams p = model(0, 0, 0, 0.3, 0.1);
  const Eigen::Matrix3d ph = bare_ph(p);
  const SusceptibilityTensor chi = full_susceptibility(VertexTensor{}, ph);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        for (int d = 0; d < 6; ++d) {
          const double expect = (a == c && b == d) ? -ph(a / 2, b / 2) : 0.0;
          CHECK(chi(a, b, c, d) == expect);
        }
}

TEST_CASE("assembled tensor and channel matrix are hermitian") {
  std::mt19937_64 rng(3);
  const Eigen::Matrix3d ph = bare_ph(model(0, 0, 0, 0.2, 0.05));
  for (int trial = 0; trial < 3; ++trial) {
    const SusceptibilityTensor chi = full_susceptibility(random_vertex(rng), ph);
    const Eigen::MatrixXd m = chi.pair_matrix();
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXcd x = channel_matrix(chi);
    CHECK((x - x.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("two-term channels reduce to the s-p bubble expressions") {
  std::mt19937_64 rng(5);
  const Eigen::Matrix3d ph = bare_ph(model(0, 0, 0, 0.2, 0.05));
  const double pi = ph(0, 1);
  for (int trial = 0; trial < 3; ++trial) {
    const VertexTensor v = random_vertex(rng);
    const VertexClasses c = v.classes();
    const Eigen::MatrixXcd x = channel_matrix(full_susceptibility(v, ph));
    for (int ms = -1; ms <= 1; ++ms) {
      CHECK(channel_susceptibility(x, named_channel("so", ms)) ==
            doctest::Approx(-pi + (c[kXssx] - c[kSsxx]) * pi * pi).epsilon(1e-12));
      CHECK(channel_susceptibility(x, named_channel("triplet_odd", ms)) ==
            doctest::Approx(-pi + (c[kXssx] + c[kSsxx]) * pi * pi).epsilon(1e-12));
      // chi(0,0) = chi(1,1) and chi(0,1) = chi(1,0) between the two terms of O.
      const int i0 = label_index({1, ms, -1, 0}), i1 = label_index({1, ms, -1, 1});
      CHECK(std::abs(x(i0, i0) - x(i1, i1)) < 1e-12);
      CHECK(std::abs(x(i0, i1) - x(i1, i0)) < 1e-12);
    }
    CHECK(channel_susceptibility(x, named_channel("singlet_odd")) ==
          doctest::Approx(-pi + (c[kXssx] + c[kSsxx] - 2 * c[kSxsx]) * pi * pi).epsilon(1e-12));
    CHECK(channel_susceptibility(x, named_channel("singlet_even")) ==
          doctest::Approx(-pi + (c[kXssx] - c[kSsxx] - 2 * c[kSxsx]) * pi * pi).epsilon(1e-12));
  }
}

TEST_CASE("triplet channels are m_s independent") {
  FlowSettings s;
  s.k_points = 256;
  const auto ev = evaluate_channels(model(2, -1, -0.5, 0.05, 1.0), s,
                                    {{"a", named_channel("so", -1)},
                                     {"b", named_channel("so", 0)},
                                     {"c", named_channel("so", 1)},
                                     {"d", named_channel("triplet_odd", -1)},
                                     {"e", named_channel("triplet_odd", 1)}});
  CHECK(std::abs(ev.channels[0].chi.value - ev.channels[2].chi.value) < 1e-10);
  CHECK(std::abs(ev.channels[1].chi.value - ev.channels[2].chi.value) < 1e-10);
  CHECK(std::abs(ev.channels[3].chi.value - ev.channels[4].chi.value) < 1e-10);
}

TEST_CASE("free theory channel susceptibilities are non-negative") {
  const Eigen::Matrix3d ph = bare_ph(model(0, 0, 0, 0.1, 0.02));
  const Eigen::MatrixXcd x = channel_matrix(full_susceptibility(VertexTensor{}, ph));
  for (int l = 0; l < kChannelCount; ++l) {
    CHECK(x(l, l).real() >= 0.0);
    CHECK(std::abs(x(l, l).imag()) < 1e-14);
  }
}

TEST_CASE("rpa closed form") {
  ModelParams p = model(2, 0, 0, 1, 0);
  RpaOptions bare;
  bare.lambda = INFINITY;
  const RpaValue r = chi_rpa(p, bare);
  CHECK(r.chi0 == doctest::Approx(1 / std::sqrt(13.0)).epsilon(1e-10));
  CHECK(r.value == doctest::Approx((1 / std::sqrt(13.0)) / (1 - 2 / std::sqrt(13.0))).epsilon(1e-10));
  CHECK(r.value == doctest::Approx(0.62284).epsilon(1e-5));
  p.u = 0.7;
  p.j = 0.7;
  const RpaValue eq = chi_rpa(p);
  CHECK(eq.value == eq.chi0);
  p.u = std::sqrt(13.0);
  p.j = 0;
  CHECK(chi_rpa(p, bare).diverged);
  RpaOptions cont;
  cont.source = Chi0Source::continuum;
  p = model(0.5, 0, 0, 3, 0);
  CHECK(chi_rpa(p, cont).chi0 == doctest::Approx(1.0));
  CHECK(chi_rpa(p, cont).value == doctest::Approx(2.0));
  p.delta = 0;
  CHECK(chi_rpa(p, cont).diverged);
}

TEST_CASE("flow susceptibility follows the rpa series at weak coupling") {
  FlowSettings s;
  ModelParams p = model(0, 0, 0, 0.05, 0.0);
  const double chi0 = chi_rpa(p).chi0;
  std::vector<double> first_order;
  for (double gc : {0.05, 0.1, 0.2, 0.3}) {
    p.u = gc / chi0;
    const ChiValue f = chi_spin_orbit(p, s);
    const RpaValue r = chi_rpa(p);
    REQUIRE_FALSE(f.diverged);
    CHECK(std::abs(f.value / r.value - 1) < 0.05);
    if (gc <= 0.1) CHECK(std::abs(f.value / r.value - 1) < 0.01);
    if (gc <= 0.1) first_order.push_back((f.value - chi0) / p.u);
  }
  // Richardson extrapolation of the linear coefficient to g -> 0.
  const double slope = 2 * first_order[0] - first_order[1];
  CHECK(slope == doctest::Approx(chi0 * chi0).epsilon(0.01));
}

TEST_CASE("spin-orbit susceptibility at high temperature") {
  FlowSettings s;
  s.k_points = 256;
  double prev = INFINITY;
  for (double t : {0.6, 0.8, 1.2, 2.0}) {
    const ChiValue c = chi_spin_orbit(model(2, 0, 0, 0.05, t), s);
    REQUIRE_FALSE(c.diverged);
    CHECK(c.value > 0);
    CHECK(c.value < prev);
    prev = c.value;
  }
}

TEST_CASE("temperature sweep layout") {
  FlowSettings s;
  s.k_points = 128;
  const auto channels = named_channels({"so", "triplet_odd"});
  SweepOptions opt;
  opt.threads = 2;
  const SweepResult r =
      temperature_sweep(model(2, 0, 0, 0, 0), {1.0, 0.1}, {0.1, 0.05}, channels, s, opt);
  REQUIRE(r.rows.size() == 8);
  for (size_t i = 1; i < r.rows.size(); ++i) {
    const auto& a = r.rows[i - 1];
    const auto& b = r.rows[i];
    CHECK((a.channel < b.channel ||
           (a.channel == b.channel &&
            (a.delta < b.delta || (a.delta == b.delta && a.temperature < b.temperature)))));
  }
  for (const auto& row : r.rows) {
    CHECK(row.error.empty());
    if (row.diverged) {
      CHECK(std::isnan(row.chi));
      CHECK(std::isfinite(row.l_div));
    } else {
      CHECK(std::isfinite(row.chi));
    }
  }
  // The spin-orbit channel diverges at low temperature and is finite at high temperature.
  CHECK(r.rows[0].channel == "so");
  CHECK(r.rows[0].temperature == 0.1);
  CHECK(r.rows[0].diverged);
  CHECK_FALSE(r.rows[1].diverged);
  const SweepResult serial =
      temperature_sweep(model(2, 0, 0, 0, 0), {1.0, 0.1}, {0.1, 0.05}, channels, s, {});
  for (size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].diverged == serial.rows[i].diverged);
    if (!r.rows[i].diverged) CHECK(r.rows[i].chi == serial.rows[i].chi);
  }
  CHECK_THROWS_AS(temperature_sweep(model(2, 0, 0, 0, 0), {}, {0.1}, channels, s), DomainError);
  CHECK_THROWS_AS(temperature_sweep(model(2, 0, 0, 0, 0), {0.1}, {0.0}, channels, s), DomainError);
}

TEST_CASE("instability onset bracket") {
  FlowSettings s;
  s.k_points = 128;
  const auto channels = named_channels({"so"});
  const auto onset = instability_onset(model(2, 0, 0, 0.05, 0), s, channels, 0.05, 3.0, 1e-2);
  REQUIRE(onset.has_value());
  CHECK(onset->t_finite / onset->t_diverged - 1 <= 1e-2);
  CHECK(onset->at_onset.flow.termination == Termination::diverged);
  CHECK(onset->at_onset.channels[0].chi.diverged);
  CHECK_FALSE(instability_onset(model(0.1, 0, 0, 0.05, 0), s, channels, 0.05, 3.0).has_value());
}
