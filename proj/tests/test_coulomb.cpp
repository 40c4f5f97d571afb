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
#include <numbers>

#include "ciss/coulomb.hpp"
#include "ciss/error.hpp"
#include "doctest.h"

using namespace ciss;
using O = Orbital;

namespace {

constexpr double kPi = std::numbers::pi;

SamplerConfig sampler(std::uint64_t n, std::uint64_t seed = 11) {
  SamplerConfig c;
  c.n_samples = n;
  c.seed = seed;
  return c;
}

long double factorial(int n) {
  long double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// int int r^4 e^-r r'^4 e^-r' r<^l / r>^(l+1) dr dr', evaluated exactly.
double radial_multipole(int l) {
  long double sum = 0;
  for (int k = 0; k <= 4 + l; ++k)
    sum += factorial(3 - l + k) / (factorial(k) * std::pow(2.0L, 4 - l + k));
  return static_cast<double>(2 * factorial(4 + l) * (factorial(3 - l) - sum));
}

// Unit-length isotropic orbitals: N^2 = 1 / (32 pi).
double isotropic_exchange() {
  const double n4 = 1.0 / (32 * kPi * 32 * kPi);
  return 2 * n4 * (4 * kPi / 5) * (4 * kPi / 15) * radial_multipole(2);
}

double isotropic_direct() {
  const double n4 = 1.0 / (32 * kPi * 32 * kPi);
  return 2 * n4 * (4 * kPi * (4 * kPi / 9) * radial_multipole(0) +
                   (4 * kPi / 5) * (-8 * kPi / 45) * radial_multipole(2));
}

bool within(const MCEstimate& a, double exact, double sigmas) {
  return std::abs(a.value - exact) < sigmas * a.std_error;
}

bool agree(const MCEstimate& a, const MCEstimate& b, double sigmas) {
  return std::abs(a.value - b.value) < sigmas * std::hypot(a.std_error, b.std_error);
}

}  // namespace

TEST_CASE("Wannier normalization") {
  // Spherical coordinates in r, radial part done exactly.
  for (WannierParams w : {WannierParams{1, 1, 1}, WannierParams{0.7, 1.9, 1}, WannierParams{2.0, 0.5, 3}})
    for (O o : {O::x, O::y, O::z}) {
      const int n = 4000;
      double sum = 0;
      for (int i = 0; i <= n; ++i) {
        const double th = kPi * i / n;
        const double st = std::sin(th), ct = std::cos(th);
        const double c = std::sqrt(st * st / (w.a_perp * w.a_perp) + ct * ct / (w.a_par * w.a_par));
        const double ang = o == O::z ? 2 * kPi * ct * ct : kPi * st * st;
        const double f = ang * st * 24.0 / std::pow(c, 5);
        sum += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
      }
      const double nn = wannier_norm(o, w);
      CHECK(nn * nn * sum * kPi / (3 * n) == doctest::Approx(1.0).epsilon(1e-8));
    }
  CHECK_THROWS_AS(wannier_norm(O::x, WannierParams{0, 1, 1}), DomainError);
}

TEST_CASE("Wannier amplitude shape") {
  const WannierParams w{0.8, 1.3, 1};
  CHECK(wannier_amplitude(O::x, {0, 0, 0}, w) == 0.0);
  CHECK(wannier_amplitude(O::z, {0.4, -0.2, 0}, w) == 0.0);
  const double a = wannier_amplitude(O::y, {0.3, 0.7, -0.2}, w);
  CHECK(a > 0);
  CHECK(wannier_amplitude(O::y, {0.3, -0.7, -0.2}, w) == -a);
  CHECK(wannier_amplitude(O::y, {-0.3, 0.7, 0.2}, w) == a);
  CHECK(wannier_amplitude(O::z, {0, 0, 1.3}, w) ==
        doctest::Approx(wannier_norm(O::z, w) * 1.3 * std::exp(-0.5)).epsilon(1e-15));
  WannierParams g = WannierParams::from_e0_zeta(2.0, 4.0);
  CHECK(g.a_perp == 0.5);
  CHECK(g.a_par == 2.0);
  CHECK(g.e0() == doctest::Approx(2.0));
  CHECK(g.zeta() == doctest::Approx(4.0));
}

TEST_CASE("counter RNG") {
  CounterRng a(5, 1, 0), b(5, 1, 0), c(5, 1, 1), d(5, 2, 0), e(6, 1, 0);
  bool differs_c = false, differs_d = false, differs_e = false;
  double mean = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t x = a.next();
    CHECK(x == b.next());
    differs_c |= x != c.next();
    differs_d |= x != d.next();
    differs_e |= x != e.next();
  }
  CHECK(differs_c);
  CHECK(differs_d);
  CHECK(differs_e);
  CounterRng u(1, 0, 0);
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    REQUIRE(v > 0);
    REQUIRE(v < 1);
    mean += v;
  }
  CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("symmetry-forbidden elements") {
  CHECK(vanishes_by_symmetry(O::x, O::z, O::z, O::z));
  CHECK(vanishes_by_symmetry(O::x, O::y, O::z, O::z));
  CHECK_FALSE(vanishes_by_symmetry(O::x, O::z, O::z, O::x));
  CHECK_FALSE(vanishes_by_symmetry(O::y, O::y, O::y, O::y));
  const MCEstimate e = coulomb_matrix_element(O::x, O::x, O::x, O::z, WannierParams{}, sampler(10));
  CHECK(e.value == 0.0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("isotropic matrix elements match the multipole expansion") {
  const WannierParams w{1, 1, 1};
  const SamplerConfig mc = sampler(2000000);
  const MCEstimate ex = coulomb_matrix_element(O::z, O::x, O::z, O::x, w, mc);
  const MCEstimate pair = coulomb_matrix_element(O::z, O::z, O::x, O::x, w, mc);
  const MCEstimate dir = coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc);
  MESSAGE("exchange " << ex.value << " +- " << ex.std_error << " exact " << isotropic_exchange());
  MESSAGE("direct " << dir.value << " +- " << dir.std_error << " exact " << isotropic_direct());
  CHECK(isotropic_direct() > isotropic_exchange());
  CHECK(within(ex, isotropic_exchange(), 4));
  CHECK(within(pair, isotropic_exchange(), 4));
  CHECK(within(dir, isotropic_direct(), 4));
  CHECK(dir.value > 0);
  CHECK(dir.n_samples == 2000000);
}

TEST_CASE("symmetric partners agree") {
  const SamplerConfig mc = sampler(1000000, 3);
  const WannierParams w{0.8, 1.25, 1};
  CHECK(agree(coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc),
              coulomb_matrix_element(O::z, O::x, O::x, O::z, w, mc), 3));
  CHECK(agree(coulomb_matrix_element(O::z, O::x, O::z, O::x, w, mc),
              coulomb_matrix_element(O::y, O::z, O::y, O::z, w, mc), 3));
  const WannierParams iso{1, 1, 1};
  const MCEstimate xz = coulomb_matrix_element(O::x, O::z, O::z, O::x, iso, mc);
  CHECK(agree(xz, coulomb_matrix_element(O::y, O::z, O::z, O::y, iso, mc), 3));
  CHECK(agree(xz, coulomb_matrix_element(O::x, O::y, O::y, O::x, iso, mc), 3));
}

TEST_CASE("length and charge scaling") {
  const SamplerConfig mc = sampler(200000);
  const MCEstimate a = coulomb_matrix_element(O::x, O::z, O::z, O::x, WannierParams{0.9, 1.1, 1}, mc);
  const MCEstimate b = coulomb_matrix_element(O::x, O::z, O::z, O::x, WannierParams{1.8, 2.2, 1}, mc);
  const MCEstimate c = coulomb_matrix_element(O::x, O::z, O::z, O::x, WannierParams{0.9, 1.1, 3}, mc);
  CHECK(b.value == doctest::Approx(a.value / 2).epsilon(1e-12));
  CHECK(c.value == doctest::Approx(3 * a.value).epsilon(1e-12));
}

TEST_CASE("statistical error scales as n^-1/2") {
  const WannierParams w{1, 1, 1};
  double prev = 0;
  for (std::uint64_t n : {100000ULL, 400000ULL, 1600000ULL, 6400000ULL}) {
    const MCEstimate e = coulomb_matrix_element(O::z, O::x, O::z, O::x, w, sampler(n, 21));
    if (prev > 0) CHECK(prev / e.std_error == doctest::Approx(2.0).epsilon(0.2));
    prev = e.std_error;
  }
}

TEST_CASE("estimates are reproducible") {
  const WannierParams w{0.8, 1.25, 1};
  SamplerConfig mc = sampler(300000, 42);
  const MCEstimate a = coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc);
  const MCEstimate b = coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc);
  mc.threads = 3;
  const MCEstimate c = coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value == c.value);
  CHECK(a.std_error == c.std_error);
  mc.seed = 43;
  CHECK(coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc).value != a.value);
}

TEST_CASE("sampler errors") {
  const WannierParams w;
  SamplerConfig mc;
  mc.n_samples = 100000;
  CHECK_THROWS_AS(coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc), DomainError);
  CHECK_THROWS_AS(zeta_sweep(1.0, {1.0}, mc), DomainError);
  mc.seed = 1;
  mc.n_samples = 99999;
  CHECK_THROWS_AS(coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc), DomainError);
  mc.n_samples = 100000;
  mc.max_rel_error = 1e-6;
  CHECK_THROWS_AS(coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc), NumericalError);
  CHECK_THROWS_AS(zeta_sweep(1.0, {-1.0}, sampler(100000)), DomainError);
  CHECK_THROWS_AS(zeta_sweep(0.0, {1.0}, sampler(100000)), DomainError);
  const auto rows = zeta_sweep(1.0, {1.0}, mc);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].error.find("not converged") != std::string::npos);
}

TEST_CASE("coupling extraction") {
  MCEstimate a{1.0, 0.1, 100, 1}, b{0.4, 0.02, 100, 1}, c{0.2, 0.03, 100, 1};
  const InteractionEstimate e = extract_couplings(a, b, c);
  CHECK(e.u.value == doctest::Approx(1.2));
  CHECK(e.j.value == doctest::Approx(-0.2));
  CHECK(e.jp.value == doctest::Approx(0.2));
  CHECK(e.u.std_error == doctest::Approx(std::hypot(0.1, 0.01)));
  CHECK(e.j.std_error == doctest::Approx(0.01));
}

TEST_CASE("zeta sweep is expressed in units of e0") {
  const SamplerConfig mc = sampler(200000, 8);
  const auto one = zeta_sweep(1.0, {0.5, 2.0}, mc);
  const auto two = zeta_sweep(2.0, {0.5, 2.0}, mc);
  REQUIRE(one.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(one[i].error.empty());
    CHECK(one[i].estimate.u.value == doctest::Approx(two[i].estimate.u.value).epsilon(1e-12));
    CHECK(one[i].estimate.u.value > 0);
    CHECK(one[i].estimate.j.value < 0);
  }
}
