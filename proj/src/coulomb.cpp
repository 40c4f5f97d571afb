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

#include "ciss/coulomb.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "ciss/error.hpp"
#include "ciss/parallel.hpp"

namespace ciss {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// int_0^inf u^4 e^-u du
double radial_moment() {
  static const double m = [] {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([](double u) { return u > 1e3 ? 0.0 : std::exp(4.0 * std::log(u) - u); });
  }();
  return m;
}

double axis_scale(Orbital o, const WannierParams& w) { return o == Orbital::z ? w.a_par : w.a_perp; }

struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0) return;
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double tot = na + nb;
    mean += d * nb / tot;
    m2 += o.m2 + d * d * na * nb / tot;
    n += o.n;
  }
};

struct Point {
  std::array<double, 3> r;
  double density;  // sampling density in r space
};

}  // namespace

std::string_view orbital_name(Orbital o) {
  switch (o) {
    case Orbital::x:
      return "x";
    case Orbital::y:
      return "y";
    default:
      return "z";
  }
}

void WannierParams::validate() const {
  if (!(a_perp > 0.0) || !(a_par > 0.0) || !std::isfinite(a_perp) || !std::isfinite(a_par))
    throw DomainError("Wannier lengths must be positive");
  if (!(e2 > 0.0) || !std::isfinite(e2)) throw DomainError("e2 must be positive");
}

double WannierParams::e0() const { return e2 / std::sqrt(a_perp * a_par); }
double WannierParams::zeta() const { return a_par / a_perp; }

WannierParams WannierParams::from_e0_zeta(double e0, double zeta) {
  if (!(e0 > 0.0) || !(zeta > 0.0)) throw DomainError("e0 and zeta must be positive");
  return {1.0 / std::sqrt(zeta), std::sqrt(zeta), e0};
}

double wannier_norm(Orbital o, const WannierParams& w) {
  w.validate();
  const double a = axis_scale(o, w);
  const double det = w.a_perp * w.a_perp * w.a_par;
  return 1.0 / std::sqrt(a * a * det * (4.0 * kPi / 3.0) * radial_moment());
}

double wannier_amplitude(Orbital o, const std::array<double, 3>& r, const WannierParams& w) {
  const double ux = r[0] / w.a_perp, uy = r[1] / w.a_perp, uz = r[2] / w.a_par;
  const double rho = std::sqrt(ux * ux + uy * uy + uz * uz);
  return wannier_norm(o, w) * r[static_cast<int>(o)] * std::exp(-0.5 * rho);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t element, std::uint64_t substream)
    : state_(mix64(seed ^ mix64(element * 0x9e3779b97f4a7c15ULL + 1) ^
                   mix64((substream + 1) * 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double CounterRng::uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

bool vanishes_by_symmetry(Orbital n1, Orbital n2, Orbital n3, Orbital n4) {
  int count[3] = {0, 0, 0};
  for (Orbital o : {n1, n2, n3, n4}) ++count[static_cast<int>(o)];
  return count[0] % 2 || count[1] % 2 || count[2] % 2;
}

MCEstimate coulomb_matrix_element(Orbital n1, Orbital n2, Orbital n3, Orbital n4,
                                  const WannierParams& w, const SamplerConfig& mc) {
  w.validate();
  if (!mc.seed) throw DomainError("Monte Carlo seed is required");
  if (mc.substreams < 1) throw DomainError("substreams must be positive");
  MCEstimate est;
  est.seed = *mc.seed;
  if (vanishes_by_symmetry(n1, n2, n3, n4)) return est;
  if (mc.n_samples < 100000) throw DomainError("n_samples must be at least 1e5");

  const std::array<double, 3> scale{w.a_perp, w.a_perp, w.a_par};
  const double det = w.a_perp * w.a_perp * w.a_par;
  const double norm[3] = {wannier_norm(Orbital::x, w), wannier_norm(Orbital::y, w),
                          wannier_norm(Orbital::z, w)};
  const double density_norm = 1.0 / (96.0 * kPi * det);
  const int i1 = static_cast<int>(n1), i2 = static_cast<int>(n2), i3 = static_cast<int>(n3),
            i4 = static_cast<int>(n4);
  const std::uint64_t element = static_cast<std::uint64_t>(((i1 * 3 + i2) * 3 + i3) * 3 + i4);

  // Isotropic point with |u| ~ Gamma(5, 1), mapped to r = A u.
  auto draw = [&](CounterRng& rng) {
    double prod = 1.0;
    for (int i = 0; i < 5; ++i) prod *= rng.uniform();
    const double rad = -std::log(prod);
    const double cz = 2.0 * rng.uniform() - 1.0;
    const double ph = 2.0 * kPi * rng.uniform();
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const std::array<double, 3> u{rad * sz * std::cos(ph), rad * sz * std::sin(ph), rad * cz};
    Point p;
    for (int a = 0; a < 3; ++a) p.r[a] = scale[a] * u[a];
    p.density = density_norm * rad * rad * std::exp(-rad);
    return p;
  };
  auto pair_amplitude = [&](const Point& p, int a, int b) {
    double rho2 = 0.0;
    for (int c = 0; c < 3; ++c) rho2 += (p.r[c] / scale[c]) * (p.r[c] / scale[c]);
    return norm[a] * norm[b] * p.r[a] * p.r[b] * std::exp(-std::sqrt(rho2));
  };

  const int streams = mc.substreams;
  std::vector<Welford> acc(streams);
  parallel_for(streams, mc.threads, [&](int sidx) {
    const std::uint64_t base = mc.n_samples / streams;
    const std::uint64_t n = base + (static_cast<std::uint64_t>(sidx) < mc.n_samples % streams);
    CounterRng rng(*mc.seed, element, static_cast<std::uint64_t>(sidx));
    Welford wf;
    for (std::uint64_t i = 0; i < n; ++i) {
      const Point p = draw(rng);
      const Point q = draw(rng);
      const double dx = p.r[0] - q.r[0], dy = p.r[1] - q.r[1], dz = p.r[2] - q.r[2];
      const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
      const double f = pair_amplitude(p, i1, i4) * pair_amplitude(q, i2, i3);
      wf.add(2.0 * w.e2 * f / (dist * p.density * q.density));
    }
    acc[sidx] = wf;
  });
  Welford total;
  for (const auto& a : acc) total.merge(a);
  est.value = total.mean;
  est.n_samples = total.n;
  est.std_error = total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) /
                                          static_cast<double>(total.n))
                              : INFINITY;
  if (est.value != 0.0 && est.std_error > mc.max_rel_error * std::abs(est.value)) {
    std::ostringstream msg;
    msg << "Monte Carlo estimate of V_" << orbital_name(n1) << orbital_name(n2) << orbital_name(n3)
        << orbital_name(n4) << " not converged: value=" << est.value
        << " std_error=" << est.std_error << " n_samples=" << est.n_samples;
    throw NumericalError(msg.str());
  }
  return est;
}

InteractionEstimate extract_couplings(const MCEstimate& v_xzzx, const MCEstimate& v_zxzx,
                                      const MCEstimate& v_zzxx) {
  InteractionEstimate e;
  e.v_xzzx = v_xzzx;
  e.v_zxzx = v_zxzx;
  e.v_zzxx = v_zzxx;
  auto derived = [&](double value, double err) {
    MCEstimate m;
    m.value = value;
    m.std_error = err;
    m.n_samples = std::min(v_xzzx.n_samples, std::min(v_zxzx.n_samples, v_zzxx.n_samples));
    m.seed = v_xzzx.seed;
    return m;
  };
  e.u = derived(v_xzzx.value + 0.5 * v_zxzx.value,
                std::hypot(v_xzzx.std_error, 0.5 * v_zxzx.std_error));
  e.j = derived(-0.5 * v_zxzx.value, 0.5 * v_zxzx.std_error);
  e.jp = derived(v_zzxx.value, v_zzxx.std_error);
  return e;
}

InteractionEstimate estimate_interactions(const WannierParams& w, const SamplerConfig& mc) {
  using O = Orbital;
  const MCEstimate a = coulomb_matrix_element(O::x, O::z, O::z, O::x, w, mc);
  const MCEstimate b = coulomb_matrix_element(O::z, O::x, O::z, O::x, w, mc);
  const MCEstimate c = coulomb_matrix_element(O::z, O::z, O::x, O::x, w, mc);
  return extract_couplings(a, b, c);
}

std::vector<ZetaRow> zeta_sweep(double e0, const std::vector<double>& zetas,
                                const SamplerConfig& mc) {
  if (!(e0 > 0.0)) throw DomainError("e0 must be positive");
  if (zetas.empty()) throw DomainError("zeta grid must be non-empty");
  for (double z : zetas)
    if (!(z > 0.0)) throw DomainError("zeta values must be positive");
  if (!mc.seed) throw DomainError("Monte Carlo seed is required");
  std::vector<ZetaRow> rows;
  for (double z : zetas) {
    ZetaRow row;
    row.zeta = z;
    try {
      InteractionEstimate e = estimate_interactions(WannierParams::from_e0_zeta(e0, z), mc);
      for (MCEstimate* m : {&e.u, &e.j, &e.jp, &e.v_xzzx, &e.v_zxzx, &e.v_zzxx}) {
        m->value /= e0;
        m->std_error /= e0;
      }
      row.estimate = e;
    } catch (const NumericalError& err) {
      row.error = err.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ciss
