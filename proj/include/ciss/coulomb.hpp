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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ciss {

enum class Orbital { x = 0, y = 1, z = 2 };

std::string_view orbital_name(Orbital o);

struct WannierParams {
  double a_perp = 1.0;
  double a_par = 1.0;
  double e2 = 1.0;

  void validate() const;
  double e0() const;    // e2 / sqrt(a_perp a_par)
  double zeta() const;  // a_par / a_perp
  // Geometry with the given E0 and zeta at unit length scale sqrt(a_perp a_par).
  static WannierParams from_e0_zeta(double e0, double zeta);
};

// N with phi(r) = N r_nu exp(-rho/2), from a radial quadrature.
double wannier_norm(Orbital o, const WannierParams& w);
double wannier_amplitude(Orbital o, const std::array<double, 3>& r, const WannierParams& w);

// Splitmix64 sequence keyed by (seed, element, substream).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t element, std::uint64_t substream);
  std::uint64_t next();
  // Uniform in (0, 1).
  double uniform();

 private:
  std::uint64_t state_;
};

struct SamplerConfig {
  std::uint64_t n_samples = 10000000;
  std::optional<std::uint64_t> seed;
  int substreams = 64;
  double max_rel_error = 0.1;
  int threads = 1;
};

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// True when the integrand is odd under a reflection of one axis.
bool vanishes_by_symmetry(Orbital n1, Orbital n2, Orbital n3, Orbital n4);

// V_{n1 n2 n3 n4} = 2 int int phi_n1(r) phi_n4(r) e^2/|r - r'| phi_n2(r') phi_n3(r').
// Throws DomainError (missing seed, too few samples) or NumericalError
// (relative error above max_rel_error).
MCEstimate coulomb_matrix_element(Orbital n1, Orbital n2, Orbital n3, Orbital n4,
                                  const WannierParams& w, const SamplerConfig& mc);

struct InteractionEstimate {
  MCEstimate u, j, jp;
  MCEstimate v_xzzx, v_zxzx, v_zzxx;
};

// U = V_xzzx + V_zxzx / 2, J = -V_zxzx / 2, J' = V_zzxx.
InteractionEstimate extract_couplings(const MCEstimate& v_xzzx, const MCEstimate& v_zxzx,
                                      const MCEstimate& v_zzxx);
InteractionEstimate estimate_interactions(const WannierParams& w, const SamplerConfig& mc);

struct ZetaRow {
  double zeta = 0.0;
  InteractionEstimate estimate;  // in units of e0
  std::string error;
};

std::vector<ZetaRow> zeta_sweep(double e0, const std::vector<double>& zetas,
                                const SamplerConfig& mc);

}  // namespace ciss
