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
#include <optional>
#include <string_view>

namespace ciss {

enum class Band { s = 0, px = 1, py = 2 };

inline constexpr std::array<Band, 3> kBands{Band::s, Band::px, Band::py};

// Parity P_nu: -1 for the valence s band, +1 for the p bands.
constexpr int band_parity(Band b) { return b == Band::s ? -1 : 1; }

std::string_view band_name(Band b);

struct ModelParams {
  double t_s = 2.0;
  double t_p = 1.0;
  double delta = 0.05;
  double u = 0.0;
  double j = 0.0;
  double jp = 0.0;
  double temperature = 0.0;

  // Throws DomainError.
  void validate() const;

  // U - J - J', the coupling of the spin-orbit channel.
  double coupling_so() const { return u - j - jp; }
  // Full width of the two-band spectrum, valence bottom to conduction top.
  double bandwidth() const { return delta + 4.0 * (t_s + t_p); }
};

double dispersion(const ModelParams& p, Band band, double k);

// eps_p(k) - eps_s(k).
double band_splitting(const ModelParams& p, double k);

double fermi_occupation(double energy, double temperature);

// sqrt((t_s + t_p) / delta). Empty when delta == 0 (pole).
std::optional<double> continuum_chi0(const ModelParams& p);

}  // namespace ciss
