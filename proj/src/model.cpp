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

#include "ciss/model.hpp"

#include <cmath>

#include "ciss/error.hpp"

namespace ciss {

std::string_view band_name(Band b) {
  switch (b) {
    case Band::s:
      return "s";
    case Band::px:
      return "x";
    case Band::py:
      return "y";
  }
  return "?";
}

void ModelParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(t_s) && finite(t_p) && finite(delta) && finite(u) && finite(j) && finite(jp) &&
        finite(temperature)))
    throw DomainError("model parameters must be finite");
  if (!(t_s > 0.0)) throw DomainError("t_s must be positive");
  if (!(t_p > 0.0)) throw DomainError("t_p must be positive");
  if (delta < 0.0) throw DomainError("delta must be non-negative");
  if (temperature < 0.0) throw DomainError("temperature must be non-negative");
}

double dispersion(const ModelParams& p, Band band, double k) {
  const double t = band == Band::s ? p.t_s : p.t_p;
  return band_parity(band) * (0.5 * p.delta + 2.0 * t * (1.0 - std::cos(k)));
}

double band_splitting(const ModelParams& p, double k) {
  return p.delta + 2.0 * (p.t_s + p.t_p) * (1.0 - std::cos(k));
}

double fermi_occupation(double energy, double temperature) {
  if (temperature < 0.0) throw DomainError("temperature must be non-negative");
  if (temperature == 0.0) {
    if (energy < 0.0) return 1.0;
    if (energy > 0.0) return 0.0;
    return 0.5;
  }
  const double x = energy / temperature;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

std::optional<double> continuum_chi0(const ModelParams& p) {
  p.validate();
  if (p.delta == 0.0) return std::nullopt;
  return std::sqrt((p.t_s + p.t_p) / p.delta);
}

}  // namespace ciss
