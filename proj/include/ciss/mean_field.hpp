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
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ciss/channels.hpp"
#include "ciss/model.hpp"
#include "ciss/quadrature.hpp"

namespace ciss {

struct GLCoefficients {
  double r = 0.0;
  double c0 = 0.0;
  double c2 = 0.0;
  double r_error = 0.0;
  double c0_error = 0.0;
  // Momentum averages of (eps_p - eps_s)^-1 and ^-2.
  double chi_tilde = 0.0;
  double k2 = 0.0;
};

// r = -g + g^2 <1/(eps_p - eps_s)>, c0 = g^4 <1/(eps_p - eps_s)^3> / 2, g = U - J - J'.
// Throws DomainError for delta == 0.
GLCoefficients gl_coefficients(const ModelParams& p, const QuadratureOptions& opt = {});

// sqrt(r / 2 c0) for r > 0, else 0. Throws DomainError if c0 <= 0.
double order_amplitude(const GLCoefficients& c);

// 0.25 g / (t_s + t_p).
double small_gap_amplitude(const ModelParams& p);

// Components (Phi_{+1}, Phi_0, Phi_{-1}).
struct OrderParameter {
  std::array<Complex, 3> phi{};
  double amplitude() const;
};

// -r |Phi|^2 + c0 |Phi|^4 - delta_zeeman k2 sum_m m |Phi_m|^2.
double free_energy(const GLCoefficients& c, const OrderParameter& phi, double delta_zeeman = 0.0);

struct ZeemanSelection {
  OrderParameter state;
  bool degenerate = false;
  double delta_f = 0.0;
};

ZeemanSelection zeeman_selection(const GLCoefficients& c, double delta_zeeman);

using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;

// Mode index in the (q, spin) basis [+1 up, 0 up, -1 up, +1 down, 0 down, -1 down].
constexpr int psi_mode(int q, int spin) { return spin * 3 + (1 - q); }

// -g sum_m [Phi_m^* O_m + h.c.] in the psi_mode basis.
Matrix6cd soi_term(const ModelParams& p, const OrderParameter& phi);
// g/(4 sqrt2) [i phi sigma_+ (x) L_- + h.c.] for Phi = (phi, 0, 0).
Matrix6cd soi_ladder_term(const ModelParams& p, Complex phi);
Matrix6cd mean_field_hamiltonian(double k, const ModelParams& p, const OrderParameter& phi);

// Antiunitary time reversal acting on a single-particle matrix in psi_mode basis.
Matrix6cd time_reversal_psi(const Matrix6cd& h);

struct QuasiparticleLevels {
  double theta = 0.0;   // mixing angle
  double phase = 0.0;   // arg(-i phi^*)
  std::array<double, 6> energies{};  // ascending
};

// Rotation-angle construction for Phi = (phi, 0, 0).
QuasiparticleLevels quasiparticle_levels(double k, const ModelParams& p, Complex phi);
// Unitary R with R H R^dag diagonal, psi_mode basis.
Matrix6cd quasiparticle_transform(double k, const ModelParams& p, Complex phi);

double soi_strength_k(double k, const ModelParams& p, double phi_amp);
double soi_band_edge(const ModelParams& p, double phi_amp);

struct SpectrumRow {
  double k = 0.0;
  double lambda_so = 0.0;
  std::array<double, 6> energies{};
};

// Dense eigensolve on each k.
std::vector<SpectrumRow> quasiparticle_spectrum(const ModelParams& p, double phi_amp,
                                                const std::vector<double>& k_grid);

}  // namespace ciss
