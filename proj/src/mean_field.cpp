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

#include "ciss/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ciss/error.hpp"

namespace ciss {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

QuadratureResult splitting_moment(const ModelParams& p, int power, const QuadratureOptions& opt) {
  auto f = [&](double k) { return std::pow(band_splitting(p, k), -power); };
  QuadratureResult r = periodic_mean(f, opt);
  if (!r.converged)
    throw NumericalError("GL quadrature did not converge at " + std::to_string(r.points) +
                         " points");
  return r;
}

// Map a q_mode-indexed matrix to psi_mode indexing.
Matrix6cd to_psi_basis(const Matrix6c& m) {
  Matrix6cd out;
  for (int q = -1; q <= 1; ++q)
    for (int a = 0; a < 2; ++a)
      for (int q2 = -1; q2 <= 1; ++q2)
        for (int b = 0; b < 2; ++b) out(psi_mode(q, a), psi_mode(q2, b)) = m(q_mode(q, a), q_mode(q2, b));
  return out;
}

Matrix6c to_q_basis(const Matrix6cd& m) {
  Matrix6c out;
  for (int q = -1; q <= 1; ++q)
    for (int a = 0; a < 2; ++a)
      for (int q2 = -1; q2 <= 1; ++q2)
        for (int b = 0; b < 2; ++b) out(q_mode(q, a), q_mode(q2, b)) = m(psi_mode(q, a), psi_mode(q2, b));
  return out;
}

}  // namespace

GLCoefficients gl_coefficients(const ModelParams& p, const QuadratureOptions& opt) {
  p.validate();
  if (p.delta == 0.0) throw DomainError("GL coefficients require delta > 0");
  const double g = p.coupling_so();
  const QuadratureResult m1 = splitting_moment(p, 1, opt);
  const QuadratureResult m2 = splitting_moment(p, 2, opt);
  const QuadratureResult m3 = splitting_moment(p, 3, opt);
  GLCoefficients c;
  c.chi_tilde = m1.value;
  c.k2 = m2.value;
  c.r = -g + g * g * m1.value;
  c.r_error = g * g * m1.error;
  c.c0 = 0.5 * std::pow(g, 4) * m3.value;
  c.c0_error = 0.5 * std::pow(g, 4) * m3.error;
  return c;
}

double order_amplitude(const GLCoefficients& c) {
  if (!(c.c0 > 0.0)) throw DomainError("order amplitude needs c0 > 0");
  return c.r > 0.0 ? std::sqrt(c.r / (2.0 * c.c0)) : 0.0;
}

double small_gap_amplitude(const ModelParams& p) {
  p.validate();
  return 0.25 * p.coupling_so() / (p.t_s + p.t_p);
}

double OrderParameter::amplitude() const {
  return std::sqrt(std::norm(phi[0]) + std::norm(phi[1]) + std::norm(phi[2]));
}

double free_energy(const GLCoefficients& c, const OrderParameter& phi, double delta_zeeman) {
  const double a2 = std::norm(phi.phi[0]) + std::norm(phi.phi[1]) + std::norm(phi.phi[2]);
  const double zeeman = std::norm(phi.phi[0]) - std::norm(phi.phi[2]);
  return -c.r * a2 + c.c0 * a2 * a2 - delta_zeeman * c.k2 * zeeman;
}

ZeemanSelection zeeman_selection(const GLCoefficients& c, double delta_zeeman) {
  const double amp = order_amplitude(c);
  ZeemanSelection z;
  if (delta_zeeman < 0.0)
    z.state.phi[2] = amp;
  else
    z.state.phi[0] = amp;
  z.degenerate = delta_zeeman == 0.0;
  z.delta_f = -std::abs(delta_zeeman) * c.k2 * amp * amp;
  return z;
}

Matrix6cd soi_term(const ModelParams& p, const OrderParameter& phi) {
  const double g = p.coupling_so();
  Matrix6c o = Matrix6c::Zero();
  for (int i = 0; i < 3; ++i) {
    const int m_s = 1 - i;
    if (phi.phi[i] == Complex(0, 0)) continue;
    o += std::conj(phi.phi[i]) * named_channel("so", m_s).bilinear_matrix();
  }
  const Matrix6c h = -g * (o + o.adjoint());
  return to_psi_basis(h);
}

Matrix6cd soi_ladder_term(const ModelParams& p, Complex phi) {
  Eigen::Matrix2cd sigma_plus = Eigen::Matrix2cd::Zero();
  sigma_plus(0, 1) = 2.0;
  Eigen::Matrix3cd l_minus = Eigen::Matrix3cd::Zero();
  l_minus(1, 0) = 2.0;
  l_minus(2, 1) = 2.0;
  Matrix6cd kron;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) kron.block<3, 3>(3 * a, 3 * b) = sigma_plus(a, b) * l_minus;
  const Matrix6cd m = (p.coupling_so() / (4.0 * kSqrt2)) * Complex(0, 1) * phi * kron;
  return m + m.adjoint();
}

Matrix6cd mean_field_hamiltonian(double k, const ModelParams& p, const OrderParameter& phi) {
  p.validate();
  Matrix6cd h = soi_term(p, phi);
  const double es = dispersion(p, Band::s, k);
  const double ep = dispersion(p, Band::px, k);
  for (int spin = 0; spin < 2; ++spin) {
    h(psi_mode(1, spin), psi_mode(1, spin)) += ep;
    h(psi_mode(0, spin), psi_mode(0, spin)) += es;
    h(psi_mode(-1, spin), psi_mode(-1, spin)) += ep;
  }
  return h;
}

Matrix6cd time_reversal_psi(const Matrix6cd& h) { return to_psi_basis(time_reversal(to_q_basis(h))); }

namespace {

struct Rotation {
  double c, s, theta, phase, lower, upper;
};

Rotation block_rotation(double k, const ModelParams& p, Complex phi) {
  const double es = dispersion(p, Band::s, k);
  const double ep = dispersion(p, Band::px, k);
  const double split = ep - es;
  const double w = std::abs(p.coupling_so()) * std::abs(phi) / kSqrt2;
  const double theta = std::atan2(2.0 * w, split);
  Rotation r{std::cos(0.5 * theta), std::sin(0.5 * theta), theta,
             std::arg(Complex(0, -1) * std::conj(phi) * (p.coupling_so() < 0 ? -1.0 : 1.0)), 0, 0};
  r.lower = r.c * r.c * es - 2.0 * r.c * r.s * w + r.s * r.s * ep;
  r.upper = r.s * r.s * es + 2.0 * r.c * r.s * w + r.c * r.c * ep;
  return r;
}

}  // namespace

QuasiparticleLevels quasiparticle_levels(double k, const ModelParams& p, Complex phi) {
  p.validate();
  const Rotation r = block_rotation(k, p, phi);
  const double ep = dispersion(p, Band::px, k);
  QuasiparticleLevels q;
  q.theta = r.theta;
  q.phase = std::arg(Complex(0, -1) * std::conj(phi));
  q.energies = {r.lower, r.lower, ep, ep, r.upper, r.upper};
  std::sort(q.energies.begin(), q.energies.end());
  return q;
}

Matrix6cd quasiparticle_transform(double k, const ModelParams& p, Complex phi) {
  p.validate();
  const Rotation r = block_rotation(k, p, phi);
  const Complex em = std::polar(1.0, -0.5 * r.phase);
  const Complex ep = std::polar(1.0, 0.5 * r.phase);
  Matrix6cd u = Matrix6cd::Zero();
  // s-like partner first in each block: (0 down, -1 up) and (+1 down, 0 up).
  const int a0 = psi_mode(0, 1), a1 = psi_mode(-1, 0);
  u(a0, a0) = r.c * em;
  u(a0, a1) = -r.s * ep;
  u(a1, a0) = r.s * em;
  u(a1, a1) = r.c * ep;
  const int b0 = psi_mode(1, 1), b1 = psi_mode(0, 0);
  u(b0, b0) = r.c * em;
  u(b0, b1) = r.s * ep;
  u(b1, b0) = -r.s * em;
  u(b1, b1) = r.c * ep;
  u(psi_mode(1, 0), psi_mode(1, 0)) = 1.0;
  u(psi_mode(-1, 1), psi_mode(-1, 1)) = 1.0;
  return u;
}

double soi_strength_k(double k, const ModelParams& p, double phi_amp) {
  const double s = band_splitting(p, k);
  const double g = p.coupling_so();
  return 0.5 * s - std::sqrt(0.25 * s * s + 0.5 * g * g * phi_amp * phi_amp);
}

double soi_band_edge(const ModelParams& p, double phi_amp) { return soi_strength_k(0.0, p, phi_amp); }

std::vector<SpectrumRow> quasiparticle_spectrum(const ModelParams& p, double phi_amp,
                                                const std::vector<double>& k_grid) {
  p.validate();
  OrderParameter phi;
  phi.phi[0] = phi_amp;
  std::vector<SpectrumRow> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    if (std::abs(k) > std::numbers::pi + 1e-12) throw DomainError("k must lie in [-pi, pi]");
    Eigen::SelfAdjointEigenSolver<Matrix6cd> es(mean_field_hamiltonian(k, p, phi),
                                                Eigen::EigenvaluesOnly);
    SpectrumRow row{k, soi_strength_k(k, p, phi_amp), {}};
    for (int i = 0; i < 6; ++i) row.energies[i] = es.eigenvalues()(i);
    out.push_back(row);
  }
  return out;
}

}  // namespace ciss
