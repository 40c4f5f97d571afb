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

#include "ciss/channels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "ciss/error.hpp"

namespace ciss {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Complex ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    case 2:
      return {-1, 0};
    default:
      return {0, -1};
  }
}

int sign_pow(int n) { return (n % 2 == 0) ? 1 : -1; }

double spin_value(int spin) { return spin == 0 ? 0.5 : -0.5; }

Eigen::Matrix<Complex, 6, 6> kron_transform() {
  Eigen::Matrix<Complex, 6, 6> t = Eigen::Matrix<Complex, 6, 6>::Zero();
  const auto& o = orbital_transform();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int s = 0; s < 2; ++s) t(a * 2 + s, b * 2 + s) = o(a, b);
  return t;
}

bool is_zero(const Matrix6c& m, double tol) { return m.cwiseAbs().maxCoeff() <= tol; }

double scale_of(const Matrix6c& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

bool ChannelLabel::valid() const {
  if (j_s != 0 && j_s != 1) return false;
  if (std::abs(m_s) > j_s) return false;
  if (q < -1 || q > 1) return false;
  const int q2 = q + m_l;
  return q2 >= -1 && q2 <= 1;
}

std::string ChannelLabel::str() const {
  return "(" + std::to_string(j_s) + "," + std::to_string(m_s) + "," + std::to_string(m_l) + ";" +
         std::to_string(q) + ")";
}

const std::vector<ChannelLabel>& all_channel_labels() {
  static const std::vector<ChannelLabel> labels = [] {
    std::vector<ChannelLabel> out;
    for (int js = 0; js <= 1; ++js)
      for (int ms = -js; ms <= js; ++ms)
        for (int ml = -2; ml <= 2; ++ml)
          for (int q = -1; q <= 1; ++q) {
            ChannelLabel l{js, ms, ml, q};
            if (l.valid()) out.push_back(l);
          }
    return out;
  }();
  return labels;
}

int label_index(const ChannelLabel& label) {
  if (!label.valid()) throw DomainError("invalid channel label " + label.str());
  const auto& all = all_channel_labels();
  return static_cast<int>(std::find(all.begin(), all.end(), label) - all.begin());
}

double clebsch_gordan_half_half(double m1, double m2, int j, int m) {
  if (std::abs(std::abs(m1) - 0.5) > 1e-12 || std::abs(std::abs(m2) - 0.5) > 1e-12) return 0.0;
  if (std::abs(m1 + m2 - m) > 1e-12) return 0.0;
  if (j == 1) {
    if (m == 1 || m == -1) return 1.0;
    if (m == 0) return kInvSqrt2;
    return 0.0;
  }
  if (j == 0 && m == 0) return m1 > 0 ? kInvSqrt2 : -kInvSqrt2;
  return 0.0;
}

const Eigen::Matrix3cd& orbital_transform() {
  static const Eigen::Matrix3cd t = [] {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    const Complex i(0, 1);
    // psi_+ = -(psi_x + i psi_y)/sqrt2, psi_0 = psi_s, psi_- = (psi_x - i psi_y)/sqrt2
    m(q_row(1), 1) = -kInvSqrt2;
    m(q_row(1), 2) = -i * kInvSqrt2;
    m(q_row(0), 0) = 1.0;
    m(q_row(-1), 1) = kInvSqrt2;
    m(q_row(-1), 2) = -i * kInvSqrt2;
    return m;
  }();
  return t;
}

Matrix6c bilinear_matrix(const ChannelLabel& label) {
  if (!label.valid()) throw DomainError("invalid channel label " + label.str());
  Matrix6c m = Matrix6c::Zero();
  const int q2 = label.q + label.m_l;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double sa = spin_value(a);
      const double sb = spin_value(b);
      const double cg = clebsch_gordan_half_half(-sa, sb, label.j_s, label.m_s);
      if (cg == 0.0) continue;
      m(q_mode(label.q, a), q_mode(q2, b)) =
          static_cast<double>(sign_pow(label.q + 1)) * ipow(a == 0 ? 1 : -1) * cg;
    }
  return m;
}

Matrix6c channel_projector(const ChannelLabel& label) {
  static const Matrix6c t = kron_transform();
  return t.adjoint() * bilinear_matrix(label) * t;
}

ConjugateLabel hermitian_conjugate_label(const ChannelLabel& label) {
  if (!label.valid()) throw DomainError("invalid channel label " + label.str());
  return {{label.j_s, -label.m_s, -label.m_l, label.q + label.m_l},
          sign_pow(label.m_l + label.m_s + 1)};
}

ChannelCombination::ChannelCombination(std::vector<ChannelTerm> terms) {
  double norm2 = 0.0;
  for (const auto& t : terms) {
    if (!t.label.valid()) throw DomainError("invalid channel label " + t.label.str());
    norm2 += std::norm(t.weight);
  }
  if (!(norm2 > 0.0)) throw DomainError("channel combination has zero weight");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& t : terms) t.weight *= inv;
  terms_ = std::move(terms);
}

Eigen::VectorXcd ChannelCombination::weights() const {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(kChannelCount);
  for (const auto& t : terms_) w(label_index(t.label)) += t.weight;
  return w;
}

Matrix6c ChannelCombination::bilinear_matrix() const {
  Matrix6c m = Matrix6c::Zero();
  for (const auto& t : terms_) m += t.weight * ciss::bilinear_matrix(t.label);
  return m;
}

const std::vector<std::string>& channel_names() {
  static const std::vector<std::string> names{"so", "so_prime", "triplet_odd", "singlet_odd",
                                              "singlet_even"};
  return names;
}

bool is_channel_name(std::string_view name) {
  const auto& n = channel_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

ChannelCombination named_channel(std::string_view name, int m_s) {
  if (m_s < -1 || m_s > 1) throw DomainError("m_s must be -1, 0 or +1");
  if (name == "so") return ChannelCombination({{{1, m_s, -1, 0}, 1.0}, {{1, m_s, -1, 1}, -1.0}});
  if (name == "so_prime")
    return ChannelCombination({{{1, m_s, 0, 1}, 1.0}, {{1, m_s, 0, -1}, -1.0}});
  if (name == "triplet_odd")
    return ChannelCombination({{{1, m_s, -1, 0}, 1.0}, {{1, m_s, -1, 1}, 1.0}});
  if (name == "singlet_odd")
    return ChannelCombination({{{0, 0, 1, 0}, 1.0}, {{0, 0, 1, -1}, -1.0}});
  if (name == "singlet_even")
    return ChannelCombination({{{0, 0, 1, 0}, 1.0}, {{0, 0, 1, -1}, 1.0}});
  throw DomainError("unknown channel '" + std::string(name) +
                    "' (expected so, so_prime, triplet_odd, singlet_odd, singlet_even)");
}

// T psi_{q,a} T^-1 = i^{-2a} (-1)^q psi_{-q,-a}; T is antiunitary.
Matrix6c time_reversal(const Matrix6c& m) {
  Matrix6c out = Matrix6c::Zero();
  for (int q = -1; q <= 1; ++q)
    for (int a = 0; a < 2; ++a)
      for (int q2 = -1; q2 <= 1; ++q2)
        for (int b = 0; b < 2; ++b) {
          const Complex v = m(q_mode(q, a), q_mode(q2, b));
          if (v == Complex(0, 0)) continue;
          const Complex eta_a_conj = ipow(a == 0 ? 1 : -1) * static_cast<double>(sign_pow(q));
          const Complex eta_b = ipow(b == 0 ? -1 : 1) * static_cast<double>(sign_pow(q2));
          out(q_mode(-q, 1 - a), q_mode(-q2, 1 - b)) = std::conj(v) * eta_a_conj * eta_b;
        }
  return out;
}

Matrix6c spatial_parity(const Matrix6c& m) {
  Matrix6c out = m;
  for (int q = -1; q <= 1; ++q)
    for (int q2 = -1; q2 <= 1; ++q2)
      if (sign_pow(q + q2) < 0)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) out(q_mode(q, a), q_mode(q2, b)) *= -1.0;
  return out;
}

Matrix6c rotation(const Matrix6c& m, double theta) {
  Matrix6c out = m;
  for (int q = -1; q <= 1; ++q)
    for (int q2 = -1; q2 <= 1; ++q2) {
      const Complex phase = std::polar(1.0, (q2 - q) * theta);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out(q_mode(q, a), q_mode(q2, b)) *= phase;
    }
  return out;
}

Matrix6c spin_casimir(const Matrix6c& m) {
  static const std::array<Matrix6c, 3> spin = [] {
    std::array<Eigen::Matrix2cd, 3> pauli;
    pauli[0] << 0, 1, 1, 0;
    pauli[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    pauli[2] << 1, 0, 0, -1;
    std::array<Matrix6c, 3> s;
    for (int i = 0; i < 3; ++i) {
      s[i].setZero();
      for (int q = 0; q < 3; ++q) s[i].block<2, 2>(2 * q, 2 * q) = 0.5 * pauli[i];
    }
    return s;
  }();
  Matrix6c out = Matrix6c::Zero();
  for (const auto& s : spin) {
    const Matrix6c c = s * m - m * s;
    out += s * c - c * s;
  }
  return out;
}

std::string_view to_string(Su2 v) {
  switch (v) {
    case Su2::singlet:
      return "singlet";
    case Su2::triplet:
      return "triplet";
    default:
      return "mixed";
  }
}

std::string_view to_string(Sign v) {
  switch (v) {
    case Sign::even:
      return "even";
    case Sign::odd:
      return "odd";
    default:
      return "mixed";
  }
}

SymmetrySignature symmetry_signature(const ChannelCombination& combo) {
  const Matrix6c m = combo.bilinear_matrix();
  const double tol = 1e-12 * scale_of(m);
  SymmetrySignature sig;

  const Matrix6c c = spin_casimir(m);
  if (is_zero(c, tol))
    sig.su2 = Su2::singlet;
  else if (is_zero(c - 2.0 * m, tol))
    sig.su2 = Su2::triplet;

  const Matrix6c p = spatial_parity(m);
  if (is_zero(p - m, tol))
    sig.parity = Sign::even;
  else if (is_zero(p + m, tol))
    sig.parity = Sign::odd;

  // h O + h* O^dag is even for every h iff T O T^-1 = O^dag.
  const Matrix6c t = time_reversal(m);
  const Matrix6c dag = m.adjoint();
  if (is_zero(t - dag, tol))
    sig.trs = Sign::even;
  else if (is_zero(t + dag, tol))
    sig.trs = Sign::odd;
  return sig;
}

std::vector<TableRow> symmetry_table(int m_s) {
  if (m_s < -1 || m_s > 1) throw DomainError("m_s must be -1, 0 or +1");
  auto single = [](ChannelLabel l) { return ChannelCombination({{l, 1.0}}); };
  auto pair = [](ChannelLabel a, ChannelLabel b, double s) {
    return ChannelCombination({{a, 1.0}, {b, s}});
  };
  const std::string ms = std::to_string(m_s);
  auto b = [](int js, const std::string& m, int ml, const std::string& q) {
    return "B_{" + std::to_string(js) + "," + m + "," + std::to_string(ml) + ";" + q + "}";
  };
  std::vector<TableRow> rows;
  rows.push_back({{0, 0, 0, 0}, b(0, "0", 0, "0"), single({0, 0, 0, 0})});
  rows.push_back({{0, 0, 0, 0}, "(" + b(0, "0", 0, "+1") + " + " + b(0, "0", 0, "-1") + ")/sqrt2",
                  pair({0, 0, 0, 1}, {0, 0, 0, -1}, 1.0)});
  rows.push_back({{0, 0, 0, 0}, "(" + b(0, "0", 0, "+1") + " - " + b(0, "0", 0, "-1") + ")/sqrt2",
                  pair({0, 0, 0, 1}, {0, 0, 0, -1}, -1.0)});
  rows.push_back({{0, 0, 1, 0}, "(" + b(0, "0", 1, "0") + " + " + b(0, "0", 1, "-1") + ")/sqrt2",
                  pair({0, 0, 1, 0}, {0, 0, 1, -1}, 1.0)});
  rows.push_back({{0, 0, 1, 0}, "(" + b(0, "0", 1, "0") + " - " + b(0, "0", 1, "-1") + ")/sqrt2",
                  pair({0, 0, 1, 0}, {0, 0, 1, -1}, -1.0)});
  rows.push_back({{0, 0, 2, 0}, b(0, "0", 2, "-1"), single({0, 0, 2, -1})});
  rows.push_back({{1, m_s, 0, 0}, b(1, ms, 0, "0"), single({1, m_s, 0, 0})});
  rows.push_back({{1, m_s, 0, 0}, "(" + b(1, ms, 0, "+1") + " + " + b(1, ms, 0, "-1") + ")/sqrt2",
                  pair({1, m_s, 0, 1}, {1, m_s, 0, -1}, 1.0)});
  rows.push_back({{1, m_s, 0, 0}, "(" + b(1, ms, 0, "+1") + " - " + b(1, ms, 0, "-1") + ")/sqrt2",
                  pair({1, m_s, 0, 1}, {1, m_s, 0, -1}, -1.0)});
  rows.push_back({{1, m_s, 1, 0}, "(" + b(1, ms, 1, "0") + " + " + b(1, ms, 1, "-1") + ")/sqrt2",
                  pair({1, m_s, 1, 0}, {1, m_s, 1, -1}, 1.0)});
  rows.push_back({{1, m_s, 1, 0}, "(" + b(1, ms, 1, "0") + " - " + b(1, ms, 1, "-1") + ")/sqrt2",
                  pair({1, m_s, 1, 0}, {1, m_s, 1, -1}, -1.0)});
  rows.push_back({{1, m_s, 2, 0}, b(1, ms, 2, "-1"), single({1, m_s, 2, -1})});
  return rows;
}

}  // namespace ciss
