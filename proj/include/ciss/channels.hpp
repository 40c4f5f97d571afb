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

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ciss {

using Complex = std::complex<double>;
using Matrix6c = Eigen::Matrix<Complex, 6, 6>;

// Pairing label (j_s, m_s, m_l; q) of the local bilinear B_{j_s,m_s,m_l;q}.
struct ChannelLabel {
  int j_s = 0;
  int m_s = 0;
  int m_l = 0;
  int q = 0;

  bool valid() const;
  std::string str() const;
  friend bool operator==(const ChannelLabel&, const ChannelLabel&) = default;
};

inline constexpr int kChannelCount = 36;

// Canonical order: j_s, m_s, m_l, q ascending.
const std::vector<ChannelLabel>& all_channel_labels();
// Position in all_channel_labels(). Throws DomainError for invalid labels.
int label_index(const ChannelLabel& label);

// Coefficient <1/2 m1; 1/2 m2 | j m>.
double clebsch_gordan_half_half(double m1, double m2, int j, int m);

// Rows q = +1, 0, -1; columns s, px, py.
const Eigen::Matrix3cd& orbital_transform();

// Index helpers for the 6-mode spaces. Spin 0 is up, 1 is down.
constexpr int q_row(int q) { return 1 - q; }
constexpr int q_mode(int q, int spin) { return q_row(q) * 2 + spin; }
constexpr int orbital_mode(int band, int spin) { return band * 2 + spin; }

// B = sum_ab M_ab psi^dag_a psi_b in the angular-momentum basis (q_mode).
Matrix6c bilinear_matrix(const ChannelLabel& label);
// Same operator in the orbital basis (orbital_mode): U_{nu sigma, nu' sigma'}.
Matrix6c channel_projector(const ChannelLabel& label);

struct ConjugateLabel {
  ChannelLabel label;
  int sign = 1;
};
ConjugateLabel hermitian_conjugate_label(const ChannelLabel& label);

struct ChannelTerm {
  ChannelLabel label;
  Complex weight;
};

// Normalized superposition of channel operators.
class ChannelCombination {
 public:
  ChannelCombination() = default;
  explicit ChannelCombination(std::vector<ChannelTerm> terms);

  const std::vector<ChannelTerm>& terms() const { return terms_; }
  // Weights over all_channel_labels().
  Eigen::VectorXcd weights() const;
  Matrix6c bilinear_matrix() const;

 private:
  std::vector<ChannelTerm> terms_;
};

// so, so_prime, triplet_odd, singlet_odd, singlet_even. Singlets ignore m_s.
ChannelCombination named_channel(std::string_view name, int m_s = 1);
const std::vector<std::string>& channel_names();
bool is_channel_name(std::string_view name);

// Representations acting on bilinear matrices in the q basis.
Matrix6c time_reversal(const Matrix6c& m);
Matrix6c spatial_parity(const Matrix6c& m);
Matrix6c rotation(const Matrix6c& m, double theta);
// sum_i [S_i, [S_i, m]]; j(j+1) m for a spin-j multiplet member.
Matrix6c spin_casimir(const Matrix6c& m);

enum class Su2 { singlet, triplet, mixed };
enum class Sign { even, odd, mixed };

struct SymmetrySignature {
  Su2 su2 = Su2::mixed;
  Sign parity = Sign::mixed;
  Sign trs = Sign::mixed;
  friend bool operator==(const SymmetrySignature&, const SymmetrySignature&) = default;
};

std::string_view to_string(Su2 v);
std::string_view to_string(Sign v);

// TRS even/odd refers to h O + h* O^dag with h = 1 and any other phase.
SymmetrySignature symmetry_signature(const ChannelCombination& combo);

struct TableRow {
  ChannelLabel quantum;  // j_s, m_s, m_l; q unused
  std::string operator_text;
  ChannelCombination combo;
};

// Rows of the electron-hole pairing symmetry table for the given m_s.
std::vector<TableRow> symmetry_table(int m_s = 1);

}  // namespace ciss
