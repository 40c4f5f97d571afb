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

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ciss/channels.hpp"
#include "ciss/flow.hpp"
#include "ciss/model.hpp"
#include "ciss/vertex.hpp"

namespace ciss {

// chi_{1,2;3,4} over spin-orbital modes i = orbital_mode(nu, spin).
class SusceptibilityTensor {
 public:
  SusceptibilityTensor() : v_(6 * 6 * 6 * 6, 0.0) {}
  double operator()(int i1, int i2, int i3, int i4) const { return v_[index(i1, i2, i3, i4)]; }
  double& operator()(int i1, int i2, int i3, int i4) { return v_[index(i1, i2, i3, i4)]; }
  // Rows (i4, i1), columns (i2, i3), each pair flattened as first * 6 + second.
  Eigen::MatrixXd pair_matrix() const;

 private:
  static int index(int a, int b, int c, int d) { return ((a * 6 + b) * 6 + c) * 6 + d; }
  std::vector<double> v_;
};

// chi = -d13 d24 Pi_{n1 n2} - Gamma_{1,2;3,4} Pi_{n1 n4} Pi_{n2 n3}, Pi the bare ph bubble.
SusceptibilityTensor full_susceptibility(const VertexTensor& v, const Eigen::Matrix3d& ph_bare);
SusceptibilityTensor full_susceptibility(const VertexTensor& v, const ModelParams& p,
                                         double lambda0, int k_points = 512);

// X_{LL'} = sum U_L[4,1] conj(U_L'[2,3]) chi[1,2,3,4] over all_channel_labels().
Eigen::MatrixXcd channel_matrix(const SusceptibilityTensor& chi);
double channel_susceptibility(const Eigen::MatrixXcd& x, const ChannelCombination& combo);
double channel_susceptibility(const SusceptibilityTensor& chi, const ChannelCombination& combo);

struct NamedChannel {
  std::string name;
  ChannelCombination combo;
};
// Throws DomainError for unknown names.
std::vector<NamedChannel> named_channels(const std::vector<std::string>& names, int m_s = 1);

struct ChiValue {
  bool diverged = false;
  double value = std::numeric_limits<double>::quiet_NaN();  // NaN when diverged
  double l_div = std::numeric_limits<double>::quiet_NaN();
};

struct ChannelReading {
  std::string name;
  ChiValue chi;
  // chi at termination, also for diverged channels.
  double value_at_termination = 0.0;
};

struct ChannelEvaluation {
  FlowTrajectory flow;
  double leading_eigenvalue = 0.0;
  std::vector<ChannelReading> channels;
};

inline constexpr double kDefaultAttributionRatio = 0.5;

// Runs the flow and projects. When the flow diverges, a channel is flagged
// diverged iff its chi reaches attribution_ratio x the largest eigenvalue of
// the channel matrix at termination.
ChannelEvaluation evaluate_channels(const ModelParams& p, const FlowSettings& s,
                                    const std::vector<NamedChannel>& channels,
                                    double attribution_ratio = kDefaultAttributionRatio);

ChiValue chi_spin_orbit(const ModelParams& p, const FlowSettings& s, int m_s = 1);

enum class Chi0Source { lattice, continuum };

struct RpaOptions {
  Chi0Source source = Chi0Source::lattice;
  // Cutoff of the lattice bubble; zero selects the flow default, inf the bare integral.
  double lambda = 0.0;
  int k_points = 512;
};

struct RpaValue {
  bool diverged = false;
  double chi0 = 0.0;
  double value = std::numeric_limits<double>::quiet_NaN();
};

// chi0 / (1 - (U - J) chi0); J' is ignored.
RpaValue chi_rpa(const ModelParams& p, const RpaOptions& opt = {});

struct SweepRow {
  double temperature = 0.0;
  double delta = 0.0;
  std::string channel;
  double chi = std::numeric_limits<double>::quiet_NaN();
  bool diverged = false;
  double l_div = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

struct SweepOptions {
  int threads = 1;
  double attribution_ratio = kDefaultAttributionRatio;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (channel, delta, temperature)
  ModelParams params;
  FlowSettings settings;
};

SweepResult temperature_sweep(const ModelParams& base, const std::vector<double>& t_grid,
                              const std::vector<double>& delta_grid,
                              const std::vector<NamedChannel>& channels, const FlowSettings& s,
                              const SweepOptions& opt = {});

struct Onset {
  double t_diverged = 0.0;  // highest bracketing temperature with a divergent flow
  double t_finite = 0.0;    // lowest bracketing temperature with a finite flow
  ChannelEvaluation at_onset;
};

// Log-bisection for the highest temperature where the flow diverges. Empty
// if [t_low, t_high] does not bracket it.
std::optional<Onset> instability_onset(const ModelParams& p, const FlowSettings& s,
                                       const std::vector<NamedChannel>& channels, double t_low,
                                       double t_high, double rel_tol = 1e-3,
                                       double attribution_ratio = kDefaultAttributionRatio);

}  // namespace ciss
