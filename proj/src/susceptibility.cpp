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

#include "ciss/susceptibility.hpp"

#include <algorithm>
#include <cmath>

#include "ciss/error.hpp"
#include "ciss/parallel.hpp"

namespace ciss {

Eigen::MatrixXd SusceptibilityTensor::pair_matrix() const {
  Eigen::MatrixXd m(36, 36);
  for (int i1 = 0; i1 < 6; ++i1)
    for (int i2 = 0; i2 < 6; ++i2)
      for (int i3 = 0; i3 < 6; ++i3)
        for (int i4 = 0; i4 < 6; ++i4) m(i4 * 6 + i1, i2 * 6 + i3) = (*this)(i1, i2, i3, i4);
  return m;
}

SusceptibilityTensor full_susceptibility(const VertexTensor& v, const Eigen::Matrix3d& ph) {
  SusceptibilityTensor chi;
  for (int i1 = 0; i1 < 6; ++i1)
    for (int i2 = 0; i2 < 6; ++i2)
      for (int i3 = 0; i3 < 6; ++i3)
        for (int i4 = 0; i4 < 6; ++i4) {
          const int n1 = i1 / 2, n2 = i2 / 2, n3 = i3 / 2, n4 = i4 / 2;
          double c = -gamma_vertex(v, i1, i2, i3, i4) * ph(n1, n4) * ph(n2, n3);
          if (i1 == i3 && i2 == i4) c -= ph(n1, n2);
          chi(i1, i2, i3, i4) = c;
        }
  return chi;
}

SusceptibilityTensor full_susceptibility(const VertexTensor& v, const ModelParams& p,
                                         double lambda0, int k_points) {
  const BubbleTable table(p, k_points);
  return full_susceptibility(v, table.values(lambda0).ph);
}

namespace {

const Eigen::MatrixXcd& projector_rows() {
  static const Eigen::MatrixXcd a = [] {
    Eigen::MatrixXcd m(kChannelCount, 36);
    const auto& labels = all_channel_labels();
    for (int l = 0; l < kChannelCount; ++l) {
      const Matrix6c u = channel_projector(labels[l]);
      for (int i4 = 0; i4 < 6; ++i4)
        for (int i1 = 0; i1 < 6; ++i1) m(l, i4 * 6 + i1) = u(i4, i1);
    }
    return m;
  }();
  return a;
}

}  // namespace

Eigen::MatrixXcd channel_matrix(const SusceptibilityTensor& chi) {
  const Eigen::MatrixXcd& a = projector_rows();
  return a * chi.pair_matrix().cast<Complex>() * a.adjoint();
}

double channel_susceptibility(const Eigen::MatrixXcd& x, const ChannelCombination& combo) {
  const Eigen::VectorXcd w = combo.weights();
  return (w.adjoint() * x * w)(0, 0).real();
}

double channel_susceptibility(const SusceptibilityTensor& chi, const ChannelCombination& combo) {
  return channel_susceptibility(channel_matrix(chi), combo);
}

std::vector<NamedChannel> named_channels(const std::vector<std::string>& names, int m_s) {
  std::vector<NamedChannel> out;
  for (const auto& n : names) out.push_back({n, named_channel(n, m_s)});
  return out;
}

ChannelEvaluation evaluate_channels(const ModelParams& p, const FlowSettings& s,
                                    const std::vector<NamedChannel>& channels,
                                    double attribution_ratio) {
  const FlowSettings r = resolve_settings(s, p);
  const BubbleTable table(p, r.k_points);
  ChannelEvaluation ev;
  ev.flow = integrate_flow(p, r, table);
  const SusceptibilityTensor chi = full_susceptibility(ev.flow.final_vertex, table.values(r.lambda0).ph);
  const Eigen::MatrixXcd x = channel_matrix(chi);
  const Eigen::MatrixXcd h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  ev.leading_eigenvalue = solver.eigenvalues().maxCoeff();
  const bool flow_diverged = ev.flow.termination == Termination::diverged;
  for (const auto& c : channels) {
    ChannelReading reading;
    reading.name = c.name;
    reading.value_at_termination = channel_susceptibility(x, c.combo);
    reading.chi.l_div = ev.flow.l_div;
    reading.chi.diverged =
        flow_diverged && reading.value_at_termination >= attribution_ratio * ev.leading_eigenvalue;
    if (!reading.chi.diverged) reading.chi.value = reading.value_at_termination;
    ev.channels.push_back(std::move(reading));
  }
  return ev;
}

ChiValue chi_spin_orbit(const ModelParams& p, const FlowSettings& s, int m_s) {
  const auto ev = evaluate_channels(p, s, {{"so", named_channel("so", m_s)}});
  return ev.channels.front().chi;
}

RpaValue chi_rpa(const ModelParams& p, const RpaOptions& opt) {
  p.validate();
  RpaValue r;
  if (opt.source == Chi0Source::continuum) {
    const auto c = continuum_chi0(p);
    if (!c) {
      r.diverged = true;
      r.chi0 = INFINITY;
      return r;
    }
    r.chi0 = *c;
  } else {
    const double lambda = opt.lambda == 0.0 ? default_lambda0(p) : opt.lambda;
    QuadratureOptions q;
    q.initial_points = opt.k_points;
    r.chi0 = -bubble(BubbleKind::ph, Band::s, Band::px, lambda, p, q).value;
  }
  const double g = p.u - p.j;
  if (g * r.chi0 >= 1.0) {
    r.diverged = true;
    return r;
  }
  r.value = r.chi0 / (1.0 - g * r.chi0);
  return r;
}

SweepResult temperature_sweep(const ModelParams& base, const std::vector<double>& t_grid,
                              const std::vector<double>& delta_grid,
                              const std::vector<NamedChannel>& channels, const FlowSettings& s,
                              const SweepOptions& opt) {
  if (t_grid.empty() || delta_grid.empty()) throw DomainError("sweep grids must be non-empty");
  if (channels.empty()) throw DomainError("sweep needs at least one channel");
  for (double t : t_grid)
    if (!(t > 0.0)) throw DomainError("sweep temperatures must be positive");
  for (double d : delta_grid)
    if (!(d > 0.0)) throw DomainError("sweep deltas must be positive");
  base.validate();

  const int nt = static_cast<int>(t_grid.size());
  const int nd = static_cast<int>(delta_grid.size());
  const int nc = static_cast<int>(channels.size());
  std::vector<SweepRow> cells(static_cast<size_t>(nt) * nd * nc);
  parallel_for(nt * nd, opt.threads, [&](int idx) {
    const int id = idx / nt;
    const int it = idx % nt;
    ModelParams p = base;
    p.temperature = t_grid[it];
    p.delta = delta_grid[id];
    std::vector<SweepRow> rows(nc);
    try {
      const auto ev = evaluate_channels(p, s, channels, opt.attribution_ratio);
      for (int c = 0; c < nc; ++c) {
        rows[c].chi = ev.channels[c].chi.value;
        rows[c].diverged = ev.channels[c].chi.diverged;
        rows[c].l_div = ev.channels[c].chi.l_div;
      }
    } catch (const std::exception& e) {
      for (auto& r : rows) r.error = e.what();
    }
    for (int c = 0; c < nc; ++c) {
      rows[c].temperature = p.temperature;
      rows[c].delta = p.delta;
      rows[c].channel = channels[c].name;
      cells[(static_cast<size_t>(c) * nd + id) * nt + it] = std::move(rows[c]);
    }
  });

  SweepResult out;
  out.params = base;
  out.settings = s;
  out.rows = std::move(cells);
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.channel != b.channel) return a.channel < b.channel;
    if (a.delta != b.delta) return a.delta < b.delta;
    return a.temperature < b.temperature;
  });
  return out;
}

std::optional<Onset> instability_onset(const ModelParams& p, const FlowSettings& s,
                                       const std::vector<NamedChannel>& channels, double t_low,
                                       double t_high, double rel_tol, double attribution_ratio) {
  if (!(t_low > 0.0) || !(t_high > t_low)) throw DomainError("onset bracket must satisfy 0 < low < high");
  if (!(rel_tol > 0.0)) throw DomainError("onset tolerance must be positive");
  auto run = [&](double t) {
    ModelParams q = p;
    q.temperature = t;
    return evaluate_channels(q, s, channels, attribution_ratio);
  };
  if (run(t_high).flow.termination == Termination::diverged) return std::nullopt;
  ChannelEvaluation low = run(t_low);
  if (low.flow.termination != Termination::diverged) return std::nullopt;
  double lo = t_low, hi = t_high;
  while (hi / lo - 1.0 > rel_tol) {
    const double mid = std::sqrt(lo * hi);
    ChannelEvaluation ev = run(mid);
    if (ev.flow.termination == Termination::diverged) {
      lo = mid;
      low = std::move(ev);
    } else {
      hi = mid;
    }
  }
  return Onset{lo, hi, std::move(low)};
}

}  // namespace ciss
