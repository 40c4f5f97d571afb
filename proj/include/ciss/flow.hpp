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
#include <string_view>
#include <vector>

#include "ciss/bubbles.hpp"
#include "ciss/model.hpp"
#include "ciss/vertex.hpp"

namespace ciss {

struct FlowSettings {
  int k_points = 512;
  double l_max = 30.0;
  // Zero selects the defaults: 1e3 x bandwidth and 100 x max(4 t + delta).
  double divergence_threshold = 0.0;
  double lambda0 = 0.0;
  double ode_tolerance = 1e-6;
  double abs_tolerance = 1e-9;
  double initial_step = 0.05;
  double min_step = 1e-10;
  long max_steps = 1000000;
  // Convergence when max|dV/dl| < this x max(1, max|V|) with lambda far below all scales.
  double convergence_tolerance = 1e-10;
  bool divergent_only = false;
};

double default_lambda0(const ModelParams& p);
double default_divergence_threshold(const ModelParams& p);
// Fills the defaulted fields and validates. Throws DomainError.
FlowSettings resolve_settings(const FlowSettings& s, const ModelParams& p);

enum class Termination { converged, diverged, max_l_reached };
std::string_view to_string(Termination t);

struct FlowSample {
  double l = 0.0;
  double lambda = 0.0;
  VertexClasses v{};
  // Distance from the 8-class subspace relative to max(1, max|V|).
  double leakage = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  Termination termination = Termination::max_l_reached;
  double l_div = std::numeric_limits<double>::quiet_NaN();
  int dominant_class = -1;
  VertexTensor final_vertex;
  double max_leakage = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
  FlowSettings settings;
  double grid_error = 0.0;
};

// Throws NumericalError on step-size underflow or symmetry leakage.
FlowTrajectory integrate_flow(const ModelParams& p, const FlowSettings& s);
FlowTrajectory integrate_flow(const ModelParams& p, const FlowSettings& s,
                              const BubbleTable& table);

}  // namespace ciss
