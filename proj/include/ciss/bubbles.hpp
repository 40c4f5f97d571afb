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

#include <Eigen/Dense>

#include "ciss/model.hpp"
#include "ciss/quadrature.hpp"

namespace ciss {

enum class BubbleKind { pp, ph };

// Theta_<(eps) = x / (e^x - 1), x = |eps| / lambda. lambda = inf gives 1.
double cutoff_function(double energy, double lambda);
// lambda d/dlambda Theta_<(eps).
double cutoff_scale_derivative(double energy, double lambda);

// [n(a) - n(b)] / (a - b), with the derivative limit at a == b.
double ph_kernel(double a, double b, double temperature);
// [1 - n(a) - n(b)] / (a + b), with the limit at a == -b.
double pp_kernel(double a, double b, double temperature);

// Adaptive trapezoid; throws NumericalError carrying the grid diagnostics if
// the tolerance is not met.
QuadratureResult bubble(BubbleKind kind, Band nu, Band nup, double lambda, const ModelParams& p,
                        const QuadratureOptions& opt = {});
QuadratureResult bubble_scale_derivative(BubbleKind kind, Band nu, Band nup, double lambda,
                                         const ModelParams& p, const QuadratureOptions& opt = {});

struct BubbleMatrices {
  Eigen::Matrix3d ph = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d pp = Eigen::Matrix3d::Zero();
};

// Bubbles on a fixed uniform k grid with cached kernels, for the flow.
class BubbleTable {
 public:
  BubbleTable(const ModelParams& p, int k_points);

  int k_points() const { return static_cast<int>(k_.size()); }
  BubbleMatrices values(double lambda) const;
  BubbleMatrices scale_derivatives(double lambda) const;
  // max |Pi(N) - Pi(N/2)| over bubbles at lambda = inf.
  double grid_error() const;

 private:
  enum Pair { ss = 0, sp = 1, pp_ = 2 };
  BubbleMatrices assemble(double lambda, bool derivative, int stride) const;

  ModelParams params_;
  std::vector<double> k_, es_, ep_;
  std::vector<double> kph_[3], kpp_[3];
};

}  // namespace ciss
