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
#include <string_view>

#include "ciss/bubbles.hpp"
#include "ciss/model.hpp"

namespace ciss {

// Symmetry classes of the orbital vertex; the first listed member names it.
enum VertexClass { kSsss, kXxxx, kSsxx, kSxsx, kXssx, kXxyy, kXyxy, kYxxy, kVertexClassCount };

std::string_view vertex_class_name(int c);

using VertexClasses = std::array<double, kVertexClassCount>;

// Real rank-4 tensor V_{nu1 nu2 nu3 nu4} over (s, px, py).
class VertexTensor {
 public:
  VertexTensor() { v_.fill(0.0); }
  static VertexTensor from_classes(const VertexClasses& c);

  double operator()(int a, int b, int c, int d) const { return v_[index(a, b, c, d)]; }
  double& operator()(int a, int b, int c, int d) { return v_[index(a, b, c, d)]; }

  std::array<double, 81>& data() { return v_; }
  const std::array<double, 81>& data() const { return v_; }

  // Class means.
  VertexClasses classes() const;
  VertexTensor projected() const;
  // max |V - projected(V)|, including entries outside every class.
  double leakage() const;
  double max_abs() const;

 private:
  static constexpr int index(int a, int b, int c, int d) { return ((a * 3 + b) * 3 + c) * 3 + d; }
  std::array<double, 81> v_;
};

VertexTensor initial_vertex(const ModelParams& p);

// One-loop right-hand side dV/dl for given scale-derivative bubbles. With
// divergent_only set, every bubble except the s-p particle-hole one is dropped.
VertexTensor flow_rhs(const VertexTensor& v, const BubbleMatrices& dot, bool divergent_only = false);
// Throws NumericalError if the output leaves the 8-class subspace.
VertexTensor flow_rhs(const VertexTensor& v, double lambda, const BubbleTable& table,
                      bool divergent_only = false);

// Spin-orbital vertex
// Gamma_{1,2;3,4} = V_{n1 n2 n3 n4} d(a1,a4) d(a2,a3) - V_{n2 n1 n3 n4} d(a1,a3) d(a2,a4)
// with modes i = orbital_mode(nu, spin).
double gamma_vertex(const VertexTensor& v, int i1, int i2, int i3, int i4);

}  // namespace ciss
