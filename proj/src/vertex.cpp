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

#include "ciss/vertex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ciss/error.hpp"

namespace ciss {

namespace {

constexpr int S = 0, X = 1, Y = 2;

using Quad = std::array<int, 4>;

const std::array<std::vector<Quad>, kVertexClassCount>& class_members() {
  static const std::array<std::vector<Quad>, kVertexClassCount> m{{
      {{S, S, S, S}},
      {{X, X, X, X}, {Y, Y, Y, Y}},
      {{S, S, X, X}, {S, S, Y, Y}, {X, X, S, S}, {Y, Y, S, S}},
      {{S, X, S, X}, {S, Y, S, Y}, {X, S, X, S}, {Y, S, Y, S}},
      {{X, S, S, X}, {Y, S, S, Y}, {S, X, X, S}, {S, Y, Y, S}},
      {{X, X, Y, Y}, {Y, Y, X, X}},
      {{X, Y, X, Y}, {Y, X, Y, X}},
      {{Y, X, X, Y}, {X, Y, Y, X}},
  }};
  return m;
}

}  // namespace

std::string_view vertex_class_name(int c) {
  static constexpr std::array<std::string_view, kVertexClassCount> names{
      "ssss", "xxxx", "ssxx", "sxsx", "xssx", "xxyy", "xyxy", "yxxy"};
  return names.at(c);
}

VertexTensor VertexTensor::from_classes(const VertexClasses& c) {
  VertexTensor v;
  const auto& m = class_members();
  for (int k = 0; k < kVertexClassCount; ++k)
    for (const auto& q : m[k]) v(q[0], q[1], q[2], q[3]) = c[k];
  return v;
}

VertexClasses VertexTensor::classes() const {
  VertexClasses out{};
  const auto& m = class_members();
  for (int k = 0; k < kVertexClassCount; ++k) {
    double s = 0.0;
    for (const auto& q : m[k]) s += (*this)(q[0], q[1], q[2], q[3]);
    out[k] = s / static_cast<double>(m[k].size());
  }
  return out;
}

VertexTensor VertexTensor::projected() const { return from_classes(classes()); }

double VertexTensor::leakage() const {
  const VertexTensor p = projected();
  double m = 0.0;
  for (int i = 0; i < 81; ++i) m = std::max(m, std::abs(v_[i] - p.v_[i]));
  return m;
}

double VertexTensor::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

VertexTensor initial_vertex(const ModelParams& p) {
  VertexClasses c{};
  c[kSsxx] = p.jp;
  c[kSxsx] = -2.0 * p.j;
  c[kXssx] = p.u - p.j;
  return VertexTensor::from_classes(c);
}

VertexTensor flow_rhs(const VertexTensor& v, const BubbleMatrices& dot, bool divergent_only) {
  Eigen::Matrix3d ph = dot.ph;
  Eigen::Matrix3d pp = dot.pp;
  if (divergent_only) {
    pp.setZero();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if ((a == 0) == (b == 0)) ph(a, b) = 0.0;
  }
  VertexTensor out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double r = 0.0;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
              const double pab = pp(a, b);
              const double hab = ph(a, b);
              if (pab != 0.0) r -= pab * v(i, j, a, b) * v(a, b, k, l);
              if (hab != 0.0) {
                r += 2.0 * hab * v(i, b, a, l) * v(a, j, k, b);
                r -= hab * (v(i, a, k, b) * v(b, j, a, l) + v(a, j, k, b) * v(b, i, a, l) +
                            v(i, b, a, l) * v(j, a, k, b));
              }
            }
          out(i, j, k, l) = r;
        }
  return out;
}

VertexTensor flow_rhs(const VertexTensor& v, double lambda, const BubbleTable& table,
                      bool divergent_only) {
  VertexTensor d = flow_rhs(v, table.scale_derivatives(lambda), divergent_only);
  const double leak = d.leakage();
  const double scale = std::max(1.0, d.max_abs());
  if (leak > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "vertex derivative left the symmetry subspace: leakage=" << leak
        << " max|dV|=" << d.max_abs() << " lambda=" << lambda;
    throw NumericalError(msg.str());
  }
  return d;
}

double gamma_vertex(const VertexTensor& v, int i1, int i2, int i3, int i4) {
  const int n1 = i1 / 2, a1 = i1 % 2;
  const int n2 = i2 / 2, a2 = i2 % 2;
  const int n3 = i3 / 2, a3 = i3 % 2;
  const int n4 = i4 / 2, a4 = i4 % 2;
  double g = 0.0;
  if (a1 == a4 && a2 == a3) g += v(n1, n2, n3, n4);
  if (a1 == a3 && a2 == a4) g -= v(n2, n1, n3, n4);
  return g;
}

}  // namespace ciss
