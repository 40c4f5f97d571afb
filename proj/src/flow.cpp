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

#include "ciss/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "ciss/error.hpp"

namespace ciss {

namespace odeint = boost::numeric::odeint;

double default_lambda0(const ModelParams& p) {
  return 100.0 * std::max(4.0 * p.t_s + p.delta, 4.0 * p.t_p + p.delta);
}

double default_divergence_threshold(const ModelParams& p) { return 1e3 * p.bandwidth(); }

FlowSettings resolve_settings(const FlowSettings& s, const ModelParams& p) {
  p.validate();
  FlowSettings r = s;
  if (r.lambda0 == 0.0) r.lambda0 = default_lambda0(p);
  if (r.divergence_threshold == 0.0) r.divergence_threshold = default_divergence_threshold(p);
  if (r.k_points < 64 || r.k_points % 2 != 0) throw DomainError("k_points must be even and >= 64");
  if (!(r.l_max > 0.0)) throw DomainError("l_max must be positive");
  if (!(r.lambda0 >= 10.0 * p.bandwidth()))
    throw DomainError("lambda0 must be at least 10 x bandwidth");
  if (!(r.divergence_threshold >= 100.0 * p.bandwidth()))
    throw DomainError("divergence_threshold must be at least 100 x bandwidth");
  if (!(r.ode_tolerance > 0.0) || !(r.abs_tolerance > 0.0))
    throw DomainError("ode tolerances must be positive");
  if (!(r.initial_step > 0.0) || !(r.min_step > 0.0) || r.max_steps <= 0)
    throw DomainError("invalid step control settings");
  return r;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::diverged:
      return "diverged";
    default:
      return "max_l_reached";
  }
}

FlowTrajectory integrate_flow(const ModelParams& p, const FlowSettings& s) {
  const FlowSettings r = resolve_settings(s, p);
  const BubbleTable table(p, r.k_points);
  return integrate_flow(p, r, table);
}

namespace {

using State = std::vector<double>;

VertexTensor to_vertex(const State& x) {
  VertexTensor v;
  std::copy(x.begin(), x.end(), v.data().begin());
  return v;
}

bool all_finite(const State& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

FlowSample sample(double l, double lambda, const VertexTensor& v) {
  return {l, lambda, v.classes(), v.leakage() / std::max(1.0, v.max_abs())};
}

}  // namespace

FlowTrajectory integrate_flow(const ModelParams& p, const FlowSettings& s,
                              const BubbleTable& table) {
  const FlowSettings r = resolve_settings(s, p);
  if (table.k_points() != r.k_points) throw DomainError("bubble table grid mismatch");

  FlowTrajectory traj;
  traj.settings = r;
  traj.grid_error = table.grid_error();

  const double lambda0 = r.lambda0;
  auto system = [&](const State& x, State& dxdt, double l) {
    const VertexTensor d = flow_rhs(to_vertex(x), lambda0 * std::exp(-l), table, r.divergent_only);
    std::copy(d.data().begin(), d.data().end(), dxdt.begin());
  };

  const VertexTensor v0 = initial_vertex(p);
  State x(v0.data().begin(), v0.data().end());
  double l = 0.0;
  double dt = std::min(r.initial_step, r.l_max);
  traj.samples.push_back(sample(l, lambda0, v0));
  traj.max_leakage = traj.samples.back().leakage;

  const double scale = 0.5 * p.delta + p.temperature;
  auto stepper = odeint::make_controlled(r.abs_tolerance, r.ode_tolerance,
                                         odeint::runge_kutta_dopri5<State>());
  State dxdt(81);
  while (true) {
    if (l >= r.l_max) {
      traj.termination = Termination::max_l_reached;
      break;
    }
    if (traj.accepted_steps + traj.rejected_steps >= r.max_steps)
      throw NumericalError("flow exceeded max_steps at l=" + std::to_string(l));
    dt = std::min(dt, r.l_max - l);
    if (dt < r.min_step && l + dt < r.l_max) {
      std::ostringstream msg;
      msg << "flow step size underflow (stiffness): l=" << l << " lambda=" << lambda0 * std::exp(-l)
          << " max|v|=" << to_vertex(x).max_abs();
      throw NumericalError(msg.str());
    }
    const State before = x;
    const double l_before = l;
    const odeint::controlled_step_result res = stepper.try_step(system, x, l, dt);
    if (res == odeint::fail) {
      ++traj.rejected_steps;
      continue;
    }
    if (!all_finite(x)) {
      x = before;
      l = l_before;
      dt *= 0.25;
      ++traj.rejected_steps;
      continue;
    }
    ++traj.accepted_steps;
    const VertexTensor v = to_vertex(x);
    const double lambda = lambda0 * std::exp(-l);
    traj.samples.push_back(sample(l, lambda, v));
    traj.max_leakage = std::max(traj.max_leakage, traj.samples.back().leakage);
    const double vmax = v.max_abs();
    if (vmax > r.divergence_threshold) {
      traj.termination = Termination::diverged;
      traj.l_div = l;
      break;
    }
    if (scale > 0.0 && lambda < 1e-3 * scale) {
      system(x, dxdt, l);
      double dmax = 0.0;
      for (double d : dxdt) dmax = std::max(dmax, std::abs(d));
      if (dmax < r.convergence_tolerance * std::max(1.0, vmax)) {
        traj.termination = Termination::converged;
        break;
      }
    }
  }
  traj.final_vertex = to_vertex(x);
  const VertexClasses c = traj.final_vertex.classes();
  double best = 0.0;
  for (int k = 0; k < kVertexClassCount; ++k)
    if (std::abs(c[k]) > best) {
      best = std::abs(c[k]);
      traj.dominant_class = k;
    }
  return traj;
}

}  // namespace ciss
