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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ciss/ciss.h"
#include "config.hpp"
#include "json.hpp"
#include "output.hpp"

namespace {

using namespace ciss::cli;
using Json = nlohmann::ordered_json;

// Failure reported by the library, carrying its status code.
struct ApiError : std::runtime_error {
  ApiError(ciss_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
  ciss_status status;
};

void check(ciss_status s) {
  if (s != CISS_OK) throw ApiError(s, ciss_last_error());
}

struct Outcome {
  CsvTable csv{{}};
  Json results = Json::object();
  std::vector<std::string> failures;
};

struct Command {
  std::string name;
  std::string description;
  std::vector<KeySpec> keys;
  std::function<Outcome(const Config&)> run;
};

// ---- key groups ----

std::vector<KeySpec> output_keys(const std::string& stem) {
  return {{"out", stem + ".csv", "CSV output path", false},
          {"json", "", "JSON summary path (default: CSV path with .json)", false}};
}

KeySpec unit_key() { return {"unit", "tp", "energy unit: ts | tp | eV (ts/tp fix that hopping to 1)"}; }
KeySpec threads_key() { return {"threads", "1", "thread budget", false}; }

std::vector<KeySpec> model_keys(bool with_delta, bool with_temperature) {
  std::vector<KeySpec> k{{"t_s", "2", "s-band hopping"},
                         {"t_p", "1", "p-band hopping"},
                         {"u", "0", "intra-orbital repulsion U"},
                         {"j", "0", "Hund coupling J"},
                         {"jp", "0", "pair hopping J'"}};
  if (with_delta) k.push_back({"delta", "0.05", "band gap"});
  if (with_temperature) k.push_back({"temperature", "0", "temperature"});
  return k;
}

std::vector<KeySpec> flow_keys() {
  return {{"k_points", "512", "momentum grid size (even, >= 64)"},
          {"l_max", "30", "maximum flow time l = ln(lambda0/lambda)"},
          {"divergence_threshold", "0", "vertex magnitude flagged as divergent (0: default)"},
          {"lambda0", "0", "initial cutoff scale (0: default)"},
          {"ode_tolerance", "1e-6", "relative ODE tolerance"},
          {"abs_tolerance", "1e-9", "absolute ODE tolerance"},
          {"initial_step", "0.05", "initial step in l"},
          {"min_step", "1e-10", "smallest step in l"},
          {"max_steps", "1000000", "maximum number of ODE steps"},
          {"convergence_tolerance", "1e-10", "relative vertex change treated as converged"},
          {"divergent_only", "false", "keep only the divergent s-p particle-hole bubbles"}};
}

std::vector<KeySpec> grid_keys() {
  return {{"t_min", "1e-3", "lowest temperature of the log grid"},
          {"t_max", "1", "highest temperature of the log grid"},
          {"t_points", "25", "number of temperatures"},
          {"temperatures", "", "explicit temperature list (overrides the log grid)"},
          {"deltas", "0.05,0.1,0.2,0.4", "band gaps"}};
}

std::vector<KeySpec> concat(std::initializer_list<std::vector<KeySpec>> groups) {
  std::vector<KeySpec> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

// ---- conversions ----

ciss_model read_model(const Config& c) {
  ciss_model m;
  ciss_model_default(&m);
  m.t_s = c.real("t_s");
  m.t_p = c.real("t_p");
  m.u = c.real("u");
  m.j = c.real("j");
  m.jp = c.real("jp");
  for (const auto& s : c.specs()) {
    if (s.key == "delta") m.delta = c.real("delta");
    if (s.key == "temperature") m.temperature = c.real("temperature");
  }
  const std::string unit = c.str("unit");
  auto fix = [&](const char* key, double& value) {
    if (c.is_set(key) && value != 1.0)
      throw UsageError("conflicting units: unit = " + unit + " fixes " + key + " = 1 but " + key +
                       " = " + c.str(key) + " was given");
    value = 1.0;
  };
  if (unit == "tp")
    fix("t_p", m.t_p);
  else if (unit == "ts")
    fix("t_s", m.t_s);
  else if (unit != "eV")
    throw UsageError("unit must be ts, tp or eV, got '" + unit + "'");
  return m;
}

void check_unit_name(const Config& c) {
  const std::string& u = c.str("unit");
  if (u != "ts" && u != "tp" && u != "eV")
    throw UsageError("unit must be ts, tp or eV, got '" + u + "'");
}

ciss_flow_settings read_flow(const Config& c) {
  ciss_flow_settings s;
  ciss_flow_settings_default(&s);
  s.k_points = c.integer("k_points");
  s.l_max = c.real("l_max");
  s.divergence_threshold = c.real("divergence_threshold");
  s.lambda0 = c.real("lambda0");
  s.ode_tolerance = c.real("ode_tolerance");
  s.abs_tolerance = c.real("abs_tolerance");
  s.initial_step = c.real("initial_step");
  s.min_step = c.real("min_step");
  s.max_steps = static_cast<long>(c.unsigned64("max_steps"));
  s.convergence_tolerance = c.real("convergence_tolerance");
  s.divergent_only = c.boolean("divergent_only") ? 1 : 0;
  return s;
}

Json flow_settings_json(const ciss_flow_settings& s) {
  return Json{{"k_points", s.k_points},
              {"l_max", s.l_max},
              {"divergence_threshold", s.divergence_threshold},
              {"lambda0", s.lambda0},
              {"ode_tolerance", s.ode_tolerance},
              {"abs_tolerance", s.abs_tolerance},
              {"initial_step", s.initial_step},
              {"min_step", s.min_step},
              {"max_steps", s.max_steps},
              {"convergence_tolerance", s.convergence_tolerance},
              {"divergent_only", s.divergent_only != 0}};
}

std::vector<double> temperature_grid(const Config& c) {
  if (!c.str("temperatures").empty()) {
    auto t = c.reals("temperatures");
    if (t.empty()) throw UsageError("temperatures list is empty");
    return t;
  }
  const double lo = c.real("t_min"), hi = c.real("t_max");
  const int n = c.integer("t_points");
  if (!(lo > 0) || !(hi >= lo)) throw UsageError("need 0 < t_min <= t_max");
  if (n < 1) throw UsageError("t_points must be at least 1");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i)
    t[i] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  return t;
}

std::vector<double> delta_grid(const Config& c) {
  auto d = c.reals("deltas");
  if (d.empty()) throw UsageError("deltas list is empty");
  return d;
}

std::string num(double v) { return format_number(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// ---- subcommands ----

Outcome run_sweep(const Config& c) {
  const ciss_model m = read_model(c);
  const ciss_flow_settings s = read_flow(c);
  const auto temps = temperature_grid(c);
  const auto deltas = delta_grid(c);
  const auto names = c.strings("channels");
  if (names.empty()) throw UsageError("channels list is empty");
  std::vector<const char*> cn;
  for (const auto& n : names) cn.push_back(n.c_str());
  ciss_sweep_options opt;
  ciss_sweep_options_default(&opt);
  opt.m_s = c.integer("m_s");
  opt.threads = c.integer("threads");
  opt.attribution_ratio = c.real("attribution_ratio");

  ciss_sweep* w = nullptr;
  check(ciss_sweep_run(&m, &s, temps.data(), temps.size(), deltas.data(), deltas.size(), cn.data(),
                       cn.size(), &opt, &w));
  Outcome o{CsvTable({"temperature", "delta", "channel", "chi", "diverged", "l_div"})};
  Json onset = Json::object();
  std::size_t diverged = 0;
  for (std::size_t i = 0; i < ciss_sweep_row_count(w); ++i) {
    ciss_sweep_row r;
    check(ciss_sweep_get_row(w, i, &r));
    o.csv.add({num(r.temperature), num(r.delta), r.channel, num(r.chi), flag(r.diverged), num(r.l_div)});
    if (*r.error)
      o.failures.push_back(std::string(r.channel) + " at T=" + num(r.temperature) +
                           " delta=" + num(r.delta) + ": " + r.error);
    if (r.diverged) {
      ++diverged;
      // Highest diverging temperature per channel and gap.
      const std::string key = std::string(r.channel) + "@delta=" + num(r.delta);
      if (!onset.contains(key) || onset[key].get<double>() < r.temperature) onset[key] = r.temperature;
    }
  }
  ciss_sweep_free(w);
  o.results = Json{{"rows", o.csv.size()},
                   {"diverged_rows", diverged},
                   {"highest_divergent_temperature", onset},
                   {"failures", o.failures}};
  return o;
}

Outcome run_flow(const Config& c) {
  const ciss_model m = read_model(c);
  const ciss_flow_settings s = read_flow(c);
  ciss_flow* f = nullptr;
  check(ciss_flow_run(&m, &s, &f));
  std::vector<std::string> header{"l", "lambda"};
  for (int k = 0; k < CISS_VERTEX_CLASSES; ++k) header.push_back(std::string("v_") + ciss_vertex_class_name(k));
  Outcome o{CsvTable(header)};
  for (std::size_t i = 0; i < ciss_flow_sample_count(f); ++i) {
    ciss_flow_sample smp;
    check(ciss_flow_get_sample(f, i, &smp));
    std::vector<std::string> row{num(smp.l), num(smp.lambda)};
    for (double v : smp.v) row.push_back(num(v));
    o.csv.add(row);
  }
  ciss_flow_summary sum;
  check(ciss_flow_get_summary(f, &sum));
  ciss_flow_free(f);
  Json fin = Json::object();
  for (int k = 0; k < CISS_VERTEX_CLASSES; ++k) fin[ciss_vertex_class_name(k)] = sum.final_v[k];
  o.results = Json{{"termination", ciss_termination_name(sum.termination)},
                   {"l_div", number_or_null(sum.l_div)},
                   {"dominant_class", sum.dominant_class >= 0
                                          ? Json(ciss_vertex_class_name(sum.dominant_class))
                                          : Json(nullptr)},
                   {"final_vertex", fin},
                   {"max_leakage", sum.max_leakage},
                   {"accepted_steps", sum.accepted_steps},
                   {"rejected_steps", sum.rejected_steps},
                   {"grid_error", sum.grid_error},
                   {"settings", flow_settings_json(sum.settings)}};
  return o;
}

Outcome run_rpa(const Config& c) {
  ciss_model m = read_model(c);
  const std::string src = c.str("chi0_source");
  ciss_chi0_source source;
  if (src == "lattice")
    source = CISS_CHI0_LATTICE;
  else if (src == "continuum")
    source = CISS_CHI0_CONTINUUM;
  else
    throw UsageError("chi0_source must be lattice or continuum, got '" + src + "'");
  const double lambda = c.real("lambda");
  const int k_points = c.integer("k_points");
  Outcome o{CsvTable({"temperature", "delta", "chi0", "chi", "diverged"})};
  std::size_t diverged = 0;
  for (double d : delta_grid(c))
    for (double t : temperature_grid(c)) {
      m.delta = d;
      m.temperature = t;
      ciss_rpa_result r;
      check(ciss_rpa(&m, source, lambda, k_points, &r));
      diverged += r.diverged != 0;
      o.csv.add({num(t), num(d), num(r.chi0), num(r.value), flag(r.diverged)});
    }
  o.results = Json{{"rows", o.csv.size()}, {"diverged_rows", diverged}, {"coupling", m.u - m.j - m.jp}};
  return o;
}

Outcome run_order(const Config& c) {
  const ciss_model m = read_model(c);
  const double zeeman = c.real("zeeman");
  ciss_gl gl;
  check(ciss_gl_coefficients(&m, &gl));
  double amp = 0, small = 0, df = 0;
  check(ciss_order_amplitude(&gl, &amp));
  check(ciss_small_gap_amplitude(&m, &small));
  double phi[6];
  int degenerate = 0;
  check(ciss_zeeman_selection(&gl, zeeman, phi, &degenerate, &df));
  Outcome o{CsvTable({"r", "c0", "c2", "amplitude", "small_gap_amplitude", "phi_p1_re", "phi_p1_im",
                      "phi_0_re", "phi_0_im", "phi_m1_re", "phi_m1_im", "degenerate", "delta_f"})};
  o.csv.add({num(gl.r), num(gl.c0), num(gl.c2), num(amp), num(small), num(phi[0]), num(phi[1]),
             num(phi[2]), num(phi[3]), num(phi[4]), num(phi[5]), flag(degenerate), num(df)});
  o.results = Json{{"r", gl.r},
                   {"c0", gl.c0},
                   {"c2", gl.c2},
                   {"r_error", gl.r_error},
                   {"c0_error", gl.c0_error},
                   {"ordered", gl.r > 0},
                   {"amplitude", amp},
                   {"small_gap_amplitude", small},
                   {"phi", {{"m_s=+1", {phi[0], phi[1]}}, {"m_s=0", {phi[2], phi[3]}}, {"m_s=-1", {phi[4], phi[5]}}}},
                   {"degenerate", degenerate != 0},
                   {"zeeman_delta_f", df}};
  return o;
}

Outcome run_soi(const Config& c) {
  const ciss_model m = read_model(c);
  const std::string phi_text = c.str("phi");
  std::string source = phi_text;
  double amp = 0.0;
  if (phi_text == "auto") source = m.delta == 0.0 ? "small_gap" : "gl";
  if (source == "small_gap") {
    check(ciss_small_gap_amplitude(&m, &amp));
  } else if (source == "gl") {
    ciss_gl gl;
    check(ciss_gl_coefficients(&m, &gl));
    check(ciss_order_amplitude(&gl, &amp));
  } else {
    amp = parse_double(phi_text, "phi");
    source = "user";
  }
  const int n = c.integer("k_points");
  if (n < 2) throw UsageError("k_points must be at least 2");
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = std::numbers::pi * (2.0 * i / (n - 1) - 1.0);
  std::vector<double> lam(n), e(6 * static_cast<std::size_t>(n));
  check(ciss_soi_spectrum(&m, amp, k.data(), k.size(), lam.data(), e.data()));
  double edge = 0.0;
  check(ciss_soi_band_edge(&m, amp, &edge));
  Outcome o{CsvTable({"k", "lambda_so", "e1", "e2", "e3", "e4", "e5", "e6"})};
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row{num(k[i]), num(lam[i])};
    for (int b = 0; b < 6; ++b) row.push_back(num(e[6 * i + b]));
    o.csv.add(row);
  }
  o.results = Json{{"phi", amp}, {"phi_source", source}, {"band_edge_lambda_so", edge}};
  return o;
}

Outcome run_coulomb(const Config& c) {
  check_unit_name(c);
  if (c.str("seed").empty())
    throw UsageError("coulomb needs --seed: Monte Carlo runs must be reproducible");
  ciss_sampler s;
  ciss_sampler_default(&s);
  s.seed = c.unsigned64("seed");
  s.has_seed = 1;
  s.n_samples = c.unsigned64("samples");
  s.substreams = c.integer("substreams");
  s.max_rel_error = c.real("max_rel_error");
  s.threads = c.integer("threads");

  const bool direct = c.is_set("e2") || c.is_set("a_perp") || c.is_set("a_par");
  double e0 = c.real("e0");
  std::vector<double> zetas;
  if (direct) {
    if (!(c.is_set("e2") && c.is_set("a_perp") && c.is_set("a_par")))
      throw UsageError("give all of e2, a_perp and a_par, or e0 with zetas");
    if (c.is_set("e0") || c.is_set("zetas"))
      throw UsageError("e2/a_perp/a_par conflict with e0/zetas; use one geometry description");
    const double e2 = c.real("e2"), ap = c.real("a_perp"), al = c.real("a_par");
    if (!(ap > 0) || !(al > 0) || !(e2 > 0)) throw UsageError("e2, a_perp and a_par must be positive");
    e0 = e2 / std::sqrt(ap * al);
    zetas = {al / ap};
  } else {
    zetas = c.reals("zetas");
    if (zetas.empty()) throw UsageError("zetas list is empty");
  }
  ciss_zeta_sweep* z = nullptr;
  check(ciss_zeta_sweep_run(e0, zetas.data(), zetas.size(), &s, &z));
  Outcome o{CsvTable({"zeta", "u", "u_err", "j", "j_err", "jp", "jp_err"})};
  Json rows = Json::array();
  for (std::size_t i = 0; i < ciss_zeta_sweep_row_count(z); ++i) {
    ciss_zeta_row r;
    check(ciss_zeta_sweep_get_row(z, i, &r));
    const auto& e = r.estimate;
    if (*r.error) {
      o.failures.push_back("zeta=" + num(r.zeta) + ": " + r.error);
      const std::string nan = num(NAN);
      o.csv.add({num(r.zeta), nan, nan, nan, nan, nan, nan});
    } else {
      o.csv.add({num(r.zeta), num(e.u.value), num(e.u.std_error), num(e.j.value), num(e.j.std_error),
                 num(e.jp.value), num(e.jp.std_error)});
    }
    rows.push_back(Json{{"zeta", r.zeta},
                        {"v_xzzx", number_or_null(e.v_xzzx.value)},
                        {"v_zxzx", number_or_null(e.v_zxzx.value)},
                        {"v_zzxx", number_or_null(e.v_zzxx.value)},
                        {"n_samples", e.v_xzzx.n_samples},
                        {"error", r.error}});
  }
  ciss_zeta_sweep_free(z);
  o.results = Json{{"e0", e0}, {"energy_unit", "e0"}, {"rows", rows}, {"failures", o.failures}};
  return o;
}

Outcome run_table(const Config& c) {
  ciss_table* t = nullptr;
  check(ciss_symmetry_table(c.integer("m_s"), &t));
  Outcome o{CsvTable({"j_s", "m_s", "m_l", "operator", "su2", "parity", "trs"})};
  std::vector<ciss_table_row> rows(ciss_table_row_count(t));
  std::size_t width = 8;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check(ciss_table_get_row(t, i, &rows[i]));
    width = std::max(width, std::string(rows[i].operator_text).size());
  }
  std::printf("%-4s %-4s %-4s %-*s %-8s %-7s %-5s\n", "j_s", "m_s", "m_l", static_cast<int>(width),
              "operator", "SU(2)", "parity", "TRS");
  for (const auto& r : rows) {
    std::printf("%-4d %-4d %-4d %-*s %-8s %-7s %-5s\n", r.j_s, r.m_s, r.m_l, static_cast<int>(width),
                r.operator_text, r.su2, r.parity, r.trs);
    o.csv.add({std::to_string(r.j_s), std::to_string(r.m_s), std::to_string(r.m_l), r.operator_text,
               r.su2, r.parity, r.trs});
  }
  ciss_table_free(t);
  o.results = Json{{"rows", rows.size()}};
  return o;
}

std::vector<Command> commands() {
  return {
      {"sweep-chi", "channel susceptibilities over temperature and gap grids",
       concat({model_keys(false, false), flow_keys(), grid_keys(),
               {{"channels", "so", "comma-separated channel names"},
                {"m_s", "1", "spin projection of triplet channels"},
                {"attribution_ratio", "0.5", "fraction of the leading eigenvalue marking a divergent channel"},
                unit_key(), threads_key()},
               output_keys("sweep_chi")}),
       run_sweep},
      {"flow", "integrate the vertex flow and record the trajectory",
       concat({model_keys(true, true), flow_keys(), {unit_key()}, output_keys("flow")}), run_flow},
      {"rpa", "closed-form RPA susceptibility on a temperature and gap grid",
       concat({model_keys(false, false), grid_keys(),
               {{"chi0_source", "lattice", "bare bubble: lattice | continuum"},
                {"lambda", "0", "cutoff for the lattice bubble (0: flow start, inf: none)"},
                {"k_points", "512", "momentum grid size for the lattice bubble"},
                unit_key()},
               output_keys("rpa")}),
       run_rpa},
      {"order", "Ginzburg-Landau coefficients and the Zeeman-selected order parameter",
       concat({model_keys(true, false), {{"zeeman", "0", "Zeeman splitting delta"}, unit_key()},
               output_keys("order")}),
       run_order},
      {"soi", "induced spin-orbit coupling and quasiparticle bands",
       concat({model_keys(true, false),
               {{"phi", "auto", "order amplitude: auto | gl | small_gap | <number>"},
                {"k_points", "201", "points on [-pi, pi]"},
                unit_key()},
               output_keys("soi")}),
       run_soi},
      {"coulomb", "Monte Carlo estimates of U, J and J' from Wannier orbitals",
       concat({{{"e0", "1", "energy unit e2/sqrt(a_perp a_par)"},
                {"zetas", "0.5,1,2", "anisotropy ratios a_par/a_perp"},
                {"e2", "", "charge constant (with a_perp, a_par)"},
                {"a_perp", "", "in-plane Wannier length"},
                {"a_par", "", "axial Wannier length"},
                {"samples", "10000000", "Monte Carlo samples per matrix element"},
                {"seed", "", "random seed (required)"},
                {"substreams", "64", "independent random substreams"},
                {"max_rel_error", "0.1", "largest accepted relative standard error"},
                unit_key(), threads_key()},
               output_keys("coulomb")}),
       run_coulomb},
      {"channels-table", "symmetry classification of the local channel operators",
       concat({{{"m_s", "1", "spin projection of the triplet rows"}}, output_keys("channels_table")}),
       run_table},
  };
}

std::string json_path(const Config& c) {
  if (!c.str("json").empty()) return c.str("json");
  std::filesystem::path p = c.str("out");
  p.replace_extension(".json");
  return p.string();
}

int execute(const Command& cmd, Config& cfg) {
  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = cmd.run(cfg);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string digest = cfg.digest();
  const std::string csv_path = cfg.str("out");
  const std::string js_path = json_path(cfg);
  write_atomic(csv_path, o.csv.render(digest));

  Json summary;
  summary["config"] = cfg.to_json();
  summary["config_digest"] = digest;
  summary["version"] = ciss_version();
  summary["started"] = iso8601_utc(started);
  summary["elapsed_s"] = elapsed;
  summary["status"] = o.failures.empty() ? "ok" : "numerical_failure";
  summary["artifacts"] = Json::array({csv_path});
  summary["results"] = o.results;
  write_atomic(js_path, summary.dump(2) + "\n");

  if (!o.failures.empty()) {
    std::fprintf(stderr, "error: %zu point(s) failed numerically; first: %s\n", o.failures.size(),
                 o.failures.front().c_str());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Command> cmds = commands();
  CLI::App app{"Correlation-induced spin-orbit coupling: fRG, mean-field and Coulomb estimates"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(ciss_version()));

  struct Bound {
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
  };
  std::vector<Bound> bound(cmds.size());
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    Bound& b = bound[i];
    b.app = app.add_subcommand(cmds[i].name, cmds[i].description);
    b.app->add_option("--config", b.config_path, "key = value file or JSON run summary")->take_last();
    for (const auto& k : cmds[i].keys) {
      std::string names = "--" + k.key;
      if (k.key.find('_') != std::string::npos) {
        std::string dashed = k.key;
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        names += ",--" + dashed;
      }
      std::string help = k.help;
      if (!k.default_value.empty()) help += " [" + k.default_value + "]";
      b.options[k.key] = b.app->add_option(names, b.values[k.key], help)->take_last();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s (see --help)\n", e.what());
    return 1;
  }

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (!bound[i].app->parsed()) continue;
    try {
      Config cfg(cmds[i].name, cmds[i].keys);
      if (!bound[i].config_path.empty()) cfg.merge(read_config_file(bound[i].config_path), bound[i].config_path);
      Values inline_values;
      for (const auto& [key, opt] : bound[i].options)
        if (opt->count() > 0) inline_values[key] = bound[i].values[key];
      cfg.merge(inline_values, "command line");
      return execute(cmds[i], cfg);
    } catch (const UsageError& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    } catch (const ApiError& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return e.status == CISS_ERR_NUMERICAL ? 2 : 1;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
  }
  return 1;
}
