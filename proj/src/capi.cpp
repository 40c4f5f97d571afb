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

#include "ciss/ciss.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ciss/bubbles.hpp"
#include "ciss/channels.hpp"
#include "ciss/coulomb.hpp"
#include "ciss/error.hpp"
#include "ciss/flow.hpp"
#include "ciss/mean_field.hpp"
#include "ciss/susceptibility.hpp"
#include "ciss/vertex.hpp"

struct ciss_flow {
  ciss::FlowTrajectory t;
};

struct ciss_table {
  std::vector<ciss::TableRow> rows;
  std::vector<ciss::SymmetrySignature> sig;
};

struct ciss_sweep {
  ciss::SweepResult r;
};

struct ciss_zeta_sweep {
  std::vector<ciss::ZetaRow> rows;
};

namespace {

thread_local std::string g_error;

ciss_status fail(ciss_status s, const char* msg) {
  g_error = msg;
  return s;
}

template <class F>
ciss_status guarded(F&& f) {
  try {
    g_error.clear();
    f();
    return CISS_OK;
  } catch (const ciss::DomainError& e) {
    return fail(CISS_ERR_DOMAIN, e.what());
  } catch (const ciss::NumericalError& e) {
    return fail(CISS_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CISS_ERR_NUMERICAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CISS_ERR_NUMERICAL, e.what());
  }
}

#define CISS_REQUIRE(cond)                                                     \
  do {                                                                         \
    if (!(cond)) return fail(CISS_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

ciss::ModelParams to_model(const ciss_model& m) {
  ciss::ModelParams p;
  p.t_s = m.t_s;
  p.t_p = m.t_p;
  p.delta = m.delta;
  p.u = m.u;
  p.j = m.j;
  p.jp = m.jp;
  p.temperature = m.temperature;
  return p;
}

ciss::FlowSettings to_settings(const ciss_flow_settings& s) {
  ciss::FlowSettings f;
  f.k_points = s.k_points;
  f.l_max = s.l_max;
  f.divergence_threshold = s.divergence_threshold;
  f.lambda0 = s.lambda0;
  f.ode_tolerance = s.ode_tolerance;
  f.abs_tolerance = s.abs_tolerance;
  f.initial_step = s.initial_step;
  f.min_step = s.min_step;
  f.max_steps = s.max_steps;
  f.convergence_tolerance = s.convergence_tolerance;
  f.divergent_only = s.divergent_only != 0;
  return f;
}

ciss_flow_settings from_settings(const ciss::FlowSettings& f) {
  ciss_flow_settings s;
  s.k_points = f.k_points;
  s.l_max = f.l_max;
  s.divergence_threshold = f.divergence_threshold;
  s.lambda0 = f.lambda0;
  s.ode_tolerance = f.ode_tolerance;
  s.abs_tolerance = f.abs_tolerance;
  s.initial_step = f.initial_step;
  s.min_step = f.min_step;
  s.max_steps = f.max_steps;
  s.convergence_tolerance = f.convergence_tolerance;
  s.divergent_only = f.divergent_only ? 1 : 0;
  return s;
}

ciss::SamplerConfig to_sampler(const ciss_sampler& s) {
  ciss::SamplerConfig c;
  c.n_samples = s.n_samples;
  if (s.has_seed) c.seed = s.seed;
  c.substreams = s.substreams;
  c.max_rel_error = s.max_rel_error;
  c.threads = s.threads;
  return c;
}

ciss_estimate from_estimate(const ciss::MCEstimate& e) {
  return {e.value, e.std_error, e.n_samples, e.seed};
}

ciss_interactions from_interactions(const ciss::InteractionEstimate& e) {
  return {from_estimate(e.u),      from_estimate(e.j),      from_estimate(e.jp),
          from_estimate(e.v_xzzx), from_estimate(e.v_zxzx), from_estimate(e.v_zzxx)};
}

ciss::GLCoefficients to_gl(const ciss_gl& c) {
  ciss::GLCoefficients g;
  g.r = c.r;
  g.c0 = c.c0;
  g.c2 = c.c2;
  g.r_error = c.r_error;
  g.c0_error = c.c0_error;
  g.chi_tilde = c.chi_tilde;
  g.k2 = c.k2;
  return g;
}

bool valid_band(int b) { return b >= 0 && b < 3; }

const char* static_name(std::string_view s) { return s.data(); }

}  // namespace

extern "C" {

const char* ciss_version(void) { return CISS_VERSION; }

const char* ciss_last_error(void) { return g_error.c_str(); }

void ciss_model_default(ciss_model* m) {
  if (!m) return;
  const ciss::ModelParams p;
  *m = {p.t_s, p.t_p, p.delta, p.u, p.j, p.jp, p.temperature};
}

void ciss_flow_settings_default(ciss_flow_settings* s) {
  if (s) *s = from_settings(ciss::FlowSettings{});
}

ciss_status ciss_flow_settings_resolve(const ciss_model* m, ciss_flow_settings* s) {
  CISS_REQUIRE(m && s);
  return guarded([&] { *s = from_settings(ciss::resolve_settings(to_settings(*s), to_model(*m))); });
}

const char* ciss_vertex_class_name(int c) {
  if (c < 0 || c >= CISS_VERTEX_CLASSES) return "";
  return static_name(ciss::vertex_class_name(c));
}

ciss_status ciss_bubble(const ciss_model* m, ciss_bubble_kind kind, int band_a, int band_b,
                        double lambda, double* value) {
  CISS_REQUIRE(m && value && valid_band(band_a) && valid_band(band_b));
  CISS_REQUIRE(kind == CISS_BUBBLE_PP || kind == CISS_BUBBLE_PH);
  return guarded([&] {
    const auto r = ciss::bubble(kind == CISS_BUBBLE_PP ? ciss::BubbleKind::pp : ciss::BubbleKind::ph,
                                static_cast<ciss::Band>(band_a), static_cast<ciss::Band>(band_b),
                                lambda, to_model(*m));
    *value = r.value;
  });
}

const char* ciss_termination_name(int t) {
  if (t < 0 || t > 2) return "";
  return static_name(ciss::to_string(static_cast<ciss::Termination>(t)));
}

ciss_status ciss_flow_run(const ciss_model* m, const ciss_flow_settings* s, ciss_flow** out) {
  CISS_REQUIRE(m && s && out);
  *out = nullptr;
  return guarded([&] {
    auto f = std::make_unique<ciss_flow>();
    f->t = ciss::integrate_flow(to_model(*m), to_settings(*s));
    *out = f.release();
  });
}

size_t ciss_flow_sample_count(const ciss_flow* f) { return f ? f->t.samples.size() : 0; }

ciss_status ciss_flow_get_sample(const ciss_flow* f, size_t i, ciss_flow_sample* out) {
  CISS_REQUIRE(f && out && i < f->t.samples.size());
  const ciss::FlowSample& s = f->t.samples[i];
  out->l = s.l;
  out->lambda = s.lambda;
  for (int c = 0; c < CISS_VERTEX_CLASSES; ++c) out->v[c] = s.v[c];
  out->leakage = s.leakage;
  return CISS_OK;
}

ciss_status ciss_flow_get_summary(const ciss_flow* f, ciss_flow_summary* out) {
  CISS_REQUIRE(f && out);
  const ciss::FlowTrajectory& t = f->t;
  out->termination = static_cast<int>(t.termination);
  out->l_div = t.l_div;
  out->dominant_class = t.dominant_class;
  const auto c = t.final_vertex.classes();
  for (int i = 0; i < CISS_VERTEX_CLASSES; ++i) out->final_v[i] = c[i];
  out->max_leakage = t.max_leakage;
  out->accepted_steps = t.accepted_steps;
  out->rejected_steps = t.rejected_steps;
  out->grid_error = t.grid_error;
  out->settings = from_settings(t.settings);
  return CISS_OK;
}

void ciss_flow_free(ciss_flow* f) { delete f; }

size_t ciss_channel_name_count(void) { return ciss::channel_names().size(); }

const char* ciss_channel_name(size_t i) {
  const auto& n = ciss::channel_names();
  return i < n.size() ? n[i].c_str() : "";
}

ciss_status ciss_channel_signature(const char* name, int m_s, const char** su2,
                                   const char** parity, const char** trs) {
  CISS_REQUIRE(name && su2 && parity && trs);
  return guarded([&] {
    const auto sig = ciss::symmetry_signature(ciss::named_channel(name, m_s));
    *su2 = static_name(ciss::to_string(sig.su2));
    *parity = static_name(ciss::to_string(sig.parity));
    *trs = static_name(ciss::to_string(sig.trs));
  });
}

ciss_status ciss_symmetry_table(int m_s, ciss_table** out) {
  CISS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto t = std::make_unique<ciss_table>();
    t->rows = ciss::symmetry_table(m_s);
    for (const auto& r : t->rows) t->sig.push_back(ciss::symmetry_signature(r.combo));
    *out = t.release();
  });
}

size_t ciss_table_row_count(const ciss_table* t) { return t ? t->rows.size() : 0; }

ciss_status ciss_table_get_row(const ciss_table* t, size_t i, ciss_table_row* out) {
  CISS_REQUIRE(t && out && i < t->rows.size());
  const auto& r = t->rows[i];
  out->j_s = r.quantum.j_s;
  out->m_s = r.quantum.m_s;
  out->m_l = r.quantum.m_l;
  out->operator_text = r.operator_text.c_str();
  out->su2 = static_name(ciss::to_string(t->sig[i].su2));
  out->parity = static_name(ciss::to_string(t->sig[i].parity));
  out->trs = static_name(ciss::to_string(t->sig[i].trs));
  return CISS_OK;
}

void ciss_table_free(ciss_table* t) { delete t; }

void ciss_sweep_options_default(ciss_sweep_options* o) {
  if (o) *o = {1, 1, ciss::kDefaultAttributionRatio};
}

ciss_status ciss_sweep_run(const ciss_model* base, const ciss_flow_settings* s,
                           const double* temperatures, size_t n_t, const double* deltas,
                           size_t n_delta, const char* const* channels, size_t n_channels,
                           const ciss_sweep_options* opt, ciss_sweep** out) {
  CISS_REQUIRE(base && s && out && opt);
  CISS_REQUIRE((temperatures || n_t == 0) && (deltas || n_delta == 0));
  CISS_REQUIRE(channels || n_channels == 0);
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> names;
    for (size_t i = 0; i < n_channels; ++i) {
      if (!channels[i]) throw ciss::DomainError("null channel name");
      names.emplace_back(channels[i]);
    }
    ciss::SweepOptions so;
    so.threads = opt->threads;
    so.attribution_ratio = opt->attribution_ratio;
    auto w = std::make_unique<ciss_sweep>();
    w->r = ciss::temperature_sweep(to_model(*base), std::vector<double>(temperatures, temperatures + n_t),
                                   std::vector<double>(deltas, deltas + n_delta),
                                   ciss::named_channels(names, opt->m_s), to_settings(*s), so);
    *out = w.release();
  });
}

size_t ciss_sweep_row_count(const ciss_sweep* w) { return w ? w->r.rows.size() : 0; }

ciss_status ciss_sweep_get_row(const ciss_sweep* w, size_t i, ciss_sweep_row* out) {
  CISS_REQUIRE(w && out && i < w->r.rows.size());
  const auto& r = w->r.rows[i];
  *out = {r.temperature, r.delta, r.channel.c_str(), r.chi, r.diverged ? 1 : 0, r.l_div,
          r.error.c_str()};
  return CISS_OK;
}

void ciss_sweep_free(ciss_sweep* w) { delete w; }

ciss_status ciss_rpa(const ciss_model* m, ciss_chi0_source source, double lambda, int k_points,
                     ciss_rpa_result* out) {
  CISS_REQUIRE(m && out);
  CISS_REQUIRE(source == CISS_CHI0_LATTICE || source == CISS_CHI0_CONTINUUM);
  return guarded([&] {
    ciss::RpaOptions o;
    o.source = source == CISS_CHI0_LATTICE ? ciss::Chi0Source::lattice : ciss::Chi0Source::continuum;
    o.lambda = lambda;
    o.k_points = k_points;
    const auto r = ciss::chi_rpa(to_model(*m), o);
    *out = {r.diverged ? 1 : 0, r.chi0, r.value};
  });
}

ciss_status ciss_gl_coefficients(const ciss_model* m, ciss_gl* out) {
  CISS_REQUIRE(m && out);
  return guarded([&] {
    const auto g = ciss::gl_coefficients(to_model(*m));
    *out = {g.r, g.c0, g.c2, g.r_error, g.c0_error, g.chi_tilde, g.k2};
  });
}

ciss_status ciss_order_amplitude(const ciss_gl* c, double* amplitude) {
  CISS_REQUIRE(c && amplitude);
  return guarded([&] { *amplitude = ciss::order_amplitude(to_gl(*c)); });
}

ciss_status ciss_small_gap_amplitude(const ciss_model* m, double* amplitude) {
  CISS_REQUIRE(m && amplitude);
  return guarded([&] { *amplitude = ciss::small_gap_amplitude(to_model(*m)); });
}

ciss_status ciss_free_energy(const ciss_gl* c, const double phi[6], double delta_zeeman, double* f) {
  CISS_REQUIRE(c && phi && f);
  return guarded([&] {
    ciss::OrderParameter o;
    for (int i = 0; i < 3; ++i) o.phi[i] = {phi[2 * i], phi[2 * i + 1]};
    *f = ciss::free_energy(to_gl(*c), o, delta_zeeman);
  });
}

ciss_status ciss_zeeman_selection(const ciss_gl* c, double delta_zeeman, double phi[6],
                                  int* degenerate, double* delta_f) {
  CISS_REQUIRE(c && phi && degenerate && delta_f);
  return guarded([&] {
    const auto z = ciss::zeeman_selection(to_gl(*c), delta_zeeman);
    for (int i = 0; i < 3; ++i) {
      phi[2 * i] = z.state.phi[i].real();
      phi[2 * i + 1] = z.state.phi[i].imag();
    }
    *degenerate = z.degenerate ? 1 : 0;
    *delta_f = z.delta_f;
  });
}

ciss_status ciss_soi_band_edge(const ciss_model* m, double phi_amp, double* lambda_so) {
  CISS_REQUIRE(m && lambda_so);
  return guarded([&] { *lambda_so = ciss::soi_band_edge(to_model(*m), phi_amp); });
}

ciss_status ciss_soi_spectrum(const ciss_model* m, double phi_amp, const double* k, size_t n_k,
                              double* lambda_so, double* energies) {
  CISS_REQUIRE(m && (n_k == 0 || (k && lambda_so && energies)));
  return guarded([&] {
    const auto rows = ciss::quasiparticle_spectrum(to_model(*m), phi_amp, std::vector<double>(k, k + n_k));
    for (size_t i = 0; i < rows.size(); ++i) {
      lambda_so[i] = rows[i].lambda_so;
      for (int n = 0; n < 6; ++n) energies[6 * i + n] = rows[i].energies[n];
    }
  });
}

void ciss_sampler_default(ciss_sampler* s) {
  if (!s) return;
  const ciss::SamplerConfig c;
  *s = {c.n_samples, 0, 0, c.substreams, c.max_rel_error, c.threads};
}

ciss_status ciss_coulomb_element(int n1, int n2, int n3, int n4, const ciss_wannier* w,
                                 const ciss_sampler* s, ciss_estimate* out) {
  CISS_REQUIRE(w && s && out);
  CISS_REQUIRE(valid_band(n1) && valid_band(n2) && valid_band(n3) && valid_band(n4));
  return guarded([&] {
    using O = ciss::Orbital;
    *out = from_estimate(ciss::coulomb_matrix_element(
        static_cast<O>(n1), static_cast<O>(n2), static_cast<O>(n3), static_cast<O>(n4),
        {w->a_perp, w->a_par, w->e2}, to_sampler(*s)));
  });
}

ciss_status ciss_coulomb_interactions(const ciss_wannier* w, const ciss_sampler* s,
                                      ciss_interactions* out) {
  CISS_REQUIRE(w && s && out);
  return guarded([&] {
    *out = from_interactions(ciss::estimate_interactions({w->a_perp, w->a_par, w->e2}, to_sampler(*s)));
  });
}

ciss_status ciss_zeta_sweep_run(double e0, const double* zetas, size_t n, const ciss_sampler* s,
                                ciss_zeta_sweep** out) {
  CISS_REQUIRE(s && out && (zetas || n == 0));
  *out = nullptr;
  return guarded([&] {
    auto z = std::make_unique<ciss_zeta_sweep>();
    z->rows = ciss::zeta_sweep(e0, std::vector<double>(zetas, zetas + n), to_sampler(*s));
    *out = z.release();
  });
}

size_t ciss_zeta_sweep_row_count(const ciss_zeta_sweep* z) { return z ? z->rows.size() : 0; }

ciss_status ciss_zeta_sweep_get_row(const ciss_zeta_sweep* z, size_t i, ciss_zeta_row* out) {
  CISS_REQUIRE(z && out && i < z->rows.size());
  const auto& r = z->rows[i];
  out->zeta = r.zeta;
  out->estimate = from_interactions(r.estimate);
  out->error = r.error.c_str();
  return CISS_OK;
}

void ciss_zeta_sweep_free(ciss_zeta_sweep* z) { delete z; }

}  // extern "C"
