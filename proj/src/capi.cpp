#include "qtunnel.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "matching_direct.hpp"
#include "opaque.hpp"
#include "phase_time.hpp"
#include "profile.hpp"
#include "records.hpp"
#include "reproduce.hpp"
#include "resonance.hpp"
#include "scattering.hpp"
#include "sweep.hpp"
#include "waveguide.hpp"
#include "wavepacket.hpp"

struct qtn_profile {
  qtn::PotentialProfile value;
};
struct qtn_solution {
  qtn::ScatteringSolution value;
};
struct qtn_table {
  qtn::Table value;
};

namespace {

thread_local std::string g_last_error;

qtn_status map_code(qtn::ErrorCode code) {
  switch (code) {
    case qtn::ErrorCode::invalid_argument: return QTN_ERROR_INVALID_ARGUMENT;
    case qtn::ErrorCode::degenerate_energy: return QTN_ERROR_DEGENERATE_ENERGY;
    case qtn::ErrorCode::near_resonance: return QTN_ERROR_NEAR_RESONANCE;
    case qtn::ErrorCode::step_too_large: return QTN_ERROR_STEP_TOO_LARGE;
    case qtn::ErrorCode::mapping: return QTN_ERROR_MAPPING;
    case qtn::ErrorCode::insufficient_transmission:
      return QTN_ERROR_INSUFFICIENT_TRANSMISSION;
    case qtn::ErrorCode::scheme_unstable: return QTN_ERROR_SCHEME_UNSTABLE;
    case qtn::ErrorCode::parse: return QTN_ERROR_PARSE;
    case qtn::ErrorCode::io: return QTN_ERROR_IO;
    case qtn::ErrorCode::internal: return QTN_ERROR_INTERNAL;
  }
  return QTN_ERROR_INTERNAL;
}

template <typename Fn>
qtn_status guarded(Fn&& fn) {
  try {
    fn();
    return QTN_OK;
  } catch (const qtn::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QTN_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QTN_ERROR_INTERNAL;
  }
}

qtn_status require(bool ok, const char* what) {
  if (ok) return QTN_OK;
  g_last_error = what;
  return QTN_ERROR_INVALID_ARGUMENT;
}

qtn::PhysicalConstants to_cpp(const qtn_constants* c) {
  if (!c) return qtn::PhysicalConstants{};
  return qtn::PhysicalConstants{c->hbar, c->mass};
}

qtn_complex to_c(qtn::Complex z) { return {z.real(), z.imag()}; }

qtn::PhaseTimeOptions to_cpp(const qtn_phase_time_options* o) {
  qtn::PhaseTimeOptions opt;
  if (o) {
    opt.step_fraction = o->step_fraction;
    opt.min_step_fraction = o->min_step_fraction;
    opt.resonance_guard = o->resonance_guard;
  }
  return opt;
}

qtn::GridSpec to_cpp(const qtn_grid_spec* g) {
  if (!g) qtn::fail(qtn::ErrorCode::invalid_argument, "missing grid spec");
  return qtn::GridSpec{g->x_min, g->x_max, g->n_points, g->dt};
}

qtn::ArrivalOptions to_cpp(const qtn_arrival_options* o) {
  qtn::ArrivalOptions opt;
  if (o) {
    opt.t_max = o->t_max;
    opt.absorber.enabled = o->absorbers != 0;
    if (o->absorber_fraction > 0.0) opt.absorber.fraction = o->absorber_fraction;
    if (o->absorber_strength > 0.0) opt.absorber.strength = o->absorber_strength;
    if (o->frame_path) opt.frame_path = o->frame_path;
    opt.frame_stride = o->frame_stride;
    if (o->min_transmitted > 0.0) opt.min_transmitted = o->min_transmitted;
  }
  return opt;
}

qtn::ArrivalMeasurement run_arrival(const qtn_profile* profile,
                                    const qtn_constants* constants,
                                    const qtn_grid_spec* grid,
                                    const qtn_packet_spec* packet, double detector_x,
                                    const qtn_arrival_options* options) {
  if (!packet) qtn::fail(qtn::ErrorCode::invalid_argument, "missing packet spec");
  return qtn::simulate_arrival(profile->value, to_cpp(constants), to_cpp(grid),
                               packet->x0, packet->k0, packet->sigma, detector_x,
                               to_cpp(options));
}

void fill_arrival(const qtn::ArrivalMeasurement& m, qtn_arrival_record* out) {
  out->detector_x = m.record.detector_x;
  out->t_peak = m.record.t_peak;
  out->t_centroid = m.record.t_centroid;
  out->transmitted_fraction = m.record.transmitted_fraction;
  out->reflected_fraction = m.reflected_fraction;
  out->absorbed_fraction = m.absorbed_fraction;
  out->norm_drift = m.norm_drift;
  out->quasi_mono_warning = m.quasi_mono_warning ? 1 : 0;
}

}  // namespace

extern "C" {

const char* qtn_version(void) { return "1.0.0"; }

const char* qtn_status_name(qtn_status s) {
  switch (s) {
    case QTN_OK: return "ok";
    case QTN_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case QTN_ERROR_DEGENERATE_ENERGY: return "degenerate energy";
    case QTN_ERROR_NEAR_RESONANCE: return "near resonance";
    case QTN_ERROR_STEP_TOO_LARGE: return "step too large";
    case QTN_ERROR_MAPPING: return "mapping error";
    case QTN_ERROR_INSUFFICIENT_TRANSMISSION: return "insufficient transmission";
    case QTN_ERROR_SCHEME_UNSTABLE: return "scheme unstable";
    case QTN_ERROR_PARSE: return "parse error";
    case QTN_ERROR_IO: return "io error";
    case QTN_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* qtn_last_error(void) { return g_last_error.c_str(); }

qtn_constants qtn_constants_natural(void) { return {1.0, 1.0}; }

qtn_constants qtn_constants_si_electron(void) {
  const qtn::PhysicalConstants c = qtn::si_electron_constants();
  return {c.hbar, c.mass};
}

qtn_status qtn_profile_create(const double* widths, const double* heights,
                              size_t n_segments, qtn_profile** out) {
  if (qtn_status s = require(out && (n_segments == 0 || (widths && heights)),
                             "null argument"))
    return s;
  return guarded([&] {
    std::vector<qtn::Segment> segs;
    segs.reserve(n_segments);
    for (size_t i = 0; i < n_segments; ++i) segs.push_back({widths[i], heights[i]});
    *out = new qtn_profile{qtn::PotentialProfile(std::move(segs))};
  });
}

qtn_status qtn_profile_load(const char* path, qtn_profile** out,
                            qtn_constants* constants, int* has_constants) {
  if (qtn_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    const qtn::ProfileFile pf = qtn::load_profile_file(path);
    *out = new qtn_profile{pf.profile};
    if (constants) *constants = {pf.constants.hbar, pf.constants.mass};
    if (has_constants) *has_constants = pf.constants_specified ? 1 : 0;
  });
}

qtn_status qtn_profile_save(const qtn_profile* profile, const qtn_constants* constants,
                            const char* path) {
  if (qtn_status s = require(profile && path, "null argument")) return s;
  return guarded(
      [&] { qtn::save_profile_file(path, profile->value, to_cpp(constants)); });
}

size_t qtn_profile_segment_count(const qtn_profile* profile) {
  return profile ? profile->value.size() : 0;
}

qtn_status qtn_profile_segment(const qtn_profile* profile, size_t index, double* width,
                               double* height) {
  if (qtn_status s = require(profile, "null profile")) return s;
  if (qtn_status s =
          require(index < profile->value.size(), "segment index out of range"))
    return s;
  const qtn::Segment& seg = profile->value.segments()[index];
  if (width) *width = seg.width;
  if (height) *height = seg.height;
  return QTN_OK;
}

double qtn_profile_extent(const qtn_profile* profile) {
  return profile ? profile->value.extent() : 0.0;
}

void qtn_profile_free(qtn_profile* profile) { delete profile; }

qtn_status qtn_scatter(const qtn_profile* profile, const qtn_constants* constants,
                       double energy, qtn_solution** out) {
  if (qtn_status s = require(profile && out, "null argument")) return s;
  return guarded([&] {
    *out = new qtn_solution{
        qtn::solve_scattering(profile->value, to_cpp(constants), energy)};
  });
}

qtn_status qtn_solution_reflection(const qtn_solution* s, qtn_complex* out) {
  if (qtn_status st = require(s && out, "null argument")) return st;
  *out = to_c(s->value.reflection);
  return QTN_OK;
}

qtn_status qtn_solution_transmission(const qtn_solution* s, qtn_complex* out) {
  if (qtn_status st = require(s && out, "null argument")) return st;
  *out = to_c(s->value.transmission);
  return QTN_OK;
}

qtn_status qtn_solution_trans_log_abs(const qtn_solution* s, double* out) {
  if (qtn_status st = require(s && out, "null argument")) return st;
  *out = s->value.trans_log_abs;
  return QTN_OK;
}

qtn_status qtn_solution_probabilities(const qtn_solution* s, double* reflection_prob,
                                      double* transmission_prob) {
  if (qtn_status st = require(s, "null solution")) return st;
  if (reflection_prob) *reflection_prob = s->value.reflection_prob();
  if (transmission_prob) *transmission_prob = s->value.transmission_prob();
  return QTN_OK;
}

size_t qtn_solution_region_count(const qtn_solution* s) {
  return s ? s->value.regions.size() : 0;
}

qtn_status qtn_solution_region(const qtn_solution* s, size_t index,
                               qtn_complex* wavenumber, double* origin, double* width,
                               qtn_complex* forward, qtn_complex* backward) {
  if (qtn_status st = require(s, "null solution")) return st;
  if (qtn_status st =
          require(index < s->value.regions.size(), "region index out of range"))
    return st;
  const qtn::RegionWave& r = s->value.regions[index];
  if (wavenumber) *wavenumber = to_c(r.wavenumber);
  if (origin) *origin = r.origin;
  if (width) *width = r.width;
  if (forward) *forward = to_c(r.forward);
  if (backward) *backward = to_c(r.backward);
  return QTN_OK;
}

void qtn_solution_free(qtn_solution* s) { delete s; }

qtn_status qtn_two_barrier_direct(double barrier_width, double gap, double height,
                                  const qtn_constants* constants, double energy,
                                  qtn_complex out[8]) {
  if (qtn_status s = require(out, "null output")) return s;
  return guarded([&] {
    const qtn::TwoBarrierAmplitudes a = qtn::solve_matching_direct(
        {barrier_width, gap, height}, to_cpp(constants), energy);
    out[0] = to_c(a.refl1);
    out[1] = to_c(a.trans1);
    out[2] = to_c(a.decay1);
    out[3] = to_c(a.grow1);
    out[4] = to_c(a.refl2);
    out[5] = to_c(a.trans2);
    out[6] = to_c(a.decay2);
    out[7] = to_c(a.grow2);
  });
}

qtn_status qtn_opaque_limit(double k, double chi, double barrier_width,
                            double left_edge_of_second_barrier,
                            qtn_opaque_amplitudes* out) {
  if (qtn_status s = require(out, "null output")) return s;
  return guarded([&] {
    const qtn::OpaqueLimitAmplitudes o =
        qtn::opaque_amplitudes(k, chi, barrier_width, left_edge_of_second_barrier);
    out->refl1 = to_c(o.refl1);
    out->trans1 = to_c(o.trans1);
    out->decay1 = to_c(o.decay1);
    out->grow1 = to_c(o.grow1);
    out->refl2 = to_c(o.refl2);
    out->trans2 = to_c(o.trans2);
    out->decay2 = to_c(o.decay2);
    out->grow2 = to_c(o.grow2);
    out->gap_factor = o.gap_factor;
  });
}

double qtn_resonance_condition(double k, double chi, double gap) {
  return qtn::resonance_condition(k, chi, gap);
}

qtn_status qtn_hartman_phase_time(double k, double chi, const qtn_constants* constants,
                                  double* out) {
  if (qtn_status s = require(out, "null output")) return s;
  return guarded([&] { *out = qtn::hartman_phase_time(k, chi, to_cpp(constants)); });
}

qtn_phase_time_options qtn_phase_time_defaults(void) {
  const qtn::PhaseTimeOptions o;
  return {o.step_fraction, o.min_step_fraction, o.resonance_guard};
}

qtn_status qtn_phase_time(const qtn_profile* profile, const qtn_constants* constants,
                          double energy, const qtn_phase_time_options* options,
                          qtn_phase_time_result* out) {
  if (qtn_status s = require(profile && out, "null argument")) return s;
  return guarded([&] {
    const qtn::PhaseTimeResult r =
        qtn::phase_time(profile->value, to_cpp(constants), energy, to_cpp(options));
    out->energy = r.energy;
    out->tau = r.tau;
    out->reference_length = r.reference_length;
    out->step_used = r.step_used;
    out->resonance_flag = r.resonance_flag ? 1 : 0;
  });
}

qtn_status qtn_resonance_scan(const qtn_profile* profile, const qtn_constants* constants,
                              double e_min, double e_max, int n_points,
                              qtn_resonance_fit* fits, size_t capacity,
                              size_t* n_found) {
  if (qtn_status s = require(profile && n_found, "null argument")) return s;
  return guarded([&] {
    qtn::ResonanceScanOptions opt;
    if (n_points > 0) opt.n_points = n_points;
    const auto found =
        qtn::resonance_scan(profile->value, to_cpp(constants), e_min, e_max, opt);
    *n_found = found.size();
    for (size_t i = 0; i < found.size() && i < capacity && fits; ++i) {
      fits[i].e_r = found[i].e_r;
      fits[i].gamma = found[i].gamma;
      fits[i].tau_nr = found[i].tau_nr;
      fits[i].fit_quality = found[i].fit_quality;
      fits[i].flagged = found[i].flagged ? 1 : 0;
    }
  });
}

qtn_arrival_options qtn_arrival_defaults(void) {
  qtn_arrival_options o;
  std::memset(&o, 0, sizeof o);
  o.min_transmitted = 1e-12;
  o.absorber_fraction = 0.1;
  o.absorber_strength = 1.0;
  return o;
}

qtn_status qtn_wavepacket_arrival(const qtn_profile* profile,
                                  const qtn_constants* constants,
                                  const qtn_grid_spec* grid,
                                  const qtn_packet_spec* packet, double detector_x,
                                  const qtn_arrival_options* options,
                                  qtn_arrival_record* out) {
  if (qtn_status s = require(profile && out, "null argument")) return s;
  return guarded([&] {
    const qtn::ArrivalMeasurement m =
        run_arrival(profile, constants, grid, packet, detector_x, options);
    fill_arrival(m, out);
  });
}

qtn_status qtn_waveguide_map(const qtn_waveguide_params* params, qtn_profile** profile,
                             qtn_waveguide_result* out) {
  if (qtn_status s = require(params && profile, "null argument")) return s;
  return guarded([&] {
    qtn::WaveguideParams p;
    p.width_normal = params->width_normal;
    p.width_undersized = params->width_undersized;
    p.frequency = params->frequency;
    p.segment_lengths.assign(params->segment_lengths,
                             params->segment_lengths + params->n_segments);
    const qtn::WaveguideMapping m = qtn::waveguide_map(p);
    *profile = new qtn_profile{m.profile};
    if (out) {
      out->constants = {m.constants.hbar, m.constants.mass};
      out->energy = m.energy;
      out->k = m.k;
      out->chi = m.chi;
      out->cutoff_normal = m.cutoff_normal;
      out->cutoff_undersized = m.cutoff_undersized;
      out->barrier_height = m.barrier_height;
    }
  });
}

qtn_status qtn_waveguide_map_file(const char* path, qtn_profile** profile,
                                  qtn_waveguide_result* out) {
  if (qtn_status s = require(path && profile, "null argument")) return s;
  return guarded([&] {
    const qtn::WaveguideMapping m = qtn::waveguide_map(qtn::load_waveguide_file(path));
    *profile = new qtn_profile{m.profile};
    if (out) {
      out->constants = {m.constants.hbar, m.constants.mass};
      out->energy = m.energy;
      out->k = m.k;
      out->chi = m.chi;
      out->cutoff_normal = m.cutoff_normal;
      out->cutoff_undersized = m.cutoff_undersized;
      out->barrier_height = m.barrier_height;
    }
  });
}

/* ---- tables ---- */

qtn_status qtn_scatter_table(const qtn_profile* profile, const qtn_constants* constants,
                             const double* energies, size_t n, qtn_table** out) {
  if (qtn_status s = require(profile && energies && n && out, "null argument"))
    return s;
  return guarded([&] {
    qtn::Table t;
    const qtn::PhysicalConstants c = to_cpp(constants);
    for (size_t i = 0; i < n; ++i) {
      qtn::Record r;
      r.set("index", static_cast<std::int64_t>(i));
      r.set("energy", energies[i]);
      try {
        const qtn::ScatteringSolution sol =
            qtn::solve_scattering(profile->value, c, energies[i]);
        r.set("k", sol.lead_k);
        r.set("refl_re", sol.reflection.real());
        r.set("refl_im", sol.reflection.imag());
        r.set("trans_re", sol.transmission.real());
        r.set("trans_im", sol.transmission.imag());
        r.set("refl_prob", sol.reflection_prob());
        r.set("trans_prob", sol.transmission_prob());
        r.set("trans_log_abs", sol.trans_log_abs);
        r.set("unitarity_defect",
              sol.reflection_prob() + sol.transmission_prob() - 1.0);
        r.set("status", std::string("ok"));
      } catch (const qtn::Error& e) {
        r.set("status", std::string("error"));
        r.set("error", std::string(e.what()));
      }
      t.append(std::move(r));
    }
    *out = new qtn_table{std::move(t)};
  });
}

qtn_status qtn_phase_time_table(const qtn_profile* profile,
                                const qtn_constants* constants, const double* energies,
                                size_t n, const qtn_phase_time_options* options,
                                qtn_table** out) {
  if (qtn_status s = require(profile && energies && n && out, "null argument"))
    return s;
  return guarded([&] {
    qtn::Table t;
    const qtn::PhysicalConstants c = to_cpp(constants);
    const qtn::PhaseTimeOptions opt = to_cpp(options);
    for (size_t i = 0; i < n; ++i) {
      qtn::Record r;
      r.set("index", static_cast<std::int64_t>(i));
      r.set("energy", energies[i]);
      try {
        const qtn::PhaseTimeResult pt =
            qtn::phase_time(profile->value, c, energies[i], opt);
        r.set("tau", pt.tau);
        r.set("reference_length", pt.reference_length);
        r.set("step_used", pt.step_used);
        r.set("resonance_flag", pt.resonance_flag);
        r.set("status", std::string("ok"));
      } catch (const qtn::Error& e) {
        r.set("status", std::string("error"));
        r.set("error", std::string(e.what()));
      }
      t.append(std::move(r));
    }
    *out = new qtn_table{std::move(t)};
  });
}

qtn_status qtn_resonance_table(const qtn_profile* profile,
                               const qtn_constants* constants, double e_min,
                               double e_max, int n_points, qtn_table** out) {
  if (qtn_status s = require(profile && out, "null argument")) return s;
  return guarded([&] {
    qtn::ResonanceScanOptions opt;
    if (n_points > 0) opt.n_points = n_points;
    const auto fits =
        qtn::resonance_scan(profile->value, to_cpp(constants), e_min, e_max, opt);
    qtn::Table t;
    for (size_t i = 0; i < fits.size(); ++i) {
      qtn::Record r;
      r.set("index", static_cast<std::int64_t>(i));
      r.set("e_r", fits[i].e_r);
      r.set("gamma", fits[i].gamma);
      r.set("tau_nr", fits[i].tau_nr);
      r.set("fit_quality", fits[i].fit_quality);
      r.set("flagged", fits[i].flagged);
      t.append(std::move(r));
    }
    *out = new qtn_table{std::move(t)};
  });
}

qtn_status qtn_arrival_table(const qtn_profile* profile, const qtn_constants* constants,
                             const qtn_grid_spec* grid, const qtn_packet_spec* packet,
                             double detector_x, const qtn_arrival_options* options,
                             qtn_table** out) {
  if (qtn_status s = require(profile && out, "null argument")) return s;
  return guarded([&] {
    const qtn::ArrivalMeasurement m =
        run_arrival(profile, constants, grid, packet, detector_x, options);
    qtn::Table t;
    qtn::Record r;
    r.set("detector_x", m.record.detector_x);
    r.set("t_peak", m.record.t_peak);
    r.set("t_centroid", m.record.t_centroid);
    r.set("transmitted_fraction", m.record.transmitted_fraction);
    r.set("reflected_fraction", m.reflected_fraction);
    r.set("absorbed_fraction", m.absorbed_fraction);
    r.set("norm_drift", m.norm_drift);
    r.set("quasi_mono_warning", m.quasi_mono_warning);
    t.append(std::move(r));
    *out = new qtn_table{std::move(t)};
  });
}

namespace {

qtn::Table waveguide_results(const qtn::WaveguideParams& p) {
  const qtn::WaveguideMapping m = qtn::waveguide_map(p);
  qtn::Table t;
  qtn::Record r;
  r.set("frequency", p.frequency);
  r.set("cutoff_normal", m.cutoff_normal);
  r.set("cutoff_undersized", m.cutoff_undersized);
  r.set("k", m.k);
  r.set("chi", m.chi);
  r.set("energy", m.energy);
  r.set("barrier_height", m.barrier_height);
  r.set("profile_extent", m.profile.extent());
  const qtn::ScatteringSolution sol =
      qtn::solve_scattering(m.profile, m.constants, m.energy);
  r.set("trans_prob", sol.transmission_prob());
  r.set("refl_prob", sol.reflection_prob());
  const qtn::PhaseTimeResult pt = qtn::phase_time(m.profile, m.constants, m.energy);
  r.set("tau", pt.tau);
  r.set("resonance_flag", pt.resonance_flag);
  r.set("hartman_tau", qtn::hartman_phase_time(m.k, m.chi, m.constants));
  t.append(std::move(r));
  return t;
}

}  // namespace

qtn_status qtn_waveguide_table(const qtn_waveguide_params* params, qtn_table** out) {
  if (qtn_status s = require(params && out, "null argument")) return s;
  return guarded([&] {
    qtn::WaveguideParams p;
    p.width_normal = params->width_normal;
    p.width_undersized = params->width_undersized;
    p.frequency = params->frequency;
    p.segment_lengths.assign(params->segment_lengths,
                             params->segment_lengths + params->n_segments);
    *out = new qtn_table{waveguide_results(p)};
  });
}

qtn_status qtn_waveguide_table_from_file(const char* path, qtn_table** out) {
  if (qtn_status s = require(path && out, "null argument")) return s;
  return guarded(
      [&] { *out = new qtn_table{waveguide_results(qtn::load_waveguide_file(path))}; });
}

qtn_status qtn_sweep_table_from_file(const char* path, int jobs, double guard_scale,
                                     qtn_table** out) {
  if (qtn_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    qtn::SweepSpec spec = qtn::load_sweep_spec(path);
    if (guard_scale > 0.0) spec.guard_scale = guard_scale;
    *out = new qtn_table{qtn::run_sweep(spec, jobs)};
  });
}

qtn_status qtn_reproduce_table(const int* which, size_t n_which, uint64_t seed,
                               int jobs, qtn_table** out, int* n_failed) {
  if (qtn_status s = require(out, "null output")) return s;
  return guarded([&] {
    std::vector<int> ids(which, which + n_which);
    const auto results = qtn::run_acceptance_checks(ids, seed, jobs);
    int failed = 0;
    for (const auto& r : results)
      if (!r.passed) ++failed;
    if (n_failed) *n_failed = failed;
    *out = new qtn_table{qtn::acceptance_table(results)};
  });
}

size_t qtn_table_row_count(const qtn_table* table) {
  return table ? table->value.size() : 0;
}

qtn_status qtn_table_write(const qtn_table* table, qtn_format format,
                           const char* path) {
  if (qtn_status s = require(table, "null table")) return s;
  return guarded([&] {
    const qtn::TableFormat f =
        format == QTN_FORMAT_JSONL ? qtn::TableFormat::jsonl : qtn::TableFormat::csv;
    if (!path) {
      qtn::write_table(table->value, f, std::cout);
      std::cout.flush();
      return;
    }
    std::ofstream outfile(path);
    if (!outfile) qtn::fail(qtn::ErrorCode::io, std::string("cannot write: ") + path);
    qtn::write_table(table->value, f, outfile);
    if (!outfile) qtn::fail(qtn::ErrorCode::io, std::string("write failed: ") + path);
  });
}

void qtn_table_free(qtn_table* table) { delete table; }

}  // extern "C"
