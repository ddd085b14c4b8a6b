#include "sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "phase_time.hpp"
#include "resonance.hpp"
#include "scattering.hpp"
#include "wavepacket.hpp"

namespace qtn {

const char* sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::barrier_width: return "barrier_width";
    case SweepParameter::gap_width: return "gap_width";
    case SweepParameter::energy: return "energy";
    case SweepParameter::barrier_count: return "barrier_count";
  }
  return "?";
}

const char* sweep_output_name(SweepOutput o) {
  switch (o) {
    case SweepOutput::phase_time: return "phase_time";
    case SweepOutput::transmission: return "transmission";
    case SweepOutput::resonances: return "resonances";
    case SweepOutput::wavepacket_arrival: return "wavepacket_arrival";
  }
  return "?";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

bool is_gap_segment(const std::vector<Segment>& segs, std::size_t i) {
  if (segs[i].height != 0.0) return false;
  bool left = false, right = false;
  for (std::size_t j = 0; j < i; ++j) left |= segs[j].height > 0.0;
  for (std::size_t j = i + 1; j < segs.size(); ++j) right |= segs[j].height > 0.0;
  return left && right;
}

void validate_spec(const SweepSpec& s) {
  if (s.grid.empty()) fail(ErrorCode::invalid_argument, "sweep grid is empty");
  for (std::size_t i = 1; i < s.grid.size(); ++i) {
    const bool up = s.grid[1] > s.grid[0];
    if ((up && !(s.grid[i] > s.grid[i - 1])) || (!up && !(s.grid[i] < s.grid[i - 1])))
      fail(ErrorCode::invalid_argument, "sweep grid must be strictly monotone");
  }
  if (s.outputs.empty()) fail(ErrorCode::invalid_argument, "sweep requests no outputs");
  const auto& segs = s.base_profile.segments();
  switch (s.parameter) {
    case SweepParameter::barrier_width: {
      bool any = false;
      for (const auto& seg : segs) any |= seg.height > 0.0;
      if (!any) fail(ErrorCode::invalid_argument, "base profile has no barrier to sweep");
      break;
    }
    case SweepParameter::gap_width: {
      bool any = false;
      for (std::size_t i = 0; i < segs.size(); ++i) any |= is_gap_segment(segs, i);
      if (!any) fail(ErrorCode::invalid_argument, "base profile has no interior gap to sweep");
      break;
    }
    case SweepParameter::barrier_count: {
      bool any = false;
      for (const auto& seg : segs) any |= seg.height > 0.0;
      if (!any) fail(ErrorCode::invalid_argument, "base profile has no barrier template");
      for (const double v : s.grid) {
        const double r = std::round(v);
        if (!(r >= 1.0) || std::abs(v - r) > 1e-9)
          fail(ErrorCode::invalid_argument, "barrier_count grid values must be positive integers");
      }
      break;
    }
    case SweepParameter::energy:
      break;
  }
  if (s.parameter != SweepParameter::energy && !(s.energy > 0.0))
    fail(ErrorCode::invalid_argument, "sweep needs a probe energy");
  for (const SweepOutput o : s.outputs) {
    if (o == SweepOutput::resonances &&
        (!(s.scan_min > 0.0) || !(s.scan_max > s.scan_min)))
      fail(ErrorCode::invalid_argument, "resonances output needs scan_min < scan_max");
  }
}

PotentialProfile profile_for_point(const SweepSpec& s, double value) {
  const auto& segs = s.base_profile.segments();
  switch (s.parameter) {
    case SweepParameter::energy:
      return s.base_profile;
    case SweepParameter::barrier_width: {
      std::vector<Segment> out = segs;
      for (auto& seg : out)
        if (seg.height > 0.0) seg.width = value;
      return PotentialProfile(std::move(out));
    }
    case SweepParameter::gap_width: {
      std::vector<Segment> out = segs;
      for (std::size_t i = 0; i < out.size(); ++i)
        if (is_gap_segment(segs, i)) out[i].width = value;
      return PotentialProfile(std::move(out));
    }
    case SweepParameter::barrier_count: {
      const int n = static_cast<int>(std::round(value));
      Segment barrier{0, 0}, gap{0, 0};
      bool have_barrier = false, have_gap = false;
      for (std::size_t i = 0; i < segs.size(); ++i) {
        if (!have_barrier && segs[i].height > 0.0) {
          barrier = segs[i];
          have_barrier = true;
        }
        if (!have_gap && is_gap_segment(segs, i)) {
          gap = segs[i];
          have_gap = true;
        }
      }
      if (n > 1 && !have_gap)
        fail(ErrorCode::invalid_argument, "barrier_count > 1 needs a gap template");
      std::vector<Segment> out;
      for (int i = 0; i < n; ++i) {
        if (i > 0) out.push_back(gap);
        out.push_back(barrier);
      }
      return PotentialProfile(std::move(out));
    }
  }
  fail(ErrorCode::internal, "unreachable sweep parameter");
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Record base_record(const SweepSpec& s, std::size_t index, double value, SweepOutput o) {
  Record r;
  r.set("spec_hash", hash_hex(s.content_hash));
  r.set("index", static_cast<std::int64_t>(index));
  r.set("parameter", std::string(sweep_parameter_name(s.parameter)));
  r.set("value", value);
  r.set("output", std::string(sweep_output_name(o)));
  return r;
}

std::vector<Record> evaluate_point(const SweepSpec& s, std::size_t index) {
  const double value = s.grid[index];
  std::vector<Record> rows;
  const double E = s.parameter == SweepParameter::energy ? value : s.energy;
  PotentialProfile prof;
  try {
    prof = profile_for_point(s, value);
  } catch (const Error& e) {
    for (const SweepOutput o : s.outputs) {
      Record r = base_record(s, index, value, o);
      r.set("status", std::string("error"));
      r.set("flagged", true);
      r.set("error", std::string(e.what()));
      rows.push_back(std::move(r));
    }
    return rows;
  }

  for (const SweepOutput o : s.outputs) {
    auto guarded = [&](auto&& fn) {
      Record r = base_record(s, index, value, o);
      try {
        fn(r);
        r.set("status", std::string("ok"));
        rows.push_back(std::move(r));
      } catch (const Error& e) {
        r.set("status", std::string("error"));
        r.set("flagged", true);
        r.set("error", std::string(e.what()));
        rows.push_back(std::move(r));
      }
    };
    switch (o) {
      case SweepOutput::phase_time:
        guarded([&](Record& r) {
          PhaseTimeOptions opt;
          opt.resonance_guard *= s.guard_scale;
          const PhaseTimeResult pt = phase_time(prof, s.constants, E, opt);
          r.set("energy", pt.energy);
          r.set("tau", pt.tau);
          r.set("reference_length", pt.reference_length);
          r.set("step_used", pt.step_used);
          r.set("resonance_flag", pt.resonance_flag);
          r.set("flagged", pt.resonance_flag);
        });
        break;
      case SweepOutput::transmission:
        guarded([&](Record& r) {
          const ScatteringSolution sol = solve_scattering(prof, s.constants, E);
          r.set("energy", E);
          r.set("trans_re", sol.transmission.real());
          r.set("trans_im", sol.transmission.imag());
          r.set("trans_prob", sol.transmission_prob());
          r.set("refl_prob", sol.reflection_prob());
          r.set("trans_log_abs", sol.trans_log_abs);
          r.set("resonance_flag", near_resonance(prof, s.constants, E,
                                                 0.1 * s.guard_scale));
        });
        break;
      case SweepOutput::resonances:
        guarded([&](Record& r) {
          ResonanceScanOptions opt;
          opt.n_points = s.scan_points;
          const auto fits = resonance_scan(prof, s.constants, s.scan_min, s.scan_max, opt);
          if (fits.empty()) {
            r.set("n_resonances", static_cast<std::int64_t>(0));
            return;
          }
          // First fit inline; extra fits appended as separate rows below.
          r.set("n_resonances", static_cast<std::int64_t>(fits.size()));
          r.set("fit_index", static_cast<std::int64_t>(0));
          r.set("e_r", fits[0].e_r);
          r.set("gamma", fits[0].gamma);
          r.set("tau_nr", fits[0].tau_nr);
          r.set("fit_quality", fits[0].fit_quality);
          r.set("flagged", fits[0].flagged);
          for (std::size_t fi = 1; fi < fits.size(); ++fi) {
            Record extra = base_record(s, index, value, o);
            extra.set("n_resonances", static_cast<std::int64_t>(fits.size()));
            extra.set("fit_index", static_cast<std::int64_t>(fi));
            extra.set("e_r", fits[fi].e_r);
            extra.set("gamma", fits[fi].gamma);
            extra.set("tau_nr", fits[fi].tau_nr);
            extra.set("fit_quality", fits[fi].fit_quality);
            extra.set("flagged", fits[fi].flagged);
            extra.set("status", std::string("ok"));
            rows.push_back(std::move(extra));
          }
        });
        break;
      case SweepOutput::wavepacket_arrival:
        guarded([&](Record& r) {
          const Kinematics kin(s.constants, E);
          const double sigma = s.packet_sigma > 0.0 ? s.packet_sigma : 50.0 / kin.k;
          const double x0 = s.packet_x0 != 0.0 ? s.packet_x0 : -(5.0 * sigma + 10.0);
          const double d_end = prof.extent();
          const double detector = d_end + s.detector_offset;
          GridSpec g;
          g.x_min = std::min(x0 - 6.0 * sigma, -10.0 * sigma);
          g.x_max = d_end + 10.0 * sigma + s.detector_offset;
          const double dx_target = 0.02 / std::max(kin.k, 1.0);
          int n = s.grid_points > 0
                      ? s.grid_points
                      : static_cast<int>((g.x_max - g.x_min) / dx_target) + 1;
          n = std::min(std::max(n, 1024), 1 << 18);
          g.n_points = n;
          g.dt = s.grid_dt > 0.0 ? s.grid_dt : 0.02 / std::max(1.0, E);
          const ArrivalMeasurement m =
              simulate_arrival(prof, s.constants, g, x0, kin.k, sigma, detector);
          r.set("energy", E);
          r.set("detector_x", m.record.detector_x);
          r.set("t_peak", m.record.t_peak);
          r.set("t_centroid", m.record.t_centroid);
          r.set("transmitted_fraction", m.record.transmitted_fraction);
          r.set("quasi_mono_warning", m.quasi_mono_warning);
          r.set("flagged", m.quasi_mono_warning);
        });
        break;
    }
  }
  return rows;
}

}  // namespace

SweepSpec parse_sweep_spec_text(const std::string& text, const std::string& origin,
                                const std::string& base_dir) {
  SweepSpec s;
  s.content_hash = fnv1a64(text);
  s.origin = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_profile = false, have_parameter = false;
  std::vector<Segment> inline_segs;

  auto perr = [&](const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << lineno << ": " << msg;
    fail(ErrorCode::parse, os.str());
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "profile") {
      std::string path;
      if (!(ls >> path)) perr("'profile' needs a path");
      std::string full = path;
      if (!base_dir.empty() && path.front() != '/') full = base_dir + "/" + path;
      const ProfileFile pf = load_profile_file(full);
      s.base_profile = pf.profile;
      if (pf.constants_specified) s.constants = pf.constants;
      have_profile = true;
    } else if (key == "segment") {
      double w, h;
      if (!(ls >> w >> h)) perr("'segment' needs WIDTH HEIGHT");
      inline_segs.push_back({w, h});
    } else if (key == "hbar" || key == "mass") {
      double v;
      if (!(ls >> v)) perr("'" + key + "' needs a number");
      (key == "hbar" ? s.constants.hbar : s.constants.mass) = v;
    } else if (key == "parameter") {
      std::string name;
      if (!(ls >> name)) perr("'parameter' needs a name");
      if (name == "barrier_width") s.parameter = SweepParameter::barrier_width;
      else if (name == "gap_width") s.parameter = SweepParameter::gap_width;
      else if (name == "energy") s.parameter = SweepParameter::energy;
      else if (name == "barrier_count") s.parameter = SweepParameter::barrier_count;
      else perr("unknown sweep parameter '" + name + "'");
      have_parameter = true;
    } else if (key == "values") {
      double v;
      while (ls >> v) s.grid.push_back(v);
    } else if (key == "range") {
      double lo, hi;
      int n;
      if (!(ls >> lo >> hi >> n) || n < 2) perr("'range' needs LO HI N (N >= 2)");
      for (int i = 0; i < n; ++i)
        s.grid.push_back(lo + (hi - lo) * i / (n - 1));
    } else if (key == "outputs") {
      std::string name;
      while (ls >> name) {
        if (name == "phase_time") s.outputs.push_back(SweepOutput::phase_time);
        else if (name == "transmission") s.outputs.push_back(SweepOutput::transmission);
        else if (name == "resonances") s.outputs.push_back(SweepOutput::resonances);
        else if (name == "wavepacket_arrival")
          s.outputs.push_back(SweepOutput::wavepacket_arrival);
        else perr("unknown output '" + name + "'");
      }
    } else if (key == "energy") {
      if (!(ls >> s.energy)) perr("'energy' needs a number");
    } else if (key == "scan_min") {
      if (!(ls >> s.scan_min)) perr("'scan_min' needs a number");
    } else if (key == "scan_max") {
      if (!(ls >> s.scan_max)) perr("'scan_max' needs a number");
    } else if (key == "scan_points") {
      if (!(ls >> s.scan_points)) perr("'scan_points' needs an integer");
    } else if (key == "packet_sigma") {
      if (!(ls >> s.packet_sigma)) perr("'packet_sigma' needs a number");
    } else if (key == "packet_x0") {
      if (!(ls >> s.packet_x0)) perr("'packet_x0' needs a number");
    } else if (key == "detector_offset") {
      if (!(ls >> s.detector_offset)) perr("'detector_offset' needs a number");
    } else if (key == "dt") {
      if (!(ls >> s.grid_dt)) perr("'dt' needs a number");
    } else if (key == "grid_points") {
      if (!(ls >> s.grid_points)) perr("'grid_points' needs an integer");
    } else {
      perr("unknown key '" + key + "'");
    }
  }
  if (!inline_segs.empty()) {
    if (have_profile) fail(ErrorCode::parse, origin + ": both 'profile' and inline segments given");
    s.base_profile = PotentialProfile(std::move(inline_segs));
    have_profile = true;
  }
  if (!have_profile) fail(ErrorCode::parse, origin + ": no profile given");
  if (!have_parameter) fail(ErrorCode::parse, origin + ": no sweep parameter given");
  validate_spec(s);
  return s;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open sweep spec: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string dir = ".";
  const auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_sweep_spec_text(buf.str(), path, dir);
}

Table run_sweep(const SweepSpec& s, int jobs) {
  validate_spec(s);
  const std::size_t n = s.grid.size();
  std::vector<std::vector<Record>> slots(n);

  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));

  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i] = evaluate_point(s, i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        slots[i] = evaluate_point(s, i);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Table t;
  for (auto& rows : slots)
    for (auto& r : rows) t.append(std::move(r));
  return t;
}

}  // namespace qtn
