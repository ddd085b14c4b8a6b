#include "profile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qtn {

PotentialProfile::PotentialProfile(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  for (const auto& s : segments_) {
    if (!(s.width > 0.0))
      fail(ErrorCode::invalid_argument, "segment widths must be strictly positive");
    if (!(s.height >= 0.0) || !std::isfinite(s.height))
      fail(ErrorCode::invalid_argument, "segment heights must be finite and >= 0");
    if (!std::isfinite(s.width))
      fail(ErrorCode::invalid_argument, "segment widths must be finite");
  }
}

double PotentialProfile::extent() const {
  double d = 0.0;
  for (const auto& s : segments_) d += s.width;
  return d;
}

double PotentialProfile::height_at(double x) const {
  if (x < 0.0) return 0.0;
  double edge = 0.0;
  for (const auto& s : segments_) {
    edge += s.width;
    if (x < edge) return s.height;
  }
  return 0.0;
}

double PotentialProfile::min_barrier_height() const {
  double h = 0.0;
  for (const auto& s : segments_)
    if (s.height > 0.0 && (h == 0.0 || s.height < h)) h = s.height;
  return h;
}

bool PotentialProfile::is_degenerate_energy(double E, double tol) const {
  for (const auto& s : segments_)
    if (std::abs(E - s.height) <= tol * std::max(1.0, s.height)) return true;
  return false;
}

PotentialProfile PotentialProfile::reversed() const {
  std::vector<Segment> r(segments_.rbegin(), segments_.rend());
  return PotentialProfile(std::move(r));
}

PotentialProfile make_two_barrier(double barrier_width, double gap, double height) {
  return PotentialProfile({{barrier_width, height}, {gap, 0.0}, {barrier_width, height}});
}

PotentialProfile make_barriers(const std::vector<double>& widths,
                               const std::vector<double>& gaps, double height) {
  if (widths.empty() || gaps.size() + 1 != widths.size())
    fail(ErrorCode::invalid_argument, "need N barrier widths and N-1 gaps");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (i > 0) segs.push_back({gaps[i - 1], 0.0});
    segs.push_back({widths[i], height});
  }
  return PotentialProfile(std::move(segs));
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  fail(ErrorCode::parse, os.str());
}

bool parse_number(const std::string& tok, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(tok, &pos);
    return pos == tok.size() && std::isfinite(out);
  } catch (...) {
    return false;
  }
}

}  // namespace

ProfileFile parse_profile_text(const std::string& text, const std::string& origin) {
  ProfileFile out;
  std::vector<Segment> segs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_hbar = false, saw_mass = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "hbar" || key == "mass") {
      std::string tok;
      double v;
      if (!(ls >> tok) || !parse_number(tok, v) || !(v > 0.0))
        parse_fail(origin, lineno, "'" + key + "' needs one positive number");
      (key == "hbar" ? out.constants.hbar : out.constants.mass) = v;
      (key == "hbar" ? saw_hbar : saw_mass) = true;
    } else if (key == "segment") {
      std::string wt, ht;
      double w, h;
      if (!(ls >> wt >> ht) || !parse_number(wt, w) || !parse_number(ht, h))
        parse_fail(origin, lineno, "'segment' needs WIDTH HEIGHT");
      if (!(w > 0.0)) parse_fail(origin, lineno, "segment width must be > 0");
      if (!(h >= 0.0)) parse_fail(origin, lineno, "segment height must be >= 0");
      segs.push_back({w, h});
    } else {
      parse_fail(origin, lineno, "unknown key '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) parse_fail(origin, lineno, "trailing token '" + extra + "'");
  }
  out.profile = PotentialProfile(std::move(segs));
  out.constants_specified = saw_hbar || saw_mass;
  return out;
}

ProfileFile load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open profile file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile_text(buf.str(), path);
}

std::string format_profile(const PotentialProfile& p, const PhysicalConstants& c) {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "hbar %.17g\n", c.hbar);
  os << buf;
  std::snprintf(buf, sizeof buf, "mass %.17g\n", c.mass);
  os << buf;
  for (const auto& s : p.segments()) {
    std::snprintf(buf, sizeof buf, "segment %.17g %.17g\n", s.width, s.height);
    os << buf;
  }
  return os.str();
}

void save_profile_file(const std::string& path, const PotentialProfile& p,
                       const PhysicalConstants& c) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write profile file: " + path);
  out << format_profile(p, c);
  if (!out) fail(ErrorCode::io, "failed writing profile file: " + path);
}

}  // namespace qtn
