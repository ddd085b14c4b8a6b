#include "waveguide.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qtn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

WaveguideMapping waveguide_map(const WaveguideParams& p) {
  if (!(p.width_normal > 0.0) || !(p.width_undersized > 0.0))
    fail(ErrorCode::invalid_argument, "guide widths must be positive");
  if (!(p.width_undersized < p.width_normal))
    fail(ErrorCode::invalid_argument, "undersized width must be below the normal width");
  if (!(p.frequency > 0.0)) fail(ErrorCode::invalid_argument, "frequency must be positive");
  if (p.segment_lengths.empty() || p.segment_lengths.size() % 2 == 0)
    fail(ErrorCode::invalid_argument,
         "section lengths must alternate undersized/normal and end undersized (odd count)");
  for (const double len : p.segment_lengths)
    if (!(len > 0.0)) fail(ErrorCode::invalid_argument, "section lengths must be positive");

  const double wc_n = kPi / p.width_normal;
  const double wc_u = kPi / p.width_undersized;
  const double w = p.frequency;
  if (!(w > wc_n))
    fail(ErrorCode::mapping, "frequency at or below the normal-section cutoff: the mode does not propagate");
  if (!(w < 2.0 * wc_n))
    fail(ErrorCode::mapping, "frequency above the second mode cutoff: not single-mode");
  if (!(w < wc_u))
    fail(ErrorCode::mapping,
         "frequency at or above the undersized cutoff: no evanescent sections");

  WaveguideMapping m;
  m.cutoff_normal = wc_n;
  m.cutoff_undersized = wc_u;
  m.k = std::sqrt(w * w - wc_n * wc_n);
  m.chi = std::sqrt(wc_u * wc_u - w * w);
  m.constants = PhysicalConstants{};
  m.energy = 0.5 * m.k * m.k;
  m.barrier_height = 0.5 * (m.k * m.k + m.chi * m.chi);

  std::vector<Segment> segs;
  for (std::size_t i = 0; i < p.segment_lengths.size(); ++i)
    segs.push_back({p.segment_lengths[i], i % 2 == 0 ? m.barrier_height : 0.0});
  m.profile = PotentialProfile(std::move(segs));
  return m;
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  fail(ErrorCode::parse, os.str());
}

}  // namespace

WaveguideParams parse_waveguide_text(const std::string& text, const std::string& origin) {
  WaveguideParams p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    double v;
    if (!(ls >> v)) parse_fail(origin, lineno, "'" + key + "' needs one number");
    if (key == "width_normal") p.width_normal = v;
    else if (key == "width_undersized") p.width_undersized = v;
    else if (key == "frequency") p.frequency = v;
    else if (key == "segment_length") p.segment_lengths.push_back(v);
    else parse_fail(origin, lineno, "unknown key '" + key + "'");
    std::string extra;
    if (ls >> extra) parse_fail(origin, lineno, "trailing token '" + extra + "'");
  }
  return p;
}

WaveguideParams load_waveguide_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open waveguide file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_waveguide_text(buf.str(), path);
}

}  // namespace qtn
