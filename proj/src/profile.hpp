#pragma once

#include <string>
#include <vector>

#include "units.hpp"

namespace qtn {

struct Segment {
  double width;   // > 0
  double height;  // >= 0
};

// Piecewise-constant potential starting at x = 0, with semi-infinite
// zero-potential leads on both sides. An empty profile is free space.
class PotentialProfile {
 public:
  PotentialProfile() = default;
  explicit PotentialProfile(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }

  double extent() const;
  double height_at(double x) const;

  // Smallest positive segment height; 0 when the profile has no barrier.
  double min_barrier_height() const;

  // True when E sits within tol of some segment height (chi = 0 degeneracy).
  bool is_degenerate_energy(double E, double tol = 1e-12) const;

  PotentialProfile reversed() const;

 private:
  std::vector<Segment> segments_;
};

PotentialProfile make_two_barrier(double barrier_width, double gap, double height);
PotentialProfile make_barriers(const std::vector<double>& widths,
                               const std::vector<double>& gaps, double height);

// Profile file: '#' comments, `hbar V` / `mass V` lines, and ordered
// `segment WIDTH HEIGHT` lines.
struct ProfileFile {
  PotentialProfile profile;
  PhysicalConstants constants;
  bool constants_specified = false;
};

ProfileFile parse_profile_text(const std::string& text,
                               const std::string& origin = "<string>");
ProfileFile load_profile_file(const std::string& path);
std::string format_profile(const PotentialProfile&, const PhysicalConstants&);
void save_profile_file(const std::string& path, const PotentialProfile&,
                       const PhysicalConstants&);

}  // namespace qtn
