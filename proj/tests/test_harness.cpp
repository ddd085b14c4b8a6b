#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "opaque.hpp"
#include "profile.hpp"
#include "records.hpp"
#include "sweep.hpp"

using namespace qtn;
using doctest::Approx;

TEST_CASE("profile files round-trip") {
  const PotentialProfile p = make_two_barrier(20.0, 3.0, 1.0);
  const PhysicalConstants c{1.0, 1.0};
  const std::string text = format_profile(p, c);
  const ProfileFile back = parse_profile_text(text);
  REQUIRE(back.profile.size() == 3);
  CHECK(back.profile.segments()[0].width == 20.0);
  CHECK(back.profile.segments()[1].height == 0.0);
  CHECK(back.constants.hbar == 1.0);
  CHECK(back.constants_specified);
}

TEST_CASE("profile parsing reports line numbers and bad input") {
  CHECK_THROWS_AS(parse_profile_text("segment 1\n"), Error);
  CHECK_THROWS_AS(parse_profile_text("segment -1 0\n"), Error);
  CHECK_THROWS_AS(parse_profile_text("segment 1 -2\n"), Error);
  CHECK_THROWS_AS(parse_profile_text("bogus 1 2\n"), Error);
  CHECK_THROWS_AS(parse_profile_text("hbar 0\n"), Error);
  CHECK_THROWS_AS(parse_profile_text("segment 1 2 3\n"), Error);
  try {
    parse_profile_text("segment 1 1\nsegment nope 0\n", "demo.profile");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("demo.profile:2") != std::string::npos);
    CHECK(e.code() == ErrorCode::parse);
  }
  // comments and blank lines are fine
  const ProfileFile ok = parse_profile_text("# two barriers\n\nsegment 1 1 # right\n");
  CHECK(ok.profile.size() == 1);
  CHECK_FALSE(ok.constants_specified);
}

TEST_CASE("tables emit CSV with a header and 17-digit numbers") {
  Table t;
  Record r;
  r.set("name", std::string("a,b"));
  r.set("value", 1.0 / 3.0);
  r.set("count", static_cast<std::int64_t>(7));
  r.set("flag", true);
  t.append(r);
  std::ostringstream os;
  write_csv(t, os);
  CHECK(os.str() ==
        "name,value,count,flag\n\"a,b\",0.33333333333333331,7,true\n");
}

TEST_CASE("tables emit JSON lines with escapes") {
  Table t;
  Record r;
  r.set("name", std::string("say \"hi\"\n"));
  r.set("x", 2.5);
  r.set("empty", Value{});
  t.append(r);
  std::ostringstream os;
  write_jsonl(t, os);
  CHECK(os.str() == "{\"name\":\"say \\\"hi\\\"\\n\",\"x\":2.5}\n");
}

TEST_CASE("missing fields render as empty CSV cells") {
  Table t;
  Record a, b;
  a.set("x", 1.0);
  b.set("y", 2.0);
  t.append(a);
  t.append(b);
  std::ostringstream os;
  write_csv(t, os);
  CHECK(os.str() == "x,y\n1,\n,2\n");
}

namespace {

SweepSpec demo_sweep() {
  return parse_sweep_spec_text(
      "segment 20 1\nsegment 3 0\nsegment 20 1\n"
      "parameter barrier_width\n"
      "values 10 15 20\n"
      "energy 0.5\n"
      "outputs phase_time transmission\n",
      "<demo>", ".");
}

std::string emit(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

}  // namespace

TEST_CASE("sweep specs parse and validate") {
  const SweepSpec s = demo_sweep();
  CHECK(s.parameter == SweepParameter::barrier_width);
  CHECK(s.grid.size() == 3);
  CHECK(s.outputs.size() == 2);
  CHECK(s.content_hash != 0);

  CHECK_THROWS_AS(parse_sweep_spec_text("parameter energy\nvalues 1 2\n", "<x>", "."),
                  Error);  // no profile
  CHECK_THROWS_AS(
      parse_sweep_spec_text("segment 1 1\nparameter energy\n", "<x>", "."),
      Error);  // no grid
  CHECK_THROWS_AS(
      parse_sweep_spec_text(
          "segment 1 1\nparameter energy\nvalues 2 1 3\noutputs phase_time\n", "<x>",
          "."),
      Error);  // not monotone
  CHECK_THROWS_AS(
      parse_sweep_spec_text(
          "segment 1 0\nparameter barrier_width\nvalues 1 2\nenergy "
          "0.5\noutputs phase_time\n",
          "<x>", "."),
      Error);  // no barrier to sweep
  CHECK_THROWS_AS(
      parse_sweep_spec_text(
          "segment 1 1\nparameter barrier_count\nvalues 1.5\nenergy 0.5\noutputs "
          "phase_time\n",
          "<x>", "."),
      Error);  // non-integer count
}

TEST_CASE("a width sweep shows the plateau and is deterministic across jobs") {
  const SweepSpec s = demo_sweep();
  const Table serial = run_sweep(s, 1);
  const Table parallel = run_sweep(s, 4);
  CHECK(emit(serial) == emit(parallel));  // bitwise-identical output
  CHECK(serial.size() == 6);              // 3 points x 2 outputs

  // phase_time rows carry a constant tau across the plateau
  double tau_min = 1e300, tau_max = -1e300;
  for (const auto& row : serial.rows()) {
    for (const auto& f : row.fields) {
      if (f.first == "tau") {
        const double tau = std::get<double>(f.second);
        tau_min = std::min(tau_min, tau);
        tau_max = std::max(tau_max, tau);
      }
    }
  }
  CHECK((tau_max - tau_min) / tau_min < 1e-6);
}

TEST_CASE("sweep rows carry provenance and guard flags where predicted") {
  // gap grid straddling the k = chi = 1 resonance zeros at pi/2 + n pi
  const SweepSpec s = parse_sweep_spec_text(
      "segment 6 1\nsegment 3 0\nsegment 6 1\n"
      "parameter gap_width\n"
      "range 1.2 5.2 21\n"
      "energy 0.5\n"
      "outputs phase_time\n",
      "<demo>", ".");
  const Table t = run_sweep(s, 1);
  REQUIRE(t.size() == 21);
  int flagged_rows = 0;
  for (const auto& row : t.rows()) {
    bool has_hash = false;
    double value = 0.0;
    bool flagged = false;
    for (const auto& f : row.fields) {
      if (f.first == "spec_hash") has_hash = !std::get<std::string>(f.second).empty();
      if (f.first == "value") value = std::get<double>(f.second);
      if (f.first == "resonance_flag" && std::holds_alternative<bool>(f.second))
        flagged = std::get<bool>(f.second);
    }
    CHECK(has_hash);
    // flags must appear exactly where the resonance condition predicts them
    const bool predicted =
        std::abs(resonance_condition(1.0, 1.0, value)) <= 0.1 * 2.0;
    CHECK(flagged == predicted);
    if (flagged) ++flagged_rows;
  }
  CHECK(flagged_rows > 0);
  CHECK(flagged_rows < 21);
}

TEST_CASE("sweeps can request wavepacket arrivals") {
  const SweepSpec s = parse_sweep_spec_text(
      "segment 0.6 4\nsegment 1 0\nsegment 0.6 4\n"
      "parameter energy\n"
      "values 2.0\n"
      "outputs wavepacket_arrival\n"
      "packet_sigma 10\n",
      "<demo>", ".");
  const Table t = run_sweep(s, 1);
  REQUIRE(t.size() == 1);
  double t_peak = 0.0, fraction = 0.0;
  std::string status;
  for (const auto& f : t.rows()[0].fields) {
    if (f.first == "t_peak") t_peak = std::get<double>(f.second);
    if (f.first == "transmitted_fraction") fraction = std::get<double>(f.second);
    if (f.first == "status") status = std::get<std::string>(f.second);
  }
  CHECK(status == "ok");
  CHECK(t_peak > 0.0);
  CHECK(fraction > 0.01);
  CHECK(fraction < 1.0);
}

TEST_CASE("barrier_count sweeps rebuild the profile from templates") {
  const SweepSpec s = parse_sweep_spec_text(
      "segment 20 1\nsegment 3 0\nsegment 20 1\n"
      "parameter barrier_count\n"
      "values 1 2 3 4\n"
      "energy 0.5\n"
      "outputs phase_time\n",
      "<demo>", ".");
  const Table t = run_sweep(s, 2);
  REQUIRE(t.size() == 4);
  std::vector<double> taus;
  for (const auto& row : t.rows())
    for (const auto& f : row.fields)
      if (f.first == "tau") taus.push_back(std::get<double>(f.second));
  REQUIRE(taus.size() == 4);
  for (const double tau : taus) CHECK(tau == Approx(2.0).epsilon(1e-4));
}

TEST_CASE("degenerate sweep points become error rows") {
  const SweepSpec s = parse_sweep_spec_text(
      "segment 2 1\nparameter energy\nvalues 0.5 1.0 1.5\noutputs transmission\n",
      "<demo>", ".");
  const Table t = run_sweep(s, 1);
  REQUIRE(t.size() == 3);
  int errors = 0;
  for (const auto& row : t.rows())
    for (const auto& f : row.fields)
      if (f.first == "status" && std::get<std::string>(f.second) == "error") ++errors;
  CHECK(errors == 1);  // E = V0 exactly
}

TEST_CASE("fnv1a64 is stable") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") != fnv1a64("b"));
}
