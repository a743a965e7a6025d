#include <doctest.h>

#include <omp.h>

#include <json.hpp>
#include <numbers>
#include <sstream>

#include "corrpoly/double_description.hpp"
#include "corrpoly/presets.hpp"
#include "corrpoly/scan.hpp"
#include "corrpoly/symmetry.hpp"
#include "support.hpp"

using namespace corrpoly;

namespace {

std::vector<Inequality> hull(const Scenario& s) {
  return facet_enumeration(enumerate_vertex_rows(s)).facets;
}

std::string csv(std::span<const Inequality> q, const SweepSpec& sw, ScanSummary* summary = nullptr,
                bool serial = false) {
  std::ostringstream out;
  write_csv_header(out, sw);
  auto sink = [&](const ViolationRecord& r) { write_csv_row(out, r); };
  auto s = serial ? scan_serial(q, sw, sink) : scan(q, sw, sink);
  if (summary) *summary = s;
  return out.str();
}

}  // namespace

TEST_CASE("grid axes") {
  GridAxis a{"x", Angle::pi_times(0), Angle::pi_times(1), 5};
  CHECK(a.at(0).pi_multiple() == 0);
  CHECK(a.at(2).pi_multiple() == Rational(1, 2));
  CHECK(a.at(4).pi_multiple() == 1);
  GridAxis one{"x", Angle::pi_times(Rational(1, 3)), Angle::pi_times(1), 1};
  CHECK(one.at(0).pi_multiple() == Rational(1, 3));
  GridAxis d{"x", Angle::from_radians(0), Angle::from_radians(1), 3};
  CHECK(d.at(1).radians() == doctest::Approx(0.5));
}

TEST_CASE("2-D grids are row-major") {
  auto s = preset("ghz26");
  auto g = ghz_phase_grid(s, 3, 4);
  CHECK(g.grid_size() == 12);
  auto c = g.coordinates(5);  // row 1, column 1
  CHECK(c[0].pi_multiple() == Rational(1, 2));
  CHECK(c[1].pi_multiple() == Rational(1, 3));
}

TEST_CASE("CSV header and rows") {
  auto s = preset("ch");
  auto facets = testing::ch_fixture();
  SweepSpec sw;
  sw.name = "const";
  sw.axes.push_back({"x", Angle::pi_times(0), Angle::pi_times(0), 1});
  sw.model = [](std::span<const Angle>) {
    return exact_assignment(Point{1, 1, 1, 1, 1, 1, 1, Rational(1, 2)});
  };
  std::vector<Inequality> one{Inequality{{0, 0, 0, 0, 0, 0, 0, 1}, 0}};
  auto text = csv(one, sw);
  CHECK(text == "grid_param_1,inequality_id,bound,value,violation,violated\n0,1,0,0.5,0.5,1\n");
}

TEST_CASE("parallel scan output is byte-identical to the serial reference") {
  auto t = preset("two-by-three");
  auto facets = hull(t);
  auto sw = singlet_direction_sweep(t, Parity::Parallel, 64);
  ScanSummary ref_sum;
  auto ref = csv(facets, sw, &ref_sum, true);
  for (int threads : {1, 2, 8}) {
    omp_set_num_threads(threads);
    ScanSummary sum;
    CHECK(csv(facets, sw, &sum) == ref);
    CHECK(sum.violated_per_point == ref_sum.violated_per_point);
    CHECK(sum.argmax_inequality == ref_sum.argmax_inequality);
    CHECK(summary_json(sum, sw) == summary_json(ref_sum, sw));
  }
}

TEST_CASE("single-point scan equals direct evaluation") {
  auto t = preset("two-by-three");
  auto facets = hull(t);
  auto sw = singlet_direction_sweep(t, Parity::Parallel, 1, Angle::pi_times(Rational(2, 3)),
                                    Angle::pi_times(Rational(2, 3)));
  auto a = singlet_assignment(t, SingletParams::symmetric(Parity::Parallel));
  std::vector<ViolationRecord> got;
  scan(facets, sw, [&](const ViolationRecord& r) { got.push_back(r); });
  REQUIRE(got.size() == facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    auto r = evaluate(facets[i], a, i + 1);
    CHECK(got[i].inequality_id == r.inequality_id);
    CHECK(got[i].value == r.value);
    CHECK(got[i].violated == r.violated);
  }
}

TEST_CASE("pi periodicity of the violated counts") {
  auto t = preset("two-by-three");
  auto tf = hull(t);
  auto g = preset("ghz26");
  auto named = testing::named_inequalities();
  std::vector<Inequality> gq;
  // Shifting phi2 by pi complements A2, B2 and C2, so keep the set closed under that.
  for (const char* n : {"eghz-5", "eghz-6", "eghz-7", "eghz-8", "eghz-7a"}) {
    auto q = named.at(n).q;
    gq.push_back(q);
    for (const char* e : {"A2", "B2", "C2"}) q = complement_event(g, q, EventId::parse(e));
    gq.push_back(q);
  }
  const std::size_t half = 48;
  auto check = [&](std::span<const Inequality> q, const SweepSpec& sw) {
    auto sum = scan(q, sw);
    REQUIRE(sum.violated_per_point.size() == 2 * half + 1);
    for (std::size_t i = 0; i <= half; ++i)
      CHECK(sum.violated_per_point[i] == sum.violated_per_point[i + half]);
  };
  check(tf, singlet_direction_sweep(t, Parity::Parallel, 2 * half + 1, Angle::pi_times(0), Angle::pi_times(2)));
  check(tf, singlet_direction_sweep(t, Parity::Opposite, 2 * half + 1, Angle::pi_times(0), Angle::pi_times(2)));
  check(gq, ghz_phase_sweep(g, 2 * half + 1, Angle::pi_times(0), Angle::pi_times(2)));
}

TEST_CASE("fig2 envelope is positive around 2pi/3") {
  auto t = preset("two-by-three");
  auto sw = singlet_direction_sweep(t, Parity::Parallel, 7, Angle::pi_times(0), Angle::pi_times(1));
  auto sum = scan(hull(t), sw);
  // points at k pi / 6; index 4 is 2pi/3
  CHECK(sum.violated_per_point[4] > 0);
  CHECK(sum.violated_per_point[0] == 0);
}

TEST_CASE("eghz-7a maximum and refinement") {
  auto g = preset("ghz26");
  auto q = testing::named_inequalities().at("eghz-7a").q;
  auto sw = ghz_phase_sweep(g);
  std::vector<Inequality> one{q};
  auto sum = scan(one, sw);
  auto x = sw.coordinates(sum.argmax_point)[0].radians();
  CHECK(sum.max_violation == doctest::Approx(0.55).epsilon(0.02));
  CHECK(x == doctest::Approx(1.45).epsilon(0.02));
  auto r = refine_max(q, sw);
  CHECK(r.violation >= sum.max_violation);
  CHECK(std::abs(r.param - x) <= std::numbers::pi / 511);
  auto f = [&](double p) {
    auto a = ghz_assignment(g, GhzParams::uniform(Angle::pi_times(0), Angle::from_radians(p)));
    return evaluate(q, a).value;
  };
  CHECK(f(r.param) >= f(r.param + 1e-4));
  CHECK(f(r.param) >= f(r.param - 1e-4));
}

TEST_CASE("singles and triples alone are never violated on the fig1 grid") {
  auto s = preset("ghz-singles-triples");
  auto sum = scan(hull(s), ghz_phase_sweep(s));
  CHECK(sum.total_violated() == 0);
  CHECK(sum.max_violation <= 0);
}

TEST_CASE("summary JSON") {
  auto t = preset("two-by-three");
  auto sw = singlet_direction_sweep(t, Parity::Parallel, 7);
  auto facets = hull(t);
  auto sum = scan(facets, sw);
  auto j = nlohmann::json::parse(summary_json(sum, sw));
  CHECK(j["grid_points"] == 7);
  CHECK(j["inequalities"] == facets.size());
  CHECK(j["violated_per_point"].size() == 7);
  CHECK(j["total_violated"] == sum.total_violated());
  CHECK(j["max_violation"].get<double>() == doctest::Approx(sum.max_violation));
}
