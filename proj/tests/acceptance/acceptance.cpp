// Acceptance runner. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
//
//   acceptance [--skip-slow] [--workdir DIR]
//
// --skip-slow skips the GHZ hull (criterion 3) and everything that needs it.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>

#include <unistd.h>

#include <json.hpp>

#include "corrpoly/double_description.hpp"
#include "corrpoly/membership.hpp"
#include "corrpoly/quantum.hpp"
#include "corrpoly/symmetry.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace corrpoly;

namespace {

struct Outcome {
  enum Kind { Pass, Fail, Skip } kind = Fail;
  std::string detail;
};

Outcome pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Outcome::Skip, std::move(d)}; }

fs::path work;
bool skip_slow = false;
std::string threads;  // --threads passed to the CLI when set

std::string cli() { return threads.empty() ? CORRPOLY_CLI : CORRPOLY_CLI " --threads " + threads; }

std::string path(const std::string& name) { return (work / name).string(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs the CLI with stderr discarded; returns stdout and throws on a nonzero exit.
std::string corrpoly_cli(const std::string& args) {
  auto r = testing::run(cli() + " " + args + " 2>/dev/null");
  if (r.status != 0)
    throw std::runtime_error("corrpoly " + args + " exited with " + std::to_string(r.status));
  return r.out;
}

std::string fmt(double x, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

std::size_t facet_lines(const std::string& file) {
  return load_inequalities(file).hrep.facets.size();
}

// Writes named inequalities into an inequality file for `preset_name`.
void write_named(const std::string& file, const std::string& preset_name,
                 const std::vector<std::string>& names) {
  auto named = testing::named_inequalities();
  auto s = preset(preset_name);
  HRepresentation h;
  h.dimension = s.dimension();
  for (const auto& n : names) h.facets.push_back(named.at(n).q);
  std::ofstream out(file, std::ios::binary);
  write_inequalities(out, s, h);
}

// CSV rows of `check --out`, keyed by inequality id: value column.
std::vector<double> csv_values(const std::string& file) {
  std::ifstream in(file);
  std::vector<double> out;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string id, bound, value;
    std::getline(ss, id, ',');
    std::getline(ss, bound, ',');
    std::getline(ss, value, ',');
    out.push_back(std::stod(value));
  }
  return out;
}

// --- criteria --------------------------------------------------------------

Outcome ch_facets(const std::string& tag) {
  auto t0 = std::chrono::steady_clock::now();
  corrpoly_cli("--preset ch facets --out " + path("ch_" + tag + ".ine"));
  double secs = seconds_since(t0);
  auto got = load_inequalities(path("ch_" + tag + ".ine")).hrep.facets;
  auto want = testing::ch_fixture();
  std::string d = std::to_string(got.size()) + " facets in " + fmt(secs, 3) + " s";
  if (got.size() != 24) return fail(d + ", expected 24");
  if (testing::as_set(got) != testing::as_set(want)) return fail(d + ", not the displayed system");
  if (secs >= 1.0) return fail(d + ", over 1 s");
  return pass(d + ", set-equal to the displayed system with all 8 CH sides");
}

Outcome two_by_three_facets(const std::string& tag) {
  auto t0 = std::chrono::steady_clock::now();
  corrpoly_cli("--preset two-by-three facets --out " + path("t23_" + tag + ".ine"));
  double secs = seconds_since(t0);
  auto n = facet_lines(path("t23_" + tag + ".ine"));
  std::string d = std::to_string(n) + " facets in " + fmt(secs, 3) + " s";
  if (n != 684) return fail(d + ", expected 684");
  if (secs >= 60) return fail(d + ", over a minute");
  return pass(d);
}

Outcome ghz_facets() {
  if (skip_slow) return skip("--skip-slow");
  auto t0 = std::chrono::steady_clock::now();
  corrpoly_cli("--preset ghz26 --slow facets --out " + path("ghz26.ine"));
  double secs = seconds_since(t0);
  auto f = load_inequalities(path("ghz26.ine"));
  std::string d = std::to_string(f.hrep.facets.size()) + " facets, " +
                  std::to_string(f.hrep.equations.size()) + " equations in " + fmt(secs, 3) + " s";
  return f.hrep.facets.size() == 53856 && f.hrep.equations.empty() ? pass(d)
                                                                     : fail(d + ", expected 53856");
}

Outcome ghz_census(const std::string& tag) {
  if (skip_slow || !fs::exists(path("ghz26.ine"))) return skip("needs the GHZ hull");
  auto out = corrpoly_cli("--preset ghz26 check --facets " + path("ghz26.ine") +
                          " --model ghz --phi1 0 --phi2 pi/2 --out " + path("ghz_check_" + tag + ".csv"));
  auto first = out.substr(0, out.find('\n'));
  // The CSV must be exact at these angles: every value a multiple of 1/8.
  for (double v : csv_values(path("ghz_check_" + tag + ".csv")))
    if (std::abs(v * 8 - std::round(v * 8)) > 1e-12) return fail("inexact value " + fmt(v, 17));
  return first == "violated: 1329 / 53856" ? pass(first) : fail(first + ", expected 1329 / 53856");
}

Outcome named_singlet(const std::string& tag) {
  write_named(path("named23.ine"), "two-by-three", {"e3-3a", "e3-3b", "e3-3bw", "e3-3c"});
  corrpoly_cli("--preset two-by-three check --facets " + path("named23.ine") +
               " --model singlet --config symmetric --parity parallel --out " +
               path("named23_parallel_" + tag + ".csv"));
  corrpoly_cli("--preset two-by-three check --facets " + path("named23.ine") +
               " --model singlet --config symmetric --parity opposite --out " +
               path("named23_opposite_" + tag + ".csv"));
  auto par = csv_values(path("named23_parallel_" + tag + ".csv"));
  auto opp = csv_values(path("named23_opposite_" + tag + ".csv"));
  struct Want {
    const char* name;
    double value;
    double got;
  };
  std::vector<Want> rows{{"e3-3a", 0.25, par[0]},
                         {"e3-3b", 0.125, par[1]},
                         {"e3-3bw", 9.0 / 8, opp[2]},
                         {"e3-3c", 5.0 / 4, opp[3]}};
  std::string d;
  bool ok = true;
  for (const auto& w : rows) {
    bool hit = std::abs(w.got - w.value) <= 1e-9;
    ok = ok && hit;
    d += std::string(d.empty() ? "" : "; ") + w.name + " " + fmt(w.got, 10) +
         (hit ? "" : " (expected " + fmt(w.value) + ")");
  }
  return ok ? pass(d) : fail(d);
}

Outcome eghz7a_sweep(const std::string& tag) {
  write_named(path("eghz7a.ine"), "ghz26", {"eghz-7a"});
  auto json = corrpoly_cli("--preset ghz26 scan --facets " + path("eghz7a.ine") +
                           " --sweep fig1 --points 512 --out " + path("eghz7a_" + tag + ".csv"));
  auto j = nlohmann::json::parse(json);
  double v = j["max_violation"], x = j["argmax"]["phi2"];
  std::string d = "max violation " + fmt(v, 4) + " at phi2 = " + fmt(x, 4);
  return std::abs(v - 0.55) <= 0.01 && std::abs(x - 1.45) <= 0.02 ? pass(d) : fail(d);
}

Outcome singles_triples() {
  corrpoly_cli("--preset ghz-singles-triples facets --out " + path("gst.ine"));
  auto n = facet_lines(path("gst.ine"));
  auto json = corrpoly_cli("--preset ghz-singles-triples scan --facets " + path("gst.ine") +
                           " --sweep fig1 --only-violated --out " + path("gst_scan.csv"));
  auto j = nlohmann::json::parse(json);
  std::size_t total = j["total_violated"], points = j["grid_points"];
  std::string d = std::to_string(total) + " violations over " + std::to_string(points) +
                  " grid points, " + std::to_string(n) + " facets";
  return total == 0 ? pass(d) : fail(d);
}

Outcome symmetry_closure() {
  std::string d;
  for (const char* name : {"ch", "two-by-three"}) {
    auto s = preset(name);
    auto facets = facet_enumeration(enumerate_vertex_rows(s)).facets;
    auto group = generate_group(s, default_generators(s, GroupSpec::full()));
    if (!set_is_closed(s, facets, group)) return fail(std::string(name) + " not closed");
    d += std::string(name) + " closed under " + std::to_string(group.order()) + " elements; ";
  }
  std::mt19937_64 rng(8);
  auto s = preset("two-by-three");
  auto facets = facet_enumeration(enumerate_vertex_rows(s)).facets;
  for (int i = 0; i < 1000; ++i) {
    const auto& f = facets[rng() % facets.size()];
    const auto& e = s.events()[rng() % s.num_events()];
    if (complement_event(s, complement_event(s, f, e), e) != f)
      return fail(d + "complementation not an involution");
  }
  return pass(d + "1000 involution pairs");
}

Outcome oracle() {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t dim = 1 + rng() % 4;
    std::size_t count = std::min<std::size_t>(dim + 1 + rng() % (8 - dim), dim == 1 ? 5 : 8);
    auto v = testing::random_full_dim_set(rng, dim, count);
    auto dd = facet_enumeration(v).facets;
    if (testing::as_set(dd) != testing::as_set(testing::brute_force_facets(v)))
      return fail("trial " + std::to_string(trial) + " differs");
  }
  return pass("20 random sets, dim <= 4, <= 8 vertices");
}

Outcome membership_agreement() {
  std::mt19937_64 rng(10);
  std::string d;
  for (const char* name : {"ch", "bell-wigner"}) {
    auto s = preset(name);
    auto vs = enumerate_vertices(s);
    auto facets = facet_enumeration(enumerate_vertex_rows(s)).facets;
    std::uniform_int_distribution<int> num(0, 8);
    std::size_t inside = 0;
    for (int i = 0; i < 1000; ++i) {
      Point p;
      for (std::size_t k = 0; k < s.dimension(); ++k) p.push_back(Rational(num(rng), 8));
      bool by_facets = true;
      for (const auto& f : facets)
        if (lhs(f, p) > f.bound) by_facets = false;
      auto cert = membership(p, vs);
      if (cert.inside != by_facets || !certificate_holds(cert, p, vs))
        return fail(std::string(name) + " point " + std::to_string(i) + " disagrees");
      inside += cert.inside;
    }
    d += std::string(name) + " " + std::to_string(inside) + "/1000 inside; ";
  }
  return pass(d + "all certificates verified");
}

Outcome ghz_named_values() {
  auto s = preset("ghz26");
  auto named = testing::named_inequalities();
  auto a = ghz_assignment(s, GhzParams::uniform(Angle::pi_times(0), Angle::pi_times(Rational(1, 2))));
  struct Want {
    const char* name;
    Rational expected;
    bool required;
  };
  std::vector<Want> rows{{"eghz-5", Rational(9, 8), false},
                         {"eghz-6", Rational(25, 8), true},
                         {"eghz-7", Rational(1, 2), true},
                         {"eghz-8", Rational(1, 2), true}};
  std::string d;
  bool ok = true;
  for (const auto& w : rows) {
    auto v = evaluate_exact(named.at(w.name).q, a);
    bool hit = std::abs(static_cast<double>(v - w.expected)) <= 1e-9;
    if (w.required) ok = ok && hit;
    d += std::string(d.empty() ? "" : "; ") + w.name + " " + to_string(v) + " vs bound " +
         std::to_string(named.at(w.name).q.bound) +
         (hit ? "" : " (stated factor " + to_string(w.expected) + ", discrepancy)");
  }
  return ok ? pass(d) : fail(d);
}

Outcome reproducibility() {
  // Thread count 1 then 8 for every file-producing criterion.
  for (const char* n : {"1", "8"}) {
    std::string tag = std::string("t") + n;
    threads = n;
    ch_facets(tag);
    two_by_three_facets(tag);
    if (fs::exists(path("ghz26.ine"))) ghz_census(tag);
    named_singlet(tag);
    eghz7a_sweep(tag);
  }
  threads.clear();
  std::vector<std::string> stems{"ch_%.ine", "t23_%.ine", "named23_parallel_%.csv",
                                 "named23_opposite_%.csv", "eghz7a_%.csv"};
  if (fs::exists(path("ghz26.ine"))) stems.push_back("ghz_check_%.csv");
  for (const auto& stem : stems) {
    auto name = [&](const char* t) {
      auto s = stem;
      return path(s.replace(s.find('%'), 1, t));
    };
    auto a = testing::slurp(name("t1")), b = testing::slurp(name("t8"));
    if (a.empty() || a != b) return fail(stem + " differs between 1 and 8 threads");
  }
  return pass(std::to_string(stems.size()) + " output files byte-identical at 1 and 8 threads");
}

}  // namespace

int main(int argc, char** argv) {
  work = fs::temp_directory_path() / ("corrpoly_acceptance_" + std::to_string(getpid()));
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--skip-slow") {
      skip_slow = true;
    } else if (a == "--workdir" && i + 1 < argc) {
      work = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--skip-slow] [--workdir DIR]\n";
      return 2;
    }
  }
  fs::create_directories(work);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"CH facet system", [] { return ch_facets("run"); }},
      {"2x3 facet count", [] { return two_by_three_facets("run"); }},
      {"GHZ facet count", ghz_facets},
      {"GHZ violation census", [] { return ghz_census("run"); }},
      {"named singlet violations", [] { return named_singlet("run"); }},
      {"eghz-7a sweep maximum", [] { return eghz7a_sweep("run"); }},
      {"singles+triples never violate", singles_triples},
      {"symmetry closure", symmetry_closure},
      {"oracle equivalence", oracle},
      {"membership/facet agreement", membership_agreement},
      {"GHZ named values", ghz_named_values},
      {"thread reproducibility", reproducibility},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("error: ") + e.what());
    }
    const char* tag = o.kind == Outcome::Pass ? "PASS" : o.kind == Outcome::Fail ? "FAIL" : "SKIP";
    if (o.kind == Outcome::Fail) ++failed;
    std::cout << tag << "  " << std::setw(2) << i + 1 << "  " << criteria[i].first << ": "
              << o.detail << "  [" << fmt(seconds_since(t0), 3) << " s]" << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << std::endl;
  std::error_code ec;
  fs::remove_all(work, ec);
  return failed ? 1 : 0;
}
