// corrpoly: correlation polytopes, their facets, symmetry orbits and quantum
// violations from the command line.
//
// Exit codes: 0 success, 1 usage or input error, 2 resource/computation error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "corrpoly/double_description.hpp"
#include "corrpoly/errors.hpp"
#include "corrpoly/io.hpp"
#include "corrpoly/membership.hpp"
#include "corrpoly/presets.hpp"
#include "corrpoly/quantum.hpp"
#include "corrpoly/scan.hpp"
#include "corrpoly/symmetry.hpp"
#include "corrpoly/verify.hpp"

using namespace corrpoly;

namespace {

// Hulls above this dimension need --slow.
constexpr std::size_t kSlowDimension = 20;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string preset;
  std::string scenario_file;
  std::string out;
  int threads = 0;
  bool slow = false;
  std::size_t ray_cap = DDOptions{}.ray_cap;

  // facets
  std::string vertices_file;
  std::string order = "lex";
  bool verify = false;

  // orbits / check / scan
  std::string facets_file;
  std::string group = "full";
  bool verbose = false;
  std::string model;
  std::vector<std::string> angles;
  std::string phi1 = "0";
  std::string phi2 = "pi/2";
  std::string config = "symmetric";
  std::string parity = "parallel";
  std::string point_file;
  std::string point_preset;
  bool only_violated = false;
  std::string sweep;
  std::size_t points = kDefaultGridPoints;
  std::size_t points_y = 0;
  std::string lo = "0";
  std::string hi = "pi";
  std::string ids;
  std::string summary_file;
  bool refine = false;
};

Scenario load(const Config& c) {
  if (!c.preset.empty() && !c.scenario_file.empty())
    throw UsageError("give either --preset or --scenario, not both");
  if (!c.preset.empty()) return preset(c.preset);
  if (!c.scenario_file.empty()) return load_scenario(c.scenario_file);
  throw UsageError("a scenario is required (--preset or --scenario)");
}

// Output stream for --out, or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(Errc::IO, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<std::string> labels(const Scenario& s) {
  std::vector<std::string> out;
  for (const auto& m : s.basis()) out.push_back(m.str());
  return out;
}

Parity parse_parity(const std::string& p) {
  if (p == "parallel") return Parity::Parallel;
  if (p == "opposite") return Parity::Opposite;
  throw UsageError("--parity must be parallel or opposite");
}

AngleMap parse_angle_list(const std::vector<std::string>& items) {
  AngleMap out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--angle expects EVENT=ANGLE, got " + item);
    out[EventId::parse(item.substr(0, eq))] = Angle::parse(item.substr(eq + 1));
  }
  return out;
}

int cmd_vertices(const Config& c) {
  auto s = load(c);
  auto rows = enumerate_vertex_rows(s);
  Output out(c.out);
  write_vertices(out.stream(), s, rows);
  std::cerr << "vertices: " << rows.size() << " dimension: " << s.dimension() << '\n';
  return 0;
}

int cmd_facets(const Config& c) {
  Scenario s;
  std::vector<std::vector<int>> rows;
  if (!c.vertices_file.empty()) {
    std::ifstream in(c.vertices_file);
    if (!in) throw Error(Errc::IO, "cannot open " + c.vertices_file);
    rows = read_vertices(in);
    if (rows.empty()) throw Error(Errc::EmptyInput, "vertex file is empty");
    if (!c.preset.empty() || !c.scenario_file.empty()) {
      s = load(c);
    } else {
      std::vector<EventId> ev;
      for (std::size_t i = 0; i < rows.front().size(); ++i) ev.push_back({"x", static_cast<int>(i + 1)});
      s = build_scenario(ev, {}, "vertices");
    }
    if (rows.front().size() != s.dimension())
      throw Error(Errc::DimensionMismatch, "vertex rows do not match the scenario basis");
  } else {
    s = load(c);
    rows = enumerate_vertex_rows(s);
  }
  if (s.dimension() > kSlowDimension && !c.slow)
    throw UsageError("dimension " + std::to_string(s.dimension()) +
                     " hull is a long run; pass --slow to enable it");
  DDOptions opts;
  opts.ray_cap = c.ray_cap;
  if (c.order == "lex")
    opts.order = InsertionOrder::Lexicographic;
  else if (c.order == "max-cutoff")
    opts.order = InsertionOrder::MaxCutoff;
  else
    throw UsageError("--order must be lex or max-cutoff");

  DDStats stats;
  auto t0 = std::chrono::steady_clock::now();
  auto h = facet_enumeration(rows, opts, &stats);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Output out(c.out);
  write_inequalities(out.stream(), s, h);
  std::cerr << "facets: " << h.facets.size() << " equations: " << h.equations.size()
            << " max rays: " << stats.max_rays << " time: " << secs << "s\n";
  if (c.verify) {
    auto report = verify_h_representation(rows, h.facets);
    std::cerr << "verify: " << (report.ok() ? "pass" : "FAIL") << '\n';
    if (!report.ok()) return 2;
  }
  return 0;
}

InequalityFile load_facets(const Config& c, const Scenario& s) {
  if (c.facets_file.empty()) throw UsageError("--facets FILE is required");
  auto f = load_inequalities(c.facets_file);
  check_basis(f, s);
  return f;
}

int cmd_orbits(const Config& c) {
  auto s = load(c);
  auto f = load_facets(c, s);
  GroupSpec spec;
  if (c.group == "full")
    spec = GroupSpec::full();
  else if (c.group == "complement")
    spec = GroupSpec::complementations();
  else if (c.group == "permute")
    spec = GroupSpec::permutations();
  else if (c.group == "trivial")
    spec = GroupSpec::trivial();
  else
    throw UsageError("--group must be full, complement, permute or trivial");
  auto group = generate_group(s, default_generators(s, spec));
  auto reduction = orbit_reduce(s, f.hrep.facets, group, c.verbose);
  Output out(c.out);
  write_orbit_report(out.stream(), reduction, group, c.verbose);
  std::cerr << "group order: " << group.order() << " orbits: " << reduction.orbits.size()
            << " closure: " << (reduction.outside_input == 0 ? "pass" : "fail") << '\n';
  return 0;
}

ProbabilityAssignment model_assignment(const Config& c, const Scenario& s,
                                       std::vector<Point>* vertices_out = nullptr) {
  if (c.model == "ghz") {
    GhzParams p = GhzParams::uniform(Angle::parse(c.phi1), Angle::parse(c.phi2));
    for (auto& [e, a] : parse_angle_list(c.angles)) p.angles[e] = a;
    return ghz_assignment(s, p);
  }
  if (c.model == "singlet") {
    SingletParams p;
    if (c.config == "symmetric")
      p = SingletParams::symmetric(parse_parity(c.parity));
    else if (c.config == "asymmetric")
      p = SingletParams::asymmetric(parse_parity(c.parity));
    else if (c.config == "custom")
      p.parity = parse_parity(c.parity);
    else
      throw UsageError("--config must be symmetric, asymmetric or custom");
    for (auto& [e, a] : parse_angle_list(c.angles)) p.directions[e] = a;
    return singlet_assignment(s, p);
  }
  if (c.model == "classical" || c.model == "uniform") {
    Point p;
    if (!c.point_file.empty()) {
      p = load_point(c.point_file);
    } else {
      auto vs = enumerate_vertices(s);
      p.assign(s.dimension(), 0);
      for (const auto& v : vs)
        for (std::size_t i = 0; i < v.size(); ++i) p[i] += v[i];
      for (auto& x : p) x /= static_cast<long>(vs.size());
      if (vertices_out) *vertices_out = std::move(vs);
    }
    if (p.size() != s.dimension()) throw Error(Errc::DimensionMismatch, "point length");
    return exact_assignment(p);
  }
  throw UsageError("--model must be ghz, singlet or classical");
}

int cmd_check(const Config& c) {
  auto s = load(c);
  auto f = load_facets(c, s);
  auto a = model_assignment(c, s);
  Output out(c.out);
  std::vector<ViolationRecord> records(f.hrep.facets.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(records.size()); ++i)
    records[i] = evaluate(f.hrep.facets[i], a, static_cast<std::size_t>(i) + 1);
  std::size_t violated = 0;
  const ViolationRecord* worst = nullptr;
  for (const auto& r : records) {
    if (r.violated) ++violated;
    if (!worst || r.violation > worst->violation) worst = &r;
  }
  if (out.to_file()) {
    // Same rows as a one-point scan, without the grid column.
    out.stream() << "inequality_id,bound,value,violation,violated\n";
    for (const auto& r : records)
      if (!c.only_violated || r.violated) write_csv_row(out.stream(), r);
  }
  std::cout << "violated: " << violated << " / " << records.size() << '\n';
  if (worst) {
    std::cout << "max violation: "
              << (worst->exact_value ? to_string(*worst->exact_value - worst->bound)
                                     : std::to_string(worst->violation))
              << " (inequality " << worst->inequality_id << ")\n";
    if (c.verbose) std::cout << pretty(f.hrep.facets[worst->inequality_id - 1], labels(s)) << '\n';
  }
  return 0;
}

std::vector<std::size_t> parse_ids(const std::string& text, std::size_t max) {
  std::vector<std::size_t> ids;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t id = std::stoul(item);
    if (id == 0 || id > max) throw UsageError("inequality id out of range: " + item);
    ids.push_back(id);
  }
  return ids;
}

int cmd_scan(const Config& c) {
  auto s = load(c);
  auto f = load_facets(c, s);
  Angle lo = Angle::parse(c.lo), hi = Angle::parse(c.hi);
  SweepSpec sweep;
  if (c.sweep == "fig1" || c.sweep == "ghz-phase")
    sweep = ghz_phase_sweep(s, c.points, lo, hi);
  else if (c.sweep == "ghz-grid")
    sweep = ghz_phase_grid(s, c.points, c.points_y ? c.points_y : c.points);
  else if (c.sweep == "fig2" || c.sweep == "singlet")
    sweep = singlet_direction_sweep(s, parse_parity(c.parity), c.points, lo, hi);
  else
    throw UsageError("--sweep must be fig1, ghz-phase, ghz-grid, fig2 or singlet");

  std::vector<Inequality> selected;
  std::vector<std::size_t> ids;
  if (c.ids.empty()) {
    selected = f.hrep.facets;
    for (std::size_t i = 0; i < selected.size(); ++i) ids.push_back(i + 1);
  } else {
    ids = parse_ids(c.ids, f.hrep.facets.size());
    for (auto id : ids) selected.push_back(f.hrep.facets[id - 1]);
  }

  Output out(c.out);
  write_csv_header(out.stream(), sweep);
  auto summary = scan(selected, sweep, [&](const ViolationRecord& r) {
    if (c.only_violated && !r.violated) return;
    ViolationRecord copy = r;
    copy.inequality_id = ids[r.inequality_id - 1];
    write_csv_row(out.stream(), copy);
  });
  summary.argmax_inequality = ids[summary.argmax_inequality - 1];

  std::string json = summary_json(summary, sweep);
  if (c.refine) {
    auto best = std::find(ids.begin(), ids.end(), summary.argmax_inequality) - ids.begin();
    auto r = refine_max(selected[static_cast<std::size_t>(best)], sweep);
    std::cerr << "refined max violation: " << r.violation << " at " << r.param << '\n';
  }
  if (!c.summary_file.empty()) {
    std::ofstream sf(c.summary_file, std::ios::binary);
    if (!sf) throw Error(Errc::IO, "cannot write " + c.summary_file);
    sf << json << '\n';
  }
  (out.to_file() ? std::cout : std::cerr) << json << '\n';
  return 0;
}

int cmd_membership(const Config& c) {
  auto s = load(c);
  auto vertices = enumerate_vertices(s);
  Point p;
  if (!c.point_file.empty()) {
    p = load_point(c.point_file);
  } else if (c.point_preset == "centroid" || c.point_preset.empty()) {
    p.assign(s.dimension(), 0);
    for (const auto& v : vertices)
      for (std::size_t i = 0; i < v.size(); ++i) p[i] += v[i];
    for (auto& x : p) x /= static_cast<long>(vertices.size());
  } else if (c.point_preset == "pr-box") {
    // Singles 1/2; three pairs 1/2 and the last 0. Outside CH.
    p.assign(s.dimension(), Rational(1, 2));
    std::size_t pairs = 0;
    for (std::size_t k = 0; k < s.dimension(); ++k)
      if (s.basis()[k].degree() == 2) ++pairs;
    if (pairs == 0) throw UsageError("pr-box needs joint monomials");
    for (std::size_t k = s.dimension(); k-- > 0;)
      if (s.basis()[k].degree() == 2) {
        p[k] = 0;
        break;
      }
  } else if (c.point_preset == "ghz") {
    auto a = ghz_assignment(s, GhzParams::uniform(Angle::pi_times(0), Angle::pi_times(Rational(1, 2))));
    p.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      p[k] = a.exact[k] ? *a.exact[k] : rationalize(a.values[k], 1'000'000'000);
  } else if (c.point_preset.rfind("vertex:", 0) == 0) {
    std::size_t k = std::stoul(c.point_preset.substr(7));
    if (k >= vertices.size()) throw UsageError("vertex index out of range");
    p = vertices[k];
  } else {
    throw UsageError("--point-preset must be centroid, pr-box, ghz or vertex:K");
  }
  if (p.size() != s.dimension())
    throw Error(Errc::DimensionMismatch, "point has " + std::to_string(p.size()) +
                                             " coordinates, basis has " +
                                             std::to_string(s.dimension()));
  auto cert = membership(p, vertices);
  Output out(c.out);
  auto& os = out.stream();
  os << "# membership: " << (cert.inside ? "inside" : "outside") << '\n';
  if (cert.inside) {
    for (std::size_t j = 0; j < cert.weights.size(); ++j)
      if (cert.weights[j] != 0) os << "weight " << j << ' ' << to_string(cert.weights[j]) << '\n';
  } else {
    os << "separator " << to_line(cert.separator) << '\n';
    std::cerr << pretty(cert.separator, labels(s)) << '\n';
  }
  std::cerr << "membership: " << (cert.inside ? "inside" : "outside") << " certificate "
            << (certificate_holds(cert, p, vertices) ? "verified" : "INVALID") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation polytopes, Boole-Bell inequalities and quantum violations"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--preset", c.preset, "Built-in scenario (ch, ghz26, two-by-three, bell-wigner, ghz-singles-triples)");
  app.add_option("--scenario", c.scenario_file, "Scenario file")->check(CLI::ExistingFile);
  app.add_option("--out", c.out, "Output path (default stdout)");
  app.add_option("--threads", c.threads, "Worker thread cap")->check(CLI::PositiveNumber);
  app.add_flag("--slow", c.slow, "Allow the long GHZ-sized hull runs");
  app.add_option("--ray-cap", c.ray_cap, "Double description intermediate ray limit");

  auto* vertices = app.add_subcommand("vertices", "Write the vertex list of a scenario");

  auto* facets = app.add_subcommand("facets", "Enumerate the facets (hull problem)");
  facets->add_option("--vertices", c.vertices_file, "Vertex file instead of a scenario")
      ->check(CLI::ExistingFile);
  facets->add_option("--order", c.order, "Constraint insertion order: lex or max-cutoff");
  facets->add_flag("--verify", c.verify, "Check validity and tightness of the result");

  auto* orbits = app.add_subcommand("orbits", "Reduce a facet file by symmetry");
  orbits->add_option("--facets", c.facets_file, "Inequality file")->check(CLI::ExistingFile);
  orbits->add_option("--group", c.group, "full, complement, permute or trivial");
  orbits->add_flag("--verbose", c.verbose, "List members with generator words");

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--facets", c.facets_file, "Inequality file")->check(CLI::ExistingFile);
    sub->add_option("--parity", c.parity, "Singlet outcome convention: parallel or opposite");
    sub->add_flag("--only-violated", c.only_violated, "Write violated records only");
  };
  auto* check = app.add_subcommand("check", "Evaluate inequalities at one model point");
  add_model(check);
  check->add_option("--model", c.model, "ghz, singlet or classical (alias uniform)")->required();
  check->add_option("--phi1", c.phi1, "GHZ phase of setting 1 for every party");
  check->add_option("--phi2", c.phi2, "GHZ phase of setting 2 for every party");
  check->add_option("--angle", c.angles, "Per-event override, e.g. A2=pi/2");
  check->add_option("--config", c.config, "Singlet directions: symmetric, asymmetric or custom");
  check->add_option("--point", c.point_file, "Classical point file (default: centroid)")
      ->check(CLI::ExistingFile);
  check->add_flag("--verbose", c.verbose, "Print the most violated inequality");

  auto* scan_cmd = app.add_subcommand("scan", "Sweep model parameters over a grid");
  add_model(scan_cmd);
  scan_cmd->add_option("--sweep", c.sweep, "fig1 | ghz-phase | ghz-grid | fig2 | singlet")->required();
  scan_cmd->add_option("--points", c.points, "Grid points per axis")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--points-y", c.points_y, "Second axis points (ghz-grid)");
  scan_cmd->add_option("--lo", c.lo, "Sweep start angle");
  scan_cmd->add_option("--hi", c.hi, "Sweep end angle");
  scan_cmd->add_option("--ids", c.ids, "Comma separated inequality ids (1-based lines)");
  scan_cmd->add_option("--summary", c.summary_file, "Write the JSON summary here too");
  scan_cmd->add_flag("--refine", c.refine, "Golden-section refinement of the maximum");

  auto* member = app.add_subcommand("membership", "Decide membership with a certificate");
  member->add_option("--point", c.point_file, "Point file")->check(CLI::ExistingFile);
  member->add_option("--point-preset", c.point_preset, "centroid, pr-box, ghz or vertex:K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (c.threads > 0) omp_set_num_threads(c.threads);

  try {
    if (*vertices) return cmd_vertices(c);
    if (*facets) return cmd_facets(c);
    if (*orbits) return cmd_orbits(c);
    if (*check) return cmd_check(c);
    if (*scan_cmd) return cmd_scan(c);
    if (*member) return cmd_membership(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::Parse || e.code() == Errc::IO ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
