#include "corrpoly/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "corrpoly/errors.hpp"

namespace corrpoly {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

// "key: value" header inside a '#' comment, or empty key.
std::pair<std::string, std::string> header_field(const std::string& line) {
  auto t = trim(line);
  if (t.empty() || t[0] != '#') return {};
  auto body = trim(std::string_view(t).substr(1));
  auto colon = body.find(':');
  if (colon == std::string::npos) return {};
  return {trim(std::string_view(body).substr(0, colon)),
          trim(std::string_view(body).substr(colon + 1))};
}

std::int64_t parse_int(const std::string& w, std::size_t line_no) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": bad integer '" + w + "'");
  }
}

Inequality parse_inequality_line(const std::string& text, std::size_t line_no) {
  auto ws = words(text);
  if (ws.size() < 2)
    throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": need a bound and coefficients");
  Inequality q;
  q.bound = parse_int(ws[0], line_no);
  for (std::size_t i = 1; i < ws.size(); ++i) q.coeffs.push_back(parse_int(ws[i], line_no));
  return q;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IO, "cannot open " + path);
  return in;
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::vector<EventId> events;
  std::vector<Monomial> joints;
  bool saw_events = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto body = strip_comment(line);
    if (body.empty()) continue;
    auto colon = body.find(':');
    if (colon == std::string::npos)
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'key: value'");
    auto key = trim(std::string_view(body).substr(0, colon));
    auto value = std::string_view(body).substr(colon + 1);
    if (key == "events") {
      if (saw_events) throw Error(Errc::Parse, "duplicate events line");
      saw_events = true;
      for (const auto& w : words(value)) events.push_back(EventId::parse(w));
    } else if (key == "joint") {
      std::string joined;
      for (const auto& w : words(value)) joined += w;
      joints.push_back(Monomial::parse(joined));
    } else if (key == "name") {
      if (name.empty()) name = trim(value);
    } else {
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!saw_events) throw Error(Errc::Parse, "missing 'events:' line");
  return build_scenario(std::move(events), std::move(joints), std::move(name));
}

Scenario load_scenario(const std::string& path) {
  auto in = open_in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  return parse_scenario(buf.str(), stem);
}

std::string scenario_text(const Scenario& s) {
  std::string out;
  if (!s.name().empty()) out += "name: " + s.name() + "\n";
  out += "events:";
  for (const auto& e : s.events()) out += " " + e.str();
  out += "\n";
  for (std::size_t k = s.num_events(); k < s.dimension(); ++k) {
    out += "joint:";
    for (const auto& e : s.basis()[k].events()) out += " " + e.str();
    out += "\n";
  }
  return out;
}

void write_vertices(std::ostream& out, const Scenario& s, const std::vector<std::vector<int>>& rows) {
  out << "# scenario: " << s.name() << "\n# basis: " << s.basis_string() << "\n# vertices: "
      << rows.size() << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
}

std::vector<std::vector<int>> read_vertices(std::istream& in) {
  std::vector<std::vector<int>> rows;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto body = strip_comment(line);
    if (body.empty()) continue;
    std::vector<int> row;
    for (const auto& w : words(body)) row.push_back(static_cast<int>(parse_int(w, line_no)));
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(Errc::DimensionMismatch, "line " + std::to_string(line_no) + ": ragged vertex row");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_inequalities(std::ostream& out, const Scenario& s, const HRepresentation& h) {
  out << "# scenario: " << s.name() << "\n# basis: " << s.basis_string() << "\n# facets: "
      << h.facets.size() << '\n';
  for (const auto& e : h.equations) out << "# equation: " << to_line(e) << '\n';
  for (const auto& q : h.facets) out << to_line(q) << '\n';
}

InequalityFile read_inequalities(std::istream& in) {
  InequalityFile f;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto [key, value] = header_field(line);
    if (key == "scenario") f.scenario = value;
    if (key == "basis") f.basis = words(value);
    if (key == "equation") f.hrep.equations.push_back(parse_inequality_line(value, line_no));
    auto body = strip_comment(line);
    if (body.empty()) continue;
    auto q = parse_inequality_line(body, line_no);
    if (!f.hrep.facets.empty() && q.coeffs.size() != f.hrep.facets.front().coeffs.size())
      throw Error(Errc::DimensionMismatch, "line " + std::to_string(line_no) + ": ragged inequality");
    f.hrep.facets.push_back(std::move(q));
  }
  if (!f.hrep.facets.empty())
    f.hrep.dimension = f.hrep.facets.front().coeffs.size();
  else
    f.hrep.dimension = f.basis.size();
  if (!f.basis.empty() && f.basis.size() != f.hrep.dimension)
    throw Error(Errc::DimensionMismatch, "basis header and inequality lengths differ");
  return f;
}

InequalityFile load_inequalities(const std::string& path) {
  auto in = open_in(path);
  return read_inequalities(in);
}

void check_basis(const InequalityFile& file, const Scenario& s) {
  if (file.hrep.dimension != s.dimension())
    throw Error(Errc::DimensionMismatch, "inequality file has dimension " +
                                             std::to_string(file.hrep.dimension) + ", scenario " +
                                             std::to_string(s.dimension()));
  if (file.basis.empty()) return;
  for (std::size_t k = 0; k < file.basis.size(); ++k)
    if (Monomial::parse(file.basis[k]) != s.basis()[k])
      throw Error(Errc::DimensionMismatch, "basis mismatch at " + file.basis[k]);
}

Point read_point(std::istream& in) {
  Point p;
  for (std::string line; std::getline(in, line);) {
    auto body = strip_comment(line);
    for (const auto& w : words(body)) p.push_back(parse_rational(w));
  }
  if (p.empty()) throw Error(Errc::EmptyInput, "point file holds no coordinates");
  return p;
}

Point load_point(const std::string& path) {
  auto in = open_in(path);
  return read_point(in);
}

void write_orbit_report(std::ostream& out, const OrbitReduction& reduction,
                        const SymmetryGroup& group, bool verbose) {
  out << "# group order: " << group.order() << "\n# generators:";
  for (const auto& g : group.generators) out << ' ' << g.name;
  out << "\n# orbits: " << reduction.orbits.size() << "\n# closed: "
      << (reduction.outside_input == 0 ? "yes" : "no") << '\n';
  for (std::size_t i = 0; i < reduction.orbits.size(); ++i) {
    const auto& o = reduction.orbits[i];
    out << "orbit " << i + 1 << " size " << o.members.size() << " stabilizer " << o.stabilizer_size
        << '\n'
        << to_line(o.representative) << '\n';
    if (verbose)
      for (std::size_t m = 0; m < o.members.size(); ++m)
        out << "  " << to_line(o.members[m]) << "  # " << (m < o.words.size() ? o.words[m] : "")
            << '\n';
  }
}

Inequality parse_expression(const Scenario& s, std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '_') t += ch;
  auto bad = [&](const std::string& why) {
    return Error(Errc::Parse, why + " in '" + std::string(text) + "'");
  };
  std::string expr, bound;
  if (auto le = t.find("<="); le != std::string::npos) {
    expr = t.substr(0, le);
    bound = t.substr(le + 2);
  } else if (auto ge = t.find(">="); ge != std::string::npos) {
    bound = t.substr(0, ge);
    expr = t.substr(ge + 2);
  } else {
    throw bad("missing <= or >=");
  }
  Inequality q;
  q.coeffs.assign(s.dimension(), 0);
  try {
    std::size_t used = 0;
    q.bound = std::stoll(bound, &used);
    if (used != bound.size()) throw bad("bad bound");
  } catch (const std::logic_error&) {
    throw bad("bad bound");
  }
  std::size_t i = 0;
  bool any = false;
  while (i < expr.size()) {
    std::int64_t sign = 1;
    if (expr[i] == '+' || expr[i] == '-') {
      sign = expr[i] == '-' ? -1 : 1;
      ++i;
    } else if (any) {
      throw bad("expected + or -");
    }
    std::int64_t mag = 1;
    std::size_t digits = i;
    while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) ++i;
    if (i > digits) mag = std::stoll(expr.substr(digits, i - digits));
    if (expr.compare(i, 2, "P(") != 0) throw bad("expected P(");
    auto close = expr.find(')', i);
    if (close == std::string::npos) throw bad("unclosed P(");
    auto m = Monomial::parse(expr.substr(i + 2, close - i - 2));
    auto k = s.index_of(m);
    if (!k) throw Error(Errc::UnknownEventInMonomial, m.str() + " is not in the basis");
    q.coeffs[*k] += sign * mag;
    i = close + 1;
    any = true;
  }
  if (!any) throw bad("empty expression");
  return q;
}

}  // namespace corrpoly
