#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "corrpoly/inequality.hpp"
#include "corrpoly/rational.hpp"
#include "corrpoly/scenario.hpp"
#include "corrpoly/symmetry.hpp"

namespace corrpoly {

// Scenario files:
//   # comment
//   events: A1 A2 B1 B2
//   joint: A1 B1
Scenario parse_scenario(std::string_view text, std::string name = {});
Scenario load_scenario(const std::string& path);
std::string scenario_text(const Scenario& s);

/// One row per vertex, space separated 0/1 values, basis header comment.
void write_vertices(std::ostream& out, const Scenario& s, const std::vector<std::vector<int>>& rows);
std::vector<std::vector<int>> read_vertices(std::istream& in);

/// Inequality file: "<bound> <c1> ... <cN>" per line meaning c . p <= bound,
/// after "# scenario:", "# basis:" and "# equation:" header comments.
struct InequalityFile {
  std::string scenario;
  std::vector<std::string> basis;
  HRepresentation hrep;
};

void write_inequalities(std::ostream& out, const Scenario& s, const HRepresentation& h);
InequalityFile read_inequalities(std::istream& in);
InequalityFile load_inequalities(const std::string& path);

/// Throws DimensionMismatch when the file's basis header disagrees with `s`.
void check_basis(const InequalityFile& file, const Scenario& s);

/// Reads "-P(A1) + 2P(A2B1) <= 1" or "1 >= -P(A1) + ...", the form printed by
/// pretty(). Subscript underscores and repeated monomials are accepted.
/// Errors: Parse, UnknownEventInMonomial (monomial outside the basis).
Inequality parse_expression(const Scenario& s, std::string_view text);

/// Whitespace separated exact rationals ("1/2", "0.25"), '#' comments.
Point read_point(std::istream& in);
Point load_point(const std::string& path);

void write_orbit_report(std::ostream& out, const OrbitReduction& reduction,
                        const SymmetryGroup& group, bool verbose);

}  // namespace corrpoly
