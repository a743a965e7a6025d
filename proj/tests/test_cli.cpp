#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corrpoly/io.hpp"
#include "support.hpp"

using namespace corrpoly;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("corrpoly_cli_" + std::to_string(getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

const TempDir& tmp() {
  static TempDir d;
  return d;
}

testing::RunResult cli(const std::string& args) {
  return testing::run(std::string(CORRPOLY_CLI) + " " + args + " 2>/dev/null");
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("vertices") {
  auto r = cli("vertices --preset ch");
  CHECK(r.status == 0);
  auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 16);
  for (const auto& row : rows) CHECK(row.size() == 15);  // 8 digits, 7 spaces
  auto g = cli("vertices --preset ghz26");
  CHECK(data_lines(g.out).size() == 64);

  write_file(tmp() / "one.scn", "events: A1\n");
  auto one = cli("vertices --scenario " + tmp() / "one.scn");
  CHECK(one.status == 0);
  CHECK(data_lines(one.out) == std::vector<std::string>{"0", "1"});
}

TEST_CASE("facets") {
  auto r = cli("facets --preset ch --out " + tmp() / "ch.txt");
  REQUIRE(r.status == 0);
  auto f = load_inequalities(tmp() / "ch.txt");
  CHECK(f.hrep.facets.size() == 24);
  CHECK(testing::as_set(f.hrep.facets) == testing::as_set(testing::ch_fixture()));

  // from a vertex file
  cli("vertices --preset ch --out " + tmp() / "chv.txt");
  auto v = cli("facets --vertices " + tmp() / "chv.txt");
  CHECK(v.status == 0);
  CHECK(data_lines(v.out).size() == 24);
  // preset and explicit vertex file give the same bytes
  auto both = cli("facets --preset ch --vertices " + tmp() / "chv.txt");
  CHECK(both.out == testing::slurp(tmp() / "ch.txt"));
}

TEST_CASE("exit codes") {
  CHECK(cli("").status == 1);
  CHECK(cli("bogus").status == 1);
  CHECK(cli("facets").status == 1);
  CHECK(cli("facets --preset nope").status == 1);
  CHECK(cli("facets --preset ch --scenario /nonexistent").status == 1);
  CHECK(cli("orbits --preset ch --facets /nonexistent").status == 1);
  CHECK(cli("facets --preset ghz26").status == 1);
  CHECK(cli("facets --preset ch --order sideways").status == 1);
  CHECK(cli("facets --preset two-by-three --ray-cap 10").status == 2);
  CHECK(cli("--help").status == 0);
  cli("facets --preset ch --out " + tmp() / "ch.txt");
  CHECK(cli("check --preset two-by-three --facets " + tmp() / "ch.txt" + " --model uniform").status == 2);
  cli("facets --preset bell-wigner --out " + tmp() / "bw.txt");
  CHECK(cli("check --preset bell-wigner --facets " + tmp() / "bw.txt" + " --model singlet").status == 2);
  write_file(tmp() / "short.pt", "1/2 1/2\n");
  CHECK(cli("membership --preset ch --point " + tmp() / "short.pt").status == 2);
}

TEST_CASE("orbits") {
  cli("facets --preset ch --out " + tmp() / "ch.txt");
  auto trivial = cli("orbits --preset ch --group trivial --facets " + tmp() / "ch.txt");
  CHECK(trivial.status == 0);
  CHECK(trivial.out.find("# orbits: 24\n") != std::string::npos);
  auto comp = cli("orbits --preset ch --group complement --facets " + tmp() / "ch.txt");
  CHECK(comp.out.find("# group order: 16\n") != std::string::npos);
  CHECK(comp.out.find("# closed: yes\n") != std::string::npos);
  auto full = cli("orbits --preset ch --facets " + tmp() / "ch.txt" + " --verbose");
  CHECK(full.out.find("# orbits: 2\n") != std::string::npos);
}

TEST_CASE("check") {
  cli("facets --preset two-by-three --out " + tmp() / "t23.txt");
  auto u = cli("check --preset two-by-three --facets " + tmp() / "t23.txt" + " --model uniform");
  CHECK(u.status == 0);
  CHECK(u.out.rfind("violated: 0 / 684\n", 0) == 0);
  auto p = cli("check --preset two-by-three --facets " + tmp() / "t23.txt" +
               " --model singlet --parity parallel --only-violated --out " + tmp() / "par.csv");
  CHECK(p.out.rfind("violated: 12 / 684\n", 0) == 0);
  CHECK(data_lines(testing::slurp(tmp() / "par.csv")).size() == 13);
  auto g = cli("check --preset two-by-three --facets " + tmp() / "t23.txt" +
               " --model singlet --angle A1=0 --angle B1=pi/2 --config asymmetric");
  CHECK(g.status == 0);
}

TEST_CASE("single-point scan matches check") {
  cli("facets --preset two-by-three --out " + tmp() / "t23.txt");
  cli("check --preset two-by-three --facets " + tmp() / "t23.txt" +
      " --model singlet --out " + tmp() / "chk.csv");
  cli("scan --preset two-by-three --facets " + tmp() / "t23.txt" +
      " --sweep fig2 --points 1 --lo 2pi/3 --hi 2pi/3 --out " + tmp() / "scan.csv");
  auto scan = data_lines(testing::slurp(tmp() / "scan.csv"));
  auto check = data_lines(testing::slurp(tmp() / "chk.csv"));
  REQUIRE(scan.size() == check.size());
  REQUIRE(scan.size() == 685);
  for (std::size_t i = 0; i < scan.size(); ++i) CHECK(scan[i].substr(scan[i].find(',') + 1) == check[i]);
}

TEST_CASE("outputs do not depend on the thread count") {
  for (const char* threads : {"1", "8"}) {
    std::string t = threads;
    cli("--threads " + t + " facets --preset two-by-three --out " + tmp() / ("f" + t));
    cli("--threads " + t + " scan --preset two-by-three --facets " + tmp() / "f1" +
        " --sweep fig2 --points 33 --summary " + tmp() / ("s" + t + ".json") + " --out " +
        tmp() / ("c" + t + ".csv"));
  }
  CHECK(testing::slurp(tmp() / "f1") == testing::slurp(tmp() / "f8"));
  CHECK(testing::slurp(tmp() / "c1.csv") == testing::slurp(tmp() / "c8.csv"));
  CHECK(testing::slurp(tmp() / "s1.json") == testing::slurp(tmp() / "s8.json"));
  CHECK(!testing::slurp(tmp() / "c1.csv").empty());
}

TEST_CASE("scan options") {
  cli("facets --preset two-by-three --out " + tmp() / "t23.txt");
  auto r = cli("scan --preset two-by-three --facets " + tmp() / "t23.txt" +
               " --sweep fig2 --points 5 --ids 3,1 --out " + tmp() / "ids.csv");
  CHECK(r.status == 0);
  auto rows = data_lines(testing::slurp(tmp() / "ids.csv"));
  REQUIRE(rows.size() == 1 + 5 * 2);
  CHECK(rows[1].find(",3,") != std::string::npos);
  CHECK(rows[2].find(",1,") != std::string::npos);
  CHECK(cli("scan --preset two-by-three --facets " + tmp() / "t23.txt" + " --sweep fig2 --ids 0").status == 1);
  CHECK(cli("scan --preset two-by-three --facets " + tmp() / "t23.txt" + " --sweep fig9").status == 1);
}

TEST_CASE("membership") {
  auto c = cli("membership --preset ch --point-preset centroid");
  CHECK(c.status == 0);
  auto lines = data_lines(c.out);
  REQUIRE(lines.size() == 16);
  for (const auto& l : lines) CHECK(l.substr(l.rfind(' ') + 1) == "1/16");
  CHECK(c.out.rfind("# membership: inside\n", 0) == 0);

  auto v = cli("membership --preset ch --point-preset vertex:9");
  CHECK(data_lines(v.out) == std::vector<std::string>{"weight 9 1"});

  write_file(tmp() / "pr.pt", "1/2 1/2 1/2 1/2\n1/2 1/2 1/2 0\n");
  auto pr = cli("membership --preset ch --point " + tmp() / "pr.pt");
  CHECK(pr.out.rfind("# membership: outside\n", 0) == 0);
  auto sep = data_lines(pr.out);
  REQUIRE(sep.size() == 1);
  std::istringstream in("# basis: A1 A2 B1 B2 A1B1 A1B2 A2B1 A2B2\n" + sep[0].substr(10) + "\n");
  auto q = read_inequalities(in).hrep.facets.at(0);
  CHECK(testing::as_set(testing::ch_fixture()).count(q) == 1);
  CHECK(cli("membership --preset ch --point-preset pr-box").out == pr.out);
}
