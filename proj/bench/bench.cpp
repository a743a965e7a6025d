// Serial reference vs OpenMP timings for the parallel kernels.
//
//   corrpoly_bench [--reps N] [--ghz]
//
// --ghz adds the 26-dimensional hull (about ten seconds per run).

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>

#include <omp.h>

#include <CLI11.hpp>

#include "corrpoly/double_description.hpp"
#include "corrpoly/presets.hpp"
#include "corrpoly/scan.hpp"
#include "corrpoly/scenario.hpp"

using namespace corrpoly;

namespace {

// Best of `reps` wall-clock runs, in milliseconds.
double best_ms(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel) {
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed << std::setprecision(2)
            << std::setw(12) << serial << std::setw(12) << parallel << std::setw(9)
            << serial / parallel << "x\n";
}

// Four parties, four settings, all pairs: 2^16 vertices.
Scenario wide_scenario() {
  std::vector<EventId> ev;
  for (const char* p : {"A", "B", "C", "D"})
    for (int i = 1; i <= 4; ++i) ev.push_back({p, i});
  std::vector<Monomial> joints;
  for (std::size_t a = 0; a < ev.size(); ++a)
    for (std::size_t b = a + 1; b < ev.size(); ++b)
      if (ev[a].party != ev[b].party) joints.push_back(Monomial({ev[a], ev[b]}));
  return build_scenario(ev, joints, "bench-4x4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrpoly kernel benchmark"};
  int reps = 3;
  bool ghz = false;
  app.add_option("--reps", reps, "Repetitions per kernel (best is reported)")->check(CLI::PositiveNumber);
  app.add_flag("--ghz", ghz, "Include the GHZ hull");
  CLI11_PARSE(app, argc, argv);

  std::cout << "threads: " << omp_get_max_threads() << "\n\n"
            << std::left << std::setw(34) << "kernel" << std::right << std::setw(12) << "serial ms"
            << std::setw(12) << "omp ms" << std::setw(10) << "speedup" << '\n';

  auto wide = wide_scenario();
  row("vertices " + wide.name() + " (65536)",
      best_ms(reps, [&] { enumerate_vertex_rows_serial(wide); }),
      best_ms(reps, [&] { enumerate_vertex_rows(wide); }));

  std::vector<std::string> hulls{"two-by-three", "ghz-singles-triples"};
  if (ghz) hulls.push_back("ghz26");
  for (const auto& name : hulls) {
    auto rows = enumerate_vertex_rows(preset(name));
    DDOptions serial, parallel;
    serial.parallel = false;
    row("facets " + name, best_ms(reps, [&] { facet_enumeration(rows, serial); }),
        best_ms(reps, [&] { facet_enumeration(rows, parallel); }));
  }

  auto gst = preset("ghz-singles-triples");
  auto facets = facet_enumeration(enumerate_vertex_rows(gst)).facets;
  auto sweep = ghz_phase_grid(gst, 64, 64);
  row("scan ghz-singles-triples 64x64", best_ms(reps, [&] { scan_serial(facets, sweep); }),
      best_ms(reps, [&] { scan(facets, sweep); }));
  return 0;
}
