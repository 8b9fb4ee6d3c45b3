// Timing comparison: the bitset-lattice toy engine (OpenMP-parallel closure
// table and superset-OR sweeps) against the naive serial reference that
// recomputes closures per query. Run manually; not part of the test suite.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bes/reference.hpp"
#include "bes/toy.hpp"

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int main() {
#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  // -- 2-atom universe: engine vs reference, verified to agree -------------
  bes::toy::ToyUniverse u2({"p", "q"});
  auto t0 = Clock::now();
  bes::toy::ToyEngine engine2(u2);
  std::printf("2-atom closure table (256 bases):     %8.2f ms\n", ms_since(t0));

  const auto shallow = bes::toy::enumerate_toy_formulas(u2, 1);  // 12 formulas
  const std::uint64_t lattice2 = engine2.lattice_size();

  t0 = Clock::now();
  std::size_t engine_hits = 0;
  for (const auto& f : shallow)
    for (std::uint64_t b = 0; b < lattice2; ++b)
      engine_hits += engine2.supports(b, f) ? 1 : 0;
  double engine_ms = ms_since(t0);
  std::printf("engine, %zu formulas x 256 bases:      %8.2f ms\n", shallow.size(), engine_ms);

  t0 = Clock::now();
  std::size_t reference_hits = 0;
  for (const auto& f : shallow)
    for (std::uint64_t b = 0; b < lattice2; ++b)
      reference_hits += bes::toy::reference_supports(u2, b, f) ? 1 : 0;
  double reference_ms = ms_since(t0);
  std::printf("reference, same sweep:                %8.2f ms  (%.1fx)\n", reference_ms,
              reference_ms / (engine_ms > 0 ? engine_ms : 0.01));
  if (engine_hits != reference_hits) {
    std::printf("MISMATCH: engine %zu vs reference %zu\n", engine_hits, reference_hits);
    return 1;
  }

  // -- deep formula sweep, engine only --------------------------------------
  const auto deep = bes::toy::enumerate_toy_formulas(u2, 2);  // 147 formulas
  t0 = Clock::now();
  std::size_t monotone = 0;
  for (const auto& f : deep) monotone += engine2.monotone(f) ? 1 : 0;
  std::printf("monotonicity, %zu formulas:           %8.2f ms (%zu monotone)\n", deep.size(),
              ms_since(t0), monotone);

  // -- 3-atom universe: the 16.7M-base closure table ------------------------
  bes::toy::ToyUniverse u3({"p", "q", "r"});
  t0 = Clock::now();
  bes::toy::ToyEngine engine3(u3);
  std::printf("3-atom closure table (2^24 bases):    %8.2f ms\n", ms_since(t0));

  const auto probe = bes::toy::enumerate_toy_formulas(u3, 1);
  t0 = Clock::now();
  for (const auto& f : probe) engine3.support(f);
  std::printf("3-atom support bitsets, %zu formulas: %8.2f ms\n", probe.size(), ms_since(t0));
  return 0;
}
