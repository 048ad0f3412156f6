#pragma once

#include <cstdint>
#include <random>

#include "mdkit/graph.hpp"
#include "mdkit/kernel.hpp"
#include "mdkit/nae.hpp"
#include "mdkit/sat.hpp"

namespace mdkit {

/// std::mt19937_64 with bounded draws by rejection sampling, so a seed gives
/// the same stream on every platform (std distributions do not promise that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  int between(int lo, int hi);
  /// True with probability percent / 100.
  bool chance(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }

 private:
  std::mt19937_64 engine_;
};

/// Random spanning tree plus each remaining pair with probability percent/100.
Graph random_connected_graph(Rng& rng, int n, int percent);

/// Connected graph on n >= 3 vertices with at least one true- or false-twin
/// class of size >= 3.
Graph random_twin_triple_graph(Rng& rng, int n);

/// Each variable joins a clause positively, negatively or not at all with
/// equal probability (empty clauses redrawn); m drawn from [1, m_max] before
/// duplicates are dropped.
CnfFormula random_cnf(Rng& rng, int n, int m_max);

/// Three distinct variables per clause, bounds uniform in [1, d]. When
/// 3 * clauses >= vars, draws are repeated until every variable occurs.
NaeInstance random_nae(Rng& rng, int d, int vars, int clauses);

struct PlantedKernelInstance {
  Graph graph;
  Modulator modulator;
  int planted_parts = 0;
};

/// A modulator of size x_size (0 or 1) and one equivalence class holding
/// exactly the identical-parts threshold of parts, plus a few random extra
/// parts. Co-cluster instances are complements of cluster ones.
PlantedKernelInstance planted_kernel_instance(Rng& rng, int x_size, ModulatorMode mode);

}  // namespace mdkit
