#pragma once

// Seeded generators for instances, decompositions, scenes, formulas and
// constraint graphs. All randomness flows through Rng so outputs depend only
// on the seed.

#include <cstdint>
#include <random>

#include "compat/modular.hpp"
#include "compat/ramp.hpp"
#include "compat/reductions.hpp"

namespace compat {

// 64-bit Mersenne Twister (std::mt19937_64). Bounded draws use rejection
// sampling on raw outputs, so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  int range(int lo, int hi);
  // Uniform in [0, 1) with 53 random bits.
  double unit();
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// Each ordered pair gets an arc in each of the 2k graphs with probability
// `density`. Vertices are v1..vn.
Instance random_instance(Rng& rng, std::size_t n, int k, double density);

// `arcs` arcs per graph along a hidden random order, each flipped backwards
// with probability `back`. Suited to large sparse instances.
Instance random_sparse_instance(Rng& rng, std::size_t n, int k, std::size_t arcs, double back);

struct MdSample {
  Instance instance;
  ModularDecomposition md;
};

// Random decomposition tree over n leaves, every internal node with 2 to
// max_width children; each template arc carries a random nonempty tag set.
MdSample random_md_instance(Rng& rng, std::size_t n, int k, int max_width, double density);

// Conflict-free scene of n arms with centres in a square of side `spread`.
// Throws InputError when 1000 draws in a row are not conflict-free.
Scene random_scene(Rng& rng, std::size_t n, double spread, double eps = kDefaultEpsilon);

CnfFormula random_cnf(Rng& rng, int num_vars, int num_clauses);

// Cubic multigraph on an even number (2..12) of vertices with random weights,
// matching AND/OR types and two random legal orientations, distinct when the
// graph has more than one.
ConstraintGraph random_constraint_graph(Rng& rng, std::size_t vertex_count);

PartitionedGraph random_partitioned_graph(Rng& rng, std::size_t n, std::size_t parts, double density);

}  // namespace compat
