#pragma once

// Hardness constructions as instance generators: three 3-SAT encodings, the
// multicolored independent set encoding and the constraint-logic encoding,
// each with solution maps in both directions and a brute-force oracle for the
// source problem.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "compat/arrangement.hpp"

namespace compat {

// Literal +j / -j refers to variable x_j (1-based).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  // Occurrences of each variable, index j-1.
  std::vector<int> occurrences() const;
  bool four_bounded() const;
};

// Throws InputError on a missing header, out-of-range literal, clause count
// mismatch or any clause without exactly three literals.
CnfFormula parse_dimacs(const std::string& text);
std::string to_dimacs(const CnfFormula& phi);
// Checks literal ranges; throws InputError.
void validate_cnf(const CnfFormula& phi);

// Index j-1 holds x_j.
using Assignment = std::vector<bool>;

bool satisfies(const CnfFormula& phi, const Assignment& asg);

inline constexpr int kMaxOracleVariables = 20;

// First satisfying assignment in binary counting order, x_j being bit j-1.
std::optional<Assignment> sat_oracle(const CnfFormula& phi);

enum class SatReductionKind { Planar, Acyclic, Reversed };
const char* sat_reduction_name(SatReductionKind kind);

inline constexpr VertexIndex kNoVertex = static_cast<VertexIndex>(-1);

// Where each part of the formula landed in the reduced instance.
struct SatReduction {
  SatReductionKind kind;
  Instance instance;
  std::vector<VertexIndex> variable;                   // x_j at j-1
  std::vector<std::array<VertexIndex, 3>> literal;     // planar, acyclic
  std::vector<VertexIndex> clause;                     // acyclic: d_i; reversed: C_i
  std::vector<std::array<VertexIndex, 3>> negative;    // acyclic; kNoVertex for positive literals
  VertexIndex global = kNoVertex;                      // acyclic
  VertexIndex t1 = kNoVertex;                          // reversed
  VertexIndex t2 = kNoVertex;                          // reversed
};

// Each construction checks its structural guarantees before returning and
// throws InternalError if one fails.
SatReduction reduce_sat_planar(const CnfFormula& phi);
SatReduction reduce_sat_acyclic(const CnfFormula& phi);
SatReduction reduce_sat_reversed(const CnfFormula& phi);
SatReduction reduce_sat(const CnfFormula& phi, SatReductionKind kind);

// Throws InputError when the assignment does not satisfy the formula.
LabeledOrdering ordering_from_assignment(const CnfFormula& phi, const SatReduction& red, const Assignment& asg);
// Throws InputError when the ordering is not a solution. Variables without a
// witness literal are false.
Assignment assignment_from_ordering(const CnfFormula& phi, const SatReduction& red, const LabeledOrdering& sol);

struct PartitionedGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<VertexIndex, VertexIndex>> edges;
  std::vector<std::vector<VertexIndex>> parts;
};

// Throws InputError on self-loops, bad indices or a non-partition.
void validate_partitioned_graph(const PartitionedGraph& pg);

struct MisReduction {
  Instance instance;
  std::size_t bound;
};

MisReduction reduce_mis(const PartitionedGraph& pg);

// One vertex per part, pairwise non-adjacent; first in odometer order over
// the parts with the last part fastest.
std::optional<std::vector<VertexIndex>> mis_oracle(const PartitionedGraph& pg);
bool is_multicolored_independent(const PartitionedGraph& pg, const std::vector<VertexIndex>& pick);

enum class NclType { And, Or };

struct NclEdge {
  std::string id;
  VertexIndex u;
  VertexIndex v;
  int weight;
};

// heads[e] is the endpoint edge e points to.
struct ConstraintGraph {
  std::vector<std::string> vertices;
  std::vector<NclType> types;
  std::vector<NclEdge> edges;
  std::vector<VertexIndex> source_heads;
  std::vector<VertexIndex> target_heads;
};

bool is_legal_orientation(const ConstraintGraph& cg, const std::vector<VertexIndex>& heads);
// Cubic, weights per vertex type, both orientations legal. Throws InputError.
void validate_constraint_graph(const ConstraintGraph& cg);

inline constexpr std::size_t kMaxNclEdges = 20;

// Shortest flip sequence (edge indices) through legal orientations, or
// nullopt when the target is unreachable.
std::optional<std::vector<std::size_t>> ncl_oracle(const ConstraintGraph& cg);

struct NclReduction {
  ArrangementInstance arrangement;
  std::vector<std::array<VertexIndex, 2>> endpoint;  // [e][0] at u, [e][1] at v
};

NclReduction reduce_ncl(const ConstraintGraph& cg);

// Each flip becomes a removal of the old head endpoint then an addition of
// the new one, each with its smallest legal label.
std::vector<Move> moves_from_flips(const ConstraintGraph& cg, const NclReduction& red,
                                   const std::vector<std::size_t>& flips);
// Inverse of the above; throws InputError when moves do not pair up.
std::vector<std::size_t> flips_from_moves(const ConstraintGraph& cg, const NclReduction& red,
                                          const std::vector<Move>& moves);

PartitionedGraph partitioned_graph_from_json(const Json& doc);
Json partitioned_graph_to_json(const PartitionedGraph& pg);
ConstraintGraph constraint_graph_from_json(const Json& doc);
Json constraint_graph_to_json(const ConstraintGraph& cg);

}  // namespace compat
