#include "compat/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "compat/poly.hpp"
#include "compat/verifier.hpp"

namespace compat {

std::vector<int> CnfFormula::occurrences() const {
  std::vector<int> count(static_cast<std::size_t>(std::max(num_vars, 0)), 0);
  for (const auto& clause : clauses) {
    for (int lit : clause) ++count.at(static_cast<std::size_t>(std::abs(lit) - 1));
  }
  return count;
}

bool CnfFormula::four_bounded() const {
  const auto count = occurrences();
  return std::all_of(count.begin(), count.end(), [](int c) { return c <= 4; });
}

void validate_cnf(const CnfFormula& phi) {
  if (phi.num_vars < 0) throw InputError("negative variable count");
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    for (int lit : phi.clauses[i]) {
      if (lit == 0 || std::abs(lit) > phi.num_vars) {
        throw InputError("clause " + std::to_string(i + 1) + " has out-of-range literal " + std::to_string(lit));
      }
    }
  }
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula phi;
  long declared_clauses = -1;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      long vars = -1;
      if (declared_clauses >= 0 || !(ls >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 0 ||
          declared_clauses < 0) {
        throw InputError("bad DIMACS header: " + line);
      }
      phi.num_vars = static_cast<int>(vars);
      continue;
    }
    if (declared_clauses < 0) throw InputError("DIMACS clause before the header");
    std::istringstream body(line);
    std::string tok;
    while (body >> tok) {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw InputError("bad DIMACS literal '" + tok + "'");
      if (lit == 0) {
        if (pending.size() != 3) {
          throw InputError("clause " + std::to_string(phi.clauses.size() + 1) + " has " +
                           std::to_string(pending.size()) + " literals; exactly 3 are required");
        }
        phi.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        if (std::labs(lit) > phi.num_vars) throw InputError("literal " + tok + " exceeds the variable count");
        pending.push_back(static_cast<int>(lit));
      }
    }
  }
  if (declared_clauses < 0) throw InputError("missing DIMACS header");
  if (!pending.empty()) throw InputError("last clause is not terminated by 0");
  if (static_cast<long>(phi.clauses.size()) != declared_clauses) {
    throw InputError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(phi.clauses.size()));
  }
  return phi;
}

std::string to_dimacs(const CnfFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.num_vars << ' ' << phi.clauses.size() << '\n';
  for (const auto& c : phi.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return out.str();
}

namespace {

bool literal_true(int lit, const Assignment& asg) {
  const bool value = asg[static_cast<std::size_t>(std::abs(lit) - 1)];
  return lit > 0 ? value : !value;
}

std::size_t var_index(int lit) { return static_cast<std::size_t>(std::abs(lit) - 1); }

}  // namespace

bool satisfies(const CnfFormula& phi, const Assignment& asg) {
  if (asg.size() != static_cast<std::size_t>(phi.num_vars)) return false;
  return std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const auto& c) {
    return literal_true(c[0], asg) || literal_true(c[1], asg) || literal_true(c[2], asg);
  });
}

std::optional<Assignment> sat_oracle(const CnfFormula& phi) {
  validate_cnf(phi);
  if (phi.num_vars > kMaxOracleVariables) {
    throw InputError("SAT oracle supports at most " + std::to_string(kMaxOracleVariables) + " variables");
  }
  const auto q = static_cast<std::size_t>(phi.num_vars);
  Assignment asg(q);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << q); ++bits) {
    for (std::size_t j = 0; j < q; ++j) asg[j] = ((bits >> j) & 1U) != 0;
    if (satisfies(phi, asg)) return asg;
  }
  return std::nullopt;
}

const char* sat_reduction_name(SatReductionKind kind) {
  switch (kind) {
    case SatReductionKind::Planar:
      return "sat-planar";
    case SatReductionKind::Acyclic:
      return "sat-acyclic";
    case SatReductionKind::Reversed:
      return "sat-reversed";
  }
  return "?";
}

namespace {

std::string literal_name(std::size_t clause, int pos) {
  return "c" + std::to_string(clause + 1) + "^" + std::to_string(pos + 1);
}

void add_variables(InstanceBuilder& b, const CnfFormula& phi, SatReduction& red) {
  for (int j = 1; j <= phi.num_vars; ++j) red.variable.push_back(b.add_vertex("x" + std::to_string(j)));
}

void add_literals(InstanceBuilder& b, const CnfFormula& phi, SatReduction& red) {
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    std::array<VertexIndex, 3> ids{};
    for (int a = 0; a < 3; ++a) ids[a] = b.add_vertex(literal_name(i, a));
    red.literal.push_back(ids);
  }
}

void add_positive_arcs(InstanceBuilder& b, const CnfFormula& phi, const SatReduction& red) {
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      const int lit = phi.clauses[i][a];
      if (lit < 0) continue;
      const VertexIndex c = red.literal[i][a];
      const VertexIndex x = red.variable[var_index(lit)];
      b.add_arc(Side::A, 1, c, x);
      b.add_arc(Side::A, 2, x, c);
    }
  }
}

void check_planar(const CnfFormula& phi, const SatReduction& red) {
  const Instance& inst = red.instance;
  if (inst.b(2).arc_count() != 0) throw InternalError("planar reduction: B2 must be empty");
  const Digraph simple = instance_union(inst, false);
  for (const auto& ids : red.literal) {
    for (VertexIndex c : ids) {
      if (simple.out_degree(c) > 3) throw InternalError("planar reduction: clause vertex degree exceeds 3");
    }
  }
  for (VertexIndex x : red.variable) {
    for (int l = 1; l <= 2; ++l) {
      for (Side s : {Side::A, Side::B}) {
        for (VertexIndex w : inst.graph(s, l).out(x)) {
          if (std::find(red.variable.begin(), red.variable.end(), w) != red.variable.end()) {
            throw InternalError("planar reduction: variable vertices must be independent");
          }
        }
      }
    }
  }
  if (phi.four_bounded()) {
    for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
      std::size_t degree = 0;
      for (int l = 1; l <= 2; ++l) {
        degree += inst.a(l).out_degree(v) + inst.a(l).in_degree(v) + inst.b(l).out_degree(v) + inst.b(l).in_degree(v);
      }
      if (degree > 8) throw InternalError("planar reduction: degree exceeds 8 on a 4-bounded formula");
    }
  }
}

void check_acyclic(const SatReduction& red) {
  for (int l = 1; l <= 2; ++l) {
    if (!is_acyclic(red.instance.a(l)) || !is_acyclic(red.instance.b(l))) {
      throw InternalError("acyclic reduction: graph of label " + std::to_string(l) + " has a cycle");
    }
  }
}

void check_reversed(const SatReduction& red) {
  const Instance& inst = red.instance;
  // Expected topological order: clauses, variables, t2, t1.
  std::vector<std::size_t> pos(inst.vertex_count(), 0);
  std::size_t next = 0;
  for (VertexIndex c : red.clause) pos[c] = next++;
  for (VertexIndex x : red.variable) pos[x] = next++;
  pos[red.t2] = next++;
  pos[red.t1] = next++;
  std::vector<const Digraph*> parts;
  std::vector<Digraph> reversed;
  reversed.reserve(static_cast<std::size_t>(inst.k()));
  for (int l = 1; l <= inst.k(); ++l) reversed.push_back(reverse_graph(inst.b(l)));
  for (int l = 1; l <= inst.k(); ++l) {
    parts.push_back(&inst.a(l));
    parts.push_back(&reversed[static_cast<std::size_t>(l - 1)]);
  }
  const Digraph all = union_graph(parts, true);
  for (const auto& [u, v] : all.arcs()) {
    if (pos[u] >= pos[v]) throw InternalError("reversed reduction: A + reversed B is not ordered C, X, t2, t1");
  }
}

}  // namespace

SatReduction reduce_sat_planar(const CnfFormula& phi) {
  validate_cnf(phi);
  InstanceBuilder b(2);
  SatReduction red{SatReductionKind::Planar, Instance({}, {LabelPair{}, LabelPair{}}), {}, {}, {}, {}};
  add_variables(b, phi, red);
  add_literals(b, phi, red);
  for (const auto& ids : red.literal) {
    for (int a = 0; a < 3; ++a) b.add_arc(Side::A, 2, ids[a], ids[(a + 1) % 3]);
  }
  add_positive_arcs(b, phi, red);
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      const int lit = phi.clauses[i][a];
      if (lit > 0) continue;
      const VertexIndex c = red.literal[i][a];
      const VertexIndex x = red.variable[var_index(lit)];
      b.add_arc(Side::B, 1, c, x);
      b.add_arc(Side::B, 1, x, c);
    }
  }
  red.instance = b.build();
  check_planar(phi, red);
  return red;
}

SatReduction reduce_sat_acyclic(const CnfFormula& phi) {
  validate_cnf(phi);
  InstanceBuilder b(2);
  SatReduction red{SatReductionKind::Acyclic, Instance({}, {LabelPair{}, LabelPair{}}), {}, {}, {}, {}};
  add_variables(b, phi, red);
  add_literals(b, phi, red);
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    red.clause.push_back(b.add_vertex("d" + std::to_string(i + 1)));
  }
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    std::array<VertexIndex, 3> neg{kNoVertex, kNoVertex, kNoVertex};
    for (int a = 0; a < 3; ++a) {
      if (phi.clauses[i][a] < 0) neg[a] = b.add_vertex("d" + std::to_string(i + 1) + "^" + std::to_string(a + 1));
    }
    red.negative.push_back(neg);
  }
  red.global = b.add_vertex("g");

  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    const auto& c = red.literal[i];
    const VertexIndex d = red.clause[i];
    b.add_arc(Side::A, 2, c[0], c[1]);
    b.add_arc(Side::A, 2, c[1], c[2]);
    b.add_arc(Side::A, 2, c[2], d);
    b.add_arc(Side::A, 1, d, c[0]);
    b.add_arc(Side::A, 2, d, red.global);
    b.add_arc(Side::B, 2, red.global, d);
  }
  add_positive_arcs(b, phi, red);
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      const int lit = phi.clauses[i][a];
      if (lit > 0) continue;
      const VertexIndex c = red.literal[i][a];
      const VertexIndex dn = red.negative[i][a];
      const VertexIndex x = red.variable[var_index(lit)];
      b.add_arc(Side::B, 1, dn, c);
      b.add_arc(Side::B, 1, c, x);
      b.add_arc(Side::B, 2, x, dn);
      b.add_arc(Side::A, 1, dn, red.global);
      b.add_arc(Side::B, 1, red.global, dn);
    }
  }
  red.instance = b.build();
  check_acyclic(red);
  return red;
}

SatReduction reduce_sat_reversed(const CnfFormula& phi) {
  validate_cnf(phi);
  InstanceBuilder b(3);
  SatReduction red{SatReductionKind::Reversed, Instance({}, {LabelPair{}, LabelPair{}, LabelPair{}}), {}, {}, {}, {}};
  add_variables(b, phi, red);
  red.t1 = b.add_vertex("t1");
  red.t2 = b.add_vertex("t2");
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) red.clause.push_back(b.add_vertex("C" + std::to_string(i + 1)));

  for (int l = 1; l <= 3; ++l) b.add_arc(Side::A, l, red.t2, red.t1);
  for (VertexIndex c : red.clause) {
    for (int l = 1; l <= 3; ++l) {
      b.add_arc(Side::A, l, c, red.t1);
      b.add_arc(Side::B, l, red.t2, c);
    }
  }
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      const int lit = phi.clauses[i][a];
      const VertexIndex x = red.variable[var_index(lit)];
      if (lit > 0) {
        b.add_arc(Side::A, a + 1, red.clause[i], x);
      } else {
        b.add_arc(Side::B, a + 1, x, red.clause[i]);
      }
    }
  }
  for (VertexIndex x : red.variable) {
    b.add_arc(Side::B, 1, red.t1, x);
    b.add_arc(Side::A, 2, x, red.t1);
    b.add_arc(Side::B, 2, red.t1, x);
    b.add_arc(Side::A, 3, x, red.t2);
  }
  red.instance = b.build();
  check_reversed(red);
  return red;
}

SatReduction reduce_sat(const CnfFormula& phi, SatReductionKind kind) {
  switch (kind) {
    case SatReductionKind::Planar:
      return reduce_sat_planar(phi);
    case SatReductionKind::Acyclic:
      return reduce_sat_acyclic(phi);
    case SatReductionKind::Reversed:
      return reduce_sat_reversed(phi);
  }
  throw InputError("unknown SAT reduction");
}

namespace {

int first_true_literal(const std::array<int, 3>& clause, const Assignment& asg) {
  for (int a = 0; a < 3; ++a) {
    if (literal_true(clause[a], asg)) return a;
  }
  return -1;
}

// True variables, one witness literal per clause (label 1), the two other
// literal vertices of each clause with the cycle successor first, false
// variables.
LabeledOrdering literal_ordering(const CnfFormula& phi, const SatReduction& red, const Assignment& asg,
                                 const std::vector<int>& chosen) {
  LabeledOrdering sol;
  auto push = [&](VertexIndex v, int label) {
    sol.order.push_back(v);
    sol.labels.push_back(label);
  };
  for (std::size_t j = 0; j < asg.size(); ++j) {
    if (asg[j]) push(red.variable[j], 1);
  }
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) push(red.literal[i][chosen[i]], 1);
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    int p = -1;
    int q = -1;
    for (int a = 0; a < 3; ++a) {
      if (a == chosen[i]) continue;
      (p < 0 ? p : q) = a;
    }
    // The cycle runs 1 -> 2 -> 3 -> 1; a literal vertex needs its successor
    // placed before it.
    if ((p + 1) % 3 == q) std::swap(p, q);
    push(red.literal[i][p], 2);
    push(red.literal[i][q], 2);
  }
  for (std::size_t j = 0; j < asg.size(); ++j) {
    if (!asg[j]) push(red.variable[j], 2);
  }
  return sol;
}

LabeledOrdering insert_dummies(const CnfFormula& phi, const SatReduction& red, const LabeledOrdering& base) {
  const std::size_t n = red.instance.vertex_count();
  std::vector<std::size_t> pos(n, 0);
  for (std::size_t p = 0; p < base.size(); ++p) pos[base.order[p]] = p;
  std::vector<std::vector<std::pair<VertexIndex, int>>> before(n);
  std::vector<std::vector<std::pair<VertexIndex, int>>> after(n);
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    after[red.literal[i][0]].push_back({red.clause[i], 1});
    for (int a = 0; a < 3; ++a) {
      if (red.negative[i][a] == kNoVertex) continue;
      const VertexIndex c = red.literal[i][a];
      const VertexIndex x = red.variable[var_index(phi.clauses[i][a])];
      if (pos[c] < pos[x]) {
        after[c].push_back({red.negative[i][a], 2});
      } else {
        before[x].push_back({red.negative[i][a], 2});
      }
    }
  }
  LabeledOrdering sol;
  auto push = [&](VertexIndex v, int label) {
    sol.order.push_back(v);
    sol.labels.push_back(label);
  };
  for (std::size_t p = 0; p < base.size(); ++p) {
    const VertexIndex v = base.order[p];
    for (const auto& [w, l] : before[v]) push(w, l);
    push(v, base.labels[p]);
    for (const auto& [w, l] : after[v]) push(w, l);
  }
  push(red.global, 1);
  return sol;
}

}  // namespace

LabeledOrdering ordering_from_assignment(const CnfFormula& phi, const SatReduction& red, const Assignment& asg) {
  if (!satisfies(phi, asg)) throw InputError("assignment does not satisfy the formula");
  std::vector<int> chosen;
  for (const auto& clause : phi.clauses) chosen.push_back(first_true_literal(clause, asg));

  LabeledOrdering sol;
  switch (red.kind) {
    case SatReductionKind::Planar:
      sol = literal_ordering(phi, red, asg, chosen);
      break;
    case SatReductionKind::Acyclic:
      sol = insert_dummies(phi, red, literal_ordering(phi, red, asg, chosen));
      break;
    case SatReductionKind::Reversed: {
      auto push = [&](VertexIndex v, int label) {
        sol.order.push_back(v);
        sol.labels.push_back(label);
      };
      for (std::size_t j = 0; j < asg.size(); ++j) {
        if (asg[j]) push(red.variable[j], 1);
      }
      push(red.t1, 1);
      for (std::size_t i = 0; i < phi.clauses.size(); ++i) push(red.clause[i], chosen[i] + 1);
      push(red.t2, 1);
      for (std::size_t j = 0; j < asg.size(); ++j) {
        if (!asg[j]) push(red.variable[j], 3);
      }
      break;
    }
  }
  if (auto bad = verify_direct(red.instance, sol)) {
    throw InternalError("forward map produced an invalid ordering at vertex " + red.instance.name(bad->vertex));
  }
  return sol;
}

Assignment assignment_from_ordering(const CnfFormula& phi, const SatReduction& red, const LabeledOrdering& sol) {
  if (verify_direct(red.instance, sol)) throw InputError("ordering is not a solution of the reduced instance");
  std::vector<int> label(red.instance.vertex_count(), 0);
  for (std::size_t p = 0; p < sol.size(); ++p) label[sol.order[p]] = sol.labels[p];

  Assignment asg(static_cast<std::size_t>(phi.num_vars), false);
  auto witness = [&](int lit) { asg[var_index(lit)] = lit > 0; };
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    if (red.kind == SatReductionKind::Reversed) {
      witness(phi.clauses[i][static_cast<std::size_t>(label[red.clause[i]] - 1)]);
    } else {
      for (int a = 0; a < 3; ++a) {
        if (label[red.literal[i][a]] == 1) witness(phi.clauses[i][a]);
      }
    }
  }
  if (!satisfies(phi, asg)) throw InternalError("extracted assignment does not satisfy the formula");
  return asg;
}

void validate_partitioned_graph(const PartitionedGraph& pg) {
  const std::size_t n = pg.vertices.size();
  for (const auto& [u, v] : pg.edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop on '" + pg.vertices[u] + "'");
  }
  std::vector<int> seen(n, 0);
  for (const auto& part : pg.parts) {
    for (VertexIndex v : part) {
      if (v >= n) throw InputError("part member out of range");
      if (seen[v]++) throw InputError("vertex '" + pg.vertices[v] + "' is in two parts");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) throw InputError("vertex '" + pg.vertices[v] + "' is in no part");
  }
}

MisReduction reduce_mis(const PartitionedGraph& pg) {
  validate_partitioned_graph(pg);
  InstanceBuilder b(1);
  for (const auto& name : pg.vertices) b.add_vertex(name);
  for (const auto& part : pg.parts) {
    for (VertexIndex u : part) {
      for (VertexIndex v : part) {
        if (u != v) b.add_arc(Side::A, 1, u, v);
      }
    }
  }
  for (const auto& [u, v] : pg.edges) {
    b.add_arc(Side::A, 1, u, v);
    b.add_arc(Side::A, 1, v, u);
  }
  return {b.build(), pg.parts.size()};
}

bool is_multicolored_independent(const PartitionedGraph& pg, const std::vector<VertexIndex>& pick) {
  if (pick.size() != pg.parts.size()) return false;
  std::vector<int> part_of(pg.vertices.size(), -1);
  for (std::size_t p = 0; p < pg.parts.size(); ++p) {
    for (VertexIndex v : pg.parts[p]) part_of[v] = static_cast<int>(p);
  }
  std::set<int> parts;
  std::set<VertexIndex> chosen;
  for (VertexIndex v : pick) {
    if (v >= pg.vertices.size()) return false;
    parts.insert(part_of[v]);
    chosen.insert(v);
  }
  if (parts.size() != pick.size()) return false;
  return std::none_of(pg.edges.begin(), pg.edges.end(),
                      [&](const auto& e) { return chosen.count(e.first) && chosen.count(e.second); });
}

std::optional<std::vector<VertexIndex>> mis_oracle(const PartitionedGraph& pg) {
  validate_partitioned_graph(pg);
  const std::size_t n = pg.vertices.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : pg.edges) adj[u][v] = adj[v][u] = 1;
  for (const auto& part : pg.parts) {
    if (part.empty()) return std::nullopt;
  }
  const std::size_t b = pg.parts.size();
  std::vector<std::size_t> digit(b, 0);
  while (true) {
    std::vector<VertexIndex> pick;
    bool ok = true;
    for (std::size_t p = 0; p < b && ok; ++p) {
      const VertexIndex v = pg.parts[p][digit[p]];
      for (VertexIndex u : pick) ok = ok && !adj[u][v];
      pick.push_back(v);
    }
    if (ok) return pick;
    std::size_t p = b;
    while (p > 0) {
      --p;
      if (++digit[p] < pg.parts[p].size()) break;
      digit[p] = 0;
      if (p == 0) return std::nullopt;
    }
  }
}

bool is_legal_orientation(const ConstraintGraph& cg, const std::vector<VertexIndex>& heads) {
  std::vector<int> in_weight(cg.vertices.size(), 0);
  for (std::size_t e = 0; e < cg.edges.size(); ++e) in_weight[heads[e]] += cg.edges[e].weight;
  return std::all_of(in_weight.begin(), in_weight.end(), [](int w) { return w >= 2; });
}

namespace {

// Incident edges of each vertex in declaration order.
std::vector<std::vector<std::size_t>> incidence(const ConstraintGraph& cg) {
  std::vector<std::vector<std::size_t>> inc(cg.vertices.size());
  for (std::size_t e = 0; e < cg.edges.size(); ++e) {
    inc[cg.edges[e].u].push_back(e);
    inc[cg.edges[e].v].push_back(e);
  }
  return inc;
}

int side_of(const NclEdge& e, VertexIndex w) { return w == e.u ? 0 : 1; }

}  // namespace

void validate_constraint_graph(const ConstraintGraph& cg) {
  const std::size_t n = cg.vertices.size();
  if (cg.types.size() != n) throw InputError("every constraint-graph vertex needs a type");
  std::set<std::string> ids(cg.vertices.begin(), cg.vertices.end());
  if (ids.size() != n) throw InputError("duplicate constraint-graph vertex id");
  std::set<std::string> edge_ids;
  for (const auto& e : cg.edges) {
    if (!edge_ids.insert(e.id).second) throw InputError("duplicate edge id '" + e.id + "'");
    if (e.u >= n || e.v >= n) throw InputError("edge '" + e.id + "' has an unknown endpoint");
    if (e.u == e.v) throw InputError("edge '" + e.id + "' is a loop");
    if (e.weight != 1 && e.weight != 2) throw InputError("edge '" + e.id + "' weight must be 1 or 2");
  }
  const auto inc = incidence(cg);
  for (std::size_t v = 0; v < n; ++v) {
    if (inc[v].size() != 3) throw InputError("vertex '" + cg.vertices[v] + "' is not incident to exactly 3 edges");
    int heavy = 0;
    for (std::size_t e : inc[v]) heavy += cg.edges[e].weight == 2 ? 1 : 0;
    if (cg.types[v] == NclType::Or && heavy != 3) {
      throw InputError("OR vertex '" + cg.vertices[v] + "' needs three weight-2 edges");
    }
    if (cg.types[v] == NclType::And && heavy != 1) {
      throw InputError("AND vertex '" + cg.vertices[v] + "' needs one weight-2 and two weight-1 edges");
    }
  }
  for (const auto* heads : {&cg.source_heads, &cg.target_heads}) {
    if (heads->size() != cg.edges.size()) throw InputError("every edge needs a head in both orientations");
    for (std::size_t e = 0; e < cg.edges.size(); ++e) {
      if ((*heads)[e] != cg.edges[e].u && (*heads)[e] != cg.edges[e].v) {
        throw InputError("head of edge '" + cg.edges[e].id + "' is not one of its endpoints");
      }
    }
    if (!is_legal_orientation(cg, *heads)) throw InputError("given orientation leaves a vertex with in-weight < 2");
  }
}

std::optional<std::vector<std::size_t>> ncl_oracle(const ConstraintGraph& cg) {
  validate_constraint_graph(cg);
  const std::size_t m = cg.edges.size();
  if (m > kMaxNclEdges) throw InputError("NCL oracle supports at most " + std::to_string(kMaxNclEdges) + " edges");
  // Bit e set: edge e points at its v endpoint.
  auto encode = [&](const std::vector<VertexIndex>& heads) {
    std::uint32_t mask = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (heads[e] == cg.edges[e].v) mask |= std::uint32_t{1} << e;
    }
    return mask;
  };
  std::vector<VertexIndex> heads(m);
  auto legal = [&](std::uint32_t mask) {
    for (std::size_t e = 0; e < m; ++e) heads[e] = ((mask >> e) & 1U) ? cg.edges[e].v : cg.edges[e].u;
    return is_legal_orientation(cg, heads);
  };
  const std::uint32_t start = encode(cg.source_heads);
  const std::uint32_t target = encode(cg.target_heads);
  constexpr std::uint32_t kUnseen = 0xFFFFFFFFu;
  std::vector<std::uint32_t> parent(std::size_t{1} << m, kUnseen);
  parent[start] = start;
  std::deque<std::uint32_t> queue{start};
  while (!queue.empty() && parent[target] == kUnseen) {
    const std::uint32_t s = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < m; ++e) {
      const std::uint32_t t = s ^ (std::uint32_t{1} << e);
      if (parent[t] != kUnseen || !legal(t)) continue;
      parent[t] = s;
      queue.push_back(t);
    }
  }
  if (parent[target] == kUnseen) return std::nullopt;
  std::vector<std::size_t> flips;
  for (std::uint32_t s = target; s != start; s = parent[s]) {
    flips.push_back(static_cast<std::size_t>(__builtin_ctz(s ^ parent[s])));
  }
  std::reverse(flips.begin(), flips.end());
  return flips;
}

NclReduction reduce_ncl(const ConstraintGraph& cg) {
  validate_constraint_graph(cg);
  InstanceBuilder b(2);
  NclReduction red{{Instance({}, {LabelPair{}, LabelPair{}}), {}, {}}, {}};
  for (const auto& e : cg.edges) {
    red.endpoint.push_back({b.add_vertex(cg.vertices[e.u] + "^" + e.id), b.add_vertex(cg.vertices[e.v] + "^" + e.id)});
  }
  for (const auto& ends : red.endpoint) {
    for (int l = 1; l <= 2; ++l) {
      b.add_arc(Side::A, l, ends[0], ends[1]);
      b.add_arc(Side::A, l, ends[1], ends[0]);
    }
  }
  const auto inc = incidence(cg);
  for (VertexIndex w = 0; w < cg.vertices.size(); ++w) {
    std::array<std::size_t, 3> e{inc[w][0], inc[w][1], inc[w][2]};
    if (cg.types[w] == NclType::And) {
      std::stable_partition(e.begin(), e.end(), [&](std::size_t x) { return cg.edges[x].weight == 2; });
    }
    std::array<VertexIndex, 3> at{};
    for (int i = 0; i < 3; ++i) at[i] = red.endpoint[e[i]][side_of(cg.edges[e[i]], w)];
    if (cg.types[w] == NclType::Or) {
      b.add_arc(Side::B, 1, at[0], at[2]);
      b.add_arc(Side::B, 1, at[1], at[0]);
      b.add_arc(Side::B, 1, at[0], at[1]);
      b.add_arc(Side::B, 2, at[1], at[2]);
      b.add_arc(Side::B, 2, at[2], at[0]);
      b.add_arc(Side::B, 2, at[2], at[1]);
    } else {
      for (int l = 1; l <= 2; ++l) {
        b.add_arc(Side::B, l, at[0], at[1]);
        b.add_arc(Side::B, l, at[0], at[2]);
        b.add_arc(Side::B, l, at[1], at[0]);
        b.add_arc(Side::B, l, at[2], at[0]);
      }
    }
  }
  red.arrangement.base = b.build();
  const std::size_t n = red.arrangement.base.vertex_count();
  red.arrangement.start.assign(n, 0);
  red.arrangement.target.assign(n, 0);
  for (std::size_t e = 0; e < cg.edges.size(); ++e) {
    red.arrangement.start[red.endpoint[e][side_of(cg.edges[e], cg.source_heads[e])]] = 1;
    red.arrangement.target[red.endpoint[e][side_of(cg.edges[e], cg.target_heads[e])]] = 1;
  }
  return red;
}

std::vector<Move> moves_from_flips(const ConstraintGraph& cg, const NclReduction& red,
                                   const std::vector<std::size_t>& flips) {
  std::vector<VertexIndex> heads = cg.source_heads;
  VertexSubset state = red.arrangement.start;
  std::vector<Move> moves;
  auto apply = [&](MoveOp op, VertexIndex v) {
    for (int l = 1; l <= 2; ++l) {
      const Move m{op, v, l};
      if (is_legal_move(red.arrangement.base, state, m)) {
        moves.push_back(m);
        state[v] = op == MoveOp::Add ? 1 : 0;
        return;
      }
    }
    throw InternalError("legal flip has no legal endpoint move for '" + red.arrangement.base.name(v) + "'");
  };
  for (std::size_t e : flips) {
    if (e >= cg.edges.size()) throw InputError("flip names an unknown edge");
    const NclEdge& edge = cg.edges[e];
    const int old_side = side_of(edge, heads[e]);
    heads[e] = old_side == 0 ? edge.v : edge.u;
    if (!is_legal_orientation(cg, heads)) throw InputError("flip of edge '" + edge.id + "' is illegal");
    apply(MoveOp::Remove, red.endpoint[e][old_side]);
    apply(MoveOp::Add, red.endpoint[e][1 - old_side]);
  }
  return moves;
}

std::vector<std::size_t> flips_from_moves(const ConstraintGraph& cg, const NclReduction& red,
                                          const std::vector<Move>& moves) {
  if (red.endpoint.size() != cg.edges.size()) throw InputError("reduction does not match the constraint graph");
  std::unordered_map<VertexIndex, std::pair<std::size_t, int>> owner;
  for (std::size_t e = 0; e < red.endpoint.size(); ++e) {
    owner[red.endpoint[e][0]] = {e, 0};
    owner[red.endpoint[e][1]] = {e, 1};
  }
  if (moves.size() % 2 != 0) throw InputError("move sequence has odd length");
  std::vector<std::size_t> flips;
  for (std::size_t i = 0; i < moves.size(); i += 2) {
    const Move& rem = moves[i];
    const Move& add = moves[i + 1];
    auto r = owner.find(rem.vertex);
    auto a = owner.find(add.vertex);
    if (rem.op != MoveOp::Remove || add.op != MoveOp::Add || r == owner.end() || a == owner.end() ||
        r->second.first != a->second.first || r->second.second == a->second.second) {
      throw InputError("moves " + std::to_string(i) + " and " + std::to_string(i + 1) +
                       " are not a removal and addition on one edge");
    }
    flips.push_back(r->second.first);
  }
  return flips;
}

PartitionedGraph partitioned_graph_from_json(const Json& doc) {
  require_object_keys(doc, {"vertices", "edges", "parts"}, {"vertices", "edges", "parts"}, "partitioned graph");
  PartitionedGraph pg;
  pg.vertices = string_list(doc["vertices"], "vertices");
  std::unordered_map<std::string, VertexIndex> index;
  for (std::size_t i = 0; i < pg.vertices.size(); ++i) {
    if (!index.emplace(pg.vertices[i], static_cast<VertexIndex>(i)).second) {
      throw InputError("duplicate vertex '" + pg.vertices[i] + "'");
    }
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw InputError("unknown vertex '" + name + "'");
    return it->second;
  };
  if (!doc["edges"].is_array() || !doc["parts"].is_array()) throw InputError("edges and parts must be arrays");
  for (const auto& e : doc["edges"]) {
    const auto ends = string_list(e, "edge");
    if (ends.size() != 2) throw InputError("an edge lists exactly two vertices");
    pg.edges.push_back({lookup(ends[0]), lookup(ends[1])});
  }
  for (const auto& p : doc["parts"]) {
    std::vector<VertexIndex> part;
    for (const auto& name : string_list(p, "part")) part.push_back(lookup(name));
    pg.parts.push_back(std::move(part));
  }
  validate_partitioned_graph(pg);
  return pg;
}

Json partitioned_graph_to_json(const PartitionedGraph& pg) {
  Json doc;
  doc["vertices"] = pg.vertices;
  doc["edges"] = Json::array();
  for (const auto& [u, v] : pg.edges) doc["edges"].push_back({pg.vertices[u], pg.vertices[v]});
  doc["parts"] = Json::array();
  for (const auto& part : pg.parts) {
    Json names = Json::array();
    for (VertexIndex v : part) names.push_back(pg.vertices[v]);
    doc["parts"].push_back(std::move(names));
  }
  return doc;
}

ConstraintGraph constraint_graph_from_json(const Json& doc) {
  require_object_keys(doc, {"vertices", "edges", "source_heads", "target_heads"},
                      {"vertices", "edges", "source_heads", "target_heads"}, "constraint graph");
  if (!doc["vertices"].is_array() || !doc["edges"].is_array()) throw InputError("vertices and edges must be arrays");
  ConstraintGraph cg;
  std::unordered_map<std::string, VertexIndex> index;
  for (const auto& v : doc["vertices"]) {
    require_object_keys(v, {"id", "type"}, {"id", "type"}, "constraint-graph vertex");
    if (!v["id"].is_string() || !v["type"].is_string()) throw InputError("vertex id and type must be strings");
    const auto type = v["type"].get<std::string>();
    if (type != "AND" && type != "OR") throw InputError("vertex type must be \"AND\" or \"OR\"");
    const auto id = v["id"].get<std::string>();
    if (!index.emplace(id, static_cast<VertexIndex>(cg.vertices.size())).second) {
      throw InputError("duplicate constraint-graph vertex id '" + id + "'");
    }
    cg.vertices.push_back(id);
    cg.types.push_back(type == "AND" ? NclType::And : NclType::Or);
  }
  auto lookup = [&](const Json& name) {
    if (!name.is_string()) throw InputError("vertex references must be strings");
    auto it = index.find(name.get<std::string>());
    if (it == index.end()) throw InputError("unknown vertex '" + name.get<std::string>() + "'");
    return it->second;
  };
  std::unordered_map<std::string, std::size_t> edge_index;
  for (const auto& e : doc["edges"]) {
    require_object_keys(e, {"id", "u", "v", "w"}, {"id", "u", "v", "w"}, "constraint-graph edge");
    if (!e["id"].is_string() || !e["w"].is_number_integer()) throw InputError("edge id string and integer w required");
    const auto id = e["id"].get<std::string>();
    if (!edge_index.emplace(id, cg.edges.size()).second) throw InputError("duplicate edge id '" + id + "'");
    cg.edges.push_back({id, lookup(e["u"]), lookup(e["v"]), e["w"].get<int>()});
  }
  auto heads = [&](const char* key) {
    const Json& h = doc[key];
    if (!h.is_object()) throw InputError(std::string(key) + " must map edge ids to vertex ids");
    std::vector<VertexIndex> out(cg.edges.size(), kNoVertex);
    for (const auto& [edge, vertex] : h.items()) {
      auto it = edge_index.find(edge);
      if (it == edge_index.end()) throw InputError(std::string(key) + " names unknown edge '" + edge + "'");
      out[it->second] = lookup(vertex);
    }
    for (std::size_t e = 0; e < out.size(); ++e) {
      if (out[e] == kNoVertex) throw InputError(std::string(key) + " misses edge '" + cg.edges[e].id + "'");
    }
    return out;
  };
  cg.source_heads = heads("source_heads");
  cg.target_heads = heads("target_heads");
  validate_constraint_graph(cg);
  return cg;
}

Json constraint_graph_to_json(const ConstraintGraph& cg) {
  Json doc;
  doc["vertices"] = Json::array();
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
    doc["vertices"].push_back({{"id", cg.vertices[v]}, {"type", cg.types[v] == NclType::And ? "AND" : "OR"}});
  }
  doc["edges"] = Json::array();
  for (const auto& e : cg.edges) {
    doc["edges"].push_back({{"id", e.id}, {"u", cg.vertices[e.u]}, {"v", cg.vertices[e.v]}, {"w", e.weight}});
  }
  doc["source_heads"] = Json::object();
  doc["target_heads"] = Json::object();
  for (std::size_t e = 0; e < cg.edges.size(); ++e) {
    doc["source_heads"][cg.edges[e].id] = cg.vertices[cg.source_heads[e]];
    doc["target_heads"][cg.edges[e].id] = cg.vertices[cg.target_heads[e]];
  }
  return doc;
}

}  // namespace compat
