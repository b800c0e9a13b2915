#include "compat/generators.hpp"

#include <algorithm>
#include <numeric>

namespace compat {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  // Largest multiple of bound that fits; draws past it are rejected.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % bound;
}

int Rng::range(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

template <typename T>
void shuffle(Rng& rng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

std::string numbered(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

}  // namespace

Instance random_instance(Rng& rng, std::size_t n, int k, double density) {
  InstanceBuilder b(k);
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(numbered("v", i));
  for (int l = 1; l <= k; ++l) {
    for (Side side : {Side::A, Side::B}) {
      for (VertexIndex u = 0; u < n; ++u) {
        for (VertexIndex v = 0; v < n; ++v) {
          if (u != v && rng.chance(density)) b.add_arc(side, l, u, v);
        }
      }
    }
  }
  return b.build();
}

Instance random_sparse_instance(Rng& rng, std::size_t n, int k, std::size_t arcs, double back) {
  InstanceBuilder b(k);
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(numbered("v", i));
  if (n < 2) return b.build();
  std::vector<VertexIndex> rank(n);
  std::iota(rank.begin(), rank.end(), VertexIndex{0});
  shuffle(rng, rank);
  for (int l = 1; l <= k; ++l) {
    for (Side side : {Side::A, Side::B}) {
      for (std::size_t i = 0; i < arcs; ++i) {
        auto u = static_cast<VertexIndex>(rng.below(n));
        auto v = static_cast<VertexIndex>(rng.below(n - 1));
        if (v >= u) ++v;
        if (rank[u] > rank[v]) std::swap(u, v);
        if (rng.chance(back)) std::swap(u, v);
        b.add_arc(side, l, u, v);
      }
    }
  }
  return b.build();
}

namespace {

int build_md(Rng& rng, std::vector<VertexIndex> verts, int k, int max_width, double density,
             ModularDecomposition& md) {
  if (verts.size() == 1) {
    MdNode leaf;
    leaf.vertex = verts[0];
    md.nodes.push_back(std::move(leaf));
    return md.root();
  }
  const int width = rng.range(2, std::min<int>(max_width, static_cast<int>(verts.size())));
  std::vector<std::size_t> cuts(verts.size() - 1);
  std::iota(cuts.begin(), cuts.end(), std::size_t{1});
  shuffle(rng, cuts);
  cuts.resize(static_cast<std::size_t>(width - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(verts.size());

  MdNode node;
  std::size_t from = 0;
  for (std::size_t to : cuts) {
    node.children.push_back(build_md(rng, {verts.begin() + static_cast<long>(from), verts.begin() + static_cast<long>(to)},
                                     k, max_width, density, md));
    from = to;
  }
  if (rng.chance(0.25)) {
    node.op = MdOp::Union;
  } else {
    node.op = MdOp::Subst;
    node.pattern.vertex_count = static_cast<std::size_t>(width);
    for (VertexIndex i = 0; i < static_cast<VertexIndex>(width); ++i) {
      for (VertexIndex j = 0; j < static_cast<VertexIndex>(width); ++j) {
        if (i == j || !rng.chance(density)) continue;
        TagList tags;
        for (Tag t = 0; t < static_cast<Tag>(2 * k); ++t) {
          if (rng.chance(0.5)) tags.push_back(t);
        }
        if (tags.empty()) tags.push_back(static_cast<Tag>(rng.below(static_cast<std::uint64_t>(2 * k))));
        node.pattern.arcs[{i, j}] = std::move(tags);
      }
    }
  }
  md.nodes.push_back(std::move(node));
  return md.root();
}

}  // namespace

MdSample random_md_instance(Rng& rng, std::size_t n, int k, int max_width, double density) {
  if (n == 0 || max_width < 2) throw InputError("random decomposition needs n >= 1 and width >= 2");
  std::vector<VertexIndex> verts(n);
  std::iota(verts.begin(), verts.end(), VertexIndex{0});
  shuffle(rng, verts);
  ModularDecomposition md;
  build_md(rng, verts, k, max_width, density, md);

  InstanceBuilder b(k);
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(numbered("v", i));
  for (const auto& [arc, tags] : eval_md(md, n).arcs) {
    for (Tag t : tags) b.add_arc(tag_side(t), tag_label(t), arc.first, arc.second);
  }
  return {b.build(), std::move(md)};
}

Scene random_scene(Rng& rng, std::size_t n, double spread, double eps) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Scene scene;
    for (std::size_t i = 0; i < n; ++i) {
      const double cx = rng.unit() * spread;
      const double cy = rng.unit() * spread;
      scene.arms.push_back({numbered("r", i), cx, cy, rng.unit() * kPi});
    }
    try {
      check_scene(scene, eps);
      return scene;
    } catch (const InputError&) {
    }
  }
  throw InputError("could not draw a conflict-free scene; increase the spread");
}

CnfFormula random_cnf(Rng& rng, int num_vars, int num_clauses) {
  if (num_clauses > 0 && num_vars < 1) throw InputError("clauses need at least one variable");
  CnfFormula phi;
  phi.num_vars = num_vars;
  for (int i = 0; i < num_clauses; ++i) {
    std::array<int, 3> clause{};
    for (int& lit : clause) lit = rng.range(1, num_vars) * (rng.chance(0.5) ? 1 : -1);
    phi.clauses.push_back(clause);
  }
  return phi;
}

ConstraintGraph random_constraint_graph(Rng& rng, std::size_t vertex_count) {
  if (vertex_count < 2 || vertex_count % 2 != 0 || vertex_count > 12) {
    throw InputError("constraint graphs need an even vertex count between 2 and 12");
  }
  const std::size_t m = vertex_count * 3 / 2;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<VertexIndex> stubs;
    for (VertexIndex v = 0; v < vertex_count; ++v) stubs.insert(stubs.end(), 3, v);
    shuffle(rng, stubs);
    ConstraintGraph cg;
    bool ok = true;
    for (std::size_t e = 0; e < m && ok; ++e) {
      const VertexIndex u = stubs[2 * e];
      const VertexIndex v = stubs[2 * e + 1];
      ok = u != v;
      cg.edges.push_back({numbered("e", e), u, v, rng.chance(0.5) ? 2 : 1});
    }
    if (!ok) continue;
    std::vector<int> heavy(vertex_count, 0);
    for (const auto& e : cg.edges) {
      if (e.weight == 2) ++heavy[e.u], ++heavy[e.v];
    }
    for (VertexIndex v = 0; v < vertex_count && ok; ++v) {
      cg.vertices.push_back(numbered("v", v));
      if (heavy[v] == 3) {
        cg.types.push_back(NclType::Or);
      } else if (heavy[v] == 1) {
        cg.types.push_back(NclType::And);
      } else {
        ok = false;
      }
    }
    if (!ok) continue;
    std::vector<std::vector<VertexIndex>> legal;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      std::vector<VertexIndex> heads(m);
      for (std::size_t e = 0; e < m; ++e) heads[e] = ((mask >> e) & 1U) ? cg.edges[e].v : cg.edges[e].u;
      if (is_legal_orientation(cg, heads)) legal.push_back(std::move(heads));
    }
    if (legal.empty()) continue;
    const std::size_t from = rng.below(legal.size());
    std::size_t to = from;
    if (legal.size() > 1) {
      to = rng.below(legal.size() - 1);
      if (to >= from) ++to;
    }
    cg.source_heads = legal[from];
    cg.target_heads = legal[to];
    return cg;
  }
  throw InputError("could not draw a constraint graph");
}

PartitionedGraph random_partitioned_graph(Rng& rng, std::size_t n, std::size_t parts, double density) {
  if (parts == 0 || parts > n) throw InputError("need 1 <= parts <= n");
  PartitionedGraph pg;
  pg.parts.resize(parts);
  for (std::size_t i = 0; i < n; ++i) {
    pg.vertices.push_back(numbered("v", i));
    const std::size_t p = i < parts ? i : rng.below(parts);
    pg.parts[p].push_back(static_cast<VertexIndex>(i));
  }
  for (VertexIndex u = 0; u < n; ++u) {
    for (VertexIndex v = u + 1; v < n; ++v) {
      if (rng.chance(density)) pg.edges.push_back({u, v});
    }
  }
  return pg;
}

}  // namespace compat
