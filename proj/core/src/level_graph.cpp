#include "padicdyn/level_graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "padicdyn/errors.hpp"
#include "padicdyn/numtheory.hpp"

namespace padicdyn {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

FunctionalGraph build_graph(u64 p, unsigned level, u64 node_bound) {
  if (p < 2) throw std::domain_error("build_graph: p must be prime");
  if (level == 0) throw std::domain_error("build_graph: level must be >= 1");
  const mpz_class nodes = prime_power(p, level);
  if (nodes > node_bound || nodes > std::numeric_limits<u32>::max()) {
    throw resource_error("build_graph: p^n = " + nodes.get_str() +
                         " exceeds the node bound " + std::to_string(node_bound));
  }
  const u64 m = nodes.get_ui();
  FunctionalGraph g{p, level, m, {}};
  g.successor.resize(m);
  for (u64 x = 0; x < m; ++x) g.successor[x] = static_cast<u32>(x * x % m);
  return g;
}

void CycleCensus::add(const mpz_class& length, const mpz_class& count) {
  if (count == 0) return;
  entries[length] += count;
}

mpz_class CycleCensus::cyclic_points() const {
  mpz_class total = 0;
  for (const auto& [len, cnt] : entries) total += len * cnt;
  return total;
}

std::string CycleCensus::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [len, cnt] : entries) {
    if (!first) os << ", ";
    first = false;
    os << "(" << len.get_str() << "," << cnt.get_str() << ")";
  }
  os << "}";
  return os.str();
}

namespace {

// Walks every node once; state 0 = unvisited, 1 = on current path, 2 = done.
// When the walk re-enters the current path a new cycle has been found.
template <typename OnCycle>
void scan_cycles(const FunctionalGraph& g, OnCycle&& on_cycle) {
  const u64 n = g.successor.size();
  std::vector<std::uint8_t> state(n, 0);
  std::vector<u32> path;
  for (u64 seed = 0; seed < n; ++seed) {
    if (state[seed]) continue;
    path.clear();
    u64 x = seed;
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(static_cast<u32>(x));
      x = g.successor[x];
    }
    if (state[x] == 1) {
      u64 len = 1;
      for (u64 y = g.successor[x]; y != x; y = g.successor[y]) ++len;
      on_cycle(x, len);
    }
    for (u32 v : path) state[v] = 2;
  }
}

}  // namespace

CycleCensus cycle_census(const FunctionalGraph& g) {
  CycleCensus census;
  scan_cycles(g, [&](u64 /*entry*/, u64 len) {
    census.add(static_cast<unsigned long>(len), 1);
  });
  return census;
}

std::vector<std::uint8_t> cycle_node_mask(const FunctionalGraph& g) {
  std::vector<std::uint8_t> mask(g.successor.size(), 0);
  scan_cycles(g, [&](u64 entry, u64 /*len*/) {
    mask[entry] = 1;
    for (u64 y = g.successor[entry]; y != entry; y = g.successor[y]) mask[y] = 1;
  });
  return mask;
}

CycleCensus RogersStructure::unit_census() const {
  CycleCensus census;
  for (const auto& c : components)
    census.add(static_cast<unsigned long>(c.cycle_length),
               static_cast<unsigned long>(c.copies));
  return census;
}

mpz_class RogersStructure::cycle_count() const {
  mpz_class total = 0;
  for (const auto& c : components) total += static_cast<unsigned long>(c.copies);
  return total;
}

RogersStructure rogers_structure(u64 p) {
  const PrimeDecomposition pd = factor_p_minus_one(p);
  RogersStructure rs{p, pd.k, pd.m, {}};
  for (u64 d : divisors(pd.m)) {
    const u64 len = mul_order(2, d);
    rs.components.push_back({d, len, euler_phi(d) / len, pd.k});
  }
  return rs;
}

RogersVerification verify_rogers(u64 p, u64 node_bound) {
  RogersVerification out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.discrepancies.push_back(std::move(msg));
  };

  const RogersStructure rs = rogers_structure(p);
  const FunctionalGraph g = build_graph(p, 1, node_bound);
  const auto on_cycle = cycle_node_mask(g);

  // Cycle multiset over the units.
  CycleCensus found;
  scan_cycles(g, [&](u64 entry, u64 len) {
    if (entry % p != 0) found.add(static_cast<unsigned long>(len), 1);
  });
  if (!(found == rs.unit_census()))
    fail("unit cycle census " + found.str() + " != predicted " +
         rs.unit_census().str());

  // Trees. Predecessors among units; for unit y the predecessors are its
  // square roots, which are units as well.
  std::vector<std::vector<u32>> preds(p);
  for (u64 x = 1; x < p; ++x) preds[g.successor[x]].push_back(static_cast<u32>(x));

  const unsigned k = rs.k;
  const u64 expected_tree = (k >= 64) ? 0 : ((u64{1} << k) - 1);
  for (u64 v = 1; v < p; ++v) {
    if (!on_cycle[v]) continue;
    std::vector<u32> off_cycle_roots;
    for (u32 q : preds[v])
      if (!on_cycle[q]) off_cycle_roots.push_back(q);
    if (off_cycle_roots.size() != 1) {
      fail("cycle vertex " + std::to_string(v) + " has " +
           std::to_string(off_cycle_roots.size()) + " non-cycle children, want 1");
      continue;
    }
    // BFS down the tree hanging at v.
    u64 nodes = 0;
    unsigned max_depth = 0;
    bool shape_ok = true;
    std::vector<std::pair<u32, unsigned>> frontier{{off_cycle_roots[0], 1}};
    while (!frontier.empty()) {
      auto [u, depth] = frontier.back();
      frontier.pop_back();
      ++nodes;
      max_depth = std::max(max_depth, depth);
      const auto& ch = preds[u];
      if (depth < k && ch.size() != 2) shape_ok = false;
      if (depth == k && !ch.empty()) shape_ok = false;
      for (u32 c : ch) frontier.emplace_back(c, depth + 1);
    }
    if (!shape_ok || nodes != expected_tree || max_depth != k)
      fail("tree at cycle vertex " + std::to_string(v) + " is not a perfect binary tree of height " +
           std::to_string(k) + " (nodes=" + std::to_string(nodes) +
           ", depth=" + std::to_string(max_depth) + ")");
  }
  return out;
}

std::string export_dot(const FunctionalGraph& g, bool units_only) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (u64 x = 0; x < g.modulus; ++x) {
    if (units_only && x % g.p == 0) continue;
    os << "  \"" << x << "\" -> \"" << g.successor[x] << "\";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace padicdyn
