#pragma once

// The finite side of the system: the functional graph of x -> x^2 on
// Z/p^nZ, a brute-force cycle census (the oracle everything else is checked
// against), the closed-form level-1 structure of the unit graph, and DOT
// export.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace padicdyn {

inline constexpr std::uint64_t kDefaultNodeBound = 100'000'000;

// Successor array of the squaring map at one level. successor[x] = x^2 mod p^n.
struct FunctionalGraph {
  std::uint64_t p;
  unsigned level;
  std::uint64_t modulus;  // p^level
  std::vector<std::uint32_t> successor;
};

// Builds the graph, materializing all p^level nodes. Throws resource_error
// when p^level exceeds node_bound.
FunctionalGraph build_graph(std::uint64_t p, unsigned level,
                            std::uint64_t node_bound = kDefaultNodeBound);

// Multiset of cycle lengths, aggregated (each length appears once).
// Lengths and counts are arbitrary precision so the same type can hold
// symbolic censuses at levels far beyond enumeration range.
struct CycleCensus {
  std::map<mpz_class, mpz_class> entries;

  void add(const mpz_class& length, const mpz_class& count);
  mpz_class cyclic_points() const;  // sum of length * count
  bool operator==(const CycleCensus&) const = default;
  std::string str() const;  // "{(l,c), ...}" ascending by length
};

// Exact census by path marking; linear in p^level.
CycleCensus cycle_census(const FunctionalGraph& g);

// Byte mask over residues: 1 if the node lies on a cycle.
std::vector<std::uint8_t> cycle_node_mask(const FunctionalGraph& g);

// One entry per divisor d of m for p = 2^k m + 1: the unit graph is
// phi(d)/ord_d(2) cycles of length ord_d(2), a perfect binary tree of
// height k hanging off every cycle vertex (Rogers, 1996).
struct RogersComponent {
  std::uint64_t d;
  std::uint64_t cycle_length;  // ord_d(2)
  std::uint64_t copies;        // phi(d) / ord_d(2)
  unsigned tree_height;        // k
};

struct RogersStructure {
  std::uint64_t p;
  unsigned k;
  std::uint64_t m;
  std::vector<RogersComponent> components;  // d ascending

  // Predicted census of the unit graph (0 excluded), classes with equal
  // cycle length merged.
  CycleCensus unit_census() const;
  mpz_class cycle_count() const;  // total number of unit cycles
};

RogersStructure rogers_structure(std::uint64_t p);

// Checks the level-1 unit graph against rogers_structure: cycle multiset,
// and a perfect height-k binary tree on every cycle vertex (one non-cycle
// child under the vertex, then 0-or-2 branching, leaves exactly at depth k).
struct RogersVerification {
  bool ok = true;
  std::vector<std::string> discrepancies;
};

RogersVerification verify_rogers(std::uint64_t p,
                                 std::uint64_t node_bound = kDefaultNodeBound);

// Graphviz DOT text, one edge per node, nodes in ascending residue order.
std::string export_dot(const FunctionalGraph& g, bool units_only);

}  // namespace padicdyn
