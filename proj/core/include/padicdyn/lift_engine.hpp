#pragma once

// The lift calculus: how a cycle of the squaring map at level n relates to
// the cycles sitting over it at level n+1. The derivative product a_n and
// displacement b_n of the return map decide one of four behaviors (grows,
// splits, partially splits, grows tails); iterating the rules propagates an
// exact symbolic cycle census to any level, which the brute-force census
// must reproduce.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padicdyn/level_graph.hpp"

namespace padicdyn {

inline constexpr std::uint64_t kDefaultWorkBound = 10'000'000;

// A cycle of x -> x^2 on Z/p^nZ, stored by canonical (smallest) vertex and
// length; the full vertex list is regenerated on demand.
struct CycleAtLevel {
  std::uint64_t p;
  unsigned level;
  std::uint64_t length;
  mpz_class rep;

  bool operator==(const CycleAtLevel&) const = default;
};

// True iff iterating from rep returns to rep after exactly `length` steps.
bool is_valid_cycle(const CycleAtLevel& c);

// The cycle vertices in orbit order starting at rep.
std::vector<mpz_class> cycle_vertices(const CycleAtLevel& c);

// All cycles of the graph, canonical reps, sorted by (length, rep).
std::vector<CycleAtLevel> cycles_at_level(const FunctionalGraph& g);

// Finds the cycle through rep, if rep is a cyclic point; the returned rep is
// canonicalized to the smallest vertex. Walks at most max_steps.
std::optional<CycleAtLevel> find_cycle_through(std::uint64_t p, unsigned level,
                                               const mpz_class& rep,
                                               std::uint64_t max_steps = kDefaultWorkBound);

// a = (f^len)'(rep) mod p and, when a = 1 (the only case where it is
// well defined on the disk), b = (f^len(rep) - rep)/p^n mod p. b is
// computed with working modulus p^{n+1}, which pins it mod p.
struct AnBn {
  std::uint64_t a;
  std::optional<std::uint64_t> b;
};

AnBn an_bn(const CycleAtLevel& c);

struct LiftClass {
  enum class Kind { Grows, Splits, PartiallySplits, GrowsTails };
  Kind kind;
  std::uint64_t r = 0;  // order of a in (Z/pZ)^*, only for PartiallySplits

  bool operator==(const LiftClass&) const = default;
  std::string str() const;
};

// a=1,b!=0 -> Grows; a=1,b=0 -> Splits; a=0 -> GrowsTails;
// otherwise PartiallySplits(ord_p(a)).
LiftClass classify(const CycleAtLevel& c);

// All cycles of the level-(n+1) map inside the fiber over c, found by direct
// iteration over the p * length residues lying over the cycle. Sorted by
// (length, rep). Lengths and counts must agree with classify; tests enforce
// that, the enumeration itself assumes nothing.
std::vector<CycleAtLevel> lift_cycles(const CycleAtLevel& c,
                                      std::uint64_t work_bound = kDefaultWorkBound);

// The closed-form fate of the cycle shadowing a genuine periodic orbit of
// length ell: at every level it stays length ell, and each lift step gives
// birth to (p-1)/r sibling cycles of length ell*r which split s-1 more
// times and then grow forever. r = 1 exactly when 2^ell = 1 (mod p), the
// branch where the shadow splits instead of partially splitting.
struct ShadowFate {
  bool splits_branch;      // 2^ell = 1 (mod p)
  std::uint64_t r;         // ord_p(2) / gcd(ell, ord_p(2))
  unsigned s;              // v_p(2^{p-1} - 1)
  std::uint64_t born_count;   // (p-1)/r, per lift step
  mpz_class born_length;      // ell * r
};

ShadowFate shadow_fate(std::uint64_t ell, std::uint64_t p);

// Symbolic cycle census of the level-n map: the fixed point 0, one shadow
// per level-1 cycle, and the offspring ladder of shadow_fate applied at
// every birth level. No p^n enumeration; valid at any level.
CycleCensus predicted_cycle_census(std::uint64_t p, unsigned level);

// Exact census by chasing lifts upward from the level-1 cycles instead of
// materializing p^n nodes; memory stays linear in the number of cycles.
// Still pure simulation: every lift step enumerates its fiber directly.
CycleCensus census_by_lifting(std::uint64_t p, unsigned level,
                              std::uint64_t work_bound = kDefaultWorkBound);

}  // namespace padicdyn
