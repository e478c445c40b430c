#pragma once

// Full dynamical decomposition of x -> x^2 on Z_p:
//   Z_p = P ⊔ M ⊔ B
// with P the periodic points (0 plus the m-th roots of unity, m the odd part
// of p-1), M the minimal components living on spheres around the periodic
// units, and B the attracting basin (pZ_p \ {0} falling into 0, plus the
// level-1 tree residues falling onto the unit cycles).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padicdyn/level_graph.hpp"
#include "padicdyn/padic.hpp"

namespace padicdyn {

inline constexpr unsigned kDefaultDepth = 3;
// Cap on how many sphere residues sphere_decomposition will enumerate before
// switching to the formula-plus-spot-check ("sampled") mode.
inline constexpr std::uint64_t kDefaultSphereEnumBound = 1'000'000;

// One periodic orbit of the squaring map among the units: the elements of
// multiplicative order d (d odd, d | m) form phi(d)/ord_d(2) orbits of
// length ord_d(2) each.  Centers are the Teichmueller lifts of the level-1
// cycle, listed along the orbit starting from the smallest level-1 residue.
struct PeriodicOrbit {
  std::uint64_t p = 0;
  std::uint64_t d = 0;       // common multiplicative order of the orbit mod p
  std::uint64_t length = 0;  // = ord_d(2)
  std::vector<std::uint64_t> level1_cycle;  // residues mod p, orbit order
  std::vector<PadicInt> centers;            // Teichmueller lifts, same order

  bool operator==(const PeriodicOrbit&) const = default;
};

// All unit orbits, sorted by (d, smallest level-1 residue).  The fixed point
// 0 is not listed; it is handled by DecompositionReport directly.
std::vector<PeriodicOrbit> periodic_orbits(std::uint64_t p, unsigned precision);

// One minimal component: j disks of radius p^{-(n+s)} whose centers form a
// single cycle of the squaring map at level n+s.  disk_centers are listed in
// cycle order starting from the smallest residue (the component id).
struct MinimalComponent {
  std::uint64_t p = 0;
  std::uint64_t orbit_d = 0;
  std::uint64_t orbit_length = 0;  // ell
  unsigned sphere_index = 0;       // n >= 1
  std::uint64_t j = 0;             // disks per component
  unsigned radius_exponent = 0;    // n + s
  std::vector<mpz_class> disk_centers;  // j residues mod p^{n+s}
  bool sampled = false;

  bool operator==(const MinimalComponent&) const = default;
};

// The decomposition of the sphere union ⊔_i S_{p^{-n}}(center_i) of one orbit
// into minimal components.  In full mode `components` holds all of them; in
// sampled mode it holds a single spot-verified component and component_count
// carries the formula value.
struct SphereDecomposition {
  std::uint64_t p = 0;
  std::uint64_t orbit_d = 0;
  std::uint64_t orbit_length = 0;
  unsigned sphere_index = 0;
  unsigned s = 0;                 // v_p(2^{p-1} - 1)
  std::uint64_t j = 0;
  mpz_class component_count;      // ((p-1)*gcd(ord_p 2, ell)/ord_p 2) * p^{s-1}
  unsigned radius_exponent = 0;   // sphere_index + s
  bool sampled = false;
  std::vector<MinimalComponent> components;  // sorted by smallest disk center

  bool operator==(const SphereDecomposition&) const = default;
};

// Decompose sphere index n of an orbit.  Requires n >= 1 and n + s within the
// centers' precision (precision_error otherwise).  Enumerates all
// ell*(p-1)*p^{s-1} sphere residues mod p^{n+s} when that count fits the
// bound; otherwise falls back to sampled mode.
SphereDecomposition sphere_decomposition(const PeriodicOrbit& orbit, unsigned n,
                                         std::uint64_t enumeration_bound =
                                             kDefaultSphereEnumBound);

// Structure sequence (ell, ell*j, ell*j*p, ell*j*p^2, ...) of the odometer a
// component is conjugate to.  terms >= 2.
std::vector<mpz_class> odometer_sequence(const MinimalComponent& comp,
                                         std::size_t terms);

// True when the component still reduces to a single cycle of the squaring map
// mod p^level, of length j * p^{level - radius_exponent}.  Requires
// level >= radius_exponent.
bool component_single_cycle_at(const MinimalComponent& comp, unsigned level);

struct BasinDescription {
  bool zero_disk = true;  // pZ_p \ {0} is attracted to the fixed point 0
  std::vector<std::uint64_t> tree_residues;  // level-1 units off the cycles

  bool operator==(const BasinDescription&) const = default;
};

struct DecompositionReport {
  std::uint64_t p = 0;
  unsigned precision = 0;  // N
  unsigned depth = 0;      // D: spheres 1..D are enumerated
  bool special_p2 = false;
  unsigned s = 0;          // v_p(2^{p-1} - 1); 0 for p = 2
  std::uint64_t m = 0;     // odd part of p - 1
  std::vector<PeriodicOrbit> orbits;
  std::vector<SphereDecomposition> spheres;  // (orbit order) x (n = 1..D)
  BasinDescription basin;
};

// Full report for one prime.  precision == 0 selects the default
// depth + s + 4; an explicit precision must satisfy precision >= depth + s.
// For p = 2 the special report (P = {0, 1}, M empty) is returned.
DecompositionReport decompose(std::uint64_t p, unsigned depth = kDefaultDepth,
                              unsigned precision = 0,
                              std::uint64_t enumeration_bound =
                                  kDefaultSphereEnumBound);

// Where a point sits in the decomposition.
struct Location {
  enum class Kind {
    FixedPointZero,          // x = 0 at working precision
    ZeroBasin,               // v_p(x) >= 1, x != 0: attracted to 0
    PeriodicPoint,           // coincides with a periodic center to full
                             // precision; genuine periodicity is undecidable
                             // at finite precision
    MinimalComponentMember,  // on sphere n of an orbit, inside a component
    TreeBasin,               // unit whose level-1 residue falls onto a cycle
  };

  Kind kind = Kind::FixedPointZero;
  std::uint64_t orbit_d = 0;       // PeriodicPoint / MinimalComponentMember
  std::uint64_t orbit_length = 0;
  unsigned orbit_index = 0;        // position along the orbit (PeriodicPoint)
  unsigned sphere_index = 0;       // MinimalComponentMember
  std::uint64_t j = 0;
  unsigned radius_exponent = 0;
  mpz_class component_id;          // smallest disk center mod p^{n+s}
  std::uint64_t fed_cycle_rep = 0;     // TreeBasin
  std::uint64_t fed_cycle_length = 0;  // TreeBasin

  bool operator==(const Location&) const = default;
  std::string str() const;
};

// Locate x.  Throws precision_error when the sphere index n is visible but
// x's precision is below n + s (the component mod p^{n+s} would be a guess).
Location locate(const PadicInt& x);

struct VerificationReport {
  std::uint64_t p = 0;
  unsigned max_level = 0;
  bool ok = true;
  std::vector<std::string> passed;
  std::vector<std::string> failed;

  std::string str() const;
};

// End-to-end cross-check against the brute-force oracle, level by level up to
// max_level: census prediction, finite-level minimality of every enumerated
// component, sphere residue counts, the exact measure identity, and shadow
// uniqueness.  When keep_going is set it is polled between levels (with the
// level about to start); returning false aborts with a resource_error, so a
// partially checked level is never reported.
VerificationReport verify_decomposition(
    std::uint64_t p, unsigned max_level,
    std::uint64_t node_bound = kDefaultNodeBound,
    const std::function<bool(unsigned)>& keep_going = {});

}  // namespace padicdyn
