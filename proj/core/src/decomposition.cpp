#include "padicdyn/decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "padicdyn/errors.hpp"
#include "padicdyn/lift_engine.hpp"
#include "padicdyn/numtheory.hpp"

namespace padicdyn {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

namespace {

u64 to_u64(const mpz_class& x) { return x.get_ui(); }

u64 disks_per_component(u64 ell, u64 ordp2) {
  return ell / std::gcd(ell, ordp2) * ordp2;
}

mpz_class component_count_formula(u64 p, u64 ell, u64 ordp2, unsigned s) {
  return mpz_class((p - 1) / ordp2 * std::gcd(ordp2, ell)) *
         prime_power(p, s - 1);
}

// Residues mod p^{n+s} on the sphere S_{p^{-n}}(center): congruent to the
// center mod p^n but not mod p^{n+1}.  `center` is already reduced mod p^{n+s}.
std::vector<mpz_class> sphere_residues(u64 p, unsigned n, unsigned s,
                                       const mpz_class& center) {
  const mpz_class pn = prime_power(p, n);
  const u64 skip = to_u64(center / pn % static_cast<unsigned long>(p));
  const u64 width = to_u64(prime_power(p, s));
  std::vector<mpz_class> out;
  out.reserve(width - width / p);
  const mpz_class base = center % pn;
  for (u64 w = 0; w < width; ++w) {
    if (w % p == skip) continue;
    out.push_back(base + pn * static_cast<unsigned long>(w));
  }
  return out;
}

// Rotate a cycle's vertex list to start at the smallest residue.
void canonicalize(std::vector<mpz_class>& cyc) {
  const auto it = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), it, cyc.end());
}

}  // namespace

std::vector<PeriodicOrbit> periodic_orbits(u64 p, unsigned precision) {
  if (p < 3 || !is_prime(p))
    throw std::domain_error("periodic_orbits: p must be an odd prime");
  if (precision == 0)
    throw std::domain_error("periodic_orbits: precision must be >= 1");
  const FunctionalGraph g = build_graph(p, 1);
  std::vector<PeriodicOrbit> orbits;
  for (const CycleAtLevel& c : cycles_at_level(g)) {
    const u64 v0 = to_u64(c.rep);
    if (v0 == 0) continue;
    PeriodicOrbit orb;
    orb.p = p;
    orb.length = c.length;
    orb.d = mul_order(v0, p);
    u64 x = v0;
    do {
      orb.level1_cycle.push_back(x);
      orb.centers.push_back(teichmuller(x, p, precision));
      x = mulmod_u64(x, x, p);
    } while (x != v0);
    if (orb.level1_cycle.size() != c.length)
      throw std::logic_error("periodic_orbits: inconsistent cycle length");
    orbits.push_back(std::move(orb));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
              return a.d != b.d ? a.d < b.d
                                : a.level1_cycle[0] < b.level1_cycle[0];
            });
  return orbits;
}

SphereDecomposition sphere_decomposition(const PeriodicOrbit& orbit, unsigned n,
                                         u64 enumeration_bound) {
  if (n < 1) throw std::domain_error("sphere_decomposition: n must be >= 1");
  if (orbit.centers.empty())
    throw std::domain_error("sphere_decomposition: empty orbit");
  const u64 p = orbit.p;
  const unsigned s = wieferich_valuation(p).s;
  const unsigned prec = orbit.centers.front().precision();
  if (n + s > prec)
    throw precision_error("sphere_decomposition: need precision >= n + s = " +
                          std::to_string(n + s) + ", centers carry " +
                          std::to_string(prec));
  const u64 ordp2 = mul_order(2, p);
  const u64 ell = orbit.length;

  SphereDecomposition out;
  out.p = p;
  out.orbit_d = orbit.d;
  out.orbit_length = ell;
  out.sphere_index = n;
  out.s = s;
  out.j = disks_per_component(ell, ordp2);
  out.component_count = component_count_formula(p, ell, ordp2, s);
  out.radius_exponent = n + s;

  const mpz_class M = prime_power(p, n + s);
  const mpz_class total =
      mpz_class(static_cast<unsigned long>(ell)) * (p - 1) * prime_power(p, s - 1);

  if (total > enumeration_bound) {
    // Sampled mode: trust the count formula, spot-verify one component by
    // chasing a single sphere point through its cycle at level n+s.
    out.sampled = true;
    const mpz_class c0 = orbit.centers.front().value() % M;
    const mpz_class x0 = sphere_residues(p, n, s, c0).front();
    MinimalComponent comp{p,     orbit.d, ell, n, out.j, n + s,
                          {},    true};
    comp.disk_centers.reserve(out.j);
    mpz_class y = x0;
    for (u64 i = 0; i < out.j; ++i) {
      comp.disk_centers.push_back(y);
      y = y * y % M;
      if (y == x0 && i + 1 != out.j)
        throw std::logic_error("sphere_decomposition: sampled cycle closed early");
    }
    if (y != x0)
      throw std::logic_error("sphere_decomposition: sampled cycle did not close");
    canonicalize(comp.disk_centers);
    out.components.push_back(std::move(comp));
    return out;
  }

  // Full mode: enumerate the sphere union and split it into cycles of the
  // squaring map at level n+s.  Every residue is a disk center of exactly one
  // component, so the restriction is a permutation.
  std::vector<mpz_class> residues;
  residues.reserve(to_u64(total));
  for (const PadicInt& center : orbit.centers)
    for (mpz_class& r : sphere_residues(p, n, s, center.value() % M))
      residues.push_back(std::move(r));
  std::map<mpz_class, u32> index;
  for (u32 i = 0; i < residues.size(); ++i) index.emplace(residues[i], i);

  std::vector<u32> succ(residues.size());
  for (u32 i = 0; i < residues.size(); ++i) {
    const auto it = index.find(residues[i] * residues[i] % M);
    if (it == index.end())
      throw std::logic_error("sphere_decomposition: sphere union not invariant");
    succ[i] = it->second;
  }

  std::vector<std::uint8_t> seen(residues.size(), 0);
  for (u32 seed = 0; seed < residues.size(); ++seed) {
    if (seen[seed]) continue;
    std::vector<mpz_class> cyc;
    u32 x = seed;
    do {
      seen[x] = 1;
      cyc.push_back(residues[x]);
      x = succ[x];
    } while (x != seed);
    if (cyc.size() != out.j)
      throw std::logic_error("sphere_decomposition: component has " +
                             std::to_string(cyc.size()) + " disks, expected " +
                             std::to_string(out.j));
    canonicalize(cyc);
    MinimalComponent comp{p,   orbit.d, ell,  n,
                          out.j, n + s, std::move(cyc), false};
    out.components.push_back(std::move(comp));
  }
  if (mpz_class(static_cast<unsigned long>(out.components.size())) != out.component_count)
    throw std::logic_error("sphere_decomposition: found " +
                           std::to_string(out.components.size()) +
                           " components, formula says " +
                           out.component_count.get_str());
  std::sort(out.components.begin(), out.components.end(),
            [](const MinimalComponent& a, const MinimalComponent& b) {
              return a.disk_centers[0] < b.disk_centers[0];
            });
  return out;
}

std::vector<mpz_class> odometer_sequence(const MinimalComponent& comp,
                                         std::size_t terms) {
  if (terms < 2)
    throw std::domain_error("odometer_sequence: terms must be >= 2");
  std::vector<mpz_class> seq;
  seq.reserve(terms);
  seq.emplace_back(static_cast<unsigned long>(comp.orbit_length));
  seq.push_back(seq[0] * static_cast<unsigned long>(comp.j));
  while (seq.size() < terms)
    seq.push_back(seq.back() * static_cast<unsigned long>(comp.p));
  return seq;
}

bool component_single_cycle_at(const MinimalComponent& comp, unsigned level) {
  if (level < comp.radius_exponent)
    throw std::domain_error("component_single_cycle_at: level below the component's own level");
  const mpz_class expected =
      mpz_class(static_cast<unsigned long>(comp.j)) *
      prime_power(comp.p, level - comp.radius_exponent);
  if (expected > 100'000'000)
    throw resource_error("component_single_cycle_at: cycle of " +
                         expected.get_str() + " residues is too long to chase");
  const u64 limit = to_u64(expected);
  const mpz_class M = prime_power(comp.p, level);
  const mpz_class Mr = prime_power(comp.p, comp.radius_exponent);
  const std::set<mpz_class> disks(comp.disk_centers.begin(),
                                  comp.disk_centers.end());
  const mpz_class start = comp.disk_centers[0];
  mpz_class y = start;
  u64 steps = 0;
  do {
    if (!disks.count(y % Mr)) return false;
    y = y * y % M;
    ++steps;
  } while (y != start && steps < limit);
  return y == start && steps == limit;
}

DecompositionReport decompose(u64 p, unsigned depth, unsigned precision,
                              u64 enumeration_bound) {
  if (!is_prime(p)) throw std::domain_error("decompose: p must be prime");
  if (depth < 1) throw std::domain_error("decompose: depth must be >= 1");
  DecompositionReport rep;
  rep.p = p;
  rep.depth = depth;

  if (p == 2) {
    // P = {0, 1}, M empty, B = Z_2 \ {0, 1}: even points fall into 0, odd
    // points converge to 1.
    rep.special_p2 = true;
    rep.s = 0;
    rep.m = 1;
    rep.precision = precision ? precision : depth + 4;
    rep.orbits.push_back(
        {2, 1, 1, {1}, {PadicInt(2, rep.precision, 1)}});
    return rep;
  }

  rep.s = wieferich_valuation(p).s;
  rep.m = factor_p_minus_one(p).m;
  rep.precision = precision ? precision : depth + rep.s + 4;
  if (rep.precision < depth + rep.s)
    throw precision_error("decompose: precision " +
                          std::to_string(rep.precision) + " < depth + s = " +
                          std::to_string(depth + rep.s));

  rep.orbits = periodic_orbits(p, rep.precision);
  u64 total = 0;
  for (const auto& orb : rep.orbits) total += orb.length;
  if (total != rep.m)
    throw std::logic_error("decompose: orbit lengths do not sum to m");

  for (const auto& orb : rep.orbits)
    for (unsigned n = 1; n <= depth; ++n)
      rep.spheres.push_back(sphere_decomposition(orb, n, enumeration_bound));

  const FunctionalGraph g1 = build_graph(p, 1);
  const auto mask = cycle_node_mask(g1);
  for (u64 x = 1; x < p; ++x)
    if (!mask[x]) rep.basin.tree_residues.push_back(x);
  return rep;
}

std::string Location::str() const {
  switch (kind) {
    case Kind::FixedPointZero:
      return "fixed point 0";
    case Kind::ZeroBasin:
      return "basin of 0: nonzero point of pZ_p, attracted to the fixed point 0";
    case Kind::PeriodicPoint:
      return "periodic center match: orbit d=" + std::to_string(orbit_d) +
             " (length " + std::to_string(orbit_length) + "), position " +
             std::to_string(orbit_index) +
             "; agrees to full precision -- undecidable at this precision";
    case Kind::MinimalComponentMember:
      return "minimal component: orbit d=" + std::to_string(orbit_d) +
             " (length " + std::to_string(orbit_length) + "), sphere " +
             std::to_string(sphere_index) + ", component id " +
             component_id.get_str() + ", j=" + std::to_string(j) +
             " disks of radius p^-" + std::to_string(radius_exponent);
    case Kind::TreeBasin:
      return "tree basin: falls onto the level-1 cycle (rep " +
             std::to_string(fed_cycle_rep) + ", length " +
             std::to_string(fed_cycle_length) + ")";
  }
  return "?";
}

Location locate(const PadicInt& x) {
  const u64 p = x.prime();
  const unsigned N = x.precision();
  const mpz_class& v = x.value();
  Location loc;

  if (v == 0) {
    loc.kind = Location::Kind::FixedPointZero;
    return loc;
  }
  if (v % static_cast<unsigned long>(p) == 0) {
    loc.kind = Location::Kind::ZeroBasin;
    return loc;
  }
  if (p == 2) {
    if (v == 1) {
      loc.kind = Location::Kind::PeriodicPoint;
      loc.orbit_d = 1;
      loc.orbit_length = 1;
    } else {
      loc.kind = Location::Kind::TreeBasin;
      loc.fed_cycle_rep = 1;
      loc.fed_cycle_length = 1;
    }
    return loc;
  }

  const u64 c = to_u64(v % static_cast<unsigned long>(p));
  const u64 d = mul_order(c, p);
  if (d % 2 == 0) {
    // Off the unit cycles: chase down the tree until the residue's order
    // turns odd, then read off the cycle it feeds.
    u64 y = c;
    while (mul_order(y, p) % 2 == 0) y = mulmod_u64(y, y, p);
    u64 len = 0, mn = y, z = y;
    do {
      mn = std::min(mn, z);
      ++len;
      z = mulmod_u64(z, z, p);
    } while (z != y);
    loc.kind = Location::Kind::TreeBasin;
    loc.fed_cycle_rep = mn;
    loc.fed_cycle_length = len;
    return loc;
  }

  const u64 ell = mul_order(2, d);
  loc.orbit_d = d;
  loc.orbit_length = ell;
  {
    // Position of c along the orbit, counted from the smallest residue.
    std::vector<u64> cyc;
    u64 z = c;
    do {
      cyc.push_back(z);
      z = mulmod_u64(z, z, p);
    } while (z != c);
    const auto mn = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
    loc.orbit_index = static_cast<unsigned>((cyc.size() - mn) % cyc.size());
  }

  const PadicInt center = teichmuller(c, p, N);
  const DiffValuation dv = diff_valuation(x, center);
  if (dv.at_least_precision) {
    loc.kind = Location::Kind::PeriodicPoint;
    return loc;
  }

  const unsigned n = dv.value;
  const unsigned s = wieferich_valuation(p).s;
  if (N < n + s)
    throw precision_error("locate: x sits on sphere " + std::to_string(n) +
                          " but precision " + std::to_string(N) +
                          " < n + s = " + std::to_string(n + s));
  loc.kind = Location::Kind::MinimalComponentMember;
  loc.sphere_index = n;
  loc.j = disks_per_component(ell, mul_order(2, p));
  loc.radius_exponent = n + s;

  const mpz_class M = prime_power(p, n + s);
  const mpz_class start = v % M;
  mpz_class y = start, mn = start;
  u64 steps = 0;
  do {
    y = y * y % M;
    ++steps;
    mn = std::min(mn, y);
  } while (y != start && steps <= loc.j);
  if (y != start || steps != loc.j)
    throw std::logic_error("locate: component cycle has unexpected length");
  loc.component_id = mn;
  return loc;
}

std::string VerificationReport::str() const {
  std::string out = "verify p=" + std::to_string(p) + " up to level " +
                    std::to_string(max_level) + ": ";
  const std::size_t total = passed.size() + failed.size();
  if (ok) {
    out += "PASS (" + std::to_string(total) + " checks)\n";
  } else {
    out += "FAIL (" + std::to_string(failed.size()) + "/" +
           std::to_string(total) + " checks failed)\n";
    for (const auto& f : failed) out += "  FAILED: " + f + "\n";
  }
  return out;
}

VerificationReport verify_decomposition(
    u64 p, unsigned max_level, u64 node_bound,
    const std::function<bool(unsigned)>& keep_going) {
  if (p < 3 || !is_prime(p))
    throw std::domain_error("verify_decomposition: p must be an odd prime");
  if (max_level < 1)
    throw std::domain_error("verify_decomposition: max_level must be >= 1");

  VerificationReport rep;
  rep.p = p;
  rep.max_level = max_level;
  auto check = [&rep](bool ok, std::string what) {
    (ok ? rep.passed : rep.failed).push_back(std::move(what));
    if (!ok) rep.ok = false;
  };
  auto poll = [&keep_going](unsigned next) {
    if (keep_going && !keep_going(next))
      throw resource_error("verify_decomposition: deadline reached before level " +
                           std::to_string(next));
  };

  const unsigned s = wieferich_valuation(p).s;
  const auto orbits = periodic_orbits(p, max_level);

  for (unsigned n = 1; n <= max_level; ++n) {
    poll(n);
    const FunctionalGraph g = build_graph(p, n, node_bound);
    check(cycle_census(g).entries == predicted_cycle_census(p, n).entries,
          "level " + std::to_string(n) + ": predicted census == oracle census");

    for (const auto& orb : orbits) {
      // Prop. cycleFp: the reduction of the genuine orbit mod p^n is itself a
      // cycle of f_n of length ell -- the unique shadow.
      const mpz_class pn = prime_power(p, n);
      std::set<mpz_class> reduced;
      mpz_class mn_red;
      for (std::size_t i = 0; i < orb.centers.size(); ++i) {
        mpz_class r = orb.centers[i].value() % pn;
        if (i == 0 || r < mn_red) mn_red = r;
        reduced.insert(std::move(r));
      }
      const CycleAtLevel shadow{p, n, orb.length, mn_red};
      check(reduced.size() == orb.length && is_valid_cycle(shadow),
            "level " + std::to_string(n) + ": shadow of orbit d=" +
                std::to_string(orb.d) + " is an ell-cycle");
    }
  }

  poll(max_level + 1);  // sphere phase
  for (const auto& orb : orbits) {
    const u64 ell = orb.length;
    for (unsigned n = 1; n + s <= max_level; ++n) {
      const std::string tag = "orbit d=" + std::to_string(orb.d) +
                              " rep=" + std::to_string(orb.level1_cycle[0]) +
                              " sphere " + std::to_string(n);
      const SphereDecomposition sd = sphere_decomposition(orb, n);

      if (!sd.sampled) {
        check(mpz_class(static_cast<unsigned long>(sd.components.size())) ==
                  sd.component_count,
              tag + ": component count matches the formula");

        // Partition: the disk centers of all components are exactly the
        // sphere residues, each hit once.
        const mpz_class M = prime_power(p, n + s);
        std::set<mpz_class> expected;
        for (const auto& center : orb.centers)
          for (auto& r : sphere_residues(p, n, s, center.value() % M))
            expected.insert(std::move(r));
        std::set<mpz_class> got;
        bool dup = false;
        for (const auto& comp : sd.components)
          for (const auto& ctr : comp.disk_centers)
            dup = dup || !got.insert(ctr).second;
        check(!dup && got == expected, tag + ": disks partition the sphere");
      }

      bool minimal = true;
      for (const auto& comp : sd.components)
        for (unsigned lvl = n + s; lvl <= max_level; ++lvl)
          minimal = minimal && component_single_cycle_at(comp, lvl);
      check(minimal, tag + ": single cycle at every level up to " +
                         std::to_string(max_level));

      check(sd.component_count * static_cast<unsigned long>(sd.j) *
                    prime_power(p, n + 1) ==
                mpz_class(static_cast<unsigned long>(ell)) * (p - 1) *
                    prime_power(p, n + s),
            tag + ": measure identity count*j*p^-(n+s) == ell*(p-1)*p^-(n+1)");
    }

    // Sphere residue counts inside Z/p^{max_level}: each S_{p^-i}(center)
    // holds (p-1)p^{n-i-1} residues, counted by brute force.
    if (max_level >= 2) {
      const unsigned n = max_level;
      const u64 pn = to_u64(prime_power(p, n));
      bool counts_ok = true;
      for (const auto& center : orb.centers) {
        const u64 c = to_u64(center.value() % static_cast<unsigned long>(pn));
        std::vector<u64> found(n, 0);
        for (u64 r = 0; r < pn; ++r) {
          if (r == c) continue;
          u64 diff = r > c ? r - c : c - r;
          unsigned val = 0;
          while (diff % p == 0) {
            diff /= p;
            ++val;
          }
          ++found[val];  // val < n since 0 < |r - c| < p^n
        }
        for (unsigned i = 1; i < n; ++i) {
          const mpz_class want = mpz_class(p - 1) * prime_power(p, n - i - 1);
          counts_ok = counts_ok && mpz_class(found[i]) == want;
        }
      }
      check(counts_ok, "orbit d=" + std::to_string(orb.d) + " rep=" +
                           std::to_string(orb.level1_cycle[0]) +
                           ": sphere residue counts mod p^" + std::to_string(n));
    }
  }

  return rep;
}

}  // namespace padicdyn
