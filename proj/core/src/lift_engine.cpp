#include "padicdyn/lift_engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "padicdyn/errors.hpp"
#include "padicdyn/numtheory.hpp"

namespace padicdyn {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

bool is_valid_cycle(const CycleAtLevel& c) {
  if (c.length == 0 || c.level == 0) return false;
  const mpz_class m = prime_power(c.p, c.level);
  if (c.rep < 0 || c.rep >= m) return false;
  mpz_class x = c.rep;
  for (u64 i = 0; i < c.length; ++i) {
    x = x * x % m;
    if (x == c.rep) return i + 1 == c.length;
  }
  return false;
}

std::vector<mpz_class> cycle_vertices(const CycleAtLevel& c) {
  const mpz_class m = prime_power(c.p, c.level);
  std::vector<mpz_class> verts;
  verts.reserve(c.length);
  mpz_class x = c.rep;
  for (u64 i = 0; i < c.length; ++i) {
    verts.push_back(x);
    x = x * x % m;
  }
  return verts;
}

std::vector<CycleAtLevel> cycles_at_level(const FunctionalGraph& g) {
  const auto mask = cycle_node_mask(g);
  std::vector<std::uint8_t> visited(mask.size(), 0);
  std::vector<CycleAtLevel> out;
  for (u64 x = 0; x < mask.size(); ++x) {
    if (!mask[x] || visited[x]) continue;
    u64 len = 0, min_v = x, y = x;
    do {
      visited[y] = 1;
      min_v = std::min(min_v, y);
      ++len;
      y = g.successor[y];
    } while (y != x);
    out.push_back({g.p, g.level, len, mpz_class(static_cast<unsigned long>(min_v))});
  }
  std::sort(out.begin(), out.end(), [](const CycleAtLevel& a, const CycleAtLevel& b) {
    return a.length != b.length ? a.length < b.length : a.rep < b.rep;
  });
  return out;
}

std::optional<CycleAtLevel> find_cycle_through(u64 p, unsigned level,
                                               const mpz_class& rep,
                                               u64 max_steps) {
  const mpz_class m = prime_power(p, level);
  mpz_class start = rep % m;
  if (start < 0) start += m;
  mpz_class x = start, min_v = start;
  for (u64 step = 1; step <= max_steps; ++step) {
    x = x * x % m;
    if (x == start)
      return CycleAtLevel{p, level, step, min_v};
    min_v = std::min(min_v, x);
  }
  return std::nullopt;
}

AnBn an_bn(const CycleAtLevel& c) {
  if (!is_valid_cycle(c)) throw std::domain_error("an_bn: not a cycle");
  const u64 p = c.p;
  AnBn out{};

  const mpz_class rep_mod_p = c.rep % static_cast<unsigned long>(p);
  if (rep_mod_p == 0) {
    out.a = 0;
  } else {
    // a = 2^len * rep^{2^len - 1} mod p, exponent reduced mod p-1.
    const u64 two_len = powmod_u64(2, c.length, p);
    const u64 e = (powmod_u64(2, c.length, p - 1) + p - 2) % (p - 1);
    out.a = mulmod_u64(two_len, powmod_u64(rep_mod_p.get_ui(), e, p), p);
  }

  if (out.a == 1) {
    const mpz_class pn = prime_power(p, c.level);
    const mpz_class pn1 = pn * static_cast<unsigned long>(p);
    mpz_class y = c.rep;
    for (u64 i = 0; i < c.length; ++i) y = y * y % pn1;
    mpz_class num = (y - c.rep) % pn1;
    if (num < 0) num += pn1;
    if (num % pn != 0) throw std::domain_error("an_bn: displacement not divisible by p^n");
    out.b = mpz_class(num / pn % static_cast<unsigned long>(p)).get_ui();
  }
  return out;
}

std::string LiftClass::str() const {
  switch (kind) {
    case Kind::Grows: return "Grows";
    case Kind::Splits: return "Splits";
    case Kind::GrowsTails: return "GrowsTails";
    case Kind::PartiallySplits: return "PartiallySplits(" + std::to_string(r) + ")";
  }
  return "?";
}

LiftClass classify(const CycleAtLevel& c) {
  const AnBn ab = an_bn(c);
  if (ab.a == 1)
    return *ab.b != 0 ? LiftClass{LiftClass::Kind::Grows}
                      : LiftClass{LiftClass::Kind::Splits};
  if (ab.a == 0) return {LiftClass::Kind::GrowsTails};
  return {LiftClass::Kind::PartiallySplits, mul_order(ab.a, c.p)};
}

std::vector<CycleAtLevel> lift_cycles(const CycleAtLevel& c, u64 work_bound) {
  if (!is_valid_cycle(c)) throw std::domain_error("lift_cycles: not a cycle");
  const u64 p = c.p;
  if ((u128)p * c.length > work_bound)
    throw resource_error("lift_cycles: fiber size " + std::to_string(p) + "*" +
                         std::to_string(c.length) + " exceeds the work bound " +
                         std::to_string(work_bound));
  const mpz_class pn = prime_power(p, c.level);
  const mpz_class pn1 = pn * static_cast<unsigned long>(p);

  const auto verts = cycle_vertices(c);
  const std::size_t total = static_cast<std::size_t>(p) * verts.size();
  std::vector<mpz_class> residues;
  residues.reserve(total);
  std::map<mpz_class, u32> index;
  for (const mpz_class& v : verts) {
    mpz_class r = v;
    for (u64 t = 0; t < p; ++t, r += pn) {
      index.emplace(r, static_cast<u32>(residues.size()));
      residues.push_back(r);
    }
  }
  std::vector<u32> succ(total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto it = index.find(residues[i] * residues[i] % pn1);
    if (it == index.end())
      throw std::logic_error("lift_cycles: fiber is not forward invariant");
    succ[i] = it->second;
  }

  // Path-marking cycle scan on the fiber.
  std::vector<std::uint8_t> state(total, 0);
  std::vector<u32> path;
  std::vector<CycleAtLevel> out;
  for (u32 seed = 0; seed < total; ++seed) {
    if (state[seed]) continue;
    path.clear();
    u32 x = seed;
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = succ[x];
    }
    if (state[x] == 1) {
      u64 len = 1;
      mpz_class min_v = residues[x];
      for (u32 y = succ[x]; y != x; y = succ[y]) {
        ++len;
        min_v = std::min(min_v, residues[y]);
      }
      out.push_back({p, c.level + 1, len, min_v});
    }
    for (u32 v : path) state[v] = 2;
  }
  std::sort(out.begin(), out.end(), [](const CycleAtLevel& a, const CycleAtLevel& b) {
    return a.length != b.length ? a.length < b.length : a.rep < b.rep;
  });
  return out;
}

ShadowFate shadow_fate(u64 ell, u64 p) {
  if (ell == 0) throw std::domain_error("shadow_fate: ell must be >= 1");
  const u64 ord = mul_order(2, p);
  const u64 r = ord / std::gcd(ell, ord);
  const auto w = wieferich_valuation(p);
  return {r == 1, r, w.s, (p - 1) / r, mpz_class(static_cast<unsigned long>(ell)) * static_cast<unsigned long>(r)};
}

CycleCensus predicted_cycle_census(u64 p, unsigned level) {
  if (level == 0) throw std::domain_error("predicted_cycle_census: level must be >= 1");
  CycleCensus census;
  census.add(1, 1);  // the fixed point 0
  if (p == 2) {
    census.add(1, 1);  // the fixed point 1; every other point is transient
    return census;
  }
  const RogersStructure rs = rogers_structure(p);
  for (const auto& comp : rs.components) {
    const mpz_class copies = static_cast<unsigned long>(comp.copies);
    census.add(static_cast<unsigned long>(comp.cycle_length), copies);  // the shadow
    const ShadowFate fate = shadow_fate(comp.cycle_length, p);
    const mpz_class born = copies * static_cast<unsigned long>(fate.born_count);
    for (unsigned i = 1; i < level; ++i) {
      const unsigned age = level - i;
      if (age <= fate.s)
        census.add(fate.born_length, born * prime_power(p, age - 1));
      else
        census.add(fate.born_length * prime_power(p, age - fate.s),
                   born * prime_power(p, fate.s - 1));
    }
  }
  return census;
}

CycleCensus census_by_lifting(u64 p, unsigned level, u64 work_bound) {
  if (level == 0) throw std::domain_error("census_by_lifting: level must be >= 1");
  CycleCensus census;
  census.add(1, 1);  // {0} is the only cycle off the units at every level
  const FunctionalGraph g1 = build_graph(p, 1, work_bound);
  std::vector<CycleAtLevel> cur;
  for (auto& c : cycles_at_level(g1))
    if (c.rep % static_cast<unsigned long>(p) != 0) cur.push_back(std::move(c));
  for (unsigned v = 1; v < level; ++v) {
    u128 work = 0;
    for (const auto& c : cur) work += (u128)p * c.length;
    if (work > work_bound)
      throw resource_error("census_by_lifting: level " + std::to_string(v + 1) +
                           " needs more than " + std::to_string(work_bound) +
                           " fiber points");
    std::vector<CycleAtLevel> next;
    for (const auto& c : cur) {
      auto lifts = lift_cycles(c, work_bound);
      std::move(lifts.begin(), lifts.end(), std::back_inserter(next));
    }
    cur = std::move(next);
  }
  for (const auto& c : cur) census.add(static_cast<unsigned long>(c.length), 1);
  return census;
}

}  // namespace padicdyn
