#include <doctest.h>

#include <numeric>
#include <set>

#include "padicdyn/decomposition.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/numtheory.hpp"

using namespace padicdyn;

namespace {

// Sphere residues mod p^{n+s} of S_{p^-n}(center), recomputed from scratch:
// keep the first n digits of the center, then any continuation whose n-th
// digit differs from the center's.
std::set<mpz_class> sphere_residues_of(std::uint64_t p, unsigned n, unsigned s,
                                       const mpz_class& center) {
  const mpz_class pn = prime_power(p, n);
  const mpz_class base = center % pn;
  const std::uint64_t digit = mpz_class((center / pn) % p).get_ui();
  std::set<mpz_class> out;
  for (std::uint64_t w = 0; w < prime_power(p, s); ++w) {
    if (w % p == digit) continue;
    out.insert(base + pn * w);
  }
  return out;
}

}  // namespace

TEST_CASE("periodic_orbits: frozen structure") {
  const auto o11 = periodic_orbits(11, 1);
  REQUIRE(o11.size() == 2);
  CHECK(o11[0].d == 1);
  CHECK(o11[0].length == 1);
  CHECK(o11[0].level1_cycle == std::vector<std::uint64_t>{1});
  CHECK(o11[1].d == 5);
  CHECK(o11[1].length == 4);
  CHECK(o11[1].level1_cycle == std::vector<std::uint64_t>{3, 9, 4, 5});

  const auto o7 = periodic_orbits(7, 2);
  REQUIRE(o7.size() == 2);
  CHECK(o7[0].centers == std::vector<PadicInt>{PadicInt(7, 2, 1)});
  CHECK(o7[1].level1_cycle == std::vector<std::uint64_t>{2, 4});
  CHECK(o7[1].centers ==
        std::vector<PadicInt>{PadicInt(7, 2, 30), PadicInt(7, 2, 18)});

  const auto o3 = periodic_orbits(3, 6);
  REQUIRE(o3.size() == 1);
  CHECK(o3[0].d == 1);
  CHECK(o3[0].centers == std::vector<PadicInt>{PadicInt(3, 6, 1)});
}

TEST_CASE("periodic_orbits: lengths sum to the odd part of p - 1") {
  for (std::uint64_t p = 3; p < 100; p += 2) {
    if (!is_prime(p)) continue;
    const auto orbits = periodic_orbits(p, 2);
    std::uint64_t total = 0;
    for (const auto& o : orbits) {
      CHECK(o.length == mul_order(2, o.d));
      CHECK(o.level1_cycle.size() == o.length);
      total += o.length;
    }
    CHECK(total == factor_p_minus_one(p).m);
  }
}

TEST_CASE("periodic_orbits: centers really form orbits of x -> x^2") {
  const auto orbits = periodic_orbits(11, 6);
  for (const auto& o : orbits) {
    for (std::size_t i = 0; i < o.centers.size(); ++i) {
      const PadicInt& cur = o.centers[i];
      const PadicInt& next = o.centers[(i + 1) % o.centers.size()];
      CHECK(cur.pow(2) == next);
      CHECK(cur.value() % 11 == o.level1_cycle[i]);
      CHECK(cur.pow(o.d).value() == 1);  // d-th root of unity
    }
  }
}

TEST_CASE("sphere_decomposition: frozen small cases") {
  const auto o7 = periodic_orbits(7, 4);

  const SphereDecomposition sd = sphere_decomposition(o7[0], 1);
  CHECK(sd.s == 1);
  CHECK(sd.j == 3);
  CHECK(sd.component_count == 2);
  CHECK(sd.radius_exponent == 2);
  CHECK_FALSE(sd.sampled);
  REQUIRE(sd.components.size() == 2);
  CHECK(sd.components[0].disk_centers == std::vector<mpz_class>{8, 15, 29});
  CHECK(sd.components[1].disk_centers == std::vector<mpz_class>{22, 43, 36});
  CHECK(sd.components[0].j == 3);
  CHECK(sd.components[0].radius_exponent == 2);
  CHECK(sd.components[0].sphere_index == 1);
  CHECK(sd.components[0].orbit_d == 1);

  const auto o3 = periodic_orbits(3, 4);
  const SphereDecomposition s3 = sphere_decomposition(o3[0], 1);
  CHECK(s3.component_count == 1);
  REQUIRE(s3.components.size() == 1);
  CHECK(s3.components[0].disk_centers == std::vector<mpz_class>{4, 7});

  const auto o5 = periodic_orbits(5, 4);
  const SphereDecomposition s5 = sphere_decomposition(o5[0], 1);
  REQUIRE(s5.components.size() == 1);
  CHECK(s5.components[0].disk_centers ==
        std::vector<mpz_class>{6, 11, 21, 16});

  const auto o11 = periodic_orbits(11, 4);
  const SphereDecomposition s11 = sphere_decomposition(o11[1], 1);
  CHECK(s11.orbit_length == 4);
  CHECK(s11.j == 20);
  CHECK(s11.component_count == 2);
  for (const auto& c : s11.components) {
    CHECK(c.disk_centers.size() == 20);
  }

  const auto o17 = periodic_orbits(17, 4);
  const SphereDecomposition s17 = sphere_decomposition(o17[0], 1);
  CHECK(s17.j == 8);
  CHECK(s17.component_count == 2);

  CHECK_THROWS_AS(sphere_decomposition(periodic_orbits(7, 2)[0], 2),
                  precision_error);
}

TEST_CASE("sphere_decomposition: partition and measure, p in {3,5,7,11,13}") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const auto orbits = periodic_orbits(p, 8);
    const std::uint64_t ord = mul_order(2, p);
    for (const auto& orb : orbits) {
      for (unsigned n = 1; n <= 2; ++n) {
        const SphereDecomposition sd = sphere_decomposition(orb, n);
        REQUIRE_FALSE(sd.sampled);

        // Formula count and component shape.
        const mpz_class want_count = mpz_class((p - 1) * std::gcd(ord, orb.length)) / ord *
                                     prime_power(p, sd.s - 1);
        CHECK(sd.component_count == want_count);
        CHECK(sd.components.size() == sd.component_count);
        for (const auto& c : sd.components) {
          CHECK(c.j == sd.j);
          CHECK(c.disk_centers.size() == sd.j);
          CHECK(c.radius_exponent == n + sd.s);
        }

        // Exact measure identity: (#components) * j * p^{n+1}
        // = ell * (p-1) * p^{n+s}.
        CHECK(sd.component_count * sd.j * prime_power(p, n + 1) ==
              orb.length * (p - 1) * prime_power(p, n + sd.s));

        // The disk centers partition the sphere union exactly.
        std::set<mpz_class> want;
        for (const auto& ctr : orb.centers) {
          const auto one = sphere_residues_of(p, n, sd.s, ctr.value());
          want.insert(one.begin(), one.end());
        }
        std::set<mpz_class> got;
        for (const auto& c : sd.components)
          got.insert(c.disk_centers.begin(), c.disk_centers.end());
        CHECK(got.size() == sd.component_count * sd.j);  // no duplicates
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("sphere_decomposition: sampled mode at p = 1093") {
  const auto orbits = periodic_orbits(1093, 4);
  REQUIRE_FALSE(orbits.empty());
  REQUIRE(orbits[0].d == 1);
  const SphereDecomposition sd = sphere_decomposition(orbits[0], 1);
  CHECK(sd.sampled);
  CHECK(sd.s == 2);
  CHECK(sd.component_count == 3279);
  CHECK(sd.j == 364);
  CHECK(sd.radius_exponent == 3);
  REQUIRE(sd.components.size() == 1);
  CHECK(sd.components[0].sampled);
  CHECK(sd.components[0].disk_centers.size() == 364);
  CHECK(odometer_sequence(sd.components[0], 3) ==
        std::vector<mpz_class>{1, 364, 397852});
}

TEST_CASE("odometer_sequence: frozen heads") {
  const auto o3 = periodic_orbits(3, 4);
  const auto c3 = sphere_decomposition(o3[0], 1).components[0];
  CHECK(odometer_sequence(c3, 6) ==
        std::vector<mpz_class>{1, 2, 6, 18, 54, 162});

  const auto o7 = periodic_orbits(7, 4);
  const auto c7 = sphere_decomposition(o7[1], 1).components[0];
  CHECK(odometer_sequence(c7, 4) == std::vector<mpz_class>{2, 12, 84, 588});

  const auto o5 = periodic_orbits(5, 4);
  const auto c5 = sphere_decomposition(o5[0], 1).components[0];
  CHECK(odometer_sequence(c5, 6) ==
        std::vector<mpz_class>{1, 4, 20, 100, 500, 2500});

  // Consecutive terms divide: the defining property of a structure sequence.
  const auto seq = odometer_sequence(c7, 8);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    CHECK(seq[i + 1] % seq[i] == 0);

  CHECK_THROWS_AS(odometer_sequence(c3, 1), std::domain_error);
}

TEST_CASE("component_single_cycle_at: minimality persists") {
  const auto o7 = periodic_orbits(7, 6);
  const auto comp = sphere_decomposition(o7[0], 1).components[0];
  CHECK(comp.radius_exponent == 2);
  CHECK(component_single_cycle_at(comp, 2));
  CHECK(component_single_cycle_at(comp, 3));
  CHECK(component_single_cycle_at(comp, 4));
  CHECK_THROWS_AS(component_single_cycle_at(comp, 1), std::domain_error);
}

TEST_CASE("decompose: p = 7, depth 2") {
  const DecompositionReport rep = decompose(7, 2);
  CHECK(rep.p == 7);
  CHECK(rep.depth == 2);
  CHECK_FALSE(rep.special_p2);
  CHECK(rep.s == 1);
  CHECK(rep.m == 3);
  CHECK(rep.precision == 7);  // depth + s + 4
  REQUIRE(rep.orbits.size() == 2);
  REQUIRE(rep.spheres.size() == 4);  // orbit-major, n = 1..2 inside
  CHECK(rep.spheres[0].orbit_d == 1);
  CHECK(rep.spheres[0].sphere_index == 1);
  CHECK(rep.spheres[1].orbit_d == 1);
  CHECK(rep.spheres[1].sphere_index == 2);
  CHECK(rep.spheres[2].orbit_d == 3);
  CHECK(rep.spheres[2].sphere_index == 1);
  CHECK(rep.spheres[3].orbit_d == 3);
  CHECK(rep.spheres[3].sphere_index == 2);
  CHECK(rep.basin.zero_disk);
  CHECK(rep.basin.tree_residues == std::vector<std::uint64_t>{3, 5, 6});

  CHECK_THROWS_AS(decompose(7, 2, 2), precision_error);
  CHECK_THROWS_AS(decompose(6), std::domain_error);
}

TEST_CASE("decompose: level-1 residues split into 0, trees, cycles") {
  for (std::uint64_t p : {7, 17}) {
    const DecompositionReport rep = decompose(p, 1);
    std::set<std::uint64_t> seen{0};
    for (const auto& orb : rep.orbits)
      seen.insert(orb.level1_cycle.begin(), orb.level1_cycle.end());
    for (std::uint64_t t : rep.basin.tree_residues) {
      CHECK_FALSE(seen.count(t));
      seen.insert(t);
    }
    CHECK(seen.size() == p);
  }
}

TEST_CASE("decompose: p = 2 is special") {
  const DecompositionReport rep = decompose(2);
  CHECK(rep.special_p2);
  CHECK(rep.s == 0);
  CHECK(rep.m == 1);
  CHECK(rep.precision == 7);
  REQUIRE(rep.orbits.size() == 1);
  CHECK(rep.orbits[0].level1_cycle == std::vector<std::uint64_t>{1});
  CHECK(rep.orbits[0].centers == std::vector<PadicInt>{PadicInt(2, 7, 1)});
  CHECK(rep.spheres.empty());
  CHECK(rep.basin.tree_residues.empty());
}

TEST_CASE("locate: frozen classifications") {
  {
    const Location loc = locate(PadicInt(7, 3, 0));
    CHECK(loc.kind == Location::Kind::FixedPointZero);
    CHECK(loc.str() == "fixed point 0");
  }
  {
    const Location loc = locate(PadicInt(7, 3, 14));
    CHECK(loc.kind == Location::Kind::ZeroBasin);
  }
  {
    const Location loc = locate(PadicInt(3, 4, 4));
    CHECK(loc.kind == Location::Kind::MinimalComponentMember);
    CHECK(loc.orbit_d == 1);
    CHECK(loc.orbit_length == 1);
    CHECK(loc.sphere_index == 1);
    CHECK(loc.j == 2);
    CHECK(loc.radius_exponent == 2);
    CHECK(loc.component_id == 4);
  }
  {
    const Location loc = locate(PadicInt(7, 2, 2));
    CHECK(loc.kind == Location::Kind::MinimalComponentMember);
    CHECK(loc.orbit_d == 3);
    CHECK(loc.orbit_length == 2);
    CHECK(loc.sphere_index == 1);
    CHECK(loc.j == 6);
    CHECK(loc.component_id == 2);
  }
  {
    const Location loc = locate(PadicInt(7, 2, 3));
    CHECK(loc.kind == Location::Kind::TreeBasin);
    CHECK(loc.fed_cycle_rep == 2);
    CHECK(loc.fed_cycle_length == 2);
  }
  {
    const Location loc = locate(PadicInt(7, 4, 1));
    CHECK(loc.kind == Location::Kind::PeriodicPoint);
    CHECK(loc.orbit_d == 1);
    CHECK(loc.orbit_index == 0);
  }
  {
    const Location loc = locate(PadicInt(7, 2, 30));
    CHECK(loc.kind == Location::Kind::PeriodicPoint);
    CHECK(loc.orbit_d == 3);
    CHECK(loc.orbit_length == 2);
    CHECK(loc.orbit_index == 0);  // 30 reduces to 2, the smallest on (2, 4)
  }
  {
    const Location loc = locate(PadicInt(7, 2, 18));
    CHECK(loc.kind == Location::Kind::PeriodicPoint);
    CHECK(loc.orbit_index == 1);  // 18 reduces to 4
  }
  {
    const Location loc = locate(PadicInt(2, 5, 1));
    CHECK(loc.kind == Location::Kind::PeriodicPoint);
    CHECK(loc.orbit_d == 1);
  }
  {
    const Location loc = locate(PadicInt(2, 5, 3));
    CHECK(loc.kind == Location::Kind::TreeBasin);
    CHECK(loc.fed_cycle_rep == 1);
    CHECK(loc.fed_cycle_length == 1);
  }
  CHECK_THROWS_AS(locate(PadicInt(1093, 2, 1 + 1093)), precision_error);
}

TEST_CASE("locate agrees with the enumerated components") {
  // Every residue mod 7^4 lands in exactly the slot decompose reports.
  const DecompositionReport rep = decompose(7, 2, 6);
  for (const auto& sd : rep.spheres) {
    for (const auto& comp : sd.components) {
      for (const auto& ctr : comp.disk_centers) {
        const Location loc = locate(PadicInt(7, sd.radius_exponent, ctr));
        CHECK(loc.kind == Location::Kind::MinimalComponentMember);
        CHECK(loc.orbit_d == sd.orbit_d);
        CHECK(loc.sphere_index == sd.sphere_index);
        CHECK(loc.component_id == comp.disk_centers[0]);
      }
    }
  }
}

TEST_CASE("verify_decomposition: cross-check against brute force") {
  for (auto [p, max_level] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {3, 5}, {7, 4}, {11, 3}, {13, 3}}) {
    const VerificationReport rep = verify_decomposition(p, max_level);
    CHECK_MESSAGE(rep.ok, "p=", p,
                  rep.failed.empty() ? "" : rep.failed.front());
    CHECK_FALSE(rep.passed.empty());
    CHECK(rep.failed.empty());
    CHECK(rep.str().find("PASS") != std::string::npos);
  }

  CHECK_THROWS_AS(verify_decomposition(11, 5, 1000), resource_error);
  CHECK_THROWS_AS(verify_decomposition(
                      3, 3, kDefaultNodeBound, [](unsigned) { return false; }),
                  resource_error);
  CHECK_THROWS_AS(verify_decomposition(2, 3), std::domain_error);
}
