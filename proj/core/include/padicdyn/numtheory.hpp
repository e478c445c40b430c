#pragma once

// Integer primitives shared by the whole library: deterministic 64-bit
// primality, factorization, multiplicative orders, valuations, and the
// Wieferich analysis s = v_p(2^{p-1} - 1).

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace padicdyn {

// p^exp as an arbitrary-precision integer.
mpz_class prime_power(std::uint64_t p, unsigned exp);

// base^exp mod m (m >= 1), all arbitrary precision.
mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& m);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin, correct for every n < 2^64.
bool is_prime(std::uint64_t n);

// Prime factorization (trial division + Pollard-Brent rho), exponents paired
// with their primes, primes ascending. factor(1) is empty.
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

// ord_m(a): least i >= 1 with a^i = 1 (mod m). ord_1(a) = 1 by convention.
// Computed by reducing phi(m) through its prime factors, never by naive
// iteration. Throws std::domain_error unless gcd(a, m) = 1.
std::uint64_t mul_order(std::uint64_t a, std::uint64_t modulus);

// v_p(x): exponent of p in x. Throws std::domain_error when x = 0 (the
// valuation would be infinite) or p < 2.
unsigned padic_valuation(const mpz_class& x, const mpz_class& p);

// p = 2^k * m + 1 with m odd, k >= 1. Defined for odd p >= 3.
struct PrimeDecomposition {
  std::uint64_t p;
  unsigned k;
  std::uint64_t m;
};

PrimeDecomposition factor_p_minus_one(std::uint64_t p);

// s = v_p(2^{p-1} - 1), found by raising the modulus p^2, p^3, ... until
// 2^{p-1} stops being 1. Always >= 1 by Fermat; the loop carries no upper
// bound on s other than the theoretical s < p - 1.
struct WieferichResult {
  unsigned s;
  bool is_wieferich;  // s >= 2
};

WieferichResult wieferich_valuation(std::uint64_t p);

}  // namespace padicdyn
