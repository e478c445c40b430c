#include "padicdyn/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace padicdyn {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

mpz_class prime_power(u64 p, unsigned exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), exp);
  return r;
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((u128)a * b % m);
}

u64 powmod_u64(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

namespace {

bool miller_rabin(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  u64 x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Pollard-Brent rho; n must be odd composite, not a prime power of a tiny
// prime (trial division below 100 happens first).
u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  u64 c = 1;
  while (true) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    u64 ys = y;
    const unsigned m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (d == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && d == 1) {
        ys = y;
        for (u64 i = 0; i < std::min<u64>(m, r - k); ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (d == n) {
      // backtrack
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
    ++c;  // rare: retry with another polynomial
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // This base set decides primality for every n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::vector<u64> primes;
  for (u64 p = 2; p < 100 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::vector<u64> divisors(u64 n) {
  if (n == 0) throw std::domain_error("divisors: n must be >= 1");
  std::vector<u64> ds{1};
  for (auto [q, e] : factor(n)) {
    const std::size_t base = ds.size();
    u64 qk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      qk *= q;
      for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * qk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

u64 euler_phi(u64 n) {
  if (n == 0) throw std::domain_error("euler_phi: n must be >= 1");
  u64 phi = n;
  for (auto [q, e] : factor(n)) {
    phi -= phi / q;
  }
  return phi;
}

u64 mul_order(u64 a, u64 modulus) {
  if (modulus == 0) throw std::domain_error("mul_order: modulus must be >= 1");
  if (modulus == 1) return 1;
  a %= modulus;
  if (std::gcd(a, modulus) != 1)
    throw std::domain_error("mul_order: arguments are not coprime");
  u64 t = euler_phi(modulus);
  for (auto [q, e] : factor(t)) {
    for (unsigned i = 0; i < e; ++i) {
      if (t % q == 0 && powmod_u64(a, t / q, modulus) == 1)
        t /= q;
      else
        break;
    }
  }
  return t;
}

unsigned padic_valuation(const mpz_class& x, const mpz_class& p) {
  if (x == 0) throw std::domain_error("padic_valuation: v_p(0) is infinite");
  if (p < 2) throw std::domain_error("padic_valuation: p must be >= 2");
  mpz_class reduced;
  return static_cast<unsigned>(
      mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

PrimeDecomposition factor_p_minus_one(u64 p) {
  if (p < 3 || p % 2 == 0)
    throw std::domain_error("factor_p_minus_one: p must be an odd prime");
  u64 m = p - 1;
  unsigned k = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++k;
  }
  return {p, k, m};
}

WieferichResult wieferich_valuation(u64 p) {
  if (p < 3 || p % 2 == 0)
    throw std::domain_error("wieferich_valuation: p must be an odd prime");
  const mpz_class base = 2;
  const mpz_class e = mpz_class(static_cast<unsigned long>(p)) - 1;
  unsigned s = 1;  // Fermat: p | 2^{p-1} - 1
  while (powm(base, e, prime_power(p, s + 1)) == 1) ++s;
  return {s, s >= 2};
}

}  // namespace padicdyn
