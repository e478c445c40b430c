#include "padicdyn/padic.hpp"

#include <stdexcept>

#include "padicdyn/errors.hpp"
#include "padicdyn/numtheory.hpp"

namespace padicdyn {

PadicInt::PadicInt(std::uint64_t p, unsigned precision, mpz_class value)
    : p_(p), precision_(precision), value_(std::move(value)) {
  if (p_ < 2) throw std::domain_error("PadicInt: p must be >= 2");
  if (precision_ == 0) throw std::domain_error("PadicInt: precision must be >= 1");
  const mpz_class m = prime_power(p_, precision_);
  value_ %= m;
  if (value_ < 0) value_ += m;
}

mpz_class PadicInt::modulus() const { return prime_power(p_, precision_); }

namespace {

void require_same_prime(const PadicInt& a, const PadicInt& b) {
  if (a.prime() != b.prime())
    throw std::domain_error("PadicInt: mixed primes in arithmetic");
}

}  // namespace

PadicInt PadicInt::operator+(const PadicInt& rhs) const {
  require_same_prime(*this, rhs);
  const unsigned n = std::min(precision_, rhs.precision_);
  return PadicInt(p_, n, value_ + rhs.value_);
}

PadicInt PadicInt::operator-(const PadicInt& rhs) const {
  require_same_prime(*this, rhs);
  const unsigned n = std::min(precision_, rhs.precision_);
  return PadicInt(p_, n, value_ - rhs.value_);
}

PadicInt PadicInt::operator*(const PadicInt& rhs) const {
  require_same_prime(*this, rhs);
  const unsigned n = std::min(precision_, rhs.precision_);
  return PadicInt(p_, n, value_ * rhs.value_);
}

PadicInt PadicInt::pow(const mpz_class& exp) const {
  if (exp < 0) throw std::domain_error("PadicInt::pow: negative exponent");
  return PadicInt(p_, precision_, powm(value_, exp, modulus()));
}

PadicInt PadicInt::truncated(unsigned precision) const {
  if (precision > precision_)
    throw precision_error("PadicInt::truncated: cannot raise precision from " +
                          std::to_string(precision_) + " to " +
                          std::to_string(precision));
  return PadicInt(p_, precision, value_);
}

std::string PadicInt::str() const {
  return value_.get_str() + " (mod " + std::to_string(p_) + "^" +
         std::to_string(precision_) + ")";
}

PadicInt teichmuller(std::uint64_t c, std::uint64_t p, unsigned N) {
  if (p < 3 || p % 2 == 0)
    throw std::domain_error("teichmuller: p must be an odd prime");
  if (c % p == 0)
    throw std::domain_error("teichmuller: 0 is not a unit mod p");
  const mpz_class m = prime_power(p, N);
  const mpz_class pe = static_cast<unsigned long>(p);
  mpz_class w = static_cast<unsigned long>(c % p);
  // Each w <- w^p step gains at least one correct digit; stability mod p^N
  // is reached after at most N steps.
  while (true) {
    mpz_class next = powm(w, pe, m);
    if (next == w) break;
    w = std::move(next);
  }
  return PadicInt(p, N, w);
}

DiffValuation diff_valuation(const PadicInt& x, const PadicInt& y) {
  if (x.prime() != y.prime())
    throw std::domain_error("diff_valuation: mixed primes");
  const unsigned n = std::min(x.precision(), y.precision());
  const mpz_class m = prime_power(x.prime(), n);
  mpz_class d = (x.value() - y.value()) % m;
  if (d < 0) d += m;
  if (d == 0) return {n, true};
  const unsigned v = padic_valuation(d, mpz_class(static_cast<unsigned long>(x.prime())));
  return {v, false};
}

}  // namespace padicdyn
