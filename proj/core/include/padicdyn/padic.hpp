#pragma once

// Finite-precision p-adic integers and the Teichmuller section of the unit
// group: for each unit c mod p there is exactly one (p-1)-st root of unity
// in Z_p reducing to c, and it is a periodic point of x -> x^2.

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace padicdyn {

// Library-wide default working precision (digits base p).
inline constexpr unsigned kDefaultPrecision = 64;

// An element of Z_p known modulo p^N. Immutable value type; arithmetic
// between two values requires equal p and truncates to the smaller N.
class PadicInt {
public:
  PadicInt(std::uint64_t p, unsigned precision, mpz_class value);

  std::uint64_t prime() const { return p_; }
  unsigned precision() const { return precision_; }
  const mpz_class& value() const { return value_; }
  mpz_class modulus() const;  // p^N

  PadicInt operator+(const PadicInt& rhs) const;
  PadicInt operator-(const PadicInt& rhs) const;
  PadicInt operator*(const PadicInt& rhs) const;

  PadicInt pow(const mpz_class& exp) const;

  // Drop digits down to precision N <= current; raising precision is not
  // possible and throws precision_error.
  PadicInt truncated(unsigned precision) const;

  bool operator==(const PadicInt& rhs) const = default;

  std::string str() const;  // "value (mod p^N)"

private:
  std::uint64_t p_;
  unsigned precision_;
  mpz_class value_;
};

// The Teichmuller lift of a unit residue c: the unique w with w = c (mod p)
// and w^{p-1} = 1 (mod p^N). Computed by the Frobenius iteration w <- w^p,
// stopped when two successive iterates agree mod p^N. Requires odd p and
// c != 0 (mod p).
PadicInt teichmuller(std::uint64_t c, std::uint64_t p, unsigned N);

// v_p(x - y) at common precision. Saturates: when x = y to full precision
// the true valuation is only known to be >= N.
struct DiffValuation {
  unsigned value;             // = precision when saturated
  bool at_least_precision;

  bool operator==(const DiffValuation&) const = default;
};

DiffValuation diff_valuation(const PadicInt& x, const PadicInt& y);

}  // namespace padicdyn
