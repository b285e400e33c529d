#pragma once

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ech {

using Integer = mpz_class;
using Rational = mpq_class;

// Malformed user input (unparsable strings, non-prime "primes", points off the curve).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request outside an operation's domain (P = O where O is excluded, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularCurveError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Broken internal invariant; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// v_p of a rational number, with +infinity for zero.
struct Valuation {
  long value = 0;
  bool infinite = false;

  static Valuation infinity() { return {0, true}; }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline constexpr long kInfiniteOrder = std::numeric_limits<long>::max() / 4;

/// Checked p-adic valuation; throws InputError if p is not prime.
Valuation padic_valuation(const Rational& q, const Integer& p);

/// Unchecked valuation used on hot paths: kInfiniteOrder for zero.
long ord(const Rational& q, const Integer& p);
long ord(const Integer& n, const Integer& p);

/// Residue of a p-integral rational modulo m, in [0, m). The denominator must be
/// coprime to m.
Integer residue(const Rational& q, const Integer& m);

/// Inverse of a modulo m; throws InternalError when it does not exist.
Integer inverse_mod(const Integer& a, const Integer& m);

/// n/d in lowest terms; throws InputError for d = 0.
Rational fraction(const Integer& n, const Integer& d);

Integer pow(const Integer& base, unsigned long exponent);
Rational pow(const Rational& base, long exponent);

/// Parses "n", "-n" or "n/d" (surrounding whitespace allowed).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

bool is_prime(const Integer& n);

/// Prime factorisation of |n| (n != 0), primes ascending.
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

/// Distinct primes dividing numerator or denominator of q (q != 0).
std::vector<Integer> prime_support(const Rational& q);

/// Natural logarithm of a positive integer, exact to double precision for any size.
double log_abs(const Integer& n);

/// Roots in F_p of a polynomial with coefficients given low-to-high, each with its
/// multiplicity, sorted by residue. Coefficients must be p-integral.
std::vector<std::pair<Integer, int>> roots_mod_p(const std::vector<Rational>& coefficients,
                                                 const Integer& p);

}  // namespace ech
