#include "echeights/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

namespace ech {

namespace {

using Poly = std::vector<Integer>;  // coefficients low-to-high over F_p

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Poly poly_mod(Poly f, const Poly& g, const Integer& p) {
  trim(f);
  const Integer lead_inv = inverse_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const Integer factor = mod(f.back() * lead_inv, p);
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      f[shift + i] = mod(f[shift + i] - factor * g[i], p);
    }
    trim(f);
  }
  return f;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  for (auto& c : out) c = mod(c, p);
  return poly_mod(std::move(out), m, p);
}

Poly poly_pow_mod(Poly base, Integer e, const Poly& m, const Integer& p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = poly_mul_mod(result, base, m, p);
    base = poly_mul_mod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, const Integer& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Integer inv = inverse_mod(a.back(), p);
    for (auto& c : a) c = mod(c * inv, p);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, const Integer& p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
  trim(a);
  return a;
}

Integer eval_mod(const Poly& f, const Integer& x, const Integer& p) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod(acc * x + *it, p);
  return acc;
}

// Splits a monic product of distinct linear factors into its roots (odd p).
void split_linear(const Poly& g, const Integer& p, std::mt19937_64& rng, std::vector<Integer>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(mod(-g[0], p));
    return;
  }
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  const Integer half = (p - 1) / 2;
  for (;;) {
    const Integer a = gen.get_z_range(p);
    Poly h = poly_pow_mod(Poly{a, 1}, half, g, p);
    h = poly_sub(h, Poly{1}, p);
    Poly d = poly_gcd(g, h, p);
    if (d.size() > 1 && d.size() < g.size()) {
      // g / d via repeated division: recover the cofactor by exact long division.
      Poly q(g.size() - d.size() + 1, 0);
      Poly rem = g;
      for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = rem[k + d.size() - 1];
        for (std::size_t i = 0; i < d.size(); ++i) rem[k + i] = mod(rem[k + i] - q[k] * d[i], p);
      }
      split_linear(d, p, rng, out);
      split_linear(q, p, rng, out);
      return;
    }
  }
}

}  // namespace

long ord(const Integer& n, const Integer& p) {
  if (n == 0) return kInfiniteOrder;
  Integer m = n;
  return static_cast<long>(mpz_remove(m.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long ord(const Rational& q, const Integer& p) {
  if (q == 0) return kInfiniteOrder;
  return ord(Integer(q.get_num()), p) - ord(Integer(q.get_den()), p);
}

Valuation padic_valuation(const Rational& q, const Integer& p) {
  if (!is_prime(p)) throw InputError("not a prime: " + to_string(p));
  if (q == 0) return Valuation::infinity();
  return {ord(q, p), false};
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw InternalError("no inverse of " + a.get_str() + " modulo " + m.get_str());
  }
  return out;
}

Integer residue(const Rational& q, const Integer& m) {
  const Integer num = q.get_num();
  const Integer den = q.get_den();
  return mod(num * inverse_mod(den, m), m);
}

Rational fraction(const Integer& n, const Integer& d) {
  if (d == 0) throw InputError("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    return pow(Rational(1 / base), -exponent);
  }
  Rational out(pow(Integer(base.get_num()), static_cast<unsigned long>(exponent)),
               pow(Integer(base.get_den()), static_cast<unsigned long>(exponent)));
  out.canonicalize();
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InputError("empty rational number");
  const auto slash = s.find('/');
  const std::string num_text = s.substr(0, slash);
  const std::string den_text = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  if (!valid(num_text) || !valid(den_text) || den_text[0] == '-') {
    throw InputError("malformed rational number: '" + std::string(text) + "'");
  }
  Integer num(num_text[0] == '+' ? num_text.substr(1) : num_text);
  Integer den(den_text[0] == '+' ? den_text.substr(1) : den_text);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& n) { return n.get_str(); }

bool is_prime(const Integer& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

namespace {

Integer pollard_brent(const Integer& n, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  for (;;) {
    Integer y = gen.get_z_range(n - 1) + 1;
    const Integer c = gen.get_z_range(n - 1) + 1;
    const unsigned long m = 128;
    Integer g = 1, r = 1, q = 1, x, ys;
    auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min<unsigned long>(m, mpz_get_ui(r.get_mpz_t()) - k); ++i) {
          y = step(y);
          Integer diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        Integer diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        g = abs(g);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::vector<Integer>& primes, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const Integer d = pollard_brent(n, rng);
  factor_into(d, primes, rng);
  factor_into(n / d, primes, rng);
}

}  // namespace

std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
  if (n == 0) throw DomainError("cannot factor zero");
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long d = 2; d < 10000 && Integer(d) * d <= m; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      primes.emplace_back(d);
      m /= d;
    }
  }
  std::mt19937_64 rng(0x5eed);
  factor_into(m, primes, rng);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, int>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<Integer> prime_support(const Rational& q) {
  if (q == 0) throw DomainError("prime support of zero");
  std::vector<Integer> out;
  for (const auto& [p, e] : factorize(Integer(q.get_num()))) out.push_back(p);
  for (const auto& [p, e] : factorize(Integer(q.get_den()))) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double log_abs(const Integer& n) {
  if (n == 0) throw DomainError("log of zero");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

std::vector<std::pair<Integer, int>> roots_mod_p(const std::vector<Rational>& coefficients,
                                                 const Integer& p) {
  Poly f;
  for (const auto& c : coefficients) f.push_back(residue(c, p));
  trim(f);
  if (f.empty()) throw InternalError("roots of the zero polynomial");

  std::vector<Integer> distinct;
  if (p < 4096) {
    for (Integer x = 0; x < p; ++x) {
      if (eval_mod(f, x, p) == 0) distinct.push_back(x);
    }
  } else {
    const Integer inv = inverse_mod(f.back(), p);
    for (auto& c : f) c = mod(c * inv, p);
    // gcd with x^p - x isolates the product of the distinct linear factors.
    Poly xp = poly_pow_mod(Poly{0, 1}, p, f, p);
    Poly g = poly_gcd(f, poly_sub(xp, Poly{0, 1}, p), p);
    std::mt19937_64 rng(0xfeed);
    split_linear(g, p, rng, distinct);
    std::sort(distinct.begin(), distinct.end());
  }

  std::vector<std::pair<Integer, int>> out;
  for (const auto& r : distinct) {
    Poly g = f;
    int multiplicity = 0;
    for (;;) {
      if (g.empty() || eval_mod(g, r, p) != 0) break;
      // synthetic division by (x - r)
      Poly q(g.size() - 1, 0);
      Integer carry = 0;
      for (std::size_t k = g.size(); k-- > 1;) {
        carry = mod(carry * r + g[k], p);
        q[k - 1] = carry;
      }
      g = std::move(q);
      trim(g);
      ++multiplicity;
    }
    out.emplace_back(r, multiplicity);
  }
  return out;
}

}  // namespace ech
