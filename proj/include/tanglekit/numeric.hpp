#pragma once
/// @file numeric.hpp
/// @brief Exact integer and rational arithmetic helpers shared by all modules:
///        primes, factorization, square classes, Legendre symbols and CRT.
///
/// Everything here is exact; no floating point is used anywhere in the
/// library.  Big values use boost::multiprecision (header-only backend).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tanglekit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

// ============================================================================
// Error taxonomy
// ============================================================================

/// Raised when an operation receives arguments outside its contract.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a configurable resource budget (element count, prime bound,
/// reconstruction height) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal structural assertion fails; indicates a bug or an
/// input that violates an undeclared precondition.
class StructuralError : public std::logic_error {
 public:
  explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw StructuralError(what);
}

// ============================================================================
// Small modular arithmetic (64-bit, used for mod-p polynomial work)
// ============================================================================

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  i64 x1 = 0, y1 = 0;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

/// Inverse of a modulo m (m >= 1); throws ValidationError when gcd(a,m) != 1.
inline i64 inv_mod(i64 a, i64 m) {
  a %= m;
  if (a < 0) a += m;
  i64 x = 0, y = 0;
  i64 g = ext_gcd(a, m, x, y);
  require(g == 1, "inv_mod: argument not invertible modulo " + std::to_string(m));
  x %= m;
  if (x < 0) x += m;
  return x;
}

/// Chinese remainder for a pair of coprime moduli.
inline i64 crt_pair(i64 r1, i64 m1, i64 r2, i64 m2) {
  i64 x = 0, y = 0;
  i64 g = ext_gcd(m1, m2, x, y);
  ensure(g == 1, "crt_pair: moduli not coprime");
  i64 m = m1 * m2;
  // r1 + m1 * ((r2 - r1) * inv(m1) mod m2)
  i64 diff = ((r2 - r1) % m2 + m2) % m2;
  i64 inv = ((x % m2) + m2) % m2;
  i64 t = static_cast<i64>(mul_mod(static_cast<u64>(diff), static_cast<u64>(inv), static_cast<u64>(m2)));
  i64 res = (r1 % m + m) % m;
  res = (res + (m1 % m) * t) % m;
  return res;
}

// ============================================================================
// Primes
// ============================================================================

/// All primes <= bound, by sieve of Eratosthenes.
inline std::vector<i64> primes_up_to(i64 bound) {
  if (bound < 2) return {};
  std::vector<bool> comp(static_cast<std::size_t>(bound) + 1, false);
  std::vector<i64> out;
  for (i64 p = 2; p <= bound; ++p) {
    if (comp[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (i64 q = p * p; q <= bound; q += p) comp[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

/// Deterministic Miller--Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<u64>::max()) return is_prime_u64(n.convert_to<u64>());
  // Miller--Rabin with fixed witnesses; adequate as a strong probable-prime
  // test for the sizes reached by this library's workloads.
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    Int x = boost::multiprecision::powm(Int(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
  // Brent's cycle variant with a deterministic seed sequence.
  std::mt19937_64 rng(0x7a6e676c656b6974ull);
  while (true) {
    Int c = Int(rng() % 1000 + 1);
    Int x = Int(rng() % 1000 + 2);
    Int y = x, d = 1;
    auto step = [&](const Int& v) { return (v * v + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Int diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = boost::multiprecision::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

}  // namespace detail

/// Full factorization of |n| as sorted (prime, exponent) pairs; n must be nonzero.
inline std::vector<std::pair<Int, int>> factorize(Int n) {
  require(n != 0, "factorize: zero has no factorization");
  if (n < 0) n = -n;
  std::map<Int, int> acc;
  static const std::vector<i64> small = primes_up_to(100000);
  for (i64 p : small) {
    if (Int(p) * p > n) break;
    while (n % p == 0) {
      ++acc[Int(p)];
      n /= p;
    }
  }
  // Remaining cofactor: prime, or split recursively.
  std::vector<Int> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    Int m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      ++acc[m];
      continue;
    }
    Int d = detail::pollard_rho(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  return {acc.begin(), acc.end()};
}

/// Divisors of n > 0, sorted ascending.
inline std::vector<i64> divisors_of(i64 n) {
  require(n >= 1, "divisors_of: positive argument required");
  std::vector<i64> out;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline i64 euler_phi(i64 n) {
  require(n >= 1, "euler_phi: positive argument required");
  i64 result = n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// ============================================================================
// Squares and square classes
// ============================================================================

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

/// Exact integer square root of a perfect square; throws otherwise.
inline Int sqrt_exact(const Int& n) {
  require(n >= 0, "sqrt_exact: negative argument");
  Int r = boost::multiprecision::sqrt(n);
  ensure(r * r == n, "sqrt_exact: argument is not a perfect square");
  return r;
}

/// Signed square-free part of a nonzero integer: n = squarefree_part(n) * s^2.
inline Int squarefree_part(const Int& n) {
  require(n != 0, "squarefree_part: zero has no square class");
  Int out = n < 0 ? Int(-1) : Int(1);
  for (const auto& [p, e] : factorize(n)) {
    if (e % 2 == 1) out *= p;
  }
  return out;
}

/// Signed square-free part of a nonzero rational (its class in Q^x/(Q^x)^2).
inline Int squarefree_part(const Rat& q) {
  require(q != 0, "squarefree_part: zero has no square class");
  return squarefree_part(Int(boost::multiprecision::numerator(q) *
                             boost::multiprecision::denominator(q)));
}

inline bool is_square(const Rat& q) {
  if (q < 0) return false;
  if (q == 0) return true;
  return is_square(Int(boost::multiprecision::numerator(q))) &&
         is_square(Int(boost::multiprecision::denominator(q)));
}

/// Legendre symbol (a|p) for an odd prime p: 0, 1 or -1.
inline int legendre(i64 a, i64 p) {
  require(p > 2 && is_prime_u64(static_cast<u64>(p)), "legendre: odd prime modulus required");
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  u64 r = pow_mod(static_cast<u64>(a), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
  return r == 1 ? 1 : -1;
}

/// p-adic valuation of a nonzero integer.
inline int valuation(Int n, const Int& p) {
  require(n != 0, "valuation: zero argument");
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// ============================================================================
// Rational parsing/printing ("p/q" exact form used across all JSON documents)
// ============================================================================

inline std::string rat_to_string(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    require(den != 0, "rational literal with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw ValidationError("malformed rational literal: " + s);
  }
}

/// Binomial coefficient as an exact integer.
inline Int binomial(i64 n, i64 k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (i64 i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

}  // namespace tanglekit
