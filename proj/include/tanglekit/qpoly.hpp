#pragma once
/// @file qpoly.hpp
/// @brief Exact univariate polynomial arithmetic over Q and Q(t): generic
///        dense polynomials, rational functions in t, division polynomials,
///        resultants/discriminants, mod-p factorization fingerprints, and a
///        bounded-degree rational factor extractor.

#include <array>
#include <optional>
#include <utility>

#include "tanglekit/numeric.hpp"

namespace tanglekit {

// ============================================================================
// Integer polynomials in t (building block for rational functions)
// ============================================================================

using PolyZ = std::vector<Int>;  // coefficients ascending; no trailing zeros

inline void pz_normalize(PolyZ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int pz_deg(const PolyZ& a) { return static_cast<int>(a.size()) - 1; }

inline PolyZ pz_add(const PolyZ& a, const PolyZ& b) {
  PolyZ r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  pz_normalize(r);
  return r;
}

inline PolyZ pz_neg(PolyZ a) {
  for (auto& c : a) c = -c;
  return a;
}

inline PolyZ pz_sub(const PolyZ& a, const PolyZ& b) { return pz_add(a, pz_neg(b)); }

inline PolyZ pz_mul(const PolyZ& a, const PolyZ& b) {
  if (a.empty() || b.empty()) return {};
  PolyZ r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  pz_normalize(r);
  return r;
}

inline Int pz_content(const PolyZ& a) {
  Int g = 0;
  for (const auto& c : a) g = boost::multiprecision::gcd(g, c);
  return g;  // 0 for the zero polynomial
}

/// Exact division by a scalar (must divide every coefficient).
inline PolyZ pz_scalar_divexact(PolyZ a, const Int& s) {
  ensure(s != 0, "pz_scalar_divexact: zero divisor");
  for (auto& c : a) {
    ensure(c % s == 0, "pz_scalar_divexact: inexact division");
    c /= s;
  }
  return a;
}

inline PolyZ pz_primitive(const PolyZ& a) {
  Int c = pz_content(a);
  if (c == 0) return {};
  return pz_scalar_divexact(a, c);
}

/// Exact polynomial division (b | a in Z[t] required).
inline PolyZ pz_divexact(PolyZ a, const PolyZ& b) {
  ensure(!b.empty(), "pz_divexact: division by zero polynomial");
  if (a.empty()) return {};
  ensure(a.size() >= b.size(), "pz_divexact: degree of divisor exceeds dividend");
  PolyZ q(a.size() - b.size() + 1, Int(0));
  const Int& lb = b.back();
  for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
    Int cur = a[i + b.size() - 1];
    ensure(cur % lb == 0, "pz_divexact: inexact division");
    q[static_cast<std::size_t>(i)] = cur / lb;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[static_cast<std::size_t>(i) + j] -= q[static_cast<std::size_t>(i)] * b[j];
  }
  for (const auto& c : a) ensure(c == 0, "pz_divexact: nonzero remainder");
  pz_normalize(q);
  return q;
}

/// Pseudo-remainder: a scalar multiple of (a mod b) computed in Z[t].
/// Each step scales the running remainder by lc(b) so the leading term
/// cancels exactly; the overall scalar is irrelevant to gcd computations.
inline PolyZ pz_pseudo_rem(PolyZ r, const PolyZ& b) {
  ensure(!b.empty(), "pz_pseudo_rem: division by zero polynomial");
  const Int& lb = b.back();
  int db = pz_deg(b);
  while (pz_deg(r) >= db) {
    Int lr = r.back();
    int shift = pz_deg(r) - db;
    for (auto& c : r) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[static_cast<std::size_t>(shift) + j] -= lr * b[j];
    ensure(r.back() == 0, "pz_pseudo_rem: cancellation failed");
    pz_normalize(r);
    if (r.empty()) break;
  }
  return r;
}

/// Gcd in Z[t] (content times primitive part), via the primitive PRS.
inline PolyZ pz_gcd(PolyZ a, PolyZ b) {
  pz_normalize(a);
  pz_normalize(b);
  if (a.empty()) return b.empty() ? PolyZ{} : (b.back() < 0 ? pz_neg(b) : b);
  if (b.empty()) return a.back() < 0 ? pz_neg(a) : a;
  Int cont = boost::multiprecision::gcd(pz_content(a), pz_content(b));
  a = pz_primitive(a);
  b = pz_primitive(b);
  if (pz_deg(a) < pz_deg(b)) std::swap(a, b);
  while (!b.empty()) {
    PolyZ r = pz_primitive(pz_pseudo_rem(a, b));
    a = b;
    b = r;
  }
  PolyZ g = a;
  for (auto& c : g) c *= cont;
  if (!g.empty() && g.back() < 0) g = pz_neg(g);
  return g;
}

inline Rat pz_eval(const PolyZ& a, const Rat& t) {
  Rat v = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * t + Rat(*it);
  return v;
}

inline std::string pz_to_string(const PolyZ& a, const std::string& var = "t") {
  if (a.empty()) return "0";
  std::string s;
  for (int i = pz_deg(a); i >= 0; --i) {
    const Int& c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    Int ab = boost::multiprecision::abs(c);
    if (ab != 1 || i == 0) s += ab.str();
    if (i > 0) s += (ab != 1 ? "*" : "") + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s.empty() ? "0" : s;
}

// ============================================================================
// Rational functions in t over Q
// ============================================================================

/// An element of Q(t), held as a reduced fraction of integer polynomials:
/// gcd(num, den) = 1 in Z[t] and the denominator has positive leading
/// coefficient.  Supports exact field arithmetic and evaluation.
class RatFunc {
 public:
  RatFunc() : num_{}, den_{Int(1)} {}
  RatFunc(i64 v) : num_{}, den_{Int(1)} {  // NOLINT: implicit by design
    if (v != 0) num_ = {Int(v)};
  }
  explicit RatFunc(const Rat& q) : den_{boost::multiprecision::denominator(q)} {
    Int n = boost::multiprecision::numerator(q);
    if (n != 0) num_ = {n};
  }
  RatFunc(PolyZ num, PolyZ den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFunc variable() { return RatFunc(PolyZ{Int(0), Int(1)}, PolyZ{Int(1)}); }

  const PolyZ& num() const { return num_; }
  const PolyZ& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  bool is_constant() const { return pz_deg(num_) <= 0 && pz_deg(den_) <= 0; }

  /// The value as an exact rational; requires a constant.
  Rat as_rational() const {
    require(is_constant(), "RatFunc: not a constant rational function");
    if (num_.empty()) return Rat(0);
    return Rat(num_[0], den_[0]);
  }

  Rat eval(const Rat& t) const {
    Rat d = pz_eval(den_, t);
    require(d != 0, "RatFunc: evaluation at a pole");
    return pz_eval(num_, t) / d;
  }

  // Both operands are kept reduced, so sums and products can be reduced with
  // gcds of the small cross pieces instead of one big gcd at the end.
  friend RatFunc operator+(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    PolyZ g = pz_gcd(x.den_, y.den_);
    PolyZ bd = pz_divexact(x.den_, g);
    PolyZ dd = pz_divexact(y.den_, g);
    PolyZ num = pz_add(pz_mul(x.num_, dd), pz_mul(y.num_, bd));
    if (num.empty()) return RatFunc();
    PolyZ h = pz_gcd(num, g);
    RatFunc r;
    r.num_ = pz_divexact(num, h);
    r.den_ = pz_mul(pz_divexact(g, h), pz_mul(bd, dd));
    r.fix_sign();
    return r;
  }
  friend RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }
  friend RatFunc operator-(const RatFunc& x) {
    RatFunc r = x;
    r.num_ = pz_neg(r.num_);
    return r;
  }
  friend RatFunc operator*(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero()) return RatFunc();
    PolyZ g1 = pz_gcd(x.num_, y.den_);
    PolyZ g2 = pz_gcd(y.num_, x.den_);
    RatFunc r;
    r.num_ = pz_mul(pz_divexact(x.num_, g1), pz_divexact(y.num_, g2));
    r.den_ = pz_mul(pz_divexact(x.den_, g2), pz_divexact(y.den_, g1));
    r.fix_sign();
    return r;
  }
  friend RatFunc operator/(const RatFunc& x, const RatFunc& y) {
    require(!y.is_zero(), "RatFunc: division by zero");
    RatFunc inv;
    inv.num_ = y.den_;
    inv.den_ = y.num_;
    inv.fix_sign();
    return x * inv;
  }
  friend bool operator==(const RatFunc& x, const RatFunc& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;  // both reduced and normalized
  }
  friend bool operator!=(const RatFunc& x, const RatFunc& y) { return !(x == y); }

  std::string to_string() const {
    if (pz_deg(den_) == 0 && den_[0] == 1) return "(" + pz_to_string(num_) + ")";
    return "(" + pz_to_string(num_) + ")/(" + pz_to_string(den_) + ")";
  }

 private:
  void reduce() {
    pz_normalize(num_);
    pz_normalize(den_);
    require(!den_.empty(), "RatFunc: zero denominator");
    if (num_.empty()) {
      den_ = {Int(1)};
      return;
    }
    PolyZ g = pz_gcd(num_, den_);
    num_ = pz_divexact(num_, g);
    den_ = pz_divexact(den_, g);
    fix_sign();
  }

  // Normalizes an already-coprime pair: positive leading denominator
  // coefficient, canonical zero.
  void fix_sign() {
    pz_normalize(num_);
    pz_normalize(den_);
    ensure(!den_.empty(), "RatFunc: zero denominator in reduced form");
    if (num_.empty()) {
      den_ = {Int(1)};
      return;
    }
    if (den_.back() < 0) {
      num_ = pz_neg(num_);
      den_ = pz_neg(den_);
    }
  }

  PolyZ num_, den_;
};

// ============================================================================
// Generic dense polynomials over an exact field (Q or Q(t))
// ============================================================================

namespace fieldops {
inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline std::string to_string(const Rat& x) { return rat_to_string(x); }
inline std::string to_string(const RatFunc& x) { return x.to_string(); }
}  // namespace fieldops

/// Dense univariate polynomial with exact field coefficients, ascending order.
template <typename K>
struct Poly {
  std::vector<K> c;

  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { normalize(); }
  static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
  static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

  void normalize() {
    while (!c.empty() && fieldops::is_zero(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const K& lc() const {
    ensure(!c.empty(), "Poly: leading coefficient of zero polynomial");
    return c.back();
  }
  K coeff(std::size_t i) const { return i < c.size() ? c[i] : K(0); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> r(std::max(a.c.size(), b.c.size()), K(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<K> r = a.c;
    for (auto& v : r) v = K(0) - v;
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.c.size() + b.c.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const K& s, const Poly& a) {
    std::vector<K> r = a.c;
    for (auto& v : r) v = s * v;
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
      if (!(a.c[i] == b.c[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  K eval(const K& v) const {
    K r = K(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * v + *it;
    return r;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const K& v = c[static_cast<std::size_t>(i)];
      if (fieldops::is_zero(v)) continue;
      if (!s.empty()) s += " + ";
      s += fieldops::to_string(v);
      if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }
};

template <typename K>
Poly<K> poly_divrem(const Poly<K>& a, const Poly<K>& b, Poly<K>& rem) {
  require(!b.is_zero(), "poly_divrem: division by zero polynomial");
  Poly<K> q;
  rem = a;
  if (a.degree() < b.degree()) return q;
  q.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), K(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    K f = rem.lc() / b.lc();
    q.c[static_cast<std::size_t>(shift)] = f;
    // rem -= f * x^shift * b
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      std::size_t k = static_cast<std::size_t>(shift) + j;
      rem.c[k] = rem.c[k] - f * b.c[j];
    }
    rem.normalize();
  }
  q.normalize();
  return q;
}

template <typename K>
Poly<K> poly_mod(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r;
  poly_divrem(a, b, r);
  return r;
}

template <typename K>
bool poly_divides(const Poly<K>& d, const Poly<K>& a) {
  if (d.is_zero()) return a.is_zero();
  return poly_mod(a, d).is_zero();
}

template <typename K>
Poly<K> poly_monic(const Poly<K>& a) {
  if (a.is_zero()) return a;
  K inv = K(1) / a.lc();
  return inv * a;
}

/// Monic gcd over a field.
template <typename K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return poly_monic(a);
}

template <typename K>
Poly<K> poly_derivative(const Poly<K>& a) {
  if (a.degree() <= 0) return Poly<K>();
  std::vector<K> r(static_cast<std::size_t>(a.degree()), K(0));
  for (int i = 1; i <= a.degree(); ++i)
    r[static_cast<std::size_t>(i - 1)] = K(i) * a.c[static_cast<std::size_t>(i)];
  return Poly<K>(std::move(r));
}

template <typename K>
Poly<K> poly_pow(Poly<K> base, i64 e) {
  require(e >= 0, "poly_pow: nonnegative exponent required");
  Poly<K> r = Poly<K>::constant(K(1));
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

/// f(x + s): Taylor shift by repeated synthetic division.
template <typename K>
Poly<K> poly_shift(const Poly<K>& f, const K& s) {
  std::vector<K> a = f.c;
  std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] = a[j - 1] + s * a[j];
  }
  return Poly<K>(std::move(a));
}

/// Squarefree part f / gcd(f, f'), monic.
template <typename K>
Poly<K> poly_squarefree_part(const Poly<K>& f) {
  if (f.degree() <= 0) return poly_monic(f);
  Poly<K> g = poly_gcd(f, poly_derivative(f));
  Poly<K> rem;
  Poly<K> q = poly_divrem(f, g, rem);
  ensure(rem.is_zero(), "poly_squarefree_part: gcd does not divide");
  return poly_monic(q);
}

// ============================================================================
// Resultants and discriminants
// ============================================================================

template <typename K>
K k_pow(K base, i64 e) {
  ensure(e >= 0, "k_pow: nonnegative exponent required");
  K r = K(1);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

template <typename K>
K resultant(Poly<K> f, Poly<K> g) {
  if (f.is_zero() || g.is_zero()) return K(0);
  K res = K(1);
  bool negate = false;
  while (g.degree() > 0) {
    Poly<K> r = poly_mod(f, g);
    if (r.is_zero()) return K(0);
    // res(f,g) = (-1)^(deg f deg g) lc(g)^(deg f - deg r) res(g,r).
    if ((f.degree() % 2) && (g.degree() % 2)) negate = !negate;
    res = res * k_pow(g.lc(), f.degree() - r.degree());
    f = g;
    g = r;
  }
  // g is a nonzero constant now: res(f, c) = c^(deg f).
  res = res * k_pow(g.coeff(0), f.degree());
  return negate ? K(0) - res : res;
}

/// disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f); disc of a linear is 1.
template <typename K>
K poly_discriminant(const Poly<K>& f) {
  require(f.degree() >= 1, "poly_discriminant: degree must be at least 1");
  if (f.degree() == 1) return K(1);
  K r = resultant(f, poly_derivative(f));
  i64 n = f.degree();
  K d = r / f.lc();
  if (((n * (n - 1)) / 2) % 2 == 1) d = K(0) - d;
  return d;
}

/// Whether q is a square in Q(t): N*D must be the square of a polynomial.
inline std::optional<Poly<Rat>> poly_sqrt(const Poly<Rat>& P);

inline bool ratfunc_is_square(const RatFunc& q) {
  if (q.is_zero()) return true;
  PolyZ prod = pz_mul(q.num(), q.den());
  std::vector<Rat> coeffs;
  coeffs.reserve(prod.size());
  for (const auto& v : prod) coeffs.emplace_back(v);
  return poly_sqrt(Poly<Rat>(std::move(coeffs))).has_value();
}

/// Exact square root of a polynomial over Q, if one exists.
inline std::optional<Poly<Rat>> poly_sqrt(const Poly<Rat>& P) {
  if (P.is_zero()) return Poly<Rat>();
  if (P.degree() % 2 != 0) return std::nullopt;
  if (!is_square(P.lc())) return std::nullopt;
  int d = P.degree() / 2;
  std::vector<Rat> s(static_cast<std::size_t>(d) + 1, Rat(0));
  s[static_cast<std::size_t>(d)] =
      Rat(sqrt_exact(boost::multiprecision::numerator(P.lc())),
          sqrt_exact(boost::multiprecision::denominator(P.lc())));
  // Coefficient of x^(d+i) in s^2 is 2 s_d s_i + sum_{j=i+1..d-1} s_j s_(d+i-j).
  for (int i = d - 1; i >= 0; --i) {
    Rat acc = P.coeff(static_cast<std::size_t>(d + i));
    for (int j = i + 1; j <= d - 1; ++j)
      acc -= s[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(d + i - j)];
    s[static_cast<std::size_t>(i)] = acc / (2 * s[static_cast<std::size_t>(d)]);
  }
  Poly<Rat> root{std::vector<Rat>(s.begin(), s.end())};
  if (root * root == P) return root;
  return std::nullopt;
}

// ============================================================================
// Division polynomials
// ============================================================================

inline constexpr i64 kDefaultDivisionBudget = 12;

/// The m-division polynomial in x of a long-Weierstrass curve with
/// a-invariants (a1,a2,a3,a4,a6) over K.  For odd m this is the classical
/// psi_m of degree (m^2-1)/2; for even m the y-free product psi_m * psi_2
/// of degree (m^2+2)/2 is returned, so that in every case the roots are
/// exactly the x-coordinates of the nonzero m-torsion.
template <typename K>
Poly<K> division_polynomial(const std::array<K, 5>& a, i64 m,
                            i64 budget = kDefaultDivisionBudget) {
  require(m >= 1, "division_polynomial: m must be positive");
  if (m > budget)
    throw ResourceError("division_polynomial: m = " + std::to_string(m) +
                        " exceeds the degree budget " + std::to_string(budget));
  const K& a1 = a[0];
  const K& a2 = a[1];
  const K& a3 = a[2];
  const K& a4 = a[3];
  const K& a6 = a[4];
  K b2 = a1 * a1 + K(4) * a2;
  K b4 = K(2) * a4 + a1 * a3;
  K b6 = a3 * a3 + K(4) * a6;
  K b8 = a1 * a1 * a6 + K(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  K disc = K(0) - b2 * b2 * b8 - K(8) * b4 * b4 * b4 - K(27) * b6 * b6 + K(9) * b2 * b4 * b6;
  require(!fieldops::is_zero(disc), "division_polynomial: singular curve");

  using P = Poly<K>;
  // B = psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  P B(std::vector<K>{b6, K(2) * b4, b2, K(4)});
  P B2 = B * B;

  i64 top = std::max<i64>(m, 4);
  std::vector<P> p(static_cast<std::size_t>(top) + 3);
  p[0] = P();                 // p_0 = 0
  p[1] = P::constant(K(1));   // p_1 = 1
  p[2] = P::constant(K(1));   // psi_2 with the y-part stripped
  p[3] = P(std::vector<K>{b8, K(3) * b6, K(3) * b4, b2, K(3)});
  p[4] = P(std::vector<K>{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, K(10) * b8, K(10) * b6,
                          K(5) * b4, b2, K(2)});
  for (i64 i = 5; i <= m; ++i) {
    std::size_t k = static_cast<std::size_t>(i / 2);
    if (i % 2 == 0) {
      p[static_cast<std::size_t>(i)] =
          p[k] * (p[k + 2] * p[k - 1] * p[k - 1] - p[k - 2] * p[k + 1] * p[k + 1]);
    } else if (k % 2 == 0) {
      p[static_cast<std::size_t>(i)] =
          B2 * p[k + 2] * p[k] * p[k] * p[k] - p[k - 1] * p[k + 1] * p[k + 1] * p[k + 1];
    } else {
      p[static_cast<std::size_t>(i)] =
          p[k + 2] * p[k] * p[k] * p[k] - B2 * p[k - 1] * p[k + 1] * p[k + 1] * p[k + 1];
    }
  }
  P out = p[static_cast<std::size_t>(m)];
  if (m % 2 == 0) out = B * out;
  i64 expected = (m % 2 == 1) ? (m * m - 1) / 2 : (m * m + 2) / 2;
  ensure(out.degree() == expected, "division_polynomial: degree formula violated");
  return out;
}

// ============================================================================
// Cyclic cubic families
// ============================================================================

namespace detail {

/// Evaluate an integer-coefficient polynomial (ascending) at t over K.
template <typename K>
K eval_int_poly(const K& t, std::initializer_list<i64> ascending) {
  K acc(0);
  K pw(1);
  for (i64 v : ascending) {
    acc = acc + K(v) * pw;
    pw = pw * t;
  }
  return acc;
}

}  // namespace detail

/// Kernel cubic of the "isog7" family: the monic cubic in x whose roots
/// generate Q(x(P_t)), the cubic subfield of the Z/6Z-cyclic field of
/// definition of the rational 7-isogeny kernel <P_t>.  It cuts out the same
/// field as the lone degree-3 factor of the 7-division polynomial of the
/// family, and its specializations realize every cyclic cubic extension of
/// Q; accordingly its discriminant is a square already in Q(t).
template <typename K>
Poly<K> isog7_kernel_cubic(const K& t) {
  const K u = detail::eval_int_poly(t, {49, 13, 1});  // t^2 + 13t + 49
  std::vector<K> c(4, K(0));
  c[3] = K(1);
  c[2] = K(147) * u;
  c[1] = K(147) * u * detail::eval_int_poly(t, {2401, 637, 33});
  c[0] = K(49) * u *
         detail::eval_int_poly(t, {5764801, 3058874, 525819, 38122, 881});
  return Poly<K>(std::move(c));
}

/// The generic cyclic cubic x^3 - t x^2 + (t - 3) x + 1.  Every Z/3Z
/// extension of Q splits some specialization, and the parameter change
/// t -> 49/t + 8 matches this family with the isog7 kernel cubics fiber by
/// fiber; the single fiber that substitution misses, t = 8, is recovered by
/// its partner f_{-5} under t -> 3 - t (both cut out the degree-3 field of
/// conductor 7, the splitting field of x^3 + x^2 - 2x - 1).
template <typename K>
Poly<K> generic_cyclic_cubic(const K& t) {
  return Poly<K>(std::vector<K>{K(1), t - K(3), K(0) - t, K(1)});
}

// ============================================================================
// Polynomials over F_p
// ============================================================================

/// Dense polynomial over F_p (p an odd prime or 2), ascending coefficients.
struct FpPoly {
  u64 p = 2;
  std::vector<u64> c;

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  u64 lc() const { return c.back(); }
};

inline FpPoly fp_make(u64 p, std::vector<u64> coeffs) {
  FpPoly f;
  f.p = p;
  f.c = std::move(coeffs);
  for (auto& v : f.c) v %= p;
  f.normalize();
  return f;
}

inline FpPoly fp_x(u64 p) { return fp_make(p, {0, 1}); }

inline FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % r.p;
  r.normalize();
  return r;
}

inline FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + r.p - b.c[i]) % r.p;
  r.normalize();
  return r;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (r.c[i + j] + mul_mod(a.c[i], b.c[j], r.p)) % r.p;
  }
  r.normalize();
  return r;
}

inline FpPoly fp_scale(const FpPoly& a, u64 s) {
  FpPoly r = a;
  for (auto& v : r.c) v = mul_mod(v, s % a.p, a.p);
  r.normalize();
  return r;
}

inline FpPoly fp_divrem(const FpPoly& a, const FpPoly& b, FpPoly& rem) {
  ensure(!b.is_zero(), "fp_divrem: division by zero polynomial");
  FpPoly q;
  q.p = a.p;
  rem = a;
  if (rem.degree() < b.degree()) return q;
  u64 binv = pow_mod(b.lc(), a.p - 2, a.p);
  q.c.assign(static_cast<std::size_t>(rem.degree() - b.degree() + 1), 0);
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
    u64 f = mul_mod(rem.lc(), binv, a.p);
    q.c[shift] = f;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      rem.c[shift + j] = (rem.c[shift + j] + a.p - mul_mod(f, b.c[j], a.p)) % a.p;
    rem.normalize();
  }
  q.normalize();
  return q;
}

inline FpPoly fp_mod(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  fp_divrem(a, b, r);
  return r;
}

inline FpPoly fp_monic(const FpPoly& a) {
  if (a.is_zero()) return a;
  return fp_scale(a, pow_mod(a.lc(), a.p - 2, a.p));
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = fp_mod(a, b);
    a = b;
    b = r;
  }
  return fp_monic(a);
}

inline FpPoly fp_derivative(const FpPoly& a) {
  FpPoly r;
  r.p = a.p;
  if (a.degree() <= 0) return r;
  r.c.assign(static_cast<std::size_t>(a.degree()), 0);
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = mul_mod(a.c[i], static_cast<u64>(i % a.p), a.p);
  r.normalize();
  return r;
}

/// base^e mod f, with a big-integer exponent.
inline FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& f) {
  ensure(e >= 0, "fp_powmod: nonnegative exponent required");
  FpPoly r = fp_make(f.p, {1});
  base = fp_mod(base, f);
  while (e > 0) {
    if ((e & 1) != 0) r = fp_mod(fp_mul(r, base), f);
    base = fp_mod(fp_mul(base, base), f);
    e >>= 1;
  }
  return r;
}

inline u64 fp_eval(const FpPoly& a, u64 x) {
  u64 r = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = (mul_mod(r, x, a.p) + *it) % a.p;
  return r;
}

/// Distinct-degree decomposition of a squarefree monic polynomial:
/// pairs (d, product of the irreducible factors of degree d), ascending d.
inline std::vector<std::pair<int, FpPoly>> fp_distinct_degree(const FpPoly& f_in) {
  FpPoly f = fp_monic(f_in);
  std::vector<std::pair<int, FpPoly>> out;
  if (f.degree() <= 0) return out;
  FpPoly w = fp_x(f.p);  // x^(p^d) mod f, currently d = 0
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    w = fp_powmod(w, Int(f.p), f);
    FpPoly g = fp_gcd(fp_sub(w, fp_x(f.p)), f);
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      FpPoly r;
      FpPoly q = fp_divrem(f, g, r);
      ensure(r.is_zero(), "fp_distinct_degree: inexact division");
      f = fp_monic(q);
      w = fp_mod(w, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f.degree(), f);
  return out;
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a monic squarefree product
/// of irreducibles all of degree d.  Deterministically seeded.
inline void fp_equal_degree_split(const FpPoly& f, int d, std::vector<FpPoly>& out,
                                  std::mt19937_64& rng) {
  if (f.degree() == d) {
    out.push_back(fp_monic(f));
    return;
  }
  ensure(f.degree() % d == 0, "fp_equal_degree_split: degree mismatch");
  u64 p = f.p;
  while (true) {
    std::vector<u64> rc(static_cast<std::size_t>(f.degree()), 0);
    for (auto& v : rc) v = rng() % p;
    FpPoly a = fp_make(p, std::move(rc));
    if (a.degree() < 1) continue;
    FpPoly g = fp_gcd(a, f);
    if (g.degree() == 0) {
      if (p == 2) {
        // Trace map: a + a^2 + a^4 + ... + a^(2^(d-1)) mod f.
        FpPoly t = a, cur = a;
        for (int i = 1; i < d; ++i) {
          cur = fp_mod(fp_mul(cur, cur), f);
          t = fp_add(t, cur);
        }
        g = fp_gcd(t, f);
      } else {
        Int e = (boost::multiprecision::pow(Int(p), static_cast<unsigned>(d)) - 1) / 2;
        FpPoly b = fp_powmod(a, e, f);
        g = fp_gcd(fp_sub(b, fp_make(p, {1})), f);
      }
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      FpPoly q, r;
      q = fp_divrem(f, g, r);
      ensure(r.is_zero(), "fp_equal_degree_split: inexact division");
      fp_equal_degree_split(fp_monic(g), d, out, rng);
      fp_equal_degree_split(fp_monic(q), d, out, rng);
      return;
    }
  }
}

/// Complete factorization of a squarefree polynomial into monic irreducibles,
/// sorted by (degree, coefficients).
inline std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f) {
  std::vector<FpPoly> out;
  std::mt19937_64 rng(0x74616e676c656bull);
  for (const auto& [d, g] : fp_distinct_degree(f)) fp_equal_degree_split(g, d, out, rng);
  std::sort(out.begin(), out.end(), [](const FpPoly& x, const FpPoly& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return std::lexicographical_compare(x.c.rbegin(), x.c.rend(), y.c.rbegin(), y.c.rend());
  });
  return out;
}

/// Distinct roots in F_p of an arbitrary nonzero polynomial.
inline std::vector<u64> fp_roots(const FpPoly& f_in) {
  std::vector<u64> roots;
  if (f_in.is_zero()) throw ValidationError("fp_roots: zero polynomial");
  u64 p = f_in.p;
  if (p <= 64) {  // direct scan is cheapest and exercises no randomness
    for (u64 x = 0; x < p; ++x)
      if (fp_eval(f_in, x) == 0) roots.push_back(x);
    return roots;
  }
  FpPoly f = fp_monic(f_in);
  // Strip to the squarefree part, then isolate the linear-root part.
  FpPoly g = fp_gcd(f, fp_derivative(f));
  if (g.degree() > 0) {
    FpPoly r;
    f = fp_monic(fp_divrem(f, g, r));
  }
  FpPoly xp = fp_powmod(fp_x(p), Int(p), f);
  FpPoly lin = fp_gcd(fp_sub(xp, fp_x(p)), f);
  if (lin.degree() <= 0) return roots;
  std::vector<FpPoly> linear_factors;
  std::mt19937_64 rng(0x726f6f7473ull);
  fp_equal_degree_split(lin, 1, linear_factors, rng);
  for (const auto& lf : linear_factors) {
    ensure(lf.degree() == 1, "fp_roots: nonlinear factor escaped the split");
    roots.push_back((p - lf.c[0]) % p);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ============================================================================
// Rational polynomials: integer scaling and reduction mod p
// ============================================================================

/// Primitive integer model of a nonzero f over Q: multiplies out denominators
/// and divides by the content; sign fixed so the leading coefficient is > 0.
struct IntegerScaled {
  PolyZ coeffs;     // primitive, lc > 0
  Int denominator;  // lcm of the original coefficient denominators
};

inline IntegerScaled integer_scale(const Poly<Rat>& f) {
  require(!f.is_zero(), "integer_scale: zero polynomial");
  Int den = 1;
  for (const auto& q : f.c)
    den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(q)));
  PolyZ z;
  z.reserve(f.c.size());
  for (const auto& q : f.c)
    z.push_back(Int(boost::multiprecision::numerator(q)) *
                (den / Int(boost::multiprecision::denominator(q))));
  IntegerScaled out;
  out.coeffs = pz_primitive(z);
  if (out.coeffs.back() < 0) out.coeffs = pz_neg(out.coeffs);
  out.denominator = den;
  return out;
}

inline FpPoly reduce_mod_p(const PolyZ& f, u64 p) {
  std::vector<u64> c;
  c.reserve(f.size());
  for (const auto& v : f) {
    Int r = v % Int(p);
    if (r < 0) r += p;
    c.push_back(r.convert_to<u64>());
  }
  return fp_make(p, std::move(c));
}

// ============================================================================
// Splitting fingerprints mod p
// ============================================================================

/// Degree multiset of the irreducible factors of (the squarefree part of)
/// f mod p, plus the ramification flag.
struct SplitFingerprint {
  i64 p = 2;
  std::vector<int> degree_multiset;  // ascending
  bool ramified = false;
};

inline SplitFingerprint factor_fingerprint_mod_p(const Poly<Rat>& f, i64 p) {
  require(p >= 2 && is_prime_u64(static_cast<u64>(p)), "factor_fingerprint_mod_p: p must be prime");
  require(!f.is_zero() && f.degree() >= 1, "factor_fingerprint_mod_p: nonconstant input required");
  SplitFingerprint out;
  out.p = p;
  IntegerScaled s = integer_scale(f);
  if (s.denominator % p == 0) out.ramified = true;
  if (s.coeffs.back() % p == 0) out.ramified = true;
  FpPoly fbar = reduce_mod_p(s.coeffs, static_cast<u64>(p));
  if (fbar.degree() < 1) {
    out.ramified = true;
    return out;
  }
  FpPoly g = fp_gcd(fbar, fp_derivative(fbar));
  if (g.degree() > 0) out.ramified = true;
  FpPoly sqf = fbar;
  if (g.degree() > 0) {
    FpPoly r;
    sqf = fp_monic(fp_divrem(fbar, g, r));
  }
  for (const auto& [d, prod] : fp_distinct_degree(sqf)) {
    for (int i = 0; i < prod.degree() / d; ++i) out.degree_multiset.push_back(d);
  }
  std::sort(out.degree_multiset.begin(), out.degree_multiset.end());
  return out;
}

/// Monte-Carlo comparison of splitting behavior: sweeps every prime up to
/// p_bound, skips primes ramified for either input, and refutes on the first
/// degree-multiset mismatch.  Consistency is evidence, never proof.
struct SameFieldVerdict {
  bool consistent = true;
  std::optional<i64> certificate_prime;
  u64 sample_size = 0;
  std::vector<i64> skipped_primes;
};

inline SameFieldVerdict same_splitting_field_mc(const Poly<Rat>& f, const Poly<Rat>& g,
                                                i64 p_bound) {
  require(p_bound >= 2, "same_splitting_field_mc: prime bound too small");
  SameFieldVerdict v;
  for (i64 p : primes_up_to(p_bound)) {
    SplitFingerprint ff = factor_fingerprint_mod_p(f, p);
    SplitFingerprint fg = factor_fingerprint_mod_p(g, p);
    if (ff.ramified || fg.ramified) {
      v.skipped_primes.push_back(p);
      continue;
    }
    ++v.sample_size;
    if (ff.degree_multiset != fg.degree_multiset) {
      v.consistent = false;
      v.certificate_prime = p;
      return v;
    }
  }
  return v;
}

// ============================================================================
// Bounded-degree rational factor extraction
// ============================================================================

namespace detail {

/// Rational reconstruction: find u/w = r mod M with |u| <= num_bound and
/// 0 < w <= den_bound, via the half-extended Euclidean algorithm.
inline std::optional<Rat> rational_reconstruct(Int r, const Int& M, const Int& num_bound,
                                               const Int& den_bound) {
  r %= M;
  if (r < 0) r += M;
  Int r0 = M, r1 = r;
  Int t0 = 0, t1 = 1;
  while (r1 > num_bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  Int u = r1, w = t1;
  if (w < 0) {
    u = -u;
    w = -w;
  }
  if (w == 0 || w > den_bound) return std::nullopt;
  if (boost::multiprecision::gcd(boost::multiprecision::abs(u), w) != 1) return std::nullopt;
  return Rat(u, w);
}

/// One linear Hensel lift chain: from f = g*h mod p (g monic) to mod p^K.
/// Returns the lifted monic g.
inline PolyZ hensel_lift_factor(const PolyZ& F, const FpPoly& g0, u64 p, int K) {
  u64 prime = p;
  FpPoly fbar = reduce_mod_p(F, prime);
  FpPoly h0;
  {
    FpPoly r;
    h0 = fp_divrem(fbar, g0, r);
    ensure(r.is_zero(), "hensel_lift_factor: seed factor does not divide");
  }
  // Bezout: s*g0 + t*h0 = 1 mod p.
  FpPoly s, t;
  {
    FpPoly a = g0, b = h0;
    FpPoly sa = fp_make(prime, {1}), sb = fp_make(prime, {});
    FpPoly ta = fp_make(prime, {}), tb = fp_make(prime, {1});
    while (!b.is_zero()) {
      FpPoly r;
      FpPoly q = fp_divrem(a, b, r);
      FpPoly sn = fp_sub(sa, fp_mul(q, sb));
      FpPoly tn = fp_sub(ta, fp_mul(q, tb));
      a = b;
      b = r;
      sa = sb;
      sb = sn;
      ta = tb;
      tb = tn;
    }
    ensure(a.degree() == 0, "hensel_lift_factor: factor and cofactor not coprime mod p");
    u64 inv = pow_mod(a.c[0], prime - 2, prime);
    s = fp_scale(sa, inv);
    t = fp_scale(ta, inv);
  }

  auto to_pz = [](const FpPoly& f) {
    PolyZ z;
    z.reserve(f.c.size());
    for (u64 v : f.c) z.push_back(Int(v));
    return z;
  };
  PolyZ g = to_pz(g0), h = to_pz(h0);
  Int pk = p;  // current modulus p^k
  for (int k = 1; k < K; ++k) {
    // e = (F - g*h) / p^k mod p.
    PolyZ diff = pz_sub(F, pz_mul(g, h));
    std::vector<u64> ec(diff.size(), 0);
    for (std::size_t i = 0; i < diff.size(); ++i) {
      ensure(diff[i] % pk == 0, "hensel_lift_factor: lift invariant broken");
      Int q = (diff[i] / pk) % Int(prime);
      if (q < 0) q += prime;
      ec[i] = q.convert_to<u64>();
    }
    FpPoly e = fp_make(prime, std::move(ec));
    // u = (t*e) mod g0; v = s*e + ((t*e) div g0) * h0, all mod p.
    FpPoly te = fp_mul(t, e);
    FpPoly u;
    FpPoly qte = fp_divrem(te, g0, u);
    FpPoly vv = fp_add(fp_mul(s, e), fp_mul(qte, h0));
    // g += p^k * u; h += p^k * v.
    PolyZ gu = to_pz(u), hv = to_pz(vv);
    for (auto& cc : gu) cc *= pk;
    for (auto& cc : hv) cc *= pk;
    g = pz_add(g, gu);
    h = pz_add(h, hv);
    pk *= prime;
    // Reduce coefficients mod p^(k+1) to keep them small.
    for (auto& cc : g) {
      cc %= pk;
      if (cc < 0) cc += pk;
    }
    for (auto& cc : h) {
      cc %= pk;
      if (cc < 0) cc += pk;
    }
  }
  return g;
}

}  // namespace detail

inline constexpr i64 kDefaultFactorPrimeSearchBound = 1000000;
inline constexpr u64 kDefaultLiftBitBudget = 1 << 22;

/// All monic irreducible rational factors of f with degree <= d_max (<= 3).
/// The input is replaced by its squarefree part internally.  Factors are
/// found by factoring mod one good prime, Hensel-lifting every irreducible
/// local factor, reconstructing rational coefficients of candidate subset
/// products under a Landau-Mignotte height bound, and verifying each
/// candidate by exact division; the result is complete for the bound.
struct SmallFactors {
  std::vector<Poly<Rat>> factors;  // monic, sorted by degree then coefficients
  i64 prime_used = 0;
};

inline SmallFactors small_rational_factors(const Poly<Rat>& f_in, int d_max) {
  require(d_max >= 1 && d_max <= 3, "small_rational_factors: d_max must be in [1,3]");
  require(!f_in.is_zero(), "small_rational_factors: zero polynomial");
  SmallFactors out;
  if (f_in.degree() < 1) return out;

  Poly<Rat> f = poly_squarefree_part(f_in);
  IntegerScaled Fs = integer_scale(f);
  const PolyZ& F = Fs.coeffs;
  int n = pz_deg(F);

  // Choose one good odd prime: unit leading coefficient, squarefree reduction.
  i64 p = 0;
  for (i64 q : primes_up_to(kDefaultFactorPrimeSearchBound)) {
    if (q == 2) continue;
    if (F.back() % q == 0) continue;
    FpPoly fbar = reduce_mod_p(F, static_cast<u64>(q));
    if (fbar.degree() != n) continue;
    if (fp_gcd(fbar, fp_derivative(fbar)).degree() != 0) continue;
    p = q;
    break;
  }
  if (p == 0) throw ResourceError("small_rational_factors: no good prime found");
  out.prime_used = p;

  FpPoly fbar = reduce_mod_p(F, static_cast<u64>(p));
  std::vector<FpPoly> local = fp_factor_squarefree(fp_monic(fbar));

  // Landau-Mignotte: numerators of a monic factor's coefficients are bounded
  // by 2^d_max * ||F||_2 and denominators divide lc(F); the extra |lc| factor
  // below is pure slack.
  Int norm2 = 0;
  for (const auto& cc : F) norm2 += cc * cc;
  Int den_bound = boost::multiprecision::abs(F.back());
  Int num_bound = (Int(1) << d_max) * (boost::multiprecision::sqrt(norm2) + 1) * den_bound;
  Int target = 2 * num_bound * den_bound + 1;
  int K = 1;
  Int pk = p;
  while (pk < target) {
    pk *= p;
    ++K;
    if (static_cast<u64>(K) * 64 > kDefaultLiftBitBudget)
      throw ResourceError("small_rational_factors: reconstruction height bound exceeded");
  }

  // Lift each local factor once.
  std::vector<PolyZ> lifted;
  lifted.reserve(local.size());
  for (const auto& g : local) lifted.push_back(detail::hensel_lift_factor(F, g, static_cast<u64>(p), K));

  // Enumerate subsets (size <= 3 since every factor has degree >= 1).
  std::vector<std::vector<std::size_t>> subsets;
  std::size_t nf = local.size();
  for (std::size_t i = 0; i < nf; ++i) {
    if (local[i].degree() <= d_max) subsets.push_back({i});
    for (std::size_t j = i + 1; j < nf; ++j) {
      if (local[i].degree() + local[j].degree() <= d_max) subsets.push_back({i, j});
      for (std::size_t k = j + 1; k < nf; ++k) {
        if (local[i].degree() + local[j].degree() + local[k].degree() <= d_max)
          subsets.push_back({i, j, k});
      }
    }
  }

  std::vector<Poly<Rat>> found;
  for (const auto& sub : subsets) {
    PolyZ prod = {Int(1)};
    for (std::size_t idx : sub) {
      prod = pz_mul(prod, lifted[idx]);
      for (auto& cc : prod) {
        cc %= pk;
        if (cc < 0) cc += pk;
      }
    }
    // Reconstruct rational coefficients (monic: top coefficient is 1).
    std::vector<Rat> coeffs(prod.size(), Rat(0));
    coeffs.back() = 1;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < prod.size(); ++i) {
      auto rec = detail::rational_reconstruct(prod[i], pk, num_bound, den_bound);
      if (!rec) {
        ok = false;
        break;
      }
      coeffs[i] = *rec;
    }
    if (!ok) continue;
    Poly<Rat> cand(std::move(coeffs));
    if (!poly_divides(cand, f)) continue;
    if (std::find(found.begin(), found.end(), cand) == found.end()) found.push_back(cand);
  }

  // Keep only irreducibles: drop anything divisible by a smaller found factor.
  std::sort(found.begin(), found.end(), [](const Poly<Rat>& a, const Poly<Rat>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
      Rat x = a.coeff(static_cast<std::size_t>(i)), y = b.coeff(static_cast<std::size_t>(i));
      if (x != y) return x < y;
    }
    return false;
  });
  for (const auto& cand : found) {
    bool reducible = false;
    for (const auto& acc : out.factors) {
      if (acc.degree() < cand.degree() && poly_divides(acc, cand)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.factors.push_back(cand);
  }
  return out;
}

}  // namespace tanglekit
