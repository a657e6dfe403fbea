#pragma once

// Gauss period polynomials and traceless companion-matrix families.
//
// For a prime ell with ell - 1 = 2e and e odd, the cyclotomic field
// Q(zeta_ell) has a unique subfield of degree e, cyclic over Q, and its
// minimal polynomial has the classical closed-form integer coefficients
// a_r = (-1)^[r/2] * C((ell-1)/2 - [(r+1)/2], [r/2]).  The hyperelliptic
// curve y^2 = f(x) then has 2-division field equal to the splitting field
// of f, and an entire multi-parameter family with the same 2-division
// field arises by replacing f with det(xI - b_1 alpha_1 - ... - b_e
// alpha_e), where alpha_1 is the companion matrix of f and each
// alpha_j = alpha_1^j - k_j I is shifted to be traceless.  This header
// builds both objects with exact arithmetic.

#include <string>
#include <utility>
#include <vector>

#include "tanglekit/numeric.hpp"
#include "tanglekit/qpoly.hpp"

namespace tanglekit {

// ============================================================================
// Period polynomials
// ============================================================================

/// The degree-e subfield of Q(zeta_ell) for ell prime, ell - 1 = 2e, e odd:
/// minimal polynomial f = x^e + a_1 x^(e-1) + ... + a_e with exact integer
/// coefficients.  `a[r]` multiplies x^(e-r), so a[0] = 1 is the leading
/// coefficient.
struct PeriodPolynomial {
  i64 ell = 0;
  i64 e = 0;
  std::vector<Int> a;
  Poly<Rat> poly;
};

namespace detail {

/// First `count` primes congruent to +-1 mod ell, in increasing order.
inline std::vector<i64> split_primes_mod_ell(i64 ell, int count) {
  std::vector<i64> out;
  for (i64 k = 1; static_cast<int>(out.size()) < count; ++k) {
    ensure(k <= 5000, "split_primes_mod_ell: sampling ran away");
    for (i64 cand : {k * ell - 1, k * ell + 1}) {
      if (cand > 1 && is_prime_u64(static_cast<u64>(cand))) out.push_back(cand);
      if (static_cast<int>(out.size()) == count) break;
    }
  }
  return out;
}

}  // namespace detail

/// Exact period polynomial of the degree-e = (ell-1)/2 subfield of
/// Q(zeta_ell).  Requires ell > 3 prime with e odd.  The construction is
/// double-checked before returning: the discriminant must be a nonzero
/// square (the extension is cyclic), and f must split completely modulo
/// each of the first few primes p = +-1 mod ell (those are exactly the
/// rational primes that split completely in the subfield).
inline PeriodPolynomial period_polynomial(i64 ell) {
  require(ell > 3 && is_prime_u64(static_cast<u64>(ell)),
          "period_polynomial: ell must be a prime greater than 3");
  const i64 e = (ell - 1) / 2;
  require(e % 2 == 1,
          "period_polynomial: (ell - 1)/2 must be odd, which fails for ell = " +
              std::to_string(ell));

  PeriodPolynomial out;
  out.ell = ell;
  out.e = e;
  out.a.resize(static_cast<std::size_t>(e) + 1);
  std::vector<Rat> coeffs(static_cast<std::size_t>(e) + 1, Rat(0));
  for (i64 r = 0; r <= e; ++r) {
    Int v = binomial(e - (r + 1) / 2, r / 2);
    if ((r / 2) % 2 == 1) v = -v;
    out.a[static_cast<std::size_t>(r)] = v;
    coeffs[static_cast<std::size_t>(e - r)] = Rat(v);
  }
  out.poly = Poly<Rat>(std::move(coeffs));
  ensure(out.poly.degree() == e, "period_polynomial: degree mismatch");

  const Rat disc = poly_discriminant(out.poly);
  ensure(disc != 0 && is_square(disc),
         "period_polynomial: discriminant is not a nonzero square");
  const IntegerScaled scaled = integer_scale(out.poly);
  for (i64 p : detail::split_primes_mod_ell(ell, 4)) {
    const FpPoly fbar = reduce_mod_p(scaled.coeffs, static_cast<u64>(p));
    ensure(fp_roots(fbar).size() == static_cast<std::size_t>(e),
           "period_polynomial: f fails to split at a sampled prime = +-1 mod ell");
  }
  return out;
}

// ============================================================================
// Traceless companion families
// ============================================================================

namespace detail {

using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix rat_identity(i64 e) {
  RatMatrix m(static_cast<std::size_t>(e),
              std::vector<Rat>(static_cast<std::size_t>(e), Rat(0)));
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = Rat(1);
  return m;
}

inline RatMatrix rat_mat_mul(const RatMatrix& x, const RatMatrix& y) {
  const std::size_t n = x.size();
  RatMatrix r(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

inline Rat rat_mat_trace(const RatMatrix& x) {
  Rat t(0);
  for (std::size_t i = 0; i < x.size(); ++i) t += x[i][i];
  return t;
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier
/// recurrence, exact over Q: M_1 = I, c_{n-1} = -tr(A M_1), and
/// M_{k+1} = A M_k + c_{n-k} I with c_{n-k-1} = -tr(A M_{k+1})/(k+1).
inline Poly<Rat> rat_char_poly(const RatMatrix& a) {
  const i64 n = static_cast<i64>(a.size());
  std::vector<Rat> c(static_cast<std::size_t>(n) + 1, Rat(0));
  c[static_cast<std::size_t>(n)] = Rat(1);
  RatMatrix m = rat_identity(n);
  for (i64 k = 1; k <= n; ++k) {
    if (k > 1) {
      m = rat_mat_mul(a, m);
      const Rat& shift = c[static_cast<std::size_t>(n - k + 1)];
      for (std::size_t i = 0; i < m.size(); ++i) m[i][i] += shift;
    }
    c[static_cast<std::size_t>(n - k)] = -rat_mat_trace(rat_mat_mul(a, m)) / Rat(k);
  }
  return Poly<Rat>(std::move(c));
}

}  // namespace detail

/// One member of the family y^2 = det(xI - sum_j b_j alpha_j) attached to a
/// monic squarefree base polynomial of odd degree e.  The alphas are the
/// traceless shifts alpha_j = alpha_1^j - k_j I of powers of the companion
/// matrix, so the member polynomial is monic of degree e with vanishing
/// x^(e-1) coefficient, and away from the discriminant locus it cuts out
/// the same 2-division data as the base curve y^2 = f(x).
struct CompanionFamilyMember {
  Poly<Rat> base;
  std::vector<Rat> b;
  std::vector<Rat> k;                    // k_j = tr(alpha_1^j)/e, exact
  std::vector<detail::RatMatrix> alphas; // alpha_1..alpha_e
  Poly<Rat> member;                      // det(xI - sum b_j alpha_j)
  Rat disc;                              // discriminant of member
  bool on_discriminant_locus = false;    // disc == 0: flagged, never fatal
};

inline CompanionFamilyMember companion_family(const Poly<Rat>& f,
                                              const std::vector<Rat>& b) {
  const i64 e = f.degree();
  require(e >= 1 && e % 2 == 1, "companion_family: base degree must be odd");
  require(f.lc() == 1, "companion_family: base polynomial must be monic");
  require(poly_discriminant(f) != 0,
          "companion_family: base polynomial must be squarefree");
  require(static_cast<i64>(b.size()) == e,
          "companion_family: expected exactly " + std::to_string(e) +
              " family coordinates");
  bool all_zero = true;
  for (const Rat& v : b) all_zero = all_zero && v == 0;
  require(!all_zero, "companion_family: the zero vector is outside the family");

  CompanionFamilyMember out;
  out.base = f;
  out.b = b;

  // Companion matrix of f: subdiagonal ones, last column -a_{e-i}.
  detail::RatMatrix alpha1(static_cast<std::size_t>(e),
                           std::vector<Rat>(static_cast<std::size_t>(e), Rat(0)));
  for (i64 i = 0; i + 1 < e; ++i) alpha1[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] = Rat(1);
  for (i64 i = 0; i < e; ++i)
    alpha1[static_cast<std::size_t>(i)][static_cast<std::size_t>(e) - 1] =
        -f.coeff(static_cast<std::size_t>(i));

  detail::RatMatrix power = detail::rat_identity(e);
  detail::RatMatrix sum(static_cast<std::size_t>(e),
                        std::vector<Rat>(static_cast<std::size_t>(e), Rat(0)));
  for (i64 j = 1; j <= e; ++j) {
    power = detail::rat_mat_mul(power, alpha1);
    const Rat kj = detail::rat_mat_trace(power) / Rat(e);
    out.k.push_back(kj);
    detail::RatMatrix alpha = power;
    for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i][i] -= kj;
    ensure(detail::rat_mat_trace(alpha) == 0, "companion_family: alpha_j not traceless");
    const Rat& bj = b[static_cast<std::size_t>(j) - 1];
    if (bj != 0)
      for (std::size_t r = 0; r < sum.size(); ++r)
        for (std::size_t c = 0; c < sum.size(); ++c) sum[r][c] += bj * alpha[r][c];
    out.alphas.push_back(std::move(alpha));
  }

  out.member = detail::rat_char_poly(sum);
  ensure(out.member.degree() == e, "companion_family: member degree mismatch");
  ensure(out.member.coeff(static_cast<std::size_t>(e) - 1) == 0,
         "companion_family: traceless sum must kill the x^(e-1) coefficient");
  out.disc = poly_discriminant(out.member);
  out.on_discriminant_locus = (out.disc == 0);
  return out;
}

inline CompanionFamilyMember companion_family(const PeriodPolynomial& f,
                                              const std::vector<Rat>& b) {
  return companion_family(f.poly, b);
}

/// Whether y^2 = f(x) and y^2 = g(x) have the same 2-division field: that
/// field is the splitting field of the defining polynomial on each side, so
/// the question delegates to the splitting-field fingerprint sweep (and
/// inherits its Monte-Carlo semantics: refutations are certificates,
/// consistency is evidence).
inline SameFieldVerdict two_torsion_match(const Poly<Rat>& f, const Poly<Rat>& g,
                                          i64 p_bound) {
  require(f.degree() >= 1 && g.degree() >= 1,
          "two_torsion_match: inputs must be nonconstant");
  require(poly_discriminant(f) != 0, "two_torsion_match: first polynomial is not squarefree");
  require(poly_discriminant(g) != 0, "two_torsion_match: second polynomial is not squarefree");
  return same_splitting_field_mc(f, g, p_bound);
}

}  // namespace tanglekit
