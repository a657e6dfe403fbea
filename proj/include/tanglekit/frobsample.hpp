#pragma once

// Frobenius sampling: exact point counts of reductions E mod p, Frobenius
// signatures (trace, determinant, fixed-point profile) at a level n, matching
// signature profiles of candidate subgroups of GL(2, Z/nZ), and a Monte-Carlo
// containment check of a candidate mod-n image against sampled primes.
//
// The check is heuristic evidence in one direction only: a violation refutes
// containment, while agreement across all sampled classes is reported as
// "consistent", never as a proof.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tanglekit/eqcurves.hpp"
#include "tanglekit/modmat.hpp"
#include "tanglekit/numeric.hpp"

namespace tanglekit {

inline constexpr i64 kDefaultPointCountBudget = 100000;

// ---------------------------------------------------------------------------
// Reduction of a rational model to F_p
// ---------------------------------------------------------------------------

namespace detail {

/// Integral data of a curve over Q: coefficients of the u-scaled model
/// (a_i -> u^i a_i with u the lcm of the coefficient denominators) and its
/// discriminant u^12 * disc.
struct IntegralModel {
  std::array<Int, 5> a;
  Int scaling = 1;  // u
  Int disc = 0;     // u^12 * disc(E), nonzero
};

inline IntegralModel integral_model(const CurveQ& e) {
  IntegralModel m;
  Int u = 1;
  for (const Rat& ai : e.a) u = lcm(u, Int(boost::multiprecision::denominator(ai)));
  m.scaling = u;
  const int weight[5] = {1, 2, 3, 4, 6};
  for (int i = 0; i < 5; ++i) {
    const Rat scaled = e.a[i] * Rat(pow(u, weight[i]));
    ensure(boost::multiprecision::denominator(scaled) == 1,
           "integral model: scaling must clear denominators");
    m.a[i] = Int(boost::multiprecision::numerator(scaled));
  }
  const Rat d = curve_invariants(e).disc * Rat(pow(u, 12));
  ensure(boost::multiprecision::denominator(d) == 1,
         "integral model: scaling must clear the discriminant");
  m.disc = Int(boost::multiprecision::numerator(d));
  ensure(m.disc != 0, "integral model: discriminant must be nonzero");
  return m;
}

inline u64 int_mod_p(const Int& v, i64 p) {
  Int r = v % p;
  if (r < 0) r += p;
  return static_cast<u64>(r);
}

/// A long Weierstrass model over F_p (coefficients already reduced).
struct FpCurveModel {
  i64 p = 0;
  u64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

struct FpCurvePoint {
  bool inf = true;
  u64 x = 0, y = 0;
};

inline bool fp_on_curve(const FpCurveModel& c, const FpCurvePoint& pt) {
  if (pt.inf) return true;
  const u64 p = static_cast<u64>(c.p);
  const u64 lhs = (pt.y * pt.y + c.a1 * pt.x % p * pt.y + c.a3 * pt.y) % p;
  const u64 rhs =
      (pt.x * pt.x % p * pt.x + c.a2 * pt.x % p * pt.x + c.a4 * pt.x + c.a6) %
      p;
  return lhs == rhs;
}

inline FpCurvePoint fp_negate_point(const FpCurveModel& c,
                                    const FpCurvePoint& pt) {
  if (pt.inf) return pt;
  const u64 p = static_cast<u64>(c.p);
  return FpCurvePoint{false, pt.x,
                      (3 * p - pt.y - c.a1 * pt.x % p - c.a3) % p};
}

/// Chord-and-tangent addition on the long model; values stay below 2^32 so
/// plain 64-bit products never overflow (p is capped by the count budget).
inline FpCurvePoint fp_point_add(const FpCurveModel& c, const FpCurvePoint& P,
                                 const FpCurvePoint& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const u64 p = static_cast<u64>(c.p);
  u64 lambda;
  if (P.x == Q.x) {
    if (Q.y == fp_negate_point(c, P).y) return FpCurvePoint{};
    const u64 den = (2 * P.y + c.a1 * P.x + c.a3) % p;
    ensure(den != 0, "point addition: doubling a 2-torsion point");
    const u64 num =
        (3 * P.x % p * P.x + 2 * c.a2 * P.x + c.a4 + (p - c.a1) * P.y) % p;
    lambda = num * static_cast<u64>(inv_mod(static_cast<i64>(den), c.p)) % p;
  } else {
    const u64 num = (Q.y + p - P.y) % p;
    const u64 den = (Q.x + p - P.x) % p;
    lambda = num * static_cast<u64>(inv_mod(static_cast<i64>(den), c.p)) % p;
  }
  FpCurvePoint r;
  r.inf = false;
  r.x = (lambda * lambda % p + c.a1 * lambda + 4 * p - c.a2 - P.x - Q.x) % p;
  r.y = (lambda * ((P.x + p - r.x) % p) % p + 3 * p - P.y - c.a1 * r.x % p -
         c.a3) %
        p;
  return r;
}

inline FpCurvePoint fp_point_scale(const FpCurveModel& c, i64 k,
                                   FpCurvePoint P) {
  ensure(k >= 0, "point scaling: nonnegative multiple required");
  FpCurvePoint r;
  while (k > 0) {
    if (k & 1) r = fp_point_add(c, r, P);
    k >>= 1;
    if (k) P = fp_point_add(c, P, P);
  }
  return r;
}

/// All affine points.  For p >= 5 the model must have a1 = a3 = 0 (the
/// completed square); square roots come from a table.  Tiny p enumerate
/// directly on the long model.
inline std::vector<FpCurvePoint> fp_all_points(const FpCurveModel& c) {
  const u64 p = static_cast<u64>(c.p);
  std::vector<FpCurvePoint> pts;
  if (c.p < 5) {
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 0; y < p; ++y)
        if (fp_on_curve(c, FpCurvePoint{false, x, y}))
          pts.push_back(FpCurvePoint{false, x, y});
    return pts;
  }
  ensure(c.a1 == 0 && c.a3 == 0, "point enumeration expects a completed square");
  std::vector<u64> root(p, p);  // p = "no root"
  for (u64 y = 0; y + y <= p; ++y) root[y * y % p] = y;
  for (u64 x = 0; x < p; ++x) {
    const u64 rhs =
        (x * x % p * x + c.a2 * x % p * x + c.a4 * x + c.a6) % p;
    const u64 y = root[rhs];
    if (y == p) continue;
    pts.push_back(FpCurvePoint{false, x, y});
    if (y != 0) pts.push_back(FpCurvePoint{false, x, p - y});
  }
  return pts;
}

/// Reduce the integral model mod p; for p >= 5 returns the completed square
/// y^2 = x^3 + (b2/4)x^2 + (b4/2)x + (b6/4), which is F_p-isomorphic.
inline FpCurveModel reduce_integral_model(const IntegralModel& m, i64 p) {
  require(m.disc % p != 0, "bad reduction at p = " + std::to_string(p));
  FpCurveModel c;
  c.p = p;
  const u64 a1 = int_mod_p(m.a[0], p), a2 = int_mod_p(m.a[1], p),
            a3 = int_mod_p(m.a[2], p), a4 = int_mod_p(m.a[3], p),
            a6 = int_mod_p(m.a[4], p);
  if (p < 5) {
    c.a1 = a1, c.a2 = a2, c.a3 = a3, c.a4 = a4, c.a6 = a6;
    return c;
  }
  const u64 up = static_cast<u64>(p);
  const u64 b2 = (a1 * a1 + 4 * a2) % up;
  const u64 b4 = (2 * a4 + a1 * a3) % up;
  const u64 b6 = (a3 * a3 + 4 * a6) % up;
  const u64 i2 = static_cast<u64>(inv_mod(2, p));
  const u64 i4 = i2 * i2 % up;
  c.a2 = b2 * i4 % up;
  c.a4 = b4 * i2 % up;
  c.a6 = b6 * i4 % up;
  return c;
}

inline i64 fp_count_points(const FpCurveModel& c) {
  const u64 p = static_cast<u64>(c.p);
  if (c.p < 5) return static_cast<i64>(fp_all_points(c).size()) + 1;
  ensure(c.a1 == 0 && c.a3 == 0, "point counting expects a completed square");
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y + y <= p; ++y) chi[y * y % p] = 1;
  i64 count = static_cast<i64>(p) + 1;
  for (u64 x = 0; x < p; ++x) {
    const u64 rhs =
        (x * x % p * x + c.a2 * x % p * x + c.a4 * x + c.a6) % p;
    count += chi[rhs];
  }
  return count;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point counting
// ---------------------------------------------------------------------------

/// Exact #E(F_p) (including the point at infinity) by direct enumeration.
/// Requires good reduction of the denominator-cleared model at p and
/// p within the budget.  The Hasse bound |a_p| <= 2 sqrt(p) is asserted.
inline i64 count_points(const CurveQ& e, i64 p,
                        i64 budget = kDefaultPointCountBudget) {
  require(p >= 2 && is_prime_u64(static_cast<u64>(p)),
          "count_points: p must be prime");
  if (p > budget)
    throw ResourceError("count_points: prime " + std::to_string(p) +
                        " exceeds the enumeration budget " +
                        std::to_string(budget));
  const detail::IntegralModel m = detail::integral_model(e);
  const i64 count = detail::fp_count_points(detail::reduce_integral_model(m, p));
  const i64 ap = p + 1 - count;
  ensure(ap * ap <= 4 * p, "count_points: Hasse bound violated");
  return count;
}

/// a_p = p + 1 - #E(F_p).
inline i64 trace_of_frobenius(const CurveQ& e, i64 p,
                              i64 budget = kDefaultPointCountBudget) {
  return p + 1 - count_points(e, p, budget);
}

// ---------------------------------------------------------------------------
// Frobenius signatures
// ---------------------------------------------------------------------------

/// Conjugacy-stable signature data shared between Frobenius elements and
/// matrices: trace and determinant mod n plus, for every m | n, the invariant
/// factors (d1 | d2) of the fixed subgroup on (Z/mZ)^2.
struct SignatureKey {
  i64 trace = 0;
  i64 det = 0;
  std::vector<std::pair<i64, std::array<i64, 2>>> fix;  // m -> {d1, d2}

  friend auto operator<=>(const SignatureKey&, const SignatureKey&) = default;

  std::string to_string() const {
    std::string s =
        "tr=" + std::to_string(trace) + " det=" + std::to_string(det);
    for (const auto& [m, f] : fix)
      s += " fix[" + std::to_string(m) + "]=Z/" + std::to_string(f[0]) +
           "xZ/" + std::to_string(f[1]);
    return s;
  }
};

struct FrobeniusSignature {
  i64 p = 0;
  i64 n = 0;
  i64 trace_mod_n = 0;  // a_p mod n
  i64 det_mod_n = 0;    // p mod n
  i64 point_count = 0;  // #E(F_p)
  SignatureKey key;     // trace, det, and E(F_p)[m] structure for m | n
};

namespace detail {

/// Invariant factors {d1, d2} (d1 | d2) of a finite abelian group presented
/// by its order and exponent, valid for subgroups of (Z/m)^2.
inline std::array<i64, 2> invariant_factors(i64 size, i64 exponent, i64 m) {
  ensure(exponent >= 1 && size % exponent == 0,
         "invariant factors: exponent must divide the order");
  const i64 d1 = size / exponent;
  ensure(exponent % d1 == 0, "invariant factors: d1 must divide d2");
  ensure(m % exponent == 0, "invariant factors: d2 must divide m");
  return {d1, exponent};
}

}  // namespace detail

namespace detail {

/// Addition-chain plan through the divisor lattice of n: divisor d is reached
/// from its parent d / spf(d) by one prime scaling, so the exact order of a
/// point within the n-torsion costs O(log n) additions in total.
struct TorsionPlan {
  i64 level = 1;
  std::vector<i64> divs;     // divisors of n, ascending; divs[0] == 1
  std::vector<size_t> parent;  // index of divs[i] / spf(divs[i])
  std::vector<i64> step;     // spf(divs[i]), the prime scaling from parent
};

inline TorsionPlan torsion_plan(i64 n) {
  TorsionPlan plan;
  plan.level = n;
  plan.divs = divisors_of(n);
  plan.parent.assign(plan.divs.size(), 0);
  plan.step.assign(plan.divs.size(), 1);
  for (size_t i = 1; i < plan.divs.size(); ++i) {
    const i64 d = plan.divs[i];
    i64 spf = d;
    for (i64 q = 2; q * q <= d; ++q)
      if (d % q == 0) {
        spf = q;
        break;
      }
    const auto it =
        std::lower_bound(plan.divs.begin(), plan.divs.end(), d / spf);
    plan.parent[i] = static_cast<size_t>(it - plan.divs.begin());
    plan.step[i] = spf;
  }
  return plan;
}

/// Minimal divisor d of n with d * pt = O, or 0 if pt is not n-torsion.
inline i64 fp_torsion_order(const FpCurveModel& c, const FpCurvePoint& pt,
                            const TorsionPlan& plan) {
  if (pt.inf) return 1;
  std::vector<FpCurvePoint> chain(plan.divs.size());
  chain[0] = pt;
  for (size_t i = 1; i < plan.divs.size(); ++i) {
    chain[i] = fp_point_scale(c, plan.step[i], chain[plan.parent[i]]);
    if (chain[i].inf) return plan.divs[i];
  }
  return 0;
}

inline FrobeniusSignature frob_signature_impl(const IntegralModel& m, i64 p,
                                              const TorsionPlan& plan) {
  const i64 n = plan.level;
  const FpCurveModel c = reduce_integral_model(m, p);
  const i64 count = fp_count_points(c);
  const std::vector<FpCurvePoint> pts = fp_all_points(c);
  ensure(static_cast<i64>(pts.size()) + 1 == count,
         "frob_signature: enumeration disagrees with the point count");

  FrobeniusSignature sig;
  sig.p = p;
  sig.n = n;
  sig.point_count = count;
  const i64 ap = p + 1 - count;
  ensure(ap * ap <= 4 * p, "frob_signature: Hasse bound violated");
  sig.trace_mod_n = ((ap % n) + n) % n;
  sig.det_mod_n = p % n;
  ensure((count - (sig.det_mod_n - sig.trace_mod_n + 1)) % n == 0,
         "frob_signature: #E(F_p) = det - trace + 1 (mod n) must hold");
  sig.key.trace = sig.trace_mod_n;
  sig.key.det = sig.det_mod_n;

  // number of affine points of each exact order within the n-torsion
  std::map<i64, i64> torsion_order_count;
  for (const auto& pt : pts) {
    const i64 d = fp_torsion_order(c, pt, plan);
    if (d > 0) ++torsion_order_count[d];
  }
  for (i64 mm : plan.divs) {
    i64 size = 1, expo = 1;  // the point at infinity
    for (const auto& [d, cnt] : torsion_order_count) {
      if (mm % d != 0 || cnt == 0) continue;
      size += cnt;
      expo = std::max(expo, d);
    }
    sig.key.fix.push_back({mm, invariant_factors(size, expo, mm)});
  }
  // monotonicity: E(F_p)[m1] is the m1-torsion of E(F_p)[m2] when m1 | m2
  for (const auto& [m1, f1] : sig.key.fix)
    for (const auto& [m2, f2] : sig.key.fix)
      if (m2 % m1 == 0) {
        ensure(f1[0] == std::gcd(f2[0], m1) && f1[1] == std::gcd(f2[1], m1),
               "frob_signature: torsion profiles must be gcd-compatible");
      }
  return sig;
}

}  // namespace detail

/// Frobenius signature of E at a good prime p coprime to n: the trace and
/// determinant of Frobenius mod n and, for each m | n, the structure of
/// E(F_p)[m] = ker(Frob - 1 | E[m]) found by exhaustive point-order
/// inspection.
inline FrobeniusSignature frob_signature(const CurveQ& e, i64 p, i64 n,
                                         i64 budget = kDefaultPointCountBudget) {
  require(n >= 1, "frob_signature: level must be positive");
  require(p >= 2 && is_prime_u64(static_cast<u64>(p)),
          "frob_signature: p must be prime");
  require(std::gcd(p, n) == 1, "frob_signature: p must be coprime to n");
  if (p > budget)
    throw ResourceError("frob_signature: prime " + std::to_string(p) +
                        " exceeds the enumeration budget " +
                        std::to_string(budget));
  return detail::frob_signature_impl(detail::integral_model(e), p,
                                     detail::torsion_plan(n));
}

// ---------------------------------------------------------------------------
// Signature profiles of matrix groups
// ---------------------------------------------------------------------------

/// Signature of a single matrix at its own level: trace, det, and for each
/// m | n the invariant factors of ker(h - 1) acting on (Z/mZ)^2.
inline SignatureKey matrix_signature(const ResidueMatrix& h) {
  const i64 n = h.level;
  SignatureKey key;
  key.trace = h.trace();
  key.det = h.det();
  for (i64 m : divisors_of(n)) {
    i64 size = 0, expo = 1;
    for (i64 v1 = 0; v1 < m; ++v1)
      for (i64 v2 = 0; v2 < m; ++v2) {
        if (((h.a - 1) * v1 + h.b * v2) % m != 0) continue;
        if ((h.c * v1 + (h.d - 1) * v2) % m != 0) continue;
        ++size;
        const i64 ord = m / std::gcd(m, std::gcd(v1, v2));
        expo = std::lcm(expo, ord);
      }
    key.fix.push_back({m, detail::invariant_factors(size, expo, m)});
  }
  return key;
}

/// Multiset of matrix signatures over a finite subgroup of GL(2, Z/nZ).
struct SignatureProfile {
  i64 level = 1;
  u64 group_order = 0;
  std::map<SignatureKey, u64> counts;  // signature -> number of elements

  bool contains(const SignatureKey& k) const { return counts.count(k) > 0; }
  double frequency(const SignatureKey& k) const {
    const auto it = counts.find(k);
    return it == counts.end() ? 0.0
                              : static_cast<double>(it->second) /
                                    static_cast<double>(group_order);
  }
};

inline SignatureProfile subgroup_signature_profile(const FiniteMatrixGroup& H) {
  SignatureProfile prof;
  prof.level = H.level();
  prof.group_order = H.order();
  for (const ResidueMatrix& h : H.elements()) ++prof.counts[matrix_signature(h)];
  u64 total = 0;
  for (const auto& [k, c] : prof.counts) total += c;
  ensure(total == prof.group_order,
         "signature profile: counts must sum to the group order");
  return prof;
}

// ---------------------------------------------------------------------------
// Monte-Carlo image verification
// ---------------------------------------------------------------------------

inline constexpr double kDefaultCoverageThreshold = 0.99;

struct ImageVerdict {
  i64 level = 0;
  u64 candidate_order = 0;
  bool det_surjective = true;
  u64 primes_used = 0;
  std::vector<std::pair<i64, SignatureKey>> containment_violations;
  std::optional<i64> certificate_prime;  // first violating prime, if any
  double coverage = 0.0;                 // observed / candidate signature classes
  double coverage_threshold = kDefaultCoverageThreshold;
  std::string verdict;                   // consistent | inconsistent | inconclusive
};

/// Samples every good prime p <= p_bound (coprime to 6, n, the scaled
/// discriminant and the scaling factor) and checks that each observed
/// Frobenius signature occurs in the candidate subgroup's profile.  Any
/// violation refutes containment of the mod-n image in (a conjugate of) H
/// with certificate prime; otherwise the coverage of H's signature classes
/// decides between "consistent" and "inconclusive".  This is Chebotarev-style
/// evidence, not a proof.
inline ImageVerdict verify_image(const CurveQ& e, const FiniteMatrixGroup& H,
                                 i64 p_bound,
                                 double coverage_threshold = kDefaultCoverageThreshold,
                                 i64 budget = kDefaultPointCountBudget) {
  require(p_bound >= 100, "verify_image: p_bound must be at least 100");
  require(coverage_threshold > 0.0 && coverage_threshold <= 1.0,
          "verify_image: coverage threshold must lie in (0, 1]");
  if (p_bound > budget)
    throw ResourceError("verify_image: p_bound " + std::to_string(p_bound) +
                        " exceeds the enumeration budget " +
                        std::to_string(budget));
  const i64 n = H.level();
  require(n >= 2, "verify_image: candidate level must be at least 2");

  ImageVerdict v;
  v.level = n;
  v.candidate_order = H.order();
  v.coverage_threshold = coverage_threshold;
  v.det_surjective = det_image(H).full_determinant;

  const SignatureProfile prof = subgroup_signature_profile(H);
  const detail::IntegralModel m = detail::integral_model(e);
  const detail::TorsionPlan plan = detail::torsion_plan(n);
  std::set<SignatureKey> observed;
  for (i64 p : primes_up_to(p_bound)) {
    if ((6 * n) % p == 0) continue;
    if (m.disc % p == 0 || m.scaling % p == 0) continue;
    const FrobeniusSignature sig = detail::frob_signature_impl(m, p, plan);
    ++v.primes_used;
    if (!prof.contains(sig.key)) {
      v.containment_violations.push_back({p, sig.key});
      if (!v.certificate_prime) v.certificate_prime = p;
    } else {
      observed.insert(sig.key);
    }
  }
  v.coverage = prof.counts.empty()
                   ? 0.0
                   : static_cast<double>(observed.size()) /
                         static_cast<double>(prof.counts.size());
  if (!v.containment_violations.empty())
    v.verdict = "inconsistent";
  else if (v.coverage >= coverage_threshold)
    v.verdict = "consistent";
  else
    v.verdict = "inconclusive";
  return v;
}

}  // namespace tanglekit
