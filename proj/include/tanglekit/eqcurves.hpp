#pragma once

// Exact Weierstrass curve models over Q and Q(t): invariants, quadratic
// twists, the universal j-line model, named one-parameter families with
// excluded-locus diagnostics, square-class / cyclotomic bookkeeping for the
// discriminant field Q(sqrt(Delta)), and rational points on the conics C_d.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tanglekit/numeric.hpp"
#include "tanglekit/qpoly.hpp"

namespace tanglekit {

// ---------------------------------------------------------------------------
// Field glue: the coefficient field K is Q (Rat) or Q(t) (RatFunc).
// ---------------------------------------------------------------------------

template <typename K>
K field_from_rational(const Rat& q);

template <>
inline Rat field_from_rational<Rat>(const Rat& q) {
  return q;
}
template <>
inline RatFunc field_from_rational<RatFunc>(const Rat& q) {
  return RatFunc(q);
}

inline bool field_equals_rational(const Rat& x, const Rat& q) { return x == q; }
inline bool field_equals_rational(const RatFunc& x, const Rat& q) {
  return x.is_constant() && x.as_rational() == q;
}

// ---------------------------------------------------------------------------
// Curve models and invariants
// ---------------------------------------------------------------------------

/// A Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
/// coefficients in K.  `label` is a human-readable description of where the
/// model came from (fixture name, family and parameter, ...).
template <typename K>
struct CurveModel {
  std::array<K, 5> a;  // a1, a2, a3, a4, a6
  std::string label;
};

using CurveQ = CurveModel<Rat>;
using CurveT = CurveModel<RatFunc>;

template <typename K>
struct CurveInvariants {
  K b2, b4, b6, b8;
  K c4, c6;
  K disc;
  K j;
};

/// Standard b/c-invariants, discriminant and j-invariant.  Rejects singular
/// models.  Two classical identities (4*b8 = b2*b6 - b4^2 and
/// c4^3 - c6^2 = 1728*disc) are recomputed as internal cross-checks.
template <typename K>
CurveInvariants<K> curve_invariants(const CurveModel<K>& e) {
  auto k_int = [](i64 v) { return field_from_rational<K>(Rat(v)); };
  const K& a1 = e.a[0];
  const K& a2 = e.a[1];
  const K& a3 = e.a[2];
  const K& a4 = e.a[3];
  const K& a6 = e.a[4];

  CurveInvariants<K> inv;
  inv.b2 = a1 * a1 + k_int(4) * a2;
  inv.b4 = k_int(2) * a4 + a1 * a3;
  inv.b6 = a3 * a3 + k_int(4) * a6;
  inv.b8 = a1 * a1 * a6 + k_int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 -
           a4 * a4;
  ensure(k_int(4) * inv.b8 == inv.b2 * inv.b6 - inv.b4 * inv.b4,
         "curve invariants: b8 identity failed");

  inv.disc = -inv.b2 * inv.b2 * inv.b8 - k_int(8) * inv.b4 * inv.b4 * inv.b4 -
             k_int(27) * inv.b6 * inv.b6 + k_int(9) * inv.b2 * inv.b4 * inv.b6;
  require(!fieldops::is_zero(inv.disc),
          "singular Weierstrass model" +
              (e.label.empty() ? std::string() : " (" + e.label + ")"));

  inv.c4 = inv.b2 * inv.b2 - k_int(24) * inv.b4;
  inv.c6 = -inv.b2 * inv.b2 * inv.b2 + k_int(36) * inv.b2 * inv.b4 -
           k_int(216) * inv.b6;
  ensure(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 == k_int(1728) * inv.disc,
         "curve invariants: c4/c6/disc identity failed");
  inv.j = inv.c4 * inv.c4 * inv.c4 / inv.disc;
  return inv;
}

/// Square class of disc(E) in Q*/(Q*)^2, as a signed square-free integer.
inline Int disc_square_class(const CurveQ& e) {
  return squarefree_part(curve_invariants(e).disc);
}

/// Division polynomial of the curve (see division_polynomial for the
/// normalization: even indices carry the multiplicity-one factor
/// 4x^3 + b2 x^2 + 2 b4 x + b6).
template <typename K>
Poly<K> curve_division_polynomial(const CurveModel<K>& e, i64 m,
                                  i64 budget = kDefaultDivisionBudget) {
  return division_polynomial<K>(e.a, m, budget);
}

// ---------------------------------------------------------------------------
// Quadratic twists
// ---------------------------------------------------------------------------

/// Quadratic twist by a square-free integer d != 0, returned on the
/// completed-square model y^2 = x^3 + (d b2/4) x^2 + (d^2 b4/2) x + (d^3 b6/4).
/// Postconditions (checked): j is preserved and disc scales by d^6, so the
/// discriminant square class is preserved as well.
template <typename K>
CurveModel<K> quadratic_twist(const CurveModel<K>& e, const Int& d) {
  require(d != 0, "quadratic twist: parameter must be nonzero");
  require(squarefree_part(d) == d,
          "quadratic twist: parameter must be square-free");
  auto inv = curve_invariants(e);
  const K kd = field_from_rational<K>(Rat(d));
  const K quarter = field_from_rational<K>(Rat(1, 4));
  const K half = field_from_rational<K>(Rat(1, 2));
  CurveModel<K> out;
  out.a = {field_from_rational<K>(Rat(0)), kd * inv.b2 * quarter,
           field_from_rational<K>(Rat(0)), kd * kd * inv.b4 * half,
           kd * kd * kd * inv.b6 * quarter};
  out.label = (e.label.empty() ? std::string("curve") : e.label) +
              " twisted by " + d.str();
  auto inv2 = curve_invariants(out);
  ensure(inv2.j == inv.j, "quadratic twist must preserve the j-invariant");
  ensure(inv2.disc == k_pow(kd, 6) * inv.disc,
         "quadratic twist must scale the discriminant by d^6");
  return out;
}

// ---------------------------------------------------------------------------
// Universal curve with prescribed j-invariant
// ---------------------------------------------------------------------------

/// The standard model y^2 + xy = x^3 - (36/(j0-1728)) x - 1/(j0-1728) with
/// j-invariant exactly j0; requires j0 != 0, 1728.
template <typename K>
CurveModel<K> universal_curve(const K& j0, const std::string& label = "") {
  require(!field_equals_rational(j0, Rat(0)) &&
              !field_equals_rational(j0, Rat(1728)),
          "universal curve: j must avoid 0 and 1728");
  const K s = j0 - field_from_rational<K>(Rat(1728));
  CurveModel<K> e;
  e.a = {field_from_rational<K>(Rat(1)), field_from_rational<K>(Rat(0)),
         field_from_rational<K>(Rat(0)), -field_from_rational<K>(Rat(36)) / s,
         -field_from_rational<K>(Rat(1)) / s};
  e.label = label;
  ensure(curve_invariants(e).j == j0,
         "universal curve: j-invariant must equal the requested value");
  return e;
}

inline CurveQ universal_curve_q(const Rat& j0) {
  return universal_curve<Rat>(j0, "universal model with j = " + rat_to_string(j0));
}

// ---------------------------------------------------------------------------
// Quadratic fields inside cyclotomic fields
// ---------------------------------------------------------------------------

/// Conductor of Q(sqrt(d)) for a square-free integer d != 0, 1: the least n
/// with Q(sqrt(d)) contained in Q(zeta_n).  Equals |d| when d = 1 (mod 4) and
/// 4|d| otherwise.
inline Int quad_conductor(const Int& d) {
  require(d != 0 && d != 1, "quad_conductor: d must define a quadratic field");
  require(squarefree_part(d) == d, "quad_conductor: d must be square-free");
  const Int m = ((d % 4) + 4) % 4;
  const Int ad = abs(d);
  return m == 1 ? ad : Int(4 * ad);
}

/// Whether Q(sqrt(d)) lies inside the n-th cyclotomic field.
inline bool in_cyclotomic(const Int& d, const Int& n) {
  require(n >= 1, "in_cyclotomic: n must be a positive integer");
  if (d == 1 || squarefree_part(d) == 1) return true;
  return n % quad_conductor(squarefree_part(d)) == 0;
}

// ---------------------------------------------------------------------------
// The quadratic entanglement every curve carries: Q(sqrt(Delta))
// ---------------------------------------------------------------------------

struct SerreReport {
  std::string curve_label;
  Int delta_square_class = 1;     // square-free d with disc(E) = d (mod squares)
  bool vertical_flag = false;     // disc(E) is a square: the field degenerates
  std::string serre_field;        // "Q" or "Q(sqrt(d))"
  Int minimal_cyclotomic_level = 1;  // conductor of Q(sqrt(d)); 1 when vertical
  Int level_bound = 0;            // 4|disc| of a scaled integral model; the
                                  // minimal level always divides this bound
};

/// Reports the quadratic field Q(sqrt(disc E)) together with the minimal
/// cyclotomic level containing it and the classical bound 4|Delta| computed
/// from the integral model obtained by scaling a_i by u^i (u = lcm of the
/// coefficient denominators).
inline SerreReport serre_entanglement(const CurveQ& e) {
  auto inv = curve_invariants(e);
  SerreReport r;
  r.curve_label = e.label;
  r.delta_square_class = squarefree_part(inv.disc);
  r.vertical_flag = (r.delta_square_class == 1);
  r.serre_field = r.vertical_flag
                      ? std::string("Q")
                      : "Q(sqrt(" + r.delta_square_class.str() + "))";
  r.minimal_cyclotomic_level =
      r.vertical_flag ? Int(1) : quad_conductor(r.delta_square_class);

  Int u = 1;
  for (const Rat& ai : e.a) u = lcm(u, Int(boost::multiprecision::denominator(ai)));
  const Rat disc_int_q = inv.disc * Rat(pow(u, 12));
  ensure(boost::multiprecision::denominator(disc_int_q) == 1,
         "integral scaling must clear the discriminant denominator");
  const Int disc_int = Int(boost::multiprecision::numerator(disc_int_q));
  r.level_bound = 4 * abs(disc_int);
  ensure(r.level_bound % r.minimal_cyclotomic_level == 0,
         "minimal cyclotomic level must divide the 4|disc| bound");
  ensure(in_cyclotomic(r.delta_square_class, r.level_bound),
         "Q(sqrt(disc)) must embed at the 4|disc| level");
  return r;
}

// ---------------------------------------------------------------------------
// Rational points on the conics C_d : 5(x^2 + (22/25)x + 1/5) = d y^2
// ---------------------------------------------------------------------------

struct CdPoint {
  Int d;  // m^2 + n^2
  Rat x, y;
};

/// For (m, n) != (0, 0) and d = m^2 + n^2, produce a rational point on C_d.
/// Writing the conic as (x + 7/25)^2 + (2x + 24/25)^2 = d y^2, the lines
/// x + 7/25 = m y, 2x + 24/25 = n y meet the conic in the rational point
///   x = (7n - 24m) / (25(2m - n)),   y = -2 / (5(2m - n));
/// when 2m = n the two lines are parallel and the same construction with the
/// roles of m and n exchanged is used.  The sign of y is normalized to be
/// positive (points come in pairs (x, +-y)).  The conic equation is verified
/// exactly before returning.
inline CdPoint c_d_point(const Int& m, const Int& n) {
  require(m != 0 || n != 0, "c_d_point: (m, n) = (0, 0) is excluded");
  CdPoint pt;
  pt.d = m * m + n * n;
  Int w = 2 * m - n;
  if (w != 0) {
    pt.x = Rat(7 * n - 24 * m) / Rat(25 * w);
    pt.y = Rat(-2) / Rat(5 * w);
  } else {
    w = 2 * n - m;  // nonzero: otherwise m = n = 0
    pt.x = Rat(7 * m - 24 * n) / Rat(25 * w);
    pt.y = Rat(-2) / Rat(5 * w);
  }
  if (pt.y < 0) pt.y = -pt.y;
  ensure(Rat(5) * (pt.x * pt.x + Rat(22, 25) * pt.x + Rat(1, 5)) ==
             Rat(pt.d) * pt.y * pt.y,
         "c_d_point: constructed point must satisfy the conic equation");
  return pt;
}

/// The binary form behind C_d on the diagonal slice: delta(t) =
/// 5(t^2 + (22/25)t + 1/5) = (t + 7/25)^2 + (2t + 24/25)^2.
inline RatFunc cd_conic_form() {
  const RatFunc t = RatFunc::variable();
  return RatFunc(Rat(5)) *
         (t * t + RatFunc(Rat(22, 25)) * t + RatFunc(Rat(1, 5)));
}

// ---------------------------------------------------------------------------
// Named one-parameter families over Q(t)
// ---------------------------------------------------------------------------

namespace detail {

inline RatFunc rf_poly(const std::vector<Int>& ascending) {
  return RatFunc(PolyZ(ascending), PolyZ{Int(1)});
}

/// j-maps defining the families without a printed Weierstrass model.  Each is
/// stored as (numerator factors, denominator factors) and assembled on demand.
inline RatFunc jfam_j_map(int index) {
  const RatFunc t = RatFunc::variable();
  switch (index) {
    case 1: {
      const RatFunc p1 = rf_poly({1, 4, 3, -4, 0, 6, -17, -30, 6, 34, 25, 8, 1});
      return k_pow(rf_poly({1, 1, 1}), 3) * rf_poly({1, 1, 2, 9, 12, 5, 1}) *
             k_pow(p1, 3) /
             (k_pow(t, 14) * k_pow(rf_poly({1, 1}), 14) *
              k_pow(rf_poly({-1, -1, 2, 1}), 2));
    }
    case 2: {
      const RatFunc p2 =
          rf_poly({1, -6, -1, 60, 132, 306, 805, 1242, 1032, 480, 131, 18, 1});
      return RatFunc(Rat(2401)) * k_pow(rf_poly({1, 1, 1}), 3) *
             rf_poly({9, 15, 4, 23, 64, 39, 9}) * k_pow(p2, 3) /
             (k_pow(rf_poly({-1, -2, 1, 1}), 14) *
              k_pow(rf_poly({-1, 5, 8, 1}), 2));
    }
    case 3: {
      const RatFunc p3 = rf_poly({1, -4, 243, -956, 2880, -7206, 11263, -10050,
                                  5046, -1474, 265, -8, 1});
      return k_pow(rf_poly({1, -1, 1}), 3) * rf_poly({1, -1, 2, -9, 12, -5, 1}) *
             k_pow(p3, 3) /
             (k_pow(rf_poly({-1, 1}), 2) * k_pow(t, 2) *
              k_pow(rf_poly({1, -1, -2, 1}), 14));
    }
    case 4: {
      const RatFunc p4 =
          rf_poly({1, 9, 39, 75, 75, 114, 26, -114, 75, -75, 39, -9, 1});
      return RatFunc(Rat(4096)) * k_pow(p4, 3) /
             (k_pow(rf_poly({-1, 1}), 15) * k_pow(rf_poly({1, 1}), 15) *
              k_pow(rf_poly({-1, -4, 1}), 3));
    }
    case 5: {
      const RatFunc p5 = rf_poly({211, 189, -501, 135, 345, -966, 146, 966, 345,
                                  -135, -501, -189, 211});
      return RatFunc(Rat(4096)) * k_pow(p5, 3) /
             (k_pow(rf_poly({-1, 1}), 15) * k_pow(rf_poly({1, 1}), 15) *
              k_pow(rf_poly({-1, -4, 1}), 3));
    }
    default:
      throw ValidationError("unknown j-map index");
  }
}

}  // namespace detail

/// Names of the built-in one-parameter families.
inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "hesse3", "rs9",   "isog5", "isog7", "tors4",
      "jfam1",  "jfam2", "jfam3", "jfam4", "jfam5"};
  return names;
}

/// Whether the family is given by an explicit Weierstrass model over Q(t)
/// (the alternative is a family presented by its j-map, realized through the
/// universal curve).
inline bool family_has_explicit_model(const std::string& name) {
  return name == "hesse3" || name == "rs9" || name == "isog5" ||
         name == "isog7" || name == "tors4";
}

/// The j-invariant of the family as an element of Q(t).
inline RatFunc family_j_map(const std::string& name);

/// The generic fiber of the family as a curve over Q(t).
inline CurveT family_model(const std::string& name) {
  using detail::rf_poly;
  const RatFunc zero{};
  const RatFunc one(Rat(1));
  CurveT e;
  e.label = name + " (generic fiber)";
  if (name == "hesse3") {
    // y^2 = x^3 - 27 t (t^3 + 8) x + 54 (t^6 - 20 t^3 - 8)
    e.a = {zero, zero, zero, rf_poly({0, -216, 0, 0, -27}),
           rf_poly({-432, 0, 0, -1080, 0, 0, 54})};
  } else if (name == "rs9") {
    // y^2 = x^3 - 3888 (2303 t^2 + 1) x - 46656 (-2303 t^3 - 6909 t^2 + 3t + 1)
    e.a = {zero, zero, zero, rf_poly({-3888, 0, -8954064}),
           rf_poly({-46656, -139968, 322346304, 107448768})};
  } else if (name == "isog5") {
    // y^2 = x^3 - 27 Q(t) x + 54 Q(t),
    // Q(t) = 25 (t^2 + 10t + 5)^3 / ((25 t^2 + 22 t + 5)(t^2 - 20t - 25)^2)
    const RatFunc q = RatFunc(Rat(25)) * k_pow(rf_poly({5, 10, 1}), 3) /
                      (rf_poly({5, 22, 25}) * k_pow(rf_poly({-25, -20, 1}), 2));
    e.a = {zero, zero, zero, RatFunc(Rat(-27)) * q, RatFunc(Rat(54)) * q};
  } else if (name == "isog7") {
    // y^2 = x^3 - 27 (t^2+13t+49)^3 (t^2+245t+2401) x
    //            + 54 (t^2+13t+49)^4 (t^4-490t^3-21609t^2-235298t-823543)
    const RatFunc u = rf_poly({49, 13, 1});
    e.a = {zero, zero, zero,
           RatFunc(Rat(-27)) * k_pow(u, 3) * rf_poly({2401, 245, 1}),
           RatFunc(Rat(54)) * k_pow(u, 4) *
               rf_poly({-823543, -235298, -21609, -490, 1})};
  } else if (name == "tors4") {
    // y^2 + xy - s y = x^3 - s x^2 with s = t^2 - 1/16; the fiber at t = t0
    // has full rational 2x4 structure data with Q(E[4]) = Q(i, sqrt(t0)).
    const RatFunc s = RatFunc(PolyZ{Int(-1), Int(0), Int(16)}, PolyZ{Int(16)});
    e.a = {one, -s, -s, zero, zero};
  } else if (name == "jfam1" || name == "jfam2" || name == "jfam3" ||
             name == "jfam4" || name == "jfam5") {
    const int index = name.back() - '0';
    return universal_curve<RatFunc>(detail::jfam_j_map(index),
                                    name + " (generic fiber)");
  } else {
    throw ValidationError("unknown family '" + name + "'");
  }
  return e;
}

inline RatFunc family_j_map(const std::string& name) {
  if (!family_has_explicit_model(name)) {
    if (name.size() == 5 && name.rfind("jfam", 0) == 0 && name[4] >= '1' &&
        name[4] <= '5')
      return detail::jfam_j_map(name.back() - '0');
    throw ValidationError("unknown family '" + name + "'");
  }
  return curve_invariants(family_model(name)).j;
}

namespace detail {

/// Human-readable name for the factor of `poly` (an integer polynomial in t)
/// that vanishes at t0.  Rational roots always sit in linear factors, which
/// the bounded factorizer finds; fall back to printing the full polynomial.
inline std::string vanishing_factor_name(const PolyZ& poly, const Rat& t0) {
  Poly<Rat> f = Poly<Rat>([&] {
    std::vector<Rat> cs;
    for (const Int& c : poly) cs.emplace_back(c);
    return cs;
  }());
  if (f.degree() >= 1) {
    try {
      for (const auto& g : small_rational_factors(f, 1).factors)
        if (g.degree() == 1 && g.eval(t0) == 0)
          return pz_to_string(integer_scale(g).coeffs);
    } catch (const std::exception&) {
      // fall through to the generic name
    }
  }
  return pz_to_string(poly);
}

}  // namespace detail

/// Specialize a family at t = t0.  Validation errors name the excluded locus:
/// parameters where a coefficient denominator vanishes (poles) and parameters
/// where the fiber is singular (discriminant zero), including the vanishing
/// factor responsible.
inline CurveQ family_specialize(const std::string& name, const Rat& t0) {
  const std::string at = name + " at t = " + rat_to_string(t0);
  if (!family_has_explicit_model(name)) {
    const RatFunc jm = family_j_map(name);
    if (pz_eval(jm.den(), t0) == 0)
      throw ValidationError(
          "family '" + name + "': t = " + rat_to_string(t0) +
          " is excluded (pole of the j-map; factor " +
          detail::vanishing_factor_name(jm.den(), t0) + " vanishes)");
    const Rat j0 = jm.eval(t0);
    if (j0 == 0 || j0 == 1728)
      throw ValidationError("family '" + name + "': t = " + rat_to_string(t0) +
                            " is excluded (j-map takes the special value " +
                            rat_to_string(j0) + ")");
    return universal_curve<Rat>(j0, at);
  }

  const CurveT model = family_model(name);
  for (const RatFunc& ai : model.a)
    if (pz_eval(ai.den(), t0) == 0)
      throw ValidationError(
          "family '" + name + "': t = " + rat_to_string(t0) +
          " is excluded (pole of a coefficient; factor " +
          detail::vanishing_factor_name(ai.den(), t0) + " vanishes)");
  const RatFunc disc = curve_invariants(model).disc;
  if (pz_eval(disc.den(), t0) != 0 && disc.eval(t0) == 0)
    throw ValidationError(
        "family '" + name + "': t = " + rat_to_string(t0) +
        " is excluded (singular fiber; discriminant factor " +
        detail::vanishing_factor_name(disc.num(), t0) + " vanishes)");

  CurveQ e;
  for (std::size_t i = 0; i < 5; ++i) e.a[i] = model.a[i].eval(t0);
  e.label = at;
  curve_invariants(e);  // re-validates nonsingularity on the fiber
  return e;
}

// ---------------------------------------------------------------------------
// Fixture curves over Q
// ---------------------------------------------------------------------------

/// One row of the rational CM table: the thirteen j-invariants of elliptic
/// curves over Q with complex multiplication, keyed by imaginary quadratic
/// field discriminant and order conductor f, with LMFDB labels of curves
/// realizing them (rows with j = 0 or 1728 are omitted; those j are excluded
/// from the universal model).
struct CmTableRow {
  std::string label_a, label_b;  // two LMFDB labels realizing this j
  Rat j;
  Int field_disc;  // discriminant of the CM field Q(sqrt(field_disc/|..|))
  i64 order_conductor;
  Int curve_conductor;
};

inline const std::vector<CmTableRow>& cm_table() {
  static const std::vector<CmTableRow> rows = {
      {"36.a1", "36.a2", Rat(54000), Int(-3), 2, Int(36)},
      {"27.a1", "27.a2", Rat(-12288000), Int(-3), 3, Int(27)},
      {"49.a2", "49.a4", Rat(-3375), Int(-7), 1, Int(49)},
      {"49.a1", "49.a3", Rat(16581375), Int(-7), 2, Int(49)},
      {"121.b1", "121.b2", Rat(-32768), Int(-11), 1, Int(121)},
      {"361.a1", "361.a2", Rat(-884736), Int(-19), 1, Int(361)},
      {"1849.b1", "1849.b2", Rat(-884736000), Int(-43), 1, Int(1849)},
      {"4489.b1", "4489.b2", Rat(-147197952000), Int(-67), 1, Int(4489)},
      {"26569.a1", "26569.a2", Rat("-262537412640768000"), Int(-163), 1,
       Int(26569)},
  };
  return rows;
}

/// Built-in curves over Q addressable by name:
///   - "50.a1": y^2 + xy + y = x^3 - 126x - 552 (LMFDB model);
///   - "e1".."e4": the quartet y^2 = x^3 +- x^2 - 3x +- 1 / ... - 13x +- 21
///     of Z[sqrt(-2)]-CM curves related by quadratic twists over Q(i, sqrt 2);
///   - CM-table labels ("36.a1", ..., "26569.a2"): the universal model with
///     the j-invariant of the corresponding row (each such j determines the
///     curve up to quadratic twist).
inline CurveQ fixture_curve(const std::string& name) {
  auto mk = [&](std::array<Rat, 5> a) {
    CurveQ e;
    e.a = std::move(a);
    e.label = name;
    curve_invariants(e);
    return e;
  };
  if (name == "50.a1")
    return mk({Rat(1), Rat(0), Rat(1), Rat(-126), Rat(-552)});
  if (name == "e1") return mk({Rat(0), Rat(1), Rat(0), Rat(-3), Rat(1)});
  if (name == "e2") return mk({Rat(0), Rat(-1), Rat(0), Rat(-13), Rat(21)});
  if (name == "e3") return mk({Rat(0), Rat(1), Rat(0), Rat(-13), Rat(-21)});
  if (name == "e4") return mk({Rat(0), Rat(-1), Rat(0), Rat(-3), Rat(-1)});
  for (const CmTableRow& row : cm_table())
    if (name == row.label_a || name == row.label_b)
      return universal_curve<Rat>(row.j, name + " (universal model with j = " +
                                             rat_to_string(row.j) + ")");
  throw ValidationError("unknown fixture curve '" + name + "'");
}

inline std::vector<std::string> fixture_curve_names() {
  std::vector<std::string> names = {"50.a1", "e1", "e2", "e3", "e4"};
  for (const CmTableRow& row : cm_table()) {
    names.push_back(row.label_a);
    names.push_back(row.label_b);
  }
  return names;
}

}  // namespace tanglekit
