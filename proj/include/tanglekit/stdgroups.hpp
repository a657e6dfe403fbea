#pragma once
/// @file stdgroups.hpp
/// @brief Constructors for the named subgroups of GL(2,Z/nZ): Borel, split
///        and nonsplit Cartan with normalizers at odd prime level, and the
///        CM Cartan groups C_{delta,phi}(n) with their normalizers.

#include "tanglekit/modmat.hpp"

namespace tanglekit {

// ============================================================================
// Standard subgroups at odd prime level
// ============================================================================

enum class StandardLabel { B, Cs, Cn, Ns, Nn };

inline StandardLabel standard_label_from_string(const std::string& s) {
  if (s == "B") return StandardLabel::B;
  if (s == "Cs") return StandardLabel::Cs;
  if (s == "Cn") return StandardLabel::Cn;
  if (s == "Ns") return StandardLabel::Ns;
  if (s == "Nn") return StandardLabel::Nn;
  throw ValidationError("unknown standard subgroup label: " + s +
                        " (expected one of B, Cs, Cn, Ns, Nn)");
}

/// The nonresidue used in the nonsplit Cartan model: -1 when l = 3 mod 4,
/// otherwise the smallest nonresidue >= 2.
inline i64 nonsplit_epsilon(i64 ell) {
  if (ell % 4 == 3) return ell - 1;  // -1 mod ell
  for (i64 e = 2; e < ell; ++e) {
    if (legendre(e, ell) == -1) return e;
  }
  throw StructuralError("nonsplit_epsilon: no nonresidue found (ell not an odd prime?)");
}

/// The five standard subgroups of GL(2,Z/lZ) for an odd prime l:
/// B (upper triangular), Cs (diagonal), Cn (nonsplit Cartan), and the
/// normalizers Ns = <Cs, [[0,1],[1,0]]>, Nn = <Cn, [[1,0],[0,-1]]>.
inline FiniteMatrixGroup standard_subgroup(StandardLabel label, i64 ell,
                                           u64 budget = kDefaultClosureBudget) {
  require(ell >= 3 && ell % 2 == 1 && is_prime_u64(static_cast<u64>(ell)),
          "standard_subgroup: level must be an odd prime");

  auto borel = [&]() {
    std::vector<u64> keys;
    for (i64 a = 1; a < ell; ++a)
      for (i64 d = 1; d < ell; ++d)
        for (i64 b = 0; b < ell; ++b) keys.push_back(ResidueMatrix(ell, a, b, 0, d).key());
    return FiniteMatrixGroup::from_element_set(ell, std::move(keys), budget);
  };
  auto split = [&]() {
    std::vector<u64> keys;
    for (i64 a = 1; a < ell; ++a)
      for (i64 d = 1; d < ell; ++d) keys.push_back(ResidueMatrix(ell, a, 0, 0, d).key());
    return FiniteMatrixGroup::from_element_set(ell, std::move(keys), budget);
  };
  auto nonsplit = [&]() {
    i64 eps = nonsplit_epsilon(ell);
    std::vector<u64> keys;
    for (i64 a = 0; a < ell; ++a) {
      for (i64 b = 0; b < ell; ++b) {
        if (a == 0 && b == 0) continue;
        keys.push_back(ResidueMatrix(ell, a, b * eps, b, a).key());
      }
    }
    return FiniteMatrixGroup::from_element_set(ell, std::move(keys), budget);
  };
  auto extend = [&](const FiniteMatrixGroup& C, const ResidueMatrix& w) {
    std::vector<ResidueMatrix> gens = C.generators();
    gens.push_back(w);
    FiniteMatrixGroup N = FiniteMatrixGroup::closure(ell, gens, budget);
    ensure(N.order() == 2 * C.order(), "standard_subgroup: normalizer is not index 2");
    return N;
  };

  switch (label) {
    case StandardLabel::B:
      return borel();
    case StandardLabel::Cs:
      return split();
    case StandardLabel::Cn:
      return nonsplit();
    case StandardLabel::Ns:
      return extend(split(), ResidueMatrix(ell, 0, 1, 1, 0));
    case StandardLabel::Nn:
      return extend(nonsplit(), ResidueMatrix(ell, 1, 0, 0, -1));
  }
  throw StructuralError("standard_subgroup: unreachable");
}

// ============================================================================
// CM Cartan groups C_{delta,phi}(n) and their normalizers
// ============================================================================

/// Parameters (delta, phi) mod n derived from an imaginary quadratic order of
/// discriminant Delta_K * f^2.
struct CartanParams {
  i64 delta = 0;
  i64 phi = 0;
  i64 n = 1;
  i64 disc_k = 0;     // fundamental discriminant Delta_K
  i64 conductor = 1;  // f
};

inline bool is_fundamental_discriminant(i64 dk) {
  if (dk >= 0) return false;
  i64 m4 = ((dk % 4) + 4) % 4;
  if (m4 == 1) return squarefree_part(Int(dk)) == Int(dk);
  if (m4 == 0) {
    i64 m = dk / 4;
    i64 mm4 = ((m % 4) + 4) % 4;
    return (mm4 == 2 || mm4 == 3) && squarefree_part(Int(m)) == Int(m);
  }
  return false;
}

/// The two-case rule: with D = Delta_K f^2,
///   - D = 0 mod 4 or n odd: delta = D/4 mod n (modular inverse of 4 when n
///     is odd and 4 does not divide D), phi = 0;
///   - D = 1 mod 4 and n even: delta = ((Delta_K - 1)/4) f^2 mod n, phi = f.
inline CartanParams cartan_params(i64 dk, i64 f, i64 n) {
  require(is_fundamental_discriminant(dk),
          "cartan_params: " + std::to_string(dk) + " is not a negative fundamental discriminant");
  require(f >= 1, "cartan_params: conductor must be >= 1");
  require(n >= 1, "cartan_params: level must be >= 1");
  CartanParams p;
  p.n = n;
  p.disc_k = dk;
  p.conductor = f;
  i64 D = dk * f * f;
  i64 Dm4 = ((D % 4) + 4) % 4;
  ensure(Dm4 == 0 || Dm4 == 1, "cartan_params: discriminant not 0 or 1 mod 4");
  auto red = [n](i64 v) { return ((v % n) + n) % n; };
  if (Dm4 == 0) {
    p.delta = red(D / 4);
    p.phi = 0;
  } else if (n % 2 == 1) {
    p.delta = red(red(D) * inv_mod(4, n));
    p.phi = 0;
  } else {
    p.delta = red(((dk - 1) / 4) * f * f);
    p.phi = red(f);
  }
  return p;
}

/// C_{delta,phi}(n) = {[[a+b*phi, b],[delta*b, a]] : a^2+ab*phi-delta*b^2 a unit}.
inline FiniteMatrixGroup cartan_group(const CartanParams& p, u64 budget = kDefaultClosureBudget) {
  i64 n = p.n;
  if (n == 1) return FiniteMatrixGroup::trivial(1);
  Int count = Int(n) * n;
  if (count > Int(budget))
    throw ResourceError("cartan_group: level " + std::to_string(n) + " exceeds budget");
  std::vector<u64> keys;
  for (i64 a = 0; a < n; ++a) {
    for (i64 b = 0; b < n; ++b) {
      i64 norm = ((a * a + a * b % n * p.phi + (n - p.delta) * (b * b % n)) % n + n) % n;
      if (std::gcd(norm, n) != 1) continue;
      keys.push_back(ResidueMatrix(n, a + b * p.phi, b, p.delta * b, a).key());
    }
  }
  FiniteMatrixGroup C = FiniteMatrixGroup::from_element_set(n, std::move(keys), budget);
  // The norm form is multiplicative, so C must be abelian.
  for (const auto& x : C.generators())
    for (const auto& y : C.generators())
      ensure(x * y == y * x, "cartan_group: non-commuting elements found");
  return C;
}

/// N_{delta,phi}(n) = <C_{delta,phi}(n), [[-1,0],[phi,1]]>; index 2 over the
/// Cartan whenever the extra generator falls outside it.
inline FiniteMatrixGroup cartan_normalizer(const CartanParams& p,
                                           u64 budget = kDefaultClosureBudget) {
  FiniteMatrixGroup C = cartan_group(p, budget);
  if (p.n == 1) return C;
  ResidueMatrix gamma(p.n, -1, 0, p.phi, 1);
  if (C.contains(gamma)) return C;
  std::vector<ResidueMatrix> gens = C.generators();
  gens.push_back(gamma);
  FiniteMatrixGroup N = FiniteMatrixGroup::closure(p.n, gens, budget);
  ensure(N.order() == 2 * C.order(), "cartan_normalizer: index over the Cartan is not 2");
  return N;
}

}  // namespace tanglekit
