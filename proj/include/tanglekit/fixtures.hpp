#pragma once
/// @file fixtures.hpp
/// @brief Embedded example groups used by the test suite and exposed through
///        the CLI's --list-fixtures.  Each is a concrete subgroup of some
///        GL(2,Z/nZ) with a documented entanglement behavior.

#include "tanglekit/modmat.hpp"

namespace tanglekit {

/// Sign of the permutation a mod-2 matrix induces on the three nonzero
/// vectors of F_2^2 (the classical GL(2,F_2) = S_3 identification).
inline int gl2_mod2_sign(const ResidueMatrix& g) {
  require(g.level == 2 && g.is_invertible(), "gl2_mod2_sign: invertible mod-2 matrix required");
  // Vectors indexed 0:(0,1), 1:(1,0), 2:(1,1).
  auto index_of = [](i64 x, i64 y) { return x == 0 ? 0 : (y == 0 ? 1 : 2); };
  int perm[3];
  perm[0] = index_of(g.b % 2, g.d % 2);              // image of (0,1)
  perm[1] = index_of(g.a % 2, g.c % 2);              // image of (1,0)
  perm[2] = index_of((g.a + g.b) % 2, (g.c + g.d) % 2);  // image of (1,1)
  // Parity by inversion count on 3 points.
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

/// serre6: the index-2 fiber product {g : sgn(g mod 2) = chi_3(det(g mod 3))}
/// inside GL(2,Z/6Z), order 144.  Models a curve whose 2-division field and
/// 3-division field share the quadratic layer Q(sqrt(disc)) inside Q(zeta_3):
/// the (2,3) pair carries a nontrivial entanglement of type Z/2 which is both
/// abelian and Weil.
inline FiniteMatrixGroup fixture_serre6() {
  return subgroup_where(full_gl2(6), [](const ResidueMatrix& g) {
    return gl2_mod2_sign(reduce_matrix(g, 2)) == legendre(reduce_matrix(g, 3).det(), 3);
  });
}

/// serre15: the analogous index-2 fiber product inside GL(2,Z/15Z),
/// {g : chi_3(det(g mod 3)) = chi_5(det(g mod 5))}, order 11520.  Models the
/// quadratic twist picture where Q(E[3]) and Q(E[5]) intersect in Q(sqrt(d)):
/// the (3,5) pair carries a type-Z/2 entanglement.
inline FiniteMatrixGroup fixture_serre15() {
  return subgroup_where(full_gl2(15), [](const ResidueMatrix& g) {
    return legendre(reduce_matrix(g, 3).det(), 3) == legendre(reduce_matrix(g, 5).det(), 5);
  });
}

/// serre6_preimage12: the full preimage of serre6 under reduction
/// GL(2,Z/12Z) -> GL(2,Z/6Z), order 2304.  Its lattice has nontrivial pairs
/// (2,3) and (3,4) of type Z/2 with unique maximal entry (2,3); the maximal
/// pair has lcm 6 < 12, so the entanglement is not primitive at level 12.
inline FiniteMatrixGroup fixture_serre6_preimage12() {
  return subgroup_where(full_gl2(12), [](const ResidueMatrix& g) {
    ResidueMatrix h = reduce_matrix(g, 6);
    return gl2_mod2_sign(reduce_matrix(h, 2)) == legendre(reduce_matrix(h, 3).det(), 3);
  });
}

/// abelian_not_weil_6: an order-4 abelian subgroup of GL(2,Z/6Z) whose (2,3)
/// pair is a nontrivial abelian entanglement of type Z/2 that is NOT a Weil
/// entanglement (the shared quadratic field is cyclotomic over Q but does not
/// sit inside either single cyclotomic layer the Weil condition tests).
inline FiniteMatrixGroup fixture_abelian_not_weil_6() {
  return FiniteMatrixGroup::closure(
      6, {ResidueMatrix(6, 2, 3, 3, 2), ResidueMatrix(6, 1, 0, 0, 5)});
}

/// cm8_index2: an order-32, index-2 subgroup of the CM Cartan normalizer
/// N_{-2,0}(8) with full determinant image.  Its Frobenius signature profile
/// matches the discriminant -8 CM quartet (the conductor-256 curves with
/// j = 8000) with zero containment violations for primes up to 10^4, and its
/// order equals the degree of the 8-division field of those curves.  The
/// zero-violation index-2 subgroups of the normalizer all share one
/// signature profile, so Frobenius data pins the subgroup down exactly up to
/// signature equivalence; this representative is the first in the
/// deterministic enumeration order.
inline FiniteMatrixGroup fixture_cm8_index2() {
  return FiniteMatrixGroup::closure(
      8, {ResidueMatrix(8, 1, 0, 0, 7), ResidueMatrix(8, 1, 1, 2, 7)});
}

}  // namespace tanglekit
