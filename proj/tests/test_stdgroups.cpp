/// @file test_stdgroups.cpp
/// @brief Unit tests for the named subgroup constructors, checked against
///        direct enumeration and classical order formulas.

#include <catch2/catch_amalgamated.hpp>

#include "tanglekit/stdgroups.hpp"

using namespace tanglekit;

TEST_CASE("epsilon rule for the nonsplit Cartan", "[stdgroups]") {
  REQUIRE(nonsplit_epsilon(3) == 2);   // -1 mod 3
  REQUIRE(nonsplit_epsilon(7) == 6);   // -1 mod 7
  REQUIRE(nonsplit_epsilon(5) == 2);   // squares mod 5 are {1,4}
  REQUIRE(nonsplit_epsilon(13) == 2);  // squares mod 13 exclude 2
  REQUIRE(nonsplit_epsilon(17) == 3);  // 2 is a square mod 17
}

TEST_CASE("standard subgroup orders", "[stdgroups]") {
  REQUIRE(standard_subgroup(StandardLabel::Cn, 3).order() == 8);    // 3^2 - 1
  REQUIRE(standard_subgroup(StandardLabel::Ns, 5).order() == 32);   // 2*(5-1)^2
  REQUIRE(standard_subgroup(StandardLabel::B, 7).order() == 252);   // 7*6^2
  for (i64 ell : {3, 5, 7, 11, 13}) {
    u64 cs = standard_subgroup(StandardLabel::Cs, ell).order();
    u64 cn = standard_subgroup(StandardLabel::Cn, ell).order();
    REQUIRE(cs == static_cast<u64>((ell - 1) * (ell - 1)));
    REQUIRE(cn == static_cast<u64>(ell * ell - 1));
    REQUIRE(standard_subgroup(StandardLabel::Ns, ell).order() == 2 * cs);
    REQUIRE(standard_subgroup(StandardLabel::Nn, ell).order() == 2 * cn);
    REQUIRE(standard_subgroup(StandardLabel::B, ell).order() ==
            static_cast<u64>(ell) * (ell - 1) * (ell - 1));
  }
  REQUIRE_THROWS_AS(standard_subgroup(StandardLabel::B, 4), ValidationError);
  REQUIRE_THROWS_AS(standard_subgroup(StandardLabel::B, 2), ValidationError);
}

TEST_CASE("standard subgroups really are subgroups with expected shape", "[stdgroups]") {
  FiniteMatrixGroup B = standard_subgroup(StandardLabel::B, 5);
  for (const auto& g : B.elements()) REQUIRE(g.c == 0);
  FiniteMatrixGroup Cn = standard_subgroup(StandardLabel::Cn, 5);
  // Nonsplit Cartan is cyclic of order l^2-1.
  GroupFingerprint fp = fingerprint(Cn);
  REQUIRE(fp.is_abelian);
  REQUIRE(fp.abelian_invariants == std::vector<i64>{24});
  // Split Cartan normalizer contains the antidiagonal swap.
  FiniteMatrixGroup Ns = standard_subgroup(StandardLabel::Ns, 5);
  REQUIRE(Ns.contains(ResidueMatrix(5, 0, 1, 1, 0)));
  REQUIRE(standard_subgroup(StandardLabel::Cs, 5).is_subgroup_of(Ns));
}

TEST_CASE("label parsing", "[stdgroups]") {
  REQUIRE(standard_label_from_string("Nn") == StandardLabel::Nn);
  REQUIRE_THROWS_AS(standard_label_from_string("X"), ValidationError);
}

TEST_CASE("fundamental discriminant recognition", "[stdgroups]") {
  for (i64 dk : {-3, -4, -7, -8, -11, -19, -20, -43, -67, -163})
    REQUIRE(is_fundamental_discriminant(dk));
  for (i64 dk : {-1, -2, -5, -6, -9, -12, -16, -25, 5, 0})
    REQUIRE_FALSE(is_fundamental_discriminant(dk));
}

TEST_CASE("cartan_params two-case rule", "[stdgroups]") {
  CartanParams p1 = cartan_params(-8, 1, 8);  // D = -8 = 0 mod 4
  REQUIRE(p1.delta == ((-2 % 8) + 8) % 8);
  REQUIRE(p1.phi == 0);

  CartanParams p2 = cartan_params(-7, 1, 14);  // D = -7 = 1 mod 4, n even
  REQUIRE(p2.delta == ((-2 % 14) + 14) % 14);
  REQUIRE(p2.phi == 1);

  CartanParams p3 = cartan_params(-7, 1, 7);  // D = 1 mod 4, n odd: 4^{-1} = 2
  REQUIRE(p3.delta == 0);  // -7 * 2 = -14 = 0 mod 7
  REQUIRE(p3.phi == 0);

  // Conductor scaling: D = -4*9 = 0 mod 4.
  CartanParams p4 = cartan_params(-4, 3, 5);
  REQUIRE(p4.delta == ((-9 % 5) + 5) % 5);
  REQUIRE(p4.phi == 0);

  REQUIRE_THROWS_AS(cartan_params(-5, 1, 8), ValidationError);
  REQUIRE_THROWS_AS(cartan_params(-8, 0, 8), ValidationError);
}

TEST_CASE("cartan_group orders", "[stdgroups]") {
  CartanParams p;
  p.n = 3;
  p.delta = ((-1 % 3) + 3) % 3;
  p.phi = 0;
  REQUIRE(cartan_group(p).order() == 8);  // a^2+b^2 != 0 mod 3

  p.n = 8;
  p.delta = ((-2 % 8) + 8) % 8;
  REQUIRE(cartan_group(p).order() == 32);

  p.n = 5;
  p.delta = 1;
  REQUIRE(cartan_group(p).order() == 16);  // split type: (5-1)^2

  // Direct-enumeration oracle at n = 8, delta = -2: count units of the norm form.
  u64 expected = 0;
  for (i64 a = 0; a < 8; ++a)
    for (i64 b = 0; b < 8; ++b)
      if (std::gcd(((a * a + 2 * b * b) % 8 + 8) % 8, static_cast<i64>(8)) == 1) ++expected;
  p.n = 8;
  p.delta = 6;
  REQUIRE(cartan_group(p).order() == expected);
}

TEST_CASE("cartan_normalizer", "[stdgroups]") {
  REQUIRE(cartan_normalizer(cartan_params(-8, 1, 8)).order() == 64);

  CartanParams p;
  p.n = 3;
  p.delta = 2;
  p.phi = 0;
  REQUIRE(cartan_normalizer(p).order() == 16);

  // Mod 2, the extra generator collapses into the Cartan; the normalizer is
  // the order-2 group {I, [[0,1],[1,0]]}.
  CartanParams p2;
  p2.n = 2;
  p2.delta = 1;
  p2.phi = 0;
  FiniteMatrixGroup N2 = cartan_normalizer(p2);
  REQUIRE(N2.order() == 2);
  REQUIRE(N2.contains(ResidueMatrix(2, 0, 1, 1, 0)));

  // phi != 0 case: N contains gamma = [[-1,0],[phi,1]].
  CartanParams p14 = cartan_params(-7, 1, 14);
  FiniteMatrixGroup C14 = cartan_group(p14);
  FiniteMatrixGroup N14 = cartan_normalizer(p14);
  REQUIRE(N14.order() == 2 * C14.order());
  REQUIRE(N14.contains(ResidueMatrix(14, -1, 0, 1, 1)));
}

TEST_CASE("CM Cartan at inert prime is conjugate to the nonsplit Cartan", "[stdgroups]") {
  // Delta_K = -8 is a nonresidue mod 5, and 5 does not divide Delta_K*f.
  CartanParams p = cartan_params(-8, 1, 5);
  FiniteMatrixGroup C = cartan_group(p);
  FiniteMatrixGroup Cn = standard_subgroup(StandardLabel::Cn, 5);
  REQUIRE(C.order() == Cn.order());
  REQUIRE(fingerprint(C) == fingerprint(Cn));
  REQUIRE(are_conjugate_subgroups(full_gl2(5), C, Cn));
}

TEST_CASE("CRT multiplicativity of CM Cartan orders", "[stdgroups]") {
  // C_{delta,phi}(mn) has order |C(m)| * |C(n)| for coprime m, n.
  CartanParams p15 = cartan_params(-8, 1, 15);
  CartanParams p3 = cartan_params(-8, 1, 3);
  CartanParams p5 = cartan_params(-8, 1, 5);
  REQUIRE(cartan_group(p15).order() == cartan_group(p3).order() * cartan_group(p5).order());

  CartanParams p12 = cartan_params(-7, 1, 12);
  CartanParams p4 = cartan_params(-7, 1, 4);
  CartanParams q3 = cartan_params(-7, 1, 3);
  REQUIRE(cartan_group(p12).order() == cartan_group(p4).order() * cartan_group(q3).order());
}
