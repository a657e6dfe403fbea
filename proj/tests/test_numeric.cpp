/// @file test_numeric.cpp
/// @brief Unit tests for the exact arithmetic helpers.

#include <catch2/catch_amalgamated.hpp>

#include "tanglekit/numeric.hpp"

using namespace tanglekit;

TEST_CASE("primes_up_to matches a naive sieve", "[numeric]") {
  auto ps = primes_up_to(100);
  REQUIRE(ps.size() == 25);
  REQUIRE(ps.front() == 2);
  REQUIRE(ps.back() == 97);
  // Independent check: trial division.
  for (i64 p : ps) {
    for (i64 d = 2; d * d <= p; ++d) REQUIRE(p % d != 0);
  }
  REQUIRE(primes_up_to(1).empty());
}

TEST_CASE("is_prime_u64 agrees with trial division below 10^4", "[numeric]") {
  auto ps = primes_up_to(10000);
  std::set<i64> pset(ps.begin(), ps.end());
  for (i64 n = 0; n <= 10000; ++n) {
    REQUIRE(is_prime_u64(static_cast<u64>(n)) == (pset.count(n) > 0));
  }
  REQUIRE(is_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
  REQUIRE_FALSE(is_prime(Int("170141183460469231731687303715884105725")));
}

TEST_CASE("factorize recovers known factorizations", "[numeric]") {
  auto f = factorize(Int(52272));  // 2^4 * 3 * 33^2 = 2^4 * 3^3 * 11^2
  Int back = 1;
  for (const auto& [p, e] : f) {
    REQUIRE(is_prime(p));
    for (int i = 0; i < e; ++i) back *= p;
  }
  REQUIRE(back == 52272);

  auto g = factorize(Int("600851475143"));
  REQUIRE(g.size() == 4);
  REQUIRE(g.back().first == 6857);

  REQUIRE_THROWS_AS(factorize(Int(0)), ValidationError);
}

TEST_CASE("squarefree parts and square classes", "[numeric]") {
  REQUIRE(squarefree_part(Int(12)) == 3);
  REQUIRE(squarefree_part(Int(-12)) == -3);
  REQUIRE(squarefree_part(Int(49)) == 1);
  REQUIRE(squarefree_part(Int(52272)) == 3);
  REQUIRE(squarefree_part(Rat(52, 5)) == 65);  // 52*5 = 4*65
  REQUIRE(squarefree_part(Rat(-2)) == -2);
  REQUIRE(is_square(Int(144)));
  REQUIRE_FALSE(is_square(Int(-4)));
  REQUIRE(is_square(Rat(49, 64)));
  REQUIRE_FALSE(is_square(Rat(49, 63)));
  REQUIRE(sqrt_exact(Int(1 << 20)) == 1024);
  REQUIRE_THROWS_AS(sqrt_exact(Int(2)), StructuralError);
}

TEST_CASE("modular helpers", "[numeric]") {
  REQUIRE(pow_mod(3, 100, 101) == 1);  // Fermat
  REQUIRE(inv_mod(3, 7) == 5);
  REQUIRE_THROWS_AS(inv_mod(2, 4), ValidationError);
  REQUIRE(crt_pair(2, 3, 3, 5) == 8);
  REQUIRE(crt_pair(1, 4, 2, 9) == 29);
  // Legendre: squares mod 7 are {1,2,4}.
  REQUIRE(legendre(2, 7) == 1);
  REQUIRE(legendre(3, 7) == -1);
  REQUIRE(legendre(14, 7) == 0);
  // Independent check against direct square search mod 19.
  for (i64 a = 1; a < 19; ++a) {
    bool sq = false;
    for (i64 x = 1; x < 19; ++x)
      if ((x * x) % 19 == a) sq = true;
    REQUIRE(legendre(a, 19) == (sq ? 1 : -1));
  }
}

TEST_CASE("divisors, phi, valuation, binomial", "[numeric]") {
  REQUIRE(divisors_of(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
  REQUIRE(divisors_of(1) == std::vector<i64>{1});
  REQUIRE(euler_phi(1) == 1);
  REQUIRE(euler_phi(8) == 4);
  REQUIRE(euler_phi(15) == 8);
  REQUIRE(valuation(Int(48), Int(2)) == 4);
  REQUIRE(valuation(Int(-27), Int(3)) == 3);
  REQUIRE(binomial(5, 2) == 10);
  REQUIRE(binomial(52, 26) == Int("495918532948104"));
}

TEST_CASE("rational string round trip", "[numeric]") {
  REQUIRE(rat_to_string(Rat(-3, 4)) == "-3/4");
  REQUIRE(rat_to_string(Rat(7)) == "7");
  REQUIRE(rat_from_string("-3/4") == Rat(-3, 4));
  REQUIRE(rat_from_string("20") == Rat(20));
  REQUIRE(rat_from_string("6/4") == Rat(3, 2));
  REQUIRE_THROWS_AS(rat_from_string("1/0"), ValidationError);
  REQUIRE_THROWS_AS(rat_from_string("x"), ValidationError);
}
