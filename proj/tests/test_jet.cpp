#include <doctest.h>

#include <curvforge/jet.hpp>
#include <curvforge/rational.hpp>

#include <random>
#include <stdexcept>
#include <vector>

using curvforge::antider;
using curvforge::eval;
using curvforge::homogeneous_part;
using curvforge::Jet;
using curvforge::JetPoint;
using curvforge::partial;
using curvforge::Rational;

namespace {

// Independent random jet for property tests; small integer coefficients.
Jet random_jet(std::mt19937_64& rng, int vars, int order, int terms) {
  Jet out(vars, order);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> exps(vars, 0);
    int budget = static_cast<int>(rng() % (order + 1));
    for (int v = 0; v < vars && budget > 0; ++v) {
      const int e = static_cast<int>(rng() % (budget + 1));
      exps[v] = e;
      budget -= e;
    }
    const long c = static_cast<long>(rng() % 11) - 5;
    out = out + Jet::monomial(vars, order, exps, Rational(c));
  }
  return out;
}

}  // namespace

TEST_CASE("monomial evaluation") {
  // z0^2 at (3,0,0) = 9
  const Jet sq = Jet::variable(3, 4, 0) * Jet::variable(3, 4, 0);
  CHECK(eval(sq, JetPoint{Rational(3), Rational(0), Rational(0)}) ==
        Rational(9));
  const Jet affine = Jet::constant(3, 4, Rational(1)) + Jet::variable(3, 4, 0);
  CHECK(homogeneous_part(affine, 0) == Jet::constant(3, 4, Rational(1)));
  CHECK(eval(affine, JetPoint{Rational(1, 2), Rational(9), Rational(-4)}) ==
        Rational(3, 2));
}

TEST_CASE("lowest degree") {
  const Jet z01 = Jet::variable(3, 4, 0) * Jet::variable(3, 4, 1);
  REQUIRE(z01.lowest_degree().has_value());
  CHECK(*z01.lowest_degree() == 2);
  CHECK_FALSE(Jet(3, 4).lowest_degree().has_value());
  CHECK(Jet(3, 4).is_zero());
  CHECK(z01.is_zero_through(1));
  CHECK_FALSE(z01.is_zero_through(2));
}

TEST_CASE("sum of homogeneous parts recovers the jet") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    const Jet a = random_jet(rng, 3, 5, 8);
    Jet sum(3, 5);
    for (int d = 0; d <= 5; ++d) sum = sum + homogeneous_part(a, d);
    CHECK(sum == a);
  }
}

TEST_CASE("ring laws modulo truncation") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 12; ++round) {
    const Jet a = random_jet(rng, 3, 5, 6);
    const Jet b = random_jet(rng, 3, 5, 6);
    const Jet c = random_jet(rng, 3, 5, 6);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (b + c) == (a + b) + c);
    CHECK(a - a == Jet(3, 5));
  }
}

TEST_CASE("graded product degree law") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 20; ++round) {
    const Jet a = random_jet(rng, 3, 6, 8);
    const Jet b = random_jet(rng, 3, 6, 8);
    for (int d1 = 0; d1 <= 3; ++d1)
      for (int d2 = 0; d2 <= 3; ++d2) {
        const Jet prod = homogeneous_part(a, d1) * homogeneous_part(b, d2);
        CHECK(prod == homogeneous_part(prod, d1 + d2));
      }
  }
}

TEST_CASE("truncating product forgets only high degrees") {
  std::mt19937_64 rng(3);
  const Jet a = random_jet(rng, 2, 6, 10);
  const Jet b = random_jet(rng, 2, 6, 10);
  const Jet full = a * b;
  const Jet low = a.truncated(3) * b.truncated(3);
  // degrees <= 3 agree: the dropped factors only feed higher degrees
  for (int d = 0; d <= 3; ++d) {
    CHECK(homogeneous_part(low, d) == homogeneous_part(full, d).truncated(3));
  }
}

TEST_CASE("partial then antider") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 3; ++k) {
    for (int round = 0; round < 10; ++round) {
      const Jet a = random_jet(rng, 3, 5, 8);
      CHECK(partial(antider(a, k), k) == a.truncated(4));
      const Jet low = random_jet(rng, 3, 5, 8).truncated(4);
      // jets that never reach the truncation order integrate losslessly
      Jet lifted(3, 5);
      for (const auto& term : low.terms()) {
        lifted = lifted + Jet::monomial(3, 5, low.exponents(term), term.coeff);
      }
      CHECK(partial(antider(lifted, k), k) == lifted.truncated(4));
    }
  }
}

TEST_CASE("antider output has no term constant in its variable") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 10; ++round) {
    const Jet a = random_jet(rng, 3, 5, 8);
    const Jet integrated = antider(a, 1);
    for (const auto& term : integrated.terms()) {
      CHECK(integrated.exponents(term)[1] >= 1);
    }
    CHECK(homogeneous_part(integrated, 0).is_zero());
  }
}

TEST_CASE("partial drops the trusted order") {
  std::mt19937_64 rng(1);
  const Jet a = random_jet(rng, 3, 5, 6);
  CHECK(partial(a, 0).order() == 4);
  CHECK(antider(a, 0).order() == 5);
}

TEST_CASE("strict shapes") {
  const Jet a(3, 5);
  const Jet b(3, 4);
  const Jet c(2, 5);
  CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
  CHECK_THROWS_AS((void)(a * c), std::invalid_argument);
  CHECK_THROWS_AS((void)a.truncated(6), std::invalid_argument);
  CHECK_THROWS_AS((void)Jet::monomial(3, 2, std::vector<int>{2, 1, 0},
                                      Rational(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)Jet::variable(3, 4, 3), std::invalid_argument);
  CHECK_THROWS_AS(Jet(11, 4), std::invalid_argument);
  CHECK_THROWS_AS(Jet(3, 64), std::invalid_argument);
}

TEST_CASE("coefficient lookup and exponent round-trip") {
  const std::vector<int> exps{1, 2, 0};
  const Jet a = Jet::monomial(3, 5, exps, Rational(7, 3));
  CHECK(a.coefficient(exps) == Rational(7, 3));
  CHECK(a.coefficient(std::vector<int>{0, 0, 0}) == Rational(0));
  REQUIRE(a.terms().size() == 1);
  CHECK(a.exponents(a.terms().front()) == exps);
  CHECK(a.terms().front().degree == 3);
}

TEST_CASE("terms are canonically ordered") {
  // insertion order must not matter
  Jet a(2, 4);
  a = a + Jet::monomial(2, 4, std::vector<int>{0, 2}, Rational(1));
  a = a + Jet::monomial(2, 4, std::vector<int>{1, 0}, Rational(2));
  a = a + Jet::monomial(2, 4, std::vector<int>{2, 0}, Rational(3));
  Jet b(2, 4);
  b = b + Jet::monomial(2, 4, std::vector<int>{2, 0}, Rational(3));
  b = b + Jet::monomial(2, 4, std::vector<int>{0, 2}, Rational(1));
  b = b + Jet::monomial(2, 4, std::vector<int>{1, 0}, Rational(2));
  CHECK(a == b);
  REQUIRE(a.terms().size() == 3);
  CHECK(a.terms()[0].degree == 1);  // z0
  // within a degree, ascending packed key: lower z0 power first
  CHECK(a.exponents(a.terms()[1]) == std::vector<int>{0, 2});
  CHECK(a.exponents(a.terms()[2]) == std::vector<int>{2, 0});
}

TEST_CASE("exact zero scrubbing") {
  const Jet z = Jet::variable(2, 3, 0);
  CHECK((z - z).terms().empty());
  CHECK((Rational(0) * z).terms().empty());
  const Jet cancel =
      Jet::monomial(2, 3, std::vector<int>{1, 1}, Rational(1, 3)) +
      Jet::monomial(2, 3, std::vector<int>{1, 1}, Rational(-1, 3));
  CHECK(cancel.is_zero());
}
