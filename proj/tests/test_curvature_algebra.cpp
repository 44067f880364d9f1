#include <doctest.h>

#include <curvforge/curvature_algebra.hpp>
#include <curvforge/rational.hpp>

#include <array>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

using curvforge::BilinearForm;
using curvforge::bianchi_project;
using curvforge::ComponentDimensions;
using curvforge::ComponentMask;
using curvforge::component_dimensions;
using curvforge::CurvatureOp;
using curvforge::decompose;
using curvforge::DecompositionTriple;
using curvforge::h_map;
using curvforge::random_curvature;
using curvforge::Rational;
using curvforge::recompose;
using curvforge::ricci;
using curvforge::split_bilinear;
using curvforge::SymmetryViolation;
using curvforge::transpose;
using curvforge::validate_curvature;
using curvforge::weyl_project;

namespace {

std::size_t flat4(int m, int i, int j, int k, int l) {
  return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
}

BilinearForm random_form(std::mt19937_64& rng, int m) {
  BilinearForm theta(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      theta.at(i, j) = Rational(static_cast<long>(rng() % 9) - 4);
  return theta;
}

// Gaussian elimination over the rationals, written independently of the
// library's rank machinery so the dimension check has a second opinion.
long nullity(std::vector<std::vector<Rational>> rows, std::size_t width) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = Rational(Rational(1) / rows[rank][col]);
    for (std::size_t c = col; c < width; ++c) rows[rank][c] *= inv;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col];
      for (std::size_t c = col; c < width; ++c)
        rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return static_cast<long>(width) - static_cast<long>(rank);
}

}  // namespace

TEST_CASE("bilinear form splitting") {
  std::mt19937_64 rng(2);
  const BilinearForm theta = random_form(rng, 4);
  const auto [sym, alt] = split_bilinear(theta);
  CHECK(sym.is_symmetric());
  CHECK(alt.is_antisymmetric());
  CHECK(sym + alt == theta);
  CHECK(transpose(theta) == sym - alt);
  CHECK_FALSE(theta.is_zero());
  CHECK(BilinearForm(4).is_zero());
}

TEST_CASE("h_map of a rank-one symmetric form") {
  BilinearForm theta(3);
  theta.at(0, 0) = 1;
  const CurvatureOp h = h_map(theta);
  std::vector<Rational> expected(81);
  expected[flat4(3, 0, 1, 0, 1)] = 1;
  expected[flat4(3, 0, 2, 0, 2)] = 1;
  expected[flat4(3, 1, 0, 0, 1)] = -1;
  expected[flat4(3, 2, 0, 0, 2)] = -1;
  for (std::size_t n = 0; n < expected.size(); ++n)
    CHECK(h.entries()[n] == expected[n]);
  const BilinearForm rho = ricci(h);
  CHECK(rho.at(0, 0) == Rational(-2));
  CHECK(rho.at(0, 1) == Rational(0));
  CHECK(rho.at(1, 1) == Rational(0));
}

TEST_CASE("h_map of a rank-one antisymmetric form") {
  BilinearForm theta(3);
  theta.at(0, 1) = 1;
  theta.at(1, 0) = -1;
  const CurvatureOp h = h_map(theta);
  std::vector<Rational> expected(81);
  expected[flat4(3, 0, 1, 0, 0)] = 3;
  expected[flat4(3, 1, 0, 0, 0)] = -3;
  expected[flat4(3, 0, 1, 1, 1)] = 3;
  expected[flat4(3, 1, 0, 1, 1)] = -3;
  expected[flat4(3, 0, 1, 2, 2)] = 2;
  expected[flat4(3, 1, 0, 2, 2)] = -2;
  expected[flat4(3, 0, 2, 1, 2)] = 1;
  expected[flat4(3, 2, 0, 1, 2)] = -1;
  expected[flat4(3, 1, 2, 0, 2)] = -1;
  expected[flat4(3, 2, 1, 0, 2)] = 1;
  for (std::size_t n = 0; n < expected.size(); ++n)
    CHECK(h.entries()[n] == expected[n]);
  const BilinearForm rho = ricci(h);
  CHECK(rho.at(0, 1) == Rational(-4));
  CHECK(rho.at(1, 0) == Rational(4));
}

TEST_CASE("ricci of h_map law") {
  std::mt19937_64 rng(17);
  for (int m = 3; m <= 5; ++m) {
    for (int round = 0; round < 5; ++round) {
      const BilinearForm theta = random_form(rng, m);
      const BilinearForm rho = ricci(h_map(theta));
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          CHECK(rho.at(j, k) == Rational(theta.at(k, j) - m * theta.at(j, k)));
    }
  }
}

TEST_CASE("curvature validation witnesses") {
  SUBCASE("antisymmetry failure") {
    std::vector<Rational> raw(81);
    raw[flat4(3, 0, 0, 0, 0)] = 1;
    const auto result = validate_curvature(3, raw);
    REQUIRE(std::holds_alternative<SymmetryViolation>(result));
    const auto& v = std::get<SymmetryViolation>(result);
    CHECK(v.identity == SymmetryViolation::Identity::antisymmetry);
    CHECK(v.index == std::array<int, 4>{0, 0, 0, 0});
    CHECK(v.residual == Rational(2));
    CHECK_THROWS_AS(CurvatureOp(3, raw), std::invalid_argument);
  }
  SUBCASE("first Bianchi failure") {
    std::vector<Rational> raw(81);
    raw[flat4(3, 0, 1, 2, 0)] = 1;
    raw[flat4(3, 1, 0, 2, 0)] = -1;
    const auto result = validate_curvature(3, raw);
    REQUIRE(std::holds_alternative<SymmetryViolation>(result));
    const auto& v = std::get<SymmetryViolation>(result);
    CHECK(v.identity == SymmetryViolation::Identity::first_bianchi);
    CHECK(v.index == std::array<int, 4>{0, 1, 2, 0});
    CHECK(v.residual == Rational(1));
    CHECK_THROWS_AS(CurvatureOp(3, raw), std::invalid_argument);
  }
  SUBCASE("valid entries wrap") {
    std::mt19937_64 rng(5);
    const auto result = validate_curvature(3, h_map(random_form(rng, 3)).entries());
    CHECK(std::holds_alternative<CurvatureOp>(result));
  }
}

TEST_CASE("bianchi projection") {
  std::mt19937_64 rng(29);
  const int m = 3;
  // antisymmetrized random entries
  std::vector<Rational> raw(81);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const Rational c(static_cast<long>(rng() % 9) - 4);
          raw[flat4(m, i, j, k, l)] = c;
          raw[flat4(m, j, i, k, l)] = -c;
        }
  const CurvatureOp once = bianchi_project(m, raw);
  const CurvatureOp twice = bianchi_project(m, once.entries());
  CHECK(once == twice);

  // already-valid input is a fixed point
  const CurvatureOp h = h_map(random_form(rng, m));
  CHECK(bianchi_project(m, h.entries()) == h);

  // non-antisymmetric input is refused
  std::vector<Rational> bad(81);
  bad[flat4(m, 0, 0, 1, 1)] = 1;
  CHECK_THROWS_AS(bianchi_project(m, bad), std::invalid_argument);
}

TEST_CASE("weyl projection and decomposition") {
  for (int m = 3; m <= 5; ++m) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const CurvatureOp a =
          random_curvature(seed, m, ComponentMask{true, true, true});
      const CurvatureOp p = weyl_project(a);
      CHECK(weyl_project(p) == p);
      CHECK(ricci(p).is_zero());
      const DecompositionTriple parts = decompose(a);
      CHECK(parts.weyl == p);
      CHECK(parts.ricci_sym.is_symmetric());
      CHECK(parts.ricci_alt.is_antisymmetric());
      CHECK(recompose(parts) == a);
      // decompose recovers exactly what recompose assembles
      const CurvatureOp b =
          recompose(DecompositionTriple{p, BilinearForm(m), parts.ricci_alt});
      const DecompositionTriple back = decompose(b);
      CHECK(back.weyl == p);
      CHECK(back.ricci_sym.is_zero());
      CHECK(back.ricci_alt == parts.ricci_alt);
    }
  }
  // the H image carries no trace-free component
  std::mt19937_64 rng(31);
  const auto [sym, alt] = split_bilinear(random_form(rng, 4));
  CHECK(weyl_project(h_map(sym)).is_zero());
  CHECK(weyl_project(h_map(alt)).is_zero());
  CHECK_THROWS_AS(weyl_project(CurvatureOp::zero(2)), std::invalid_argument);
}

TEST_CASE("component dimensions") {
  const ComponentDimensions d3 = component_dimensions(3);
  CHECK(d3.weyl == 15);
  CHECK(d3.ricci_sym == 6);
  CHECK(d3.ricci_alt == 3);
  CHECK(d3.total == 24);
  const ComponentDimensions d4 = component_dimensions(4);
  CHECK(d4.weyl == 64);
  CHECK(d4.ricci_sym == 10);
  CHECK(d4.ricci_alt == 6);
  CHECK(d4.total == 80);
  CHECK_THROWS_AS(component_dimensions(2), std::invalid_argument);
}

TEST_CASE("total dimension agrees with a direct nullspace count") {
  // Solution space of { A_ijkl + A_jikl = 0, cyclic sum = 0 } inside the full
  // m^4 coordinate space, eliminated from scratch.
  const int m = 3;
  const std::size_t width = 81;
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          std::vector<Rational> row(width);
          row[flat4(m, i, j, k, l)] += 1;
          row[flat4(m, j, i, k, l)] += 1;
          rows.push_back(std::move(row));
        }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          std::vector<Rational> row(width);
          row[flat4(m, i, j, k, l)] += 1;
          row[flat4(m, j, k, i, l)] += 1;
          row[flat4(m, k, i, j, l)] += 1;
          rows.push_back(std::move(row));
        }
  CHECK(nullity(std::move(rows), width) == component_dimensions(3).total);
}

TEST_CASE("random curvature masks") {
  const int m = 3;
  SUBCASE("deterministic in the seed") {
    const ComponentMask full{true, true, true};
    CHECK(random_curvature(42, m, full) == random_curvature(42, m, full));
    CHECK_FALSE(random_curvature(1, m, full) == random_curvature(2, m, full));
  }
  SUBCASE("support matches the mask exactly") {
    for (int bits = 0; bits < 8; ++bits) {
      const ComponentMask mask{(bits & 1) != 0, (bits & 2) != 0,
                               (bits & 4) != 0};
      const CurvatureOp a = random_curvature(7 + bits, m, mask);
      if (bits == 0) {
        CHECK(a.is_zero());
        continue;
      }
      const DecompositionTriple parts = decompose(a);
      CHECK(parts.weyl.is_zero() == !mask.weyl);
      CHECK(parts.ricci_sym.is_zero() == !mask.ricci_sym);
      CHECK(parts.ricci_alt.is_zero() == !mask.ricci_alt);
    }
  }
}
