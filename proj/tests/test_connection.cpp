#include <doctest.h>

#include <curvforge/connection.hpp>
#include <curvforge/curvature_algebra.hpp>
#include <curvforge/jet.hpp>
#include <curvforge/rational.hpp>

#include <stdexcept>
#include <variant>
#include <vector>

using namespace curvforge;

namespace {

// Christoffel assembly with the lower-index symmetry written once.
struct GammaBuilder {
  int m;
  int order;
  std::vector<Jet> g;

  GammaBuilder(int m, int order)
      : m(m), order(order),
        g(static_cast<std::size_t>(m) * m * m, Jet(m, order)) {}

  void set(int i, int j, int k, Jet v) {
    g[(static_cast<std::size_t>(j) * m + i) * m + k] = v;
    g[(static_cast<std::size_t>(i) * m + j) * m + k] = std::move(v);
  }

  Connection build() const { return Connection(m, order, g); }
};

Jet var(int m, int order, int i) { return Jet::variable(m, order, i); }

// order-4, dim-3 connection with non-closed trace, used for identity tests
Connection generic_connection() {
  GammaBuilder b(3, 4);
  b.set(0, 0, 0, var(3, 4, 1) + var(3, 4, 0) * var(3, 4, 0));
  b.set(0, 1, 2, var(3, 4, 2));
  b.set(1, 1, 1, Jet::constant(3, 4, Rational(2)) + var(3, 4, 0) * var(3, 4, 2));
  b.set(1, 2, 0, var(3, 4, 0) - var(3, 4, 1));
  b.set(0, 2, 1, var(3, 4, 0) * var(3, 4, 1));
  b.set(2, 2, 2, Jet::monomial(3, 4, std::vector<int>{0, 3, 0}, Rational(1)));
  return b.build();
}

}  // namespace

TEST_CASE("flat connection") {
  const Connection flat = Connection::flat(3, 4);
  const CurvatureField r = curvature(flat);
  CHECK(r.valid_order() == 3);
  CHECK(r.is_zero());
  CHECK(trace_one_form(flat).is_zero());
  const auto phi = volume_potential(flat);
  REQUIRE(std::holds_alternative<Jet>(phi));
  CHECK(std::get<Jet>(phi).is_zero());
  CHECK(second_bianchi_residual(flat).is_zero());
}

TEST_CASE("curvature of a constant symbol") {
  GammaBuilder b(3, 3);
  b.set(0, 1, 0, Jet::constant(3, 3, Rational(1)));
  const Connection nabla = b.build();
  const CurvatureField r = curvature(nabla);
  CHECK(r.valid_order() == 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const Jet& entry = r.at(i, j, k, l);
          if (i == 1 && j == 0 && k == 1 && l == 0) {
            CHECK(entry == Jet::constant(3, 2, Rational(1)));
          } else if (i == 0 && j == 1 && k == 1 && l == 0) {
            CHECK(entry == Jet::constant(3, 2, Rational(-1)));
          } else {
            CHECK(entry.is_zero());
          }
        }
  // trace one-form is the constant dz_1 covector; its potential is z_1
  const auto phi = volume_potential(nabla);
  REQUIRE(std::holds_alternative<Jet>(phi));
  CHECK(std::get<Jet>(phi) == var(3, 3, 1));
}

TEST_CASE("connection constructor guards") {
  // lower-index symmetry
  std::vector<Jet> g(27, Jet(3, 2));
  g[(0 * 3 + 1) * 3 + 0] = var(3, 2, 0);
  CHECK_THROWS_AS(Connection(3, 2, std::move(g)), std::invalid_argument);
  // entry shape
  std::vector<Jet> wrong(27, Jet(3, 3));
  CHECK_THROWS_AS(Connection(3, 2, std::move(wrong)), std::invalid_argument);
  std::vector<Jet> count(26, Jet(3, 2));
  CHECK_THROWS_AS(Connection(3, 2, std::move(count)), std::invalid_argument);
}

TEST_CASE("curvature field constructor guards") {
  const int m = 3;
  std::vector<Jet> entries(81, Jet(m, 2));
  const auto slot = [m](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  };
  // antisymmetric in (i,j) but breaking the cyclic identity
  entries[slot(0, 1, 2, 0)] = var(m, 2, 0);
  entries[slot(1, 0, 2, 0)] = -var(m, 2, 0);
  CHECK_THROWS_AS(CurvatureField(m, 2, std::move(entries)),
                  std::invalid_argument);
  std::vector<Jet> skew(81, Jet(m, 2));
  skew[slot(0, 1, 0, 0)] = var(m, 2, 2);  // missing the mirrored entry
  CHECK_THROWS_AS(CurvatureField(m, 2, std::move(skew)),
                  std::invalid_argument);
}

TEST_CASE("two-form storage") {
  TwoFormField w(3, 2);
  w.set(0, 1, var(3, 2, 2));
  CHECK(w.at(0, 1) == var(3, 2, 2));
  CHECK(w.at(1, 0) == -var(3, 2, 2));
  CHECK(w.at(2, 2).is_zero());
  CHECK_THROWS_AS(w.set(1, 1, var(3, 2, 0)), std::invalid_argument);
  w.set(1, 1, Jet(3, 2));  // zero diagonal is allowed and a no-op
  CHECK_FALSE(w.is_zero());
  CHECK(w.is_zero_through(0));
  CHECK_FALSE(w.is_zero_through(1));
}

TEST_CASE("trace identities") {
  const Connection nabla = generic_connection();
  const CurvatureField r = curvature(nabla);

  SUBCASE("trace two-form against the Ricci field") {
    const TwoFormField tr = trace_two_form(r);
    const JetBilinearForm rho = ricci_field(r);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(tr.at(i, j) == rho.at(j, i) - rho.at(i, j));
  }

  SUBCASE("trace two-form is twice the curl of the trace one-form") {
    const TwoFormField lhs = trace_two_form(r);
    const TwoFormField rhs =
        Rational(2) * d_one_form(trace_one_form(nabla));
    CHECK_FALSE(lhs.is_zero());  // the fixture was chosen to make this real
    CHECK(lhs == rhs);
  }
}

TEST_CASE("second Bianchi residual vanishes") {
  CHECK(second_bianchi_residual(generic_connection()).is_zero());
}

TEST_CASE("curvature evaluation") {
  const CurvatureField r = curvature(generic_connection());
  const JetPoint origin{Rational(0), Rational(0), Rational(0)};
  CHECK(curvature_at(r, origin) == curvature_at_origin(r));
  // evaluating anywhere keeps the algebraic identities (the constructor of
  // the returned operator re-checks them)
  const JetPoint p{Rational(1), Rational(1, 2), Rational(-1)};
  const CurvatureOp at_p = curvature_at(r, p);
  CHECK(at_p.dim() == 3);
  CHECK_FALSE(at_p.is_zero());
}

TEST_CASE("exterior derivative of a one-form") {
  SUBCASE("frozen curl") {
    OneFormField theta(3, 3);
    theta.set(0, var(3, 3, 1));
    const TwoFormField d = d_one_form(theta);
    CHECK(d.order() == 2);
    CHECK(d.at(0, 1) == Jet::constant(3, 2, Rational(-1, 2)));
    CHECK(d.at(1, 0) == Jet::constant(3, 2, Rational(1, 2)));
    CHECK(d.at(0, 2).is_zero());
  }
  SUBCASE("gradients are closed") {
    // theta = d(z0 z1^2)
    OneFormField theta(3, 4);
    theta.set(0, var(3, 4, 1) * var(3, 4, 1));
    theta.set(1, Rational(2) * (var(3, 4, 0) * var(3, 4, 1)));
    CHECK(d_one_form(theta).is_zero());
  }
}

TEST_CASE("volume potential") {
  SUBCASE("closed trace") {
    GammaBuilder b(3, 3);
    b.set(0, 0, 0, var(3, 3, 0));
    const Connection nabla = b.build();
    const auto result = volume_potential(nabla);
    REQUIRE(std::holds_alternative<Jet>(result));
    const Jet& phi = std::get<Jet>(result);
    CHECK(phi == Rational(1, 2) * (var(3, 3, 0) * var(3, 3, 0)));
    CHECK(phi.coefficient(std::vector<int>{0, 0, 0}) == Rational(0));
    const OneFormField omega = trace_one_form(nabla);
    for (int i = 0; i < 3; ++i)
      CHECK(partial(phi, i) == omega.at(i).truncated(2));
  }
  SUBCASE("obstructed trace") {
    GammaBuilder b(3, 3);
    b.set(0, 0, 0, var(3, 3, 1));
    const auto result = volume_potential(b.build());
    REQUIRE(std::holds_alternative<NotClosed>(result));
    const NotClosed& witness = std::get<NotClosed>(result);
    CHECK(witness.i == 0);
    CHECK(witness.j == 1);
    CHECK(witness.exponents == std::vector<int>{0, 0, 0});
    CHECK(witness.value == Rational(-1, 2));
  }
}

TEST_CASE("first nonzero coefficient witnesses") {
  OneFormField w(3, 3);
  w.set(1, Rational(3) * (var(3, 3, 0) * var(3, 3, 0)) + var(3, 3, 2));
  const auto hit = first_nonzero(w);
  REQUIRE(hit.has_value());
  CHECK(hit->index == std::vector<int>{1});
  CHECK(hit->exponents == std::vector<int>{0, 0, 1});
  CHECK(hit->value == Rational(1));
  CHECK_FALSE(first_nonzero(OneFormField(3, 3)).has_value());
}

TEST_CASE("projective perturbation") {
  const Connection nabla = generic_connection();
  SUBCASE("zero perturbation is the identity") {
    CHECK(projective_perturb(nabla, OneFormField(3, 4)) == nabla);
  }
  SUBCASE("symbol shift formula") {
    OneFormField theta(3, 4);
    theta.set(0, var(3, 4, 1));
    theta.set(2, Jet::constant(3, 4, Rational(5)));
    const Connection moved = projective_perturb(nabla, theta);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          Jet expected = nabla.christoffel(i, j, k);
          if (j == k) expected = expected + theta.at(i);
          if (i == k) expected = expected + theta.at(j);
          CHECK(moved.christoffel(i, j, k) == expected);
        }
  }
  SUBCASE("order mismatch is refused") {
    CHECK_THROWS_AS(projective_perturb(nabla, OneFormField(3, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("h_map on jet forms matches the pointwise map") {
  JetBilinearForm theta(3, 2);
  BilinearForm constant(3);
  constant.at(0, 0) = 1;
  constant.at(0, 1) = -2;
  constant.at(2, 1) = Rational(1, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      theta.set(i, j, Jet::constant(3, 2, constant.at(i, j)));
  const CurvatureField h = h_map_field(theta);
  CHECK(curvature_at_origin(h) == h_map(constant));
}

TEST_CASE("covariant derivative truncation bookkeeping") {
  const Connection nabla = generic_connection();  // order 4
  const CurvatureField r = curvature(nabla);      // valid through 3
  const CovariantCurvature c = covariant_derivative_curvature(nabla, r);
  CHECK(c.valid_order() == 2);
  CHECK_FALSE(c.is_zero());
}
