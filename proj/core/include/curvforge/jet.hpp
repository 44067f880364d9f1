#pragma once

#include "curvforge/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace curvforge {

// Polynomial over Rational in `vars` variables, truncated at total degree
// `order`: terms of higher degree are identically dropped, so a Jet stands
// for its polynomial only through that degree. Binary operations insist on
// matching (vars, order) pairs; crossing truncation levels is always an
// explicit `truncated` call at the use site, which keeps "valid through
// degree d" audits local.
//
// Internally a jet is a sorted sparse term list. Exponents pack into a
// 64-bit key, 6 bits per variable, variable 0 highest; terms sort by total
// degree first and key second, so a homogeneous slice is one contiguous run
// and serialization order is canonical.
class Jet {
 public:
  static constexpr int kMaxVars = 10;
  static constexpr int kMaxOrder = 63;

  struct Term {
    int degree;
    std::uint64_t key;
    Rational coeff;
  };

  Jet(int vars, int order);  // zero
  static Jet constant(int vars, int order, Rational value);
  static Jet variable(int vars, int order, int var);
  // Throws when the monomial degree exceeds `order`.
  static Jet monomial(int vars, int order, std::span<const int> exps,
                      Rational coeff);

  int vars() const { return vars_; }
  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<int> exponents(const Term& term) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_zero_through(int degree) const;
  std::optional<int> lowest_degree() const;
  Rational coefficient(std::span<const int> exps) const;

  // Lowers the truncation bound, discarding terms above it. `new_order`
  // must not exceed the current order: a jet carries no information there.
  Jet truncated(int new_order) const;

  friend bool operator==(const Jet&, const Jet&);

 private:
  struct Raw {};
  Jet(Raw, int vars, int order, std::vector<Term> terms);

  int vars_;
  int order_;
  std::vector<Term> terms_;

  friend Jet operator+(const Jet&, const Jet&);
  friend Jet operator-(const Jet&, const Jet&);
  friend Jet operator*(const Jet&, const Jet&);
  friend Jet operator*(const Rational&, const Jet&);
  friend Jet operator-(const Jet&);
  friend Jet partial(const Jet&, int var);
  friend Jet antider(const Jet&, int var);
  friend Jet homogeneous_part(const Jet&, int degree);
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);  // truncating product
Jet operator*(const Rational& c, const Jet& a);
Jet operator-(const Jet& a);

// d/dz_var. The result's order drops by one: differentiating a polynomial
// known through degree D pins it down only through degree D - 1.
Jet partial(const Jet& a, int var);

// Term-wise indefinite integral in z_var: multiplies each monomial by
// z_var / (e_var + 1). Keeps the order, dropping terms integrated past it.
Jet antider(const Jet& a, int var);

Jet homogeneous_part(const Jet& a, int degree);

using JetPoint = std::vector<Rational>;
Rational eval(const Jet& a, const JetPoint& point);

}  // namespace curvforge
