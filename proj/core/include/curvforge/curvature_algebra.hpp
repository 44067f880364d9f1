#pragma once

#include "curvforge/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace curvforge {

// Dense bilinear form on an m-dimensional space, row-major, 0-based.
class BilinearForm {
 public:
  explicit BilinearForm(int dim);

  int dim() const { return dim_; }
  const Rational& at(int i, int j) const { return entries_[i * dim_ + j]; }
  Rational& at(int i, int j) { return entries_[i * dim_ + j]; }

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

 private:
  int dim_;
  std::vector<Rational> entries_;
};

BilinearForm operator+(const BilinearForm& a, const BilinearForm& b);
BilinearForm operator-(const BilinearForm& a, const BilinearForm& b);
BilinearForm operator*(const Rational& c, const BilinearForm& a);
BilinearForm transpose(const BilinearForm& a);

// Symmetric and antisymmetric parts, in that order.
std::pair<BilinearForm, BilinearForm> split_bilinear(const BilinearForm& theta);

// Generalized algebraic curvature operator: A[i][j][k][l] is the component
// of A(e_i, e_j) e_k along e_l. Entries satisfy, exactly,
//   antisymmetry     A[i][j][k][l] == -A[j][i][k][l]
//   first Bianchi    A[i][j][k][l] + A[j][k][i][l] + A[k][i][j][l] == 0
// and the constructor refuses anything else, so holding a CurvatureOp is
// proof of both identities.
class CurvatureOp {
 public:
  // Row-major m^4 entries, index (((i*m)+j)*m+k)*m+l. Throws
  // std::invalid_argument when either identity fails; use validate_curvature
  // to obtain a witness instead of an exception.
  CurvatureOp(int dim, std::vector<Rational> entries);

  static CurvatureOp zero(int dim);

  int dim() const { return dim_; }
  const Rational& at(int i, int j, int k, int l) const {
    return entries_[flat(i, j, k, l)];
  }
  std::span<const Rational> entries() const { return entries_; }
  bool is_zero() const;

  friend bool operator==(const CurvatureOp&, const CurvatureOp&) = default;

 private:
  std::size_t flat(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }

  int dim_;
  std::vector<Rational> entries_;
};

CurvatureOp operator+(const CurvatureOp& a, const CurvatureOp& b);
CurvatureOp operator-(const CurvatureOp& a, const CurvatureOp& b);
CurvatureOp operator*(const Rational& c, const CurvatureOp& a);

// First raw entry breaking a curvature identity, in scan order over
// (i,j,k,l): `residual` is A[i][j][k][l] + A[j][i][k][l] for antisymmetry,
// the cyclic sum for first Bianchi.
struct SymmetryViolation {
  enum class Identity { antisymmetry, first_bianchi };

  Identity identity;
  std::array<int, 4> index;
  Rational residual;
};

// Checks raw m^4 entries against both identities and either wraps them into
// a CurvatureOp or reports the first violation.
std::variant<CurvatureOp, SymmetryViolation> validate_curvature(
    int dim, std::span<const Rational> raw);

// Projection of antisymmetric raw entries onto the first-Bianchi kernel:
// A - (A[i][j][k][l] + A[j][k][i][l] + A[k][i][j][l]) / 3. Throws
// std::invalid_argument when the input is not antisymmetric in (i,j).
CurvatureOp bianchi_project(int dim, std::span<const Rational> raw);

// Ricci trace rho(A)[j][k] = sum_i A[i][j][k][i].
BilinearForm ricci(const CurvatureOp& a);

// H(Theta)[i][j][k][l] =
//   (Theta[i][j] - Theta[j][i]) delta(k,l)
//   + Theta[i][k] delta(j,l) - Theta[j][k] delta(i,l).
// Satisfies rho(H(Theta))[j][k] = Theta[k][j] - m Theta[j][k]; injective for
// dim >= 3.
CurvatureOp h_map(const BilinearForm& theta);

// Ricci-flat projection
//   P(A) = A + H(rho_s(A))/(m-1) + H(rho_a(A))/(m+1),
// the component of A with vanishing Ricci trace. Requires dim >= 2 (dim >= 3
// for the antisymmetric correction to be meaningful; at dim <= 2 throws).
CurvatureOp weyl_project(const CurvatureOp& a);

struct DecompositionTriple {
  CurvatureOp weyl;
  BilinearForm ricci_sym;
  BilinearForm ricci_alt;
};

// A |-> (P(A), rho_s(A), rho_a(A)). Inverse: recompose.
DecompositionTriple decompose(const CurvatureOp& a);
CurvatureOp recompose(const DecompositionTriple& parts);

struct ComponentDimensions {
  long weyl;
  long ricci_sym;
  long ricci_alt;
  long total;  // dimension of the full space of curvature operators
};

// Dimensions of the three summands at the given dim, from the closed forms
//   total = m^2 (m^2 - 1) / 3,    sym = m(m+1)/2,    alt = m(m-1)/2,
//   weyl  = total - sym - alt = m^2 (m^2 - 4) / 3,
// cross-checked against the rank of an explicit spanning set; throws
// std::logic_error if the two disagree. Requires dim >= 3.
ComponentDimensions component_dimensions(int dim);

struct ComponentMask {
  bool weyl = false;
  bool ricci_sym = false;
  bool ricci_alt = false;
};

// Deterministic pseudo-random operator with small rational entries whose
// decomposition is supported exactly on the masked components: unmasked
// components are projected away, and the draw is repeated (a bounded number
// of times) until every masked component is nonzero. An empty mask yields
// zero.
CurvatureOp random_curvature(std::uint64_t seed, int dim, ComponentMask mask);

}  // namespace curvforge
