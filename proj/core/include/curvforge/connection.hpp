#pragma once

#include "curvforge/curvature_algebra.hpp"
#include "curvforge/jet.hpp"
#include "curvforge/rational.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace curvforge {

// m x m matrix of jets in m coordinates, all sharing one truncation order.
class JetBilinearForm {
 public:
  JetBilinearForm(int dim, int order);  // zero entries

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Jet& at(int i, int j) const { return entries_[i * dim_ + j]; }
  void set(int i, int j, Jet value);  // enforces the shared shape

  bool is_zero_through(int degree) const;
  bool is_zero() const;

  friend bool operator==(const JetBilinearForm&, const JetBilinearForm&);

 private:
  int dim_;
  int order_;
  std::vector<Jet> entries_;
};

std::pair<JetBilinearForm, JetBilinearForm> split_jet_form(
    const JetBilinearForm& theta);

// One-form with jet coefficients: entries_[i] multiplies dz_i.
class OneFormField {
 public:
  OneFormField(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Jet& at(int i) const { return entries_[i]; }
  void set(int i, Jet value);

  bool is_zero() const;

 private:
  int dim_;
  int order_;
  std::vector<Jet> entries_;
};

// Antisymmetric two-form with jet coefficients. set(i, j, v) with i != j
// writes both slots; the diagonal stays zero.
class TwoFormField {
 public:
  TwoFormField(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Jet& at(int i, int j) const { return entries_[i * dim_ + j]; }
  void set(int i, int j, Jet value);

  bool is_zero_through(int degree) const;
  bool is_zero() const;

  friend bool operator==(const TwoFormField&, const TwoFormField&);

 private:
  int dim_;
  int order_;
  std::vector<Jet> entries_;
};

TwoFormField operator*(const Rational& c, const TwoFormField& w);

// Torsion-free connection on a coordinate ball: Christoffel symbols
// gamma[i][j][k] for Gamma_ij^k with jet entries, symmetric in the two
// lower indices.
class Connection {
 public:
  // gamma is the full m^3 array, index (i*m + j)*m + k. The constructor
  // checks the shape and the lower-index symmetry.
  Connection(int dim, int order, std::vector<Jet> gamma);

  static Connection flat(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Jet& christoffel(int i, int j, int k) const {
    return gamma_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }

  friend bool operator==(const Connection&, const Connection&);

 private:
  int dim_;
  int order_;
  std::vector<Jet> gamma_;
};

Connection operator+(const Connection& a, const Connection& b);

// Curvature of a connection, R[i][j][k][l] with jet entries, trustworthy
// through valid_order only. Entries are antisymmetric in (i,j) exactly and
// satisfy the first Bianchi identity on every stored coefficient; the
// constructor checks both.
class CurvatureField {
 public:
  CurvatureField(int dim, int valid_order, std::vector<Jet> entries);

  int dim() const { return dim_; }
  int valid_order() const { return valid_order_; }
  const Jet& at(int i, int j, int k, int l) const {
    return entries_[((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) *
                        dim_ +
                    l];
  }

  bool is_zero_through(int degree) const;
  bool is_zero() const;

  friend bool operator==(const CurvatureField&, const CurvatureField&);

 private:
  int dim_;
  int valid_order_;
  std::vector<Jet> entries_;
};

CurvatureField operator+(const CurvatureField& a, const CurvatureField& b);
CurvatureField operator-(const CurvatureField& a, const CurvatureField& b);
CurvatureField operator*(const Rational& c, const CurvatureField& a);

// Covariant derivative of a curvature field (or the residual of an identity
// in the same shape): entry (i,j,k,l,s) holds the s-derivative slot.
class CovariantCurvature {
 public:
  CovariantCurvature(int dim, int valid_order, std::vector<Jet> entries);

  int dim() const { return dim_; }
  int valid_order() const { return valid_order_; }
  const Jet& at(int i, int j, int k, int l, int s) const {
    return entries_[(((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) *
                         dim_ +
                     l) *
                        dim_ +
                    s];
  }

  bool is_zero_through(int degree) const;
  bool is_zero() const;

 private:
  int dim_;
  int valid_order_;
  std::vector<Jet> entries_;
};

// First nonzero coefficient of a jet-valued tensor, located by tensor index
// (scan order: lexicographic over the index tuple) and monomial.
struct CoefficientWitness {
  std::vector<int> index;
  std::vector<int> exponents;
  Rational value;
};

std::optional<CoefficientWitness> first_nonzero(const OneFormField& w);
std::optional<CoefficientWitness> first_nonzero(const TwoFormField& w);
std::optional<CoefficientWitness> first_nonzero(const JetBilinearForm& w);
std::optional<CoefficientWitness> first_nonzero(const CurvatureField& w);

// R[i][j][k][l] = d_i Gamma_jk^l - d_j Gamma_ik^l
//                 + sum_n (Gamma_in^l Gamma_jk^n - Gamma_jn^l Gamma_ik^n),
// valid through order() - 1.
CurvatureField curvature(const Connection& nabla);

// Evaluation of a curvature field at a point (the origin shortcut reads the
// constant coefficients). Either way the result is a valid CurvatureOp.
CurvatureOp curvature_at_origin(const CurvatureField& r);
CurvatureOp curvature_at(const CurvatureField& r, const JetPoint& point);

// rho[j][k] = sum_i R[i][j][k][i]
JetBilinearForm ricci_field(const CurvatureField& r);

// Tr[i][j] = sum_k R[i][j][k][k]
TwoFormField trace_two_form(const CurvatureField& r);

// omega_i = sum_j Gamma_ij^j
OneFormField trace_one_form(const Connection& nabla);

// Exterior derivative with the wedge-coefficient normalization:
// (d theta)[i][j] = (d_i theta_j - d_j theta_i) / 2, so that
// trace_two_form(curvature(nabla)) == 2 * d_one_form(trace_one_form(nabla)).
TwoFormField d_one_form(const OneFormField& theta);

// Witness that d(trace_one_form) != 0: its first nonzero coefficient.
struct NotClosed {
  int i;
  int j;
  std::vector<int> exponents;
  Rational value;
};

// When the trace one-form is closed, the potential Phi with Phi(0) = 0 and
// d_i Phi = omega_i through order() - 1, found degree by degree with the
// radial homotopy Phi = sum_d (1/d) * homogeneous_part(sum_i z_i omega_i, d).
// The parallel volume form is then exp(Phi) dz_1 ^ ... ^ dz_m.
std::variant<Jet, NotClosed> volume_potential(const Connection& nabla);

// (3,1)-tensor rule, differentiation slot s:
//   R[i][j][k][l; s] = d_s R[i][j][k][l] + Gamma_sn^l R[i][j][k][n]
//                      - Gamma_si^n R[n][j][k][l] - Gamma_sj^n R[i][n][k][l]
//                      - Gamma_sk^n R[i][j][n][l]
CovariantCurvature covariant_derivative_curvature(const Connection& nabla,
                                                  const CurvatureField& r);

// Cyclic sum of the covariant derivative over the slots (i, j, s); vanishes
// through its valid order for every torsion-free connection.
CovariantCurvature second_bianchi_residual(const Connection& nabla);

// H applied coefficientwise to a jet bilinear form.
CurvatureField h_map_field(const JetBilinearForm& theta);

// Ricci-flat projection applied coefficientwise; zero through the valid
// order exactly when the connection is projectively flat at jet level.
CurvatureField weyl_project_field(const CurvatureField& r);

// Gamma'[i][j][k] = Gamma[i][j][k] + theta_i delta_j^k + theta_j delta_i^k.
// Leaves weyl_project_field(curvature(.)) unchanged through the valid order.
Connection projective_perturb(const Connection& nabla,
                              const OneFormField& theta);

}  // namespace curvforge
