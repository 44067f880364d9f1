#pragma once

#include "curvforge/connection.hpp"
#include "curvforge/curvature_algebra.hpp"
#include "curvforge/jet.hpp"

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace curvforge {

// Curvature splits as L(Gamma) + (1/2) Gamma * Gamma into a part linear in
// the Christoffel symbols and a symmetric bilinear cross term. Exposed
// separately so the degreewise realization below can accumulate curvature
// incrementally, and so that accumulation can be checked against the direct
// formula.
//
// curvature_linear_part: (d_i Gamma_jk^l - d_j Gamma_ik^l), valid order-1.
CurvatureField curvature_linear_part(const Connection& nabla);

// curvature_cross_term(a, b)[i][j][k][l] =
//   a_in^l b_jk^n + b_in^l a_jk^n - a_jn^l b_ik^n - b_jn^l a_ik^n,
// symmetric in (a, b); curvature(g) = linear_part(g) + cross(g, g) / 2.
CurvatureField curvature_cross_term(const Connection& a, const Connection& b);

// Linear realizer: Gamma_uv^l = (1/3) (A_wuv^l + A_wvu^l) z_w. The curvature
// at the origin is exactly A.
Connection realize_linear(const CurvatureOp& a, int order);

// Result of the constant-Ricci realization. gamma_layers[0] is the linear
// symbol above; each later layer is a homogeneous trace-free correction, and
// their lowest degrees strictly increase. connection is the sum of all
// layers.
struct RicciConstantResult {
  Connection connection;
  int iterations;                // number of correction layers applied
  int residual_cleared_through;  // order - 1 on success
  std::vector<Connection> gamma_layers;
};

// Builds a connection whose curvature has Ricci trace constantly equal to
// rho(A) through order-1 and equals A at the origin. Starts from
// realize_linear and cancels the symmetric Ricci residual one homogeneous
// degree at a time; the antisymmetric part needs no work because every
// correction is trace-free and the cross term has symmetric Ricci trace.
// Throws std::logic_error if the residual survives `order` rounds, which
// the degree argument rules out.
RicciConstantResult realize_ricci_constant(const CurvatureOp& a, int order);

// theta_j = sum_i z_i Theta[i][j]; Gamma_ij^k = theta_i d_j^k + theta_j d_i^k.
// Projectively flat by construction; curvature at the origin is h_map(Theta).
Connection realize_projectively_flat(const BilinearForm& theta, int order);

// Nonzero component of weyl_project(A), blocking a projectively flat
// realization.
struct WeylObstruction {
  std::array<int, 4> index;
  Rational value;
};

// Solves h_map(Theta) = A for Ricci-determined A (weyl_project(A) = 0) and
// delegates to realize_projectively_flat; otherwise reports the obstruction.
std::variant<Connection, WeylObstruction> realize_projectively_flat_from_A(
    const CurvatureOp& a, int order);

// Flatness audit for projectively flat, Ricci-antisymmetric connections.
//
// Hypotheses checked on the curvature field R (valid through V):
//   weyl_project_field(R) == 0   and   symmetric part of ricci_field(R) == 0.
// When either fails the verdict is obstruction_witness and
// hypothesis_failure carries the first offending coefficient.
//
// When both hold, omega = -ricci/(dim+1) reconstructs R exactly (checked;
// a mismatch is a std::logic_error since it contradicts the decomposition
// identity), nabla_omega is measured and reported, and flatness is certified
// through certified_order = floor((V-1)/2): the omega-squared step halves
// the order the truncation supports. Vanishing orders are measured, never
// deduced; a flat_through_order verdict with measured vanishing below the
// certified order is impossible and throws std::logic_error.
struct AuditReport {
  enum class Verdict { flat_through_order, obstruction_witness };
  enum class Hypothesis { projectively_flat, ricci_antisymmetric };
  struct HypothesisFailure {
    Hypothesis hypothesis;
    CoefficientWitness witness;
  };

  int valid_order;
  TwoFormField omega;
  int nabla_omega_checked_through;
  std::optional<CoefficientWitness> nabla_omega_first_nonzero;
  int omega_vanishes_through;      // -1 when omega has a constant term
  int curvature_vanishes_through;  // likewise for the curvature field
  int certified_order;             // -1 when nothing is certified
  Verdict verdict;
  std::optional<HypothesisFailure> hypothesis_failure;
};

AuditReport flatness_audit(const Connection& nabla);

}  // namespace curvforge
