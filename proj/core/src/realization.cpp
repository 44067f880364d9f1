#include "curvforge/realization.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace curvforge {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Re-homes a jet at a higher truncation order. Legitimate only for jets that
// are exact polynomials by construction (correction layers), not truncated
// approximations; hence local, not part of the Jet API.
Jet embed(const Jet& a, int order) {
  Jet out(a.vars(), order);
  for (const auto& term : a.terms()) {
    out = out + Jet::monomial(a.vars(), order, a.exponents(term), term.coeff);
  }
  return out;
}

}  // namespace

CurvatureField curvature_linear_part(const Connection& nabla) {
  const int m = nabla.dim();
  const int v = std::max(nabla.order() - 1, 0);
  std::vector<Jet> r(static_cast<std::size_t>(m) * m * m * m, Jet(m, v));
  const auto slot = [m](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Jet value = partial(nabla.christoffel(j, k, l), i) -
                      partial(nabla.christoffel(i, k, l), j);
          r[slot(j, i, k, l)] = -value;
          r[slot(i, j, k, l)] = std::move(value);
        }
  return CurvatureField(m, v, std::move(r));
}

CurvatureField curvature_cross_term(const Connection& a, const Connection& b) {
  require(a.dim() == b.dim() && a.order() == b.order(),
          "cross term needs connections of one shape");
  const int m = a.dim();
  const int d = a.order();
  const int v = std::max(d - 1, 0);
  std::vector<Jet> r(static_cast<std::size_t>(m) * m * m * m, Jet(m, v));
  const auto slot = [m](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Jet acc(m, d);
          for (int n = 0; n < m; ++n) {
            acc = acc + a.christoffel(i, n, l) * b.christoffel(j, k, n) +
                  b.christoffel(i, n, l) * a.christoffel(j, k, n) -
                  a.christoffel(j, n, l) * b.christoffel(i, k, n) -
                  b.christoffel(j, n, l) * a.christoffel(i, k, n);
          }
          Jet value = acc.truncated(v);
          r[slot(j, i, k, l)] = -value;
          r[slot(i, j, k, l)] = std::move(value);
        }
  return CurvatureField(m, v, std::move(r));
}

Connection realize_linear(const CurvatureOp& a, int order) {
  require(order >= 2, "realize_linear needs order >= 2");
  const int m = a.dim();
  const Rational third(1, 3);
  std::vector<Jet> gamma;
  gamma.reserve(static_cast<std::size_t>(m) * m * m);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      for (int l = 0; l < m; ++l) {
        Jet entry(m, order);
        for (int w = 0; w < m; ++w) {
          Rational c(third * (a.at(w, u, v, l) + a.at(w, v, u, l)));
          if (sgn(c) != 0) {
            entry = entry + c * Jet::variable(m, order, w);
          }
        }
        gamma.push_back(std::move(entry));
      }
  return Connection(m, order, std::move(gamma));
}

RicciConstantResult realize_ricci_constant(const CurvatureOp& a, int order) {
  require(a.dim() >= 3, "realize_ricci_constant requires dim >= 3");
  require(order >= 2, "realize_ricci_constant needs order >= 2");
  const int m = a.dim();
  const int v = order - 1;
  const Rational half(1, 2);

  Connection total = realize_linear(a, order);
  std::vector<Connection> layers{total};
  CurvatureField r = curvature_linear_part(total) +
                     half * curvature_cross_term(total, total);
  const BilinearForm target = split_bilinear(ricci(a)).first;

  int iterations = 0;
  while (true) {
    // symmetric Ricci residual of the accumulated curvature
    JetBilinearForm s(m, v);
    {
      auto [rho_sym, rho_alt] = split_jet_form(ricci_field(r));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          s.set(i, j, rho_sym.at(i, j) -
                          Jet::constant(m, v, target.at(i, j)));
        }
    }
    if (s.is_zero()) break;
    if (iterations >= order) {
      throw std::logic_error(
          "constant-Ricci iteration failed to terminate; the degree argument "
          "rules this out");
    }

    int low = v + 1;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (auto d = s.at(i, j).lowest_degree()) low = std::min(low, *d);

    // One homogeneous layer: a trace-free correction whose linear-part Ricci
    // is exactly minus the degree-`low` residual slice.
    std::vector<Jet> gamma(static_cast<std::size_t>(m) * m * m,
                           Jet(m, order));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int k = 0;
        while (k == i || k == j) ++k;
        const Jet slice = embed(-homogeneous_part(s.at(i, j), low), order);
        gamma[(static_cast<std::size_t>(i) * m + j) * m + k] =
            antider(slice, k);
      }
    Connection layer(m, order, std::move(gamma));

    r = r + curvature_linear_part(layer) + curvature_cross_term(total, layer) +
        half * curvature_cross_term(layer, layer);
    total = total + layer;
    layers.push_back(std::move(layer));
    ++iterations;
  }

  return RicciConstantResult{std::move(total), iterations, v,
                             std::move(layers)};
}

Connection realize_projectively_flat(const BilinearForm& theta, int order) {
  require(theta.dim() >= 3, "realize_projectively_flat requires dim >= 3");
  require(order >= 3, "realize_projectively_flat needs order >= 3");
  const int m = theta.dim();
  OneFormField one_form(m, order);
  for (int j = 0; j < m; ++j) {
    Jet entry(m, order);
    for (int i = 0; i < m; ++i) {
      if (sgn(theta.at(i, j)) != 0) {
        entry = entry + theta.at(i, j) * Jet::variable(m, order, i);
      }
    }
    one_form.set(j, std::move(entry));
  }
  return projective_perturb(Connection::flat(m, order), one_form);
}

std::variant<Connection, WeylObstruction> realize_projectively_flat_from_A(
    const CurvatureOp& a, int order) {
  const int m = a.dim();
  const CurvatureOp w = weyl_project(a);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          if (sgn(w.at(i, j, k, l)) != 0) {
            return WeylObstruction{{i, j, k, l}, w.at(i, j, k, l)};
          }
        }
  auto [rho_sym, rho_alt] = split_bilinear(ricci(a));
  const BilinearForm theta = Rational(-1, m - 1) * rho_sym +
                             Rational(-1, m + 1) * rho_alt;
  return realize_projectively_flat(theta, order);
}

namespace {

// Largest degree through which every entry vanishes, capped at the stored
// order; -1 when some entry has a constant term.
int vanishing_order(const std::vector<const Jet*>& entries, int cap) {
  int low = cap + 1;
  for (const Jet* jet : entries) {
    if (auto d = jet->lowest_degree()) low = std::min(low, *d);
  }
  return std::min(low - 1, cap);
}

}  // namespace

AuditReport flatness_audit(const Connection& nabla) {
  require(nabla.dim() >= 3, "flatness_audit requires dim >= 3");
  const int m = nabla.dim();
  const CurvatureField r = curvature(nabla);
  const int valid = r.valid_order();

  auto [rho_sym, rho_alt] = split_jet_form(ricci_field(r));
  const CurvatureField projected = weyl_project_field(r);

  std::optional<AuditReport::HypothesisFailure> failure;
  if (auto witness = first_nonzero(projected)) {
    failure = AuditReport::HypothesisFailure{
        AuditReport::Hypothesis::projectively_flat, std::move(*witness)};
  } else if (auto rho_witness = first_nonzero(rho_sym)) {
    failure = AuditReport::HypothesisFailure{
        AuditReport::Hypothesis::ricci_antisymmetric, std::move(*rho_witness)};
  }

  TwoFormField omega(m, valid);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      omega.set(i, j, Rational(-1, m + 1) * rho_alt.at(i, j));
    }

  // nabla omega by the (0,2) rule, valid one order below the curvature
  const int checked = std::max(std::min(valid - 1, nabla.order()), 0);
  std::optional<CoefficientWitness> nabla_omega_witness;
  {
    const int t = std::min(valid, nabla.order());
    std::vector<Jet> gm;
    gm.reserve(static_cast<std::size_t>(m) * m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          gm.push_back(nabla.christoffel(i, j, k).truncated(t));
    const auto g = [&](int i, int j, int k) -> const Jet& {
      return gm[(static_cast<std::size_t>(i) * m + j) * m + k];
    };
    std::vector<Jet> wt;
    wt.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) wt.push_back(omega.at(i, j).truncated(t));
    const auto w = [&](int i, int j) -> const Jet& { return wt[i * m + j]; };

    for (int i = 0; i < m && !nabla_omega_witness; ++i)
      for (int j = 0; j < m && !nabla_omega_witness; ++j)
        for (int l = 0; l < m && !nabla_omega_witness; ++l) {
          Jet corr(m, t);
          for (int n = 0; n < m; ++n) {
            corr = corr + g(l, i, n) * w(n, j) + g(l, j, n) * w(i, n);
          }
          const Jet value = partial(omega.at(i, j), l).truncated(checked) -
                            corr.truncated(checked);
          if (!value.is_zero()) {
            const auto& term = value.terms().front();
            nabla_omega_witness = CoefficientWitness{
                {i, j, l}, value.exponents(term), term.coeff};
          }
        }
  }

  std::vector<const Jet*> omega_entries;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) omega_entries.push_back(&omega.at(i, j));
  std::vector<const Jet*> r_entries;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) r_entries.push_back(&r.at(i, j, k, l));
  const int omega_through = vanishing_order(omega_entries, valid);
  const int r_through = vanishing_order(r_entries, valid);

  const int certified = failure ? -1 : (valid >= 1 ? (valid - 1) / 2 : -1);

  if (!failure) {
    // With both hypotheses holding, omega must rebuild the curvature exactly
    // (the decomposition identity) ...
    JetBilinearForm omega_form(m, valid);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) omega_form.set(i, j, omega.at(i, j));
    if (!(h_map_field(omega_form) == r)) {
      throw std::logic_error("audit reconstruction identity failed");
    }
    // ... the quadratic identity must hold through the derivation's order ...
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            const Jet q = Rational(4) * (omega.at(i, j) * omega.at(k, l)) +
                          Rational(2) * (omega.at(i, k) * omega.at(j, l)) -
                          Rational(2) * (omega.at(i, l) * omega.at(j, k));
            if (!q.is_zero_through(checked)) {
              throw std::logic_error(
                  "audit quadratic identity failed through the checked order");
            }
          }
    // ... and the measured vanishing can not fall below the certified order.
    if (certified >= 0 &&
        (omega_through < certified || r_through < certified)) {
      throw std::logic_error(
          "audit measured vanishing contradicts the certified order");
    }
  }

  return AuditReport{valid,
                     std::move(omega),
                     checked,
                     std::move(nabla_omega_witness),
                     omega_through,
                     r_through,
                     certified,
                     failure ? AuditReport::Verdict::obstruction_witness
                             : AuditReport::Verdict::flat_through_order,
                     std::move(failure)};
}

}  // namespace curvforge
