#include "curvforge/connection.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace curvforge {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_entry_shape(const Jet& jet, int dim, int order, const char* what) {
  require(jet.vars() == dim && jet.order() == order,
          std::string(what) + " entry has shape (" +
              std::to_string(jet.vars()) + "," + std::to_string(jet.order()) +
              "), expected (" + std::to_string(dim) + "," +
              std::to_string(order) + ")");
}

std::vector<Jet> zero_entries(int dim, int order, std::size_t count) {
  return std::vector<Jet>(count, Jet(dim, order));
}

bool all_zero_through(const std::vector<Jet>& entries, int degree) {
  return std::all_of(entries.begin(), entries.end(),
                     [&](const Jet& j) { return j.is_zero_through(degree); });
}

bool all_zero(const std::vector<Jet>& entries) {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Jet& j) { return j.is_zero(); });
}

}  // namespace

JetBilinearForm::JetBilinearForm(int dim, int order)
    : dim_(dim),
      order_(order),
      entries_(zero_entries(dim, order, static_cast<std::size_t>(dim) * dim)) {
  require(dim >= 1, "JetBilinearForm dimension must be positive");
}

void JetBilinearForm::set(int i, int j, Jet value) {
  check_entry_shape(value, dim_, order_, "JetBilinearForm");
  entries_[i * dim_ + j] = std::move(value);
}

bool JetBilinearForm::is_zero_through(int degree) const {
  return all_zero_through(entries_, degree);
}

bool JetBilinearForm::is_zero() const { return all_zero(entries_); }

bool operator==(const JetBilinearForm& a, const JetBilinearForm& b) {
  return a.dim_ == b.dim_ && a.order_ == b.order_ && a.entries_ == b.entries_;
}

std::pair<JetBilinearForm, JetBilinearForm> split_jet_form(
    const JetBilinearForm& theta) {
  const Rational half(1, 2);
  JetBilinearForm sym(theta.dim(), theta.order());
  JetBilinearForm alt(theta.dim(), theta.order());
  for (int i = 0; i < theta.dim(); ++i)
    for (int j = 0; j < theta.dim(); ++j) {
      sym.set(i, j, half * (theta.at(i, j) + theta.at(j, i)));
      alt.set(i, j, half * (theta.at(i, j) - theta.at(j, i)));
    }
  return {std::move(sym), std::move(alt)};
}

OneFormField::OneFormField(int dim, int order)
    : dim_(dim),
      order_(order),
      entries_(zero_entries(dim, order, static_cast<std::size_t>(dim))) {
  require(dim >= 1, "OneFormField dimension must be positive");
}

void OneFormField::set(int i, Jet value) {
  check_entry_shape(value, dim_, order_, "OneFormField");
  entries_[i] = std::move(value);
}

bool OneFormField::is_zero() const { return all_zero(entries_); }

TwoFormField::TwoFormField(int dim, int order)
    : dim_(dim),
      order_(order),
      entries_(zero_entries(dim, order, static_cast<std::size_t>(dim) * dim)) {
  require(dim >= 1, "TwoFormField dimension must be positive");
}

void TwoFormField::set(int i, int j, Jet value) {
  check_entry_shape(value, dim_, order_, "TwoFormField");
  if (i == j) {
    require(value.is_zero(), "TwoFormField diagonal must stay zero");
    return;
  }
  entries_[j * dim_ + i] = -value;
  entries_[i * dim_ + j] = std::move(value);
}

bool TwoFormField::is_zero_through(int degree) const {
  return all_zero_through(entries_, degree);
}

bool TwoFormField::is_zero() const { return all_zero(entries_); }

bool operator==(const TwoFormField& a, const TwoFormField& b) {
  return a.dim_ == b.dim_ && a.order_ == b.order_ && a.entries_ == b.entries_;
}

TwoFormField operator*(const Rational& c, const TwoFormField& w) {
  TwoFormField out(w.dim(), w.order());
  for (int i = 0; i < w.dim(); ++i)
    for (int j = i + 1; j < w.dim(); ++j) out.set(i, j, c * w.at(i, j));
  return out;
}

Connection::Connection(int dim, int order, std::vector<Jet> gamma)
    : dim_(dim), order_(order), gamma_(std::move(gamma)) {
  require(dim >= 1, "Connection dimension must be positive");
  require(gamma_.size() == static_cast<std::size_t>(dim) * dim * dim,
          "Connection needs dim^3 Christoffel entries");
  for (const Jet& jet : gamma_) check_entry_shape(jet, dim, order, "Connection");
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        require(christoffel(i, j, k) == christoffel(j, i, k),
                "Christoffel symbols must be symmetric in the lower indices");
      }
}

Connection Connection::flat(int dim, int order) {
  return Connection(
      dim, order,
      zero_entries(dim, order, static_cast<std::size_t>(dim) * dim * dim));
}

bool operator==(const Connection& a, const Connection& b) {
  return a.dim_ == b.dim_ && a.order_ == b.order_ && a.gamma_ == b.gamma_;
}

Connection operator+(const Connection& a, const Connection& b) {
  require(a.dim() == b.dim() && a.order() == b.order(),
          "connection shapes differ");
  std::vector<Jet> gamma;
  gamma.reserve(static_cast<std::size_t>(a.dim()) * a.dim() * a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        gamma.push_back(a.christoffel(i, j, k) + b.christoffel(i, j, k));
  return Connection(a.dim(), a.order(), std::move(gamma));
}

CurvatureField::CurvatureField(int dim, int valid_order,
                               std::vector<Jet> entries)
    : dim_(dim), valid_order_(valid_order), entries_(std::move(entries)) {
  require(dim >= 1, "CurvatureField dimension must be positive");
  require(valid_order >= 0, "CurvatureField valid order must be nonnegative");
  require(entries_.size() ==
              static_cast<std::size_t>(dim) * dim * dim * dim,
          "CurvatureField needs dim^4 entries");
  for (const Jet& jet : entries_)
    check_entry_shape(jet, dim, valid_order, "CurvatureField");
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          require((at(i, j, k, l) + at(j, i, k, l)).is_zero(),
                  "curvature field must be antisymmetric in (i,j)");
        }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          require((at(i, j, k, l) + at(j, k, i, l) + at(k, i, j, l)).is_zero(),
                  "curvature field must satisfy the first Bianchi identity");
        }
}

bool CurvatureField::is_zero_through(int degree) const {
  return all_zero_through(entries_, degree);
}

bool CurvatureField::is_zero() const { return all_zero(entries_); }

bool operator==(const CurvatureField& a, const CurvatureField& b) {
  return a.dim_ == b.dim_ && a.valid_order_ == b.valid_order_ &&
         a.entries_ == b.entries_;
}

namespace {

void check_field_shapes(const CurvatureField& a, const CurvatureField& b) {
  require(a.dim() == b.dim() && a.valid_order() == b.valid_order(),
          "curvature field shapes differ");
}

template <typename Combine>
CurvatureField combine_fields(const CurvatureField& a, const CurvatureField& b,
                              Combine&& combine) {
  check_field_shapes(a, b);
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(a.dim()) * a.dim() * a.dim() * a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < a.dim(); ++l)
          out.push_back(combine(a.at(i, j, k, l), b.at(i, j, k, l)));
  return CurvatureField(a.dim(), a.valid_order(), std::move(out));
}

}  // namespace

CurvatureField operator+(const CurvatureField& a, const CurvatureField& b) {
  return combine_fields(a, b, [](const Jet& x, const Jet& y) { return x + y; });
}

CurvatureField operator-(const CurvatureField& a, const CurvatureField& b) {
  return combine_fields(a, b, [](const Jet& x, const Jet& y) { return x - y; });
}

CurvatureField operator*(const Rational& c, const CurvatureField& a) {
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(a.dim()) * a.dim() * a.dim() * a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < a.dim(); ++l) out.push_back(c * a.at(i, j, k, l));
  return CurvatureField(a.dim(), a.valid_order(), std::move(out));
}

CovariantCurvature::CovariantCurvature(int dim, int valid_order,
                                       std::vector<Jet> entries)
    : dim_(dim), valid_order_(valid_order), entries_(std::move(entries)) {
  require(dim >= 1, "CovariantCurvature dimension must be positive");
  require(valid_order >= 0,
          "CovariantCurvature valid order must be nonnegative");
  require(entries_.size() ==
              static_cast<std::size_t>(dim) * dim * dim * dim * dim,
          "CovariantCurvature needs dim^5 entries");
  for (const Jet& jet : entries_)
    check_entry_shape(jet, dim, valid_order, "CovariantCurvature");
}

bool CovariantCurvature::is_zero_through(int degree) const {
  return all_zero_through(entries_, degree);
}

bool CovariantCurvature::is_zero() const { return all_zero(entries_); }

namespace {

std::optional<CoefficientWitness> witness_from(const Jet& jet,
                                               std::vector<int> index) {
  if (jet.is_zero()) return std::nullopt;
  const auto& term = jet.terms().front();
  return CoefficientWitness{std::move(index), jet.exponents(term), term.coeff};
}

}  // namespace

std::optional<CoefficientWitness> first_nonzero(const OneFormField& w) {
  for (int i = 0; i < w.dim(); ++i)
    if (auto hit = witness_from(w.at(i), {i})) return hit;
  return std::nullopt;
}

std::optional<CoefficientWitness> first_nonzero(const TwoFormField& w) {
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j)
      if (auto hit = witness_from(w.at(i, j), {i, j})) return hit;
  return std::nullopt;
}

std::optional<CoefficientWitness> first_nonzero(const JetBilinearForm& w) {
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j)
      if (auto hit = witness_from(w.at(i, j), {i, j})) return hit;
  return std::nullopt;
}

std::optional<CoefficientWitness> first_nonzero(const CurvatureField& w) {
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j)
      for (int k = 0; k < w.dim(); ++k)
        for (int l = 0; l < w.dim(); ++l)
          if (auto hit = witness_from(w.at(i, j, k, l), {i, j, k, l}))
            return hit;
  return std::nullopt;
}

CurvatureField curvature(const Connection& nabla) {
  const int m = nabla.dim();
  const int d = nabla.order();
  const int v = std::max(d - 1, 0);
  std::vector<Jet> r(static_cast<std::size_t>(m) * m * m * m, Jet(m, v));
  const auto slot = [m](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Jet linear = partial(nabla.christoffel(j, k, l), i) -
                       partial(nabla.christoffel(i, k, l), j);
          Jet quad(m, d);
          for (int n = 0; n < m; ++n) {
            quad = quad +
                   nabla.christoffel(i, n, l) * nabla.christoffel(j, k, n) -
                   nabla.christoffel(j, n, l) * nabla.christoffel(i, k, n);
          }
          Jet value = linear + quad.truncated(v);
          r[slot(j, i, k, l)] = -value;
          r[slot(i, j, k, l)] = std::move(value);
        }
  return CurvatureField(m, v, std::move(r));
}

CurvatureOp curvature_at_origin(const CurvatureField& r) {
  const int m = r.dim();
  const std::vector<int> origin(m, 0);
  std::vector<Rational> entries;
  entries.reserve(static_cast<std::size_t>(m) * m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          entries.push_back(r.at(i, j, k, l).coefficient(origin));
  return CurvatureOp(m, std::move(entries));
}

CurvatureOp curvature_at(const CurvatureField& r, const JetPoint& point) {
  const int m = r.dim();
  std::vector<Rational> entries;
  entries.reserve(static_cast<std::size_t>(m) * m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          entries.push_back(eval(r.at(i, j, k, l), point));
  return CurvatureOp(m, std::move(entries));
}

JetBilinearForm ricci_field(const CurvatureField& r) {
  const int m = r.dim();
  JetBilinearForm rho(m, r.valid_order());
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      Jet s(m, r.valid_order());
      for (int i = 0; i < m; ++i) s = s + r.at(i, j, k, i);
      rho.set(j, k, std::move(s));
    }
  return rho;
}

TwoFormField trace_two_form(const CurvatureField& r) {
  const int m = r.dim();
  TwoFormField tr(m, r.valid_order());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Jet s(m, r.valid_order());
      for (int k = 0; k < m; ++k) s = s + r.at(i, j, k, k);
      tr.set(i, j, std::move(s));
    }
  return tr;
}

OneFormField trace_one_form(const Connection& nabla) {
  const int m = nabla.dim();
  OneFormField omega(m, nabla.order());
  for (int i = 0; i < m; ++i) {
    Jet s(m, nabla.order());
    for (int j = 0; j < m; ++j) s = s + nabla.christoffel(i, j, j);
    omega.set(i, std::move(s));
  }
  return omega;
}

TwoFormField d_one_form(const OneFormField& theta) {
  const int m = theta.dim();
  const int v = std::max(theta.order() - 1, 0);
  const Rational half(1, 2);
  TwoFormField d(m, v);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      d.set(i, j, half * (partial(theta.at(j), i) - partial(theta.at(i), j)));
    }
  return d;
}

std::variant<Jet, NotClosed> volume_potential(const Connection& nabla) {
  const OneFormField omega = trace_one_form(nabla);
  const TwoFormField closed_test = d_one_form(omega);
  if (!closed_test.is_zero()) {
    auto w = first_nonzero(closed_test);
    return NotClosed{w->index[0], w->index[1], std::move(w->exponents),
                     std::move(w->value)};
  }
  const int m = nabla.dim();
  const int d = nabla.order();
  Jet radial(m, d);
  for (int i = 0; i < m; ++i) {
    radial = radial + Jet::variable(m, d, i) * omega.at(i);
  }
  Jet phi(m, d);
  for (int degree = 1; degree <= d; ++degree) {
    phi = phi + Rational(1, degree) * homogeneous_part(radial, degree);
  }
  return phi;
}

CovariantCurvature covariant_derivative_curvature(const Connection& nabla,
                                                  const CurvatureField& r) {
  const int m = nabla.dim();
  require(r.dim() == m, "connection and curvature dimensions differ");
  const int t = std::min(nabla.order(), r.valid_order());
  const int w = std::max(std::min(r.valid_order() - 1, nabla.order()), 0);

  // shared truncations so every product is a legal same-order multiply
  std::vector<Jet> gm;
  gm.reserve(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        gm.push_back(nabla.christoffel(i, j, k).truncated(t));
  std::vector<Jet> rt;
  rt.reserve(static_cast<std::size_t>(m) * m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          rt.push_back(r.at(i, j, k, l).truncated(t));
  const auto g = [&](int i, int j, int k) -> const Jet& {
    return gm[(static_cast<std::size_t>(i) * m + j) * m + k];
  };
  const auto rr = [&](int i, int j, int k, int l) -> const Jet& {
    return rt[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l];
  };

  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(m) * m * m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          for (int s = 0; s < m; ++s) {
            Jet corr(m, t);
            for (int n = 0; n < m; ++n) {
              corr = corr + g(s, n, l) * rr(i, j, k, n) -
                     g(s, i, n) * rr(n, j, k, l) -
                     g(s, j, n) * rr(i, n, k, l) -
                     g(s, k, n) * rr(i, j, n, l);
            }
            out.push_back(partial(r.at(i, j, k, l), s).truncated(w) +
                          corr.truncated(w));
          }
  return CovariantCurvature(m, w, std::move(out));
}

CovariantCurvature second_bianchi_residual(const Connection& nabla) {
  const CovariantCurvature c =
      covariant_derivative_curvature(nabla, curvature(nabla));
  const int m = c.dim();
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(m) * m * m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          for (int s = 0; s < m; ++s) {
            out.push_back(c.at(i, j, k, l, s) + c.at(j, s, k, l, i) +
                          c.at(s, i, k, l, j));
          }
  return CovariantCurvature(m, c.valid_order(), std::move(out));
}

CurvatureField h_map_field(const JetBilinearForm& theta) {
  const int m = theta.dim();
  const int v = theta.order();
  std::vector<Jet> h;
  h.reserve(static_cast<std::size_t>(m) * m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Jet value(m, v);
          if (k == l) value = value + theta.at(i, j) - theta.at(j, i);
          if (j == l) value = value + theta.at(i, k);
          if (i == l) value = value - theta.at(j, k);
          h.push_back(std::move(value));
        }
  return CurvatureField(m, v, std::move(h));
}

CurvatureField weyl_project_field(const CurvatureField& r) {
  require(r.dim() >= 3, "weyl_project_field requires dim >= 3");
  auto [s, t] = split_jet_form(ricci_field(r));
  return r + Rational(1, r.dim() - 1) * h_map_field(s) +
         Rational(1, r.dim() + 1) * h_map_field(t);
}

Connection projective_perturb(const Connection& nabla,
                              const OneFormField& theta) {
  const int m = nabla.dim();
  require(theta.dim() == m, "perturbation dimension differs");
  require(theta.order() == nabla.order(),
          "perturbation order must match the connection order");
  std::vector<Jet> gamma;
  gamma.reserve(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        Jet value = nabla.christoffel(i, j, k);
        if (j == k) value = value + theta.at(i);
        if (i == k) value = value + theta.at(j);
        gamma.push_back(std::move(value));
      }
  return Connection(m, nabla.order(), std::move(gamma));
}

}  // namespace curvforge
