#include "curvforge/curvature_algebra.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace curvforge {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::size_t flat4(int m, int i, int j, int k, int l) {
  return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
}

std::optional<SymmetryViolation> find_violation(int m,
                                                std::span<const Rational> raw) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Rational r(raw[flat4(m, i, j, k, l)] + raw[flat4(m, j, i, k, l)]);
          if (sgn(r) != 0) {
            return SymmetryViolation{SymmetryViolation::Identity::antisymmetry,
                                     {i, j, k, l}, std::move(r)};
          }
        }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Rational r(raw[flat4(m, i, j, k, l)] + raw[flat4(m, j, k, i, l)] +
                     raw[flat4(m, k, i, j, l)]);
          if (sgn(r) != 0) {
            return SymmetryViolation{SymmetryViolation::Identity::first_bianchi,
                                     {i, j, k, l}, std::move(r)};
          }
        }
  return std::nullopt;
}

std::string violation_message(const SymmetryViolation& v) {
  const char* which =
      v.identity == SymmetryViolation::Identity::antisymmetry
          ? "antisymmetry"
          : "first Bianchi identity";
  return std::string("curvature ") + which + " fails at (" +
         std::to_string(v.index[0] + 1) + "," + std::to_string(v.index[1] + 1) +
         "," + std::to_string(v.index[2] + 1) + "," +
         std::to_string(v.index[3] + 1) + "), residual " + to_string(v.residual);
}

}  // namespace

BilinearForm::BilinearForm(int dim) : dim_(dim) {
  require(dim >= 1, "BilinearForm dimension must be positive");
  entries_.resize(static_cast<std::size_t>(dim) * dim);
}

bool BilinearForm::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& e) { return sgn(e) == 0; });
}

bool BilinearForm::is_symmetric() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool BilinearForm::is_antisymmetric() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      Rational r(at(i, j) + at(j, i));
      if (sgn(r) != 0) return false;
    }
  return true;
}

BilinearForm operator+(const BilinearForm& a, const BilinearForm& b) {
  require(a.dim() == b.dim(), "bilinear form dimensions differ");
  BilinearForm out(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

BilinearForm operator-(const BilinearForm& a, const BilinearForm& b) {
  require(a.dim() == b.dim(), "bilinear form dimensions differ");
  BilinearForm out(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

BilinearForm operator*(const Rational& c, const BilinearForm& a) {
  BilinearForm out(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = c * a.at(i, j);
  return out;
}

BilinearForm transpose(const BilinearForm& a) {
  BilinearForm out(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(j, i);
  return out;
}

std::pair<BilinearForm, BilinearForm> split_bilinear(const BilinearForm& theta) {
  const Rational half(1, 2);
  BilinearForm sym(theta.dim()), alt(theta.dim());
  for (int i = 0; i < theta.dim(); ++i)
    for (int j = 0; j < theta.dim(); ++j) {
      sym.at(i, j) = half * (theta.at(i, j) + theta.at(j, i));
      alt.at(i, j) = half * (theta.at(i, j) - theta.at(j, i));
    }
  return {std::move(sym), std::move(alt)};
}

CurvatureOp::CurvatureOp(int dim, std::vector<Rational> entries)
    : dim_(dim), entries_(std::move(entries)) {
  require(dim >= 1, "CurvatureOp dimension must be positive");
  const std::size_t n = static_cast<std::size_t>(dim) * dim * dim * dim;
  require(entries_.size() == n, "CurvatureOp needs dim^4 entries");
  if (auto v = find_violation(dim_, entries_)) {
    throw std::invalid_argument(violation_message(*v));
  }
}

CurvatureOp CurvatureOp::zero(int dim) {
  require(dim >= 1, "CurvatureOp dimension must be positive");
  const std::size_t n = static_cast<std::size_t>(dim) * dim * dim * dim;
  return CurvatureOp(dim, std::vector<Rational>(n));
}

bool CurvatureOp::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& e) { return sgn(e) == 0; });
}

CurvatureOp operator+(const CurvatureOp& a, const CurvatureOp& b) {
  require(a.dim() == b.dim(), "curvature operator dimensions differ");
  std::vector<Rational> out(a.entries().size());
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = a.entries()[n] + b.entries()[n];
  return CurvatureOp(a.dim(), std::move(out));
}

CurvatureOp operator-(const CurvatureOp& a, const CurvatureOp& b) {
  require(a.dim() == b.dim(), "curvature operator dimensions differ");
  std::vector<Rational> out(a.entries().size());
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = a.entries()[n] - b.entries()[n];
  return CurvatureOp(a.dim(), std::move(out));
}

CurvatureOp operator*(const Rational& c, const CurvatureOp& a) {
  std::vector<Rational> out(a.entries().size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = c * a.entries()[n];
  return CurvatureOp(a.dim(), std::move(out));
}

std::variant<CurvatureOp, SymmetryViolation> validate_curvature(
    int dim, std::span<const Rational> raw) {
  require(dim >= 1, "dimension must be positive");
  const std::size_t n = static_cast<std::size_t>(dim) * dim * dim * dim;
  require(raw.size() == n, "expected dim^4 entries");
  if (auto v = find_violation(dim, raw)) return std::move(*v);
  return CurvatureOp(dim, std::vector<Rational>(raw.begin(), raw.end()));
}

CurvatureOp bianchi_project(int dim, std::span<const Rational> raw) {
  require(dim >= 1, "dimension must be positive");
  const std::size_t n = static_cast<std::size_t>(dim) * dim * dim * dim;
  require(raw.size() == n, "expected dim^4 entries");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          Rational r(raw[flat4(dim, i, j, k, l)] +
                     raw[flat4(dim, j, i, k, l)]);
          require(sgn(r) == 0, "bianchi_project input must be antisymmetric");
        }
  const Rational third(1, 3);
  std::vector<Rational> out(n);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          out[flat4(dim, i, j, k, l)] =
              raw[flat4(dim, i, j, k, l)] -
              third * (raw[flat4(dim, i, j, k, l)] +
                       raw[flat4(dim, j, k, i, l)] +
                       raw[flat4(dim, k, i, j, l)]);
        }
  return CurvatureOp(dim, std::move(out));
}

BilinearForm ricci(const CurvatureOp& a) {
  const int m = a.dim();
  BilinearForm rho(m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      Rational s;
      for (int i = 0; i < m; ++i) s += a.at(i, j, k, i);
      rho.at(j, k) = std::move(s);
    }
  return rho;
}

CurvatureOp h_map(const BilinearForm& theta) {
  const int m = theta.dim();
  std::vector<Rational> h(static_cast<std::size_t>(m) * m * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Rational v;
          if (k == l) v += theta.at(i, j) - theta.at(j, i);
          if (j == l) v += theta.at(i, k);
          if (i == l) v -= theta.at(j, k);
          h[flat4(m, i, j, k, l)] = std::move(v);
        }
  return CurvatureOp(m, std::move(h));
}

CurvatureOp weyl_project(const CurvatureOp& a) {
  require(a.dim() >= 3, "weyl_project requires dim >= 3");
  auto [s, t] = split_bilinear(ricci(a));
  return a + Rational(1, a.dim() - 1) * h_map(s) +
         Rational(1, a.dim() + 1) * h_map(t);
}

DecompositionTriple decompose(const CurvatureOp& a) {
  require(a.dim() >= 3, "decompose requires dim >= 3");
  auto [s, t] = split_bilinear(ricci(a));
  CurvatureOp w = a + Rational(1, a.dim() - 1) * h_map(s) +
                  Rational(1, a.dim() + 1) * h_map(t);
  return DecompositionTriple{std::move(w), std::move(s), std::move(t)};
}

CurvatureOp recompose(const DecompositionTriple& parts) {
  const int m = parts.weyl.dim();
  require(parts.ricci_sym.dim() == m && parts.ricci_alt.dim() == m,
          "decomposition parts have mismatched dimensions");
  require(parts.ricci_sym.is_symmetric(),
          "ricci_sym part must be symmetric");
  require(parts.ricci_alt.is_antisymmetric(),
          "ricci_alt part must be antisymmetric");
  return parts.weyl - Rational(1, m - 1) * h_map(parts.ricci_sym) -
         Rational(1, m + 1) * h_map(parts.ricci_alt);
}

namespace {

// Incremental reduced row echelon basis over the rationals; used only to
// cross-check the closed-form dimension count.
class RowReducer {
 public:
  explicit RowReducer(std::size_t width) : width_(width) {}

  std::size_t rank() const { return rows_.size(); }

  // Reduces `row` against the basis and inserts the remainder when nonzero.
  // Returns true when the row enlarged the basis.
  bool absorb(std::vector<Rational> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivot_[r];
      if (sgn(row[p]) == 0) continue;
      const Rational factor = row[p];
      const auto& basis = rows_[r];
      for (std::size_t k = p; k < width_; ++k) {
        if (sgn(basis[k]) != 0) row[k] -= factor * basis[k];
      }
    }
    std::size_t p = 0;
    while (p < width_ && sgn(row[p]) == 0) ++p;
    if (p == width_) return false;
    const Rational inv = Rational(1) / row[p];
    for (std::size_t k = p; k < width_; ++k) {
      if (sgn(row[k]) != 0) row[k] *= inv;
    }
    const auto it = std::lower_bound(pivot_.begin(), pivot_.end(), p);
    const std::size_t pos = static_cast<std::size_t>(it - pivot_.begin());
    pivot_.insert(it, p);
    rows_.insert(rows_.begin() + pos, std::move(row));
    // Clear the new pivot column from the rest of the basis so that every
    // row keeps zeros at all pivot columns; absorb relies on that.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == pos) continue;
      const Rational c = rows_[r][p];
      if (sgn(c) == 0) continue;
      for (std::size_t k = p; k < width_; ++k) {
        if (sgn(rows_[pos][k]) != 0) rows_[r][k] -= c * rows_[pos][k];
      }
    }
    return true;
  }

 private:
  std::size_t width_;
  std::vector<std::size_t> pivot_;
  std::vector<std::vector<Rational>> rows_;
};

// Antisymmetry in (i,j) makes the i<j slots a faithful coordinate system;
// compressing keeps the elimination width down.
std::size_t pair_index(int m, int i, int j) {
  return static_cast<std::size_t>(i) * (2 * m - i - 1) / 2 + (j - i - 1);
}

std::vector<Rational> compress_antisymmetric(int m,
                                             std::span<const Rational> full) {
  const std::size_t pairs = static_cast<std::size_t>(m) * (m - 1) / 2;
  std::vector<Rational> row(pairs * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          row[(pair_index(m, i, j) * m + k) * m + l] =
              full[flat4(m, i, j, k, l)];
        }
  return row;
}

}  // namespace

ComponentDimensions component_dimensions(int dim) {
  require(dim >= 3, "component_dimensions requires dim >= 3");
  const long m = dim;
  const ComponentDimensions formula{m * m * (m * m - 4) / 3, m * (m + 1) / 2,
                                    m * (m - 1) / 2, m * m * (m * m - 1) / 3};

  const std::size_t n = static_cast<std::size_t>(dim) * dim * dim * dim;
  const std::size_t width =
      static_cast<std::size_t>(dim) * (dim - 1) / 2 * dim * dim;
  const Rational third(1, 3);

  RowReducer total(width), weyl(width), sym(width), alt(width);

  // Span the whole operator space by the Bianchi projections of the
  // antisymmetrized coordinate tensors, and its trace-free summand by their
  // Ricci-flat projections.
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d) {
          std::vector<Rational> e(n);
          e[flat4(dim, a, b, c, d)] = 1;
          e[flat4(dim, b, a, c, d)] = -1;
          std::vector<Rational> lam(n);
          for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
              for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l) {
                  lam[flat4(dim, i, j, k, l)] =
                      e[flat4(dim, i, j, k, l)] -
                      third * (e[flat4(dim, i, j, k, l)] +
                               e[flat4(dim, j, k, i, l)] +
                               e[flat4(dim, k, i, j, l)]);
                }
          total.absorb(compress_antisymmetric(dim, lam));
          const CurvatureOp projected =
              weyl_project(CurvatureOp(dim, std::move(lam)));
          weyl.absorb(compress_antisymmetric(dim, projected.entries()));
        }

  // The two Ricci summands are the images of H on symmetric and
  // antisymmetric forms.
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      BilinearForm theta(dim);
      theta.at(a, b) = 1;
      theta.at(b, a) = 1;
      sym.absorb(compress_antisymmetric(dim, h_map(theta).entries()));
    }
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      BilinearForm theta(dim);
      theta.at(a, b) = 1;
      theta.at(b, a) = -1;
      alt.absorb(compress_antisymmetric(dim, h_map(theta).entries()));
    }

  const bool match = total.rank() == static_cast<std::size_t>(formula.total) &&
                     weyl.rank() == static_cast<std::size_t>(formula.weyl) &&
                     sym.rank() == static_cast<std::size_t>(formula.ricci_sym) &&
                     alt.rank() == static_cast<std::size_t>(formula.ricci_alt);
  if (!match) {
    throw std::logic_error(
        "component dimension rank check failed at dim " + std::to_string(dim) +
        ": ranks (" + std::to_string(weyl.rank()) + "," +
        std::to_string(sym.rank()) + "," + std::to_string(alt.rank()) + "," +
        std::to_string(total.rank()) + ")");
  }
  return formula;
}

CurvatureOp random_curvature(std::uint64_t seed, int dim, ComponentMask mask) {
  require(dim >= 3, "random_curvature requires dim >= 3");
  if (!mask.weyl && !mask.ricci_sym && !mask.ricci_alt) {
    return CurvatureOp::zero(dim);
  }
  std::mt19937_64 rng(seed);
  const std::size_t n = static_cast<std::size_t>(dim) * dim * dim * dim;
  // rng() % k rather than a distribution: the raw mt19937_64 stream is
  // pinned by the standard, so outputs are identical across platforms.
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<long> draw(n);
    for (auto& d : draw) d = static_cast<long>(rng() % 7) - 3;
    std::vector<Rational> raw(n);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            raw[flat4(dim, i, j, k, l)] =
                draw[flat4(dim, i, j, k, l)] - draw[flat4(dim, j, i, k, l)];
          }
    DecompositionTriple parts = decompose(bianchi_project(dim, raw));
    if ((mask.weyl && parts.weyl.is_zero()) ||
        (mask.ricci_sym && parts.ricci_sym.is_zero()) ||
        (mask.ricci_alt && parts.ricci_alt.is_zero())) {
      continue;
    }
    if (!mask.weyl) parts.weyl = CurvatureOp::zero(dim);
    if (!mask.ricci_sym) parts.ricci_sym = BilinearForm(dim);
    if (!mask.ricci_alt) parts.ricci_alt = BilinearForm(dim);
    return recompose(parts);
  }
  throw std::logic_error("random_curvature could not populate the mask");
}

}  // namespace curvforge
