#include "curvforge/jet.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace curvforge {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

int shift_for(int var) { return 6 * (Jet::kMaxVars - 1 - var); }

std::uint64_t pack(std::span<const int> exps) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    key |= static_cast<std::uint64_t>(exps[i]) << shift_for(static_cast<int>(i));
  }
  return key;
}

int exponent_at(std::uint64_t key, int var) {
  return static_cast<int>((key >> shift_for(var)) & 0x3f);
}

bool term_less(const Jet::Term& a, const Jet::Term& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  return a.key < b.key;
}

// Sorts, merges duplicate monomials, and scrubs exact zeros.
std::vector<Jet::Term> normalize(std::vector<Jet::Term> ts) {
  std::sort(ts.begin(), ts.end(), term_less);
  std::vector<Jet::Term> out;
  out.reserve(ts.size());
  for (auto& t : ts) {
    if (!out.empty() && out.back().key == t.key) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Jet::Term& t) { return sgn(t.coeff) == 0; });
  return out;
}

void check_shape(int vars, int order) {
  require(vars >= 1 && vars <= Jet::kMaxVars,
          "jet needs between 1 and " + std::to_string(Jet::kMaxVars) +
              " variables");
  require(order >= 0 && order <= Jet::kMaxOrder,
          "jet order must lie in [0, " + std::to_string(Jet::kMaxOrder) + "]");
}

void check_same_shape(const Jet& a, const Jet& b) {
  require(a.vars() == b.vars() && a.order() == b.order(),
          "jet shapes differ: (" + std::to_string(a.vars()) + "," +
              std::to_string(a.order()) + ") vs (" + std::to_string(b.vars()) +
              "," + std::to_string(b.order()) + ")");
}

}  // namespace

Jet::Jet(int vars, int order) : vars_(vars), order_(order) {
  check_shape(vars, order);
}

Jet::Jet(Raw, int vars, int order, std::vector<Term> terms)
    : vars_(vars), order_(order), terms_(std::move(terms)) {
  assert(std::is_sorted(terms_.begin(), terms_.end(), term_less));
}

Jet Jet::constant(int vars, int order, Rational value) {
  Jet out(vars, order);
  if (sgn(value) != 0) out.terms_.push_back({0, 0, std::move(value)});
  return out;
}

Jet Jet::variable(int vars, int order, int var) {
  Jet out(vars, order);
  require(var >= 0 && var < vars, "variable index out of range");
  require(order >= 1, "a degree-1 monomial does not fit in an order-0 jet");
  out.terms_.push_back({1, std::uint64_t{1} << shift_for(var), Rational(1)});
  return out;
}

Jet Jet::monomial(int vars, int order, std::span<const int> exps,
                  Rational coeff) {
  Jet out(vars, order);
  require(exps.size() == static_cast<std::size_t>(vars),
          "monomial exponent count must equal the variable count");
  int degree = 0;
  for (int e : exps) {
    require(e >= 0 && e <= kMaxOrder, "monomial exponent out of range");
    degree += e;
  }
  require(degree <= order, "monomial degree exceeds the jet order");
  if (sgn(coeff) != 0) out.terms_.push_back({degree, pack(exps), std::move(coeff)});
  return out;
}

std::vector<int> Jet::exponents(const Term& term) const {
  std::vector<int> exps(vars_);
  for (int v = 0; v < vars_; ++v) exps[v] = exponent_at(term.key, v);
  return exps;
}

bool Jet::is_zero_through(int degree) const {
  return terms_.empty() || terms_.front().degree > degree;
}

std::optional<int> Jet::lowest_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().degree;
}

Rational Jet::coefficient(std::span<const int> exps) const {
  require(exps.size() == static_cast<std::size_t>(vars_),
          "exponent count must equal the variable count");
  int degree = 0;
  for (int e : exps) {
    require(e >= 0 && e <= kMaxOrder, "exponent out of range");
    degree += e;
  }
  const std::uint64_t key = pack(exps);
  const Term probe{degree, key, Rational()};
  const auto it =
      std::lower_bound(terms_.begin(), terms_.end(), probe, term_less);
  if (it != terms_.end() && it->key == key) return it->coeff;
  return Rational(0);
}

Jet Jet::truncated(int new_order) const {
  require(new_order >= 0 && new_order <= order_,
          "truncation order must lie in [0, current order]");
  const Term probe{new_order + 1, 0, Rational()};
  const auto cut =
      std::lower_bound(terms_.begin(), terms_.end(), probe, term_less);
  return Jet(Raw{}, vars_, new_order, std::vector<Term>(terms_.begin(), cut));
}

bool operator==(const Jet& a, const Jet& b) {
  if (a.vars() != b.vars() || a.order() != b.order()) return false;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return false;
  for (std::size_t n = 0; n < ta.size(); ++n) {
    if (ta[n].key != tb[n].key || ta[n].coeff != tb[n].coeff) return false;
  }
  return true;
}

Jet operator+(const Jet& a, const Jet& b) {
  check_same_shape(a, b);
  std::vector<Jet::Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  while (ia != a.terms_.end() && ib != b.terms_.end()) {
    if (ia->key == ib->key) {
      Rational c(ia->coeff + ib->coeff);
      if (sgn(c) != 0) out.push_back({ia->degree, ia->key, std::move(c)});
      ++ia;
      ++ib;
    } else if (term_less(*ia, *ib)) {
      out.push_back(*ia++);
    } else {
      out.push_back(*ib++);
    }
  }
  out.insert(out.end(), ia, a.terms_.end());
  out.insert(out.end(), ib, b.terms_.end());
  return Jet(Jet::Raw{}, a.vars_, a.order_, std::move(out));
}

Jet operator-(const Jet& a) {
  std::vector<Jet::Term> out = a.terms_;
  for (auto& t : out) t.coeff = -t.coeff;
  return Jet(Jet::Raw{}, a.vars_, a.order_, std::move(out));
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet operator*(const Rational& c, const Jet& a) {
  if (sgn(c) == 0) return Jet(a.vars_, a.order_);
  std::vector<Jet::Term> out = a.terms_;
  for (auto& t : out) t.coeff *= c;
  return Jet(Jet::Raw{}, a.vars_, a.order_, std::move(out));
}

Jet operator*(const Jet& a, const Jet& b) {
  check_same_shape(a, b);
  std::vector<Jet::Term> products;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      // terms are degree-sorted, so past the cutoff nothing else fits
      if (ta.degree + tb.degree > a.order_) break;
      products.push_back(
          {ta.degree + tb.degree, ta.key + tb.key, ta.coeff * tb.coeff});
    }
  }
  return Jet(Jet::Raw{}, a.vars_, a.order_, normalize(std::move(products)));
}

Jet partial(const Jet& a, int var) {
  require(var >= 0 && var < a.vars_, "variable index out of range");
  std::vector<Jet::Term> out;
  out.reserve(a.terms_.size());
  for (const auto& t : a.terms_) {
    const int e = exponent_at(t.key, var);
    if (e == 0) continue;
    out.push_back({t.degree - 1,
                   t.key - (std::uint64_t{1} << shift_for(var)),
                   Rational(e) * t.coeff});
  }
  // dropping z_var and shifting every key by the same amount preserves order
  return Jet(Jet::Raw{}, a.vars_, std::max(a.order_ - 1, 0), std::move(out));
}

Jet antider(const Jet& a, int var) {
  require(var >= 0 && var < a.vars_, "variable index out of range");
  std::vector<Jet::Term> out;
  out.reserve(a.terms_.size());
  for (const auto& t : a.terms_) {
    if (t.degree + 1 > a.order_) break;
    const int e = exponent_at(t.key, var);
    out.push_back({t.degree + 1,
                   t.key + (std::uint64_t{1} << shift_for(var)),
                   t.coeff / Rational(e + 1)});
  }
  return Jet(Jet::Raw{}, a.vars_, a.order_, std::move(out));
}

Jet homogeneous_part(const Jet& a, int degree) {
  const Jet::Term lo{degree, 0, Rational()};
  const Jet::Term hi{degree + 1, 0, Rational()};
  const auto first =
      std::lower_bound(a.terms_.begin(), a.terms_.end(), lo, term_less);
  const auto last =
      std::lower_bound(first, a.terms_.end(), hi, term_less);
  return Jet(Jet::Raw{}, a.vars_, a.order_,
             std::vector<Jet::Term>(first, last));
}

Rational eval(const Jet& a, const JetPoint& point) {
  require(point.size() == static_cast<std::size_t>(a.vars()),
          "evaluation point has the wrong number of coordinates");
  // powers[v][e] = point[v]^e, built up to the largest exponent that occurs
  std::vector<std::vector<Rational>> powers(a.vars());
  for (int v = 0; v < a.vars(); ++v) powers[v].push_back(Rational(1));
  Rational sum;
  for (const auto& t : a.terms()) {
    Rational prod = t.coeff;
    for (int v = 0; v < a.vars(); ++v) {
      const int e = exponent_at(t.key, v);
      auto& pw = powers[v];
      while (static_cast<int>(pw.size()) <= e) {
        Rational next(pw.back() * point[v]);
        pw.push_back(std::move(next));
      }
      if (e > 0) prod *= pw[e];
    }
    sum += prod;
  }
  return sum;
}

}  // namespace curvforge
