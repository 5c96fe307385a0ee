#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"

namespace kabreg {

/// Polynomial ring F_p[x_0..x_{n-1}] with a term order and a grading.
class PolynomialRing {
 public:
  PolynomialRing(std::size_t nvars, PrimeField field, TermOrder order = TermOrder::grevlex(),
                 std::vector<int> weights = {}, std::vector<std::string> names = {})
      : nvars_(nvars), field_(field), order_(order), weights_(std::move(weights)), names_(std::move(names)) {
    if (nvars > kMaxVariables) throw std::invalid_argument("unsupported number of variables");
    if (weights_.empty()) weights_.assign(nvars, 1);
    if (weights_.size() != nvars) throw std::invalid_argument("weight vector length mismatch");
    if (names_.empty()) names_ = default_names(nvars);
    if (names_.size() != nvars) throw std::invalid_argument("variable name count mismatch");
  }

  static std::shared_ptr<const PolynomialRing> make(std::size_t nvars, PrimeField field,
                                                    TermOrder order = TermOrder::grevlex(),
                                                    std::vector<int> weights = {},
                                                    std::vector<std::string> names = {}) {
    return std::make_shared<const PolynomialRing>(nvars, field, order, std::move(weights), std::move(names));
  }

  /// x, y, z, w for four variables; x0, x1, ... otherwise.
  static std::vector<std::string> default_names(std::size_t nvars) {
    if (nvars == 4) return {"x", "y", "z", "w"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < nvars; ++i) out.push_back("x" + std::to_string(i));
    return out;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  const TermOrder& order() const noexcept { return order_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  int compare(const Monomial& a, const Monomial& b) const noexcept { return order_.compare(a, b, nvars_); }

  int weighted_degree(const Monomial& m) const noexcept {
    int d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += weights_[i] * m[i];
    return d;
  }

  std::shared_ptr<const PolynomialRing> with_order(TermOrder order) const {
    return make(nvars_, field_, order, weights_, names_);
  }

  std::string format(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += names_[i];
      if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
  }

  friend bool operator==(const PolynomialRing&, const PolynomialRing&) = default;

 private:
  std::size_t nvars_;
  PrimeField field_;
  TermOrder order_;
  std::vector<int> weights_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const PolynomialRing>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) noexcept { return a == b || (a && b && *a == *b); }

struct Term {
  Monomial monomial;
  std::uint32_t coeff = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial; terms sorted strictly descending in the ring's order, no zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("null ring");
  }

  /// Sorts, merges like terms and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial f(std::move(ring));
    const auto& r = *f.ring_;
    std::sort(terms.begin(), terms.end(),
              [&r](const Term& a, const Term& b) { return r.compare(a.monomial, b.monomial) > 0; });
    for (auto& t : terms) {
      t.coeff %= r.modulus();
      if (!f.terms_.empty() && f.terms_.back().monomial == t.monomial)
        f.terms_.back().coeff = detail::add_mod(f.terms_.back().coeff, t.coeff, r.modulus());
      else
        f.terms_.push_back(t);
      if (f.terms_.back().coeff == 0) f.terms_.pop_back();
    }
    return f;
  }

  /// Builds sum of coeffs[i] * monomials[i] from signed coefficients.
  static Polynomial from_pairs(RingPtr ring, const std::vector<std::pair<std::int64_t, Monomial>>& pairs) {
    std::vector<Term> terms;
    for (const auto& [c, m] : pairs) terms.push_back({m, detail::reduce_signed(c, ring->modulus())});
    return from_terms(std::move(ring), std::move(terms));
  }

  static Polynomial constant(RingPtr ring, std::int64_t c) {
    return monomial(ring, Monomial{}, detail::reduce_signed(c, ring->modulus()));
  }

  static Polynomial variable(RingPtr ring, std::size_t i) {
    if (i >= ring->nvars()) throw std::out_of_range("variable index");
    return monomial(std::move(ring), Monomial::variable(i), 1);
  }

  static Polynomial monomial(RingPtr ring, const Monomial& m, std::uint32_t coeff = 1) {
    Polynomial f(std::move(ring));
    if (coeff % f.ring_->modulus() != 0) f.terms_.push_back({m, coeff % f.ring_->modulus()});
    return f;
  }

  /// Linear form sum coeffs[i] * x_i.
  static Polynomial linear_form(RingPtr ring, std::span<const PrimeFieldScalar> coeffs) {
    if (coeffs.size() > ring->nvars()) throw std::invalid_argument("too many linear coefficients");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) terms.push_back({Monomial::variable(i), coeffs[i].residue()});
    return from_terms(std::move(ring), std::move(terms));
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.size() == 1 && terms_.front().monomial.is_one(); }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.front();
  }
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  std::uint32_t leading_coefficient() const { return leading_term().coeff; }

  PrimeFieldScalar coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.monomial == m) return PrimeFieldScalar::from_residue(t.coeff, ring_->modulus());
    return ring_->field().zero();
  }

  /// Homogeneous with respect to the ring's weights. Zero counts as homogeneous.
  bool is_homogeneous() const noexcept {
    for (const auto& t : terms_)
      if (ring_->weighted_degree(t.monomial) != ring_->weighted_degree(terms_.front().monomial)) return false;
    return true;
  }

  /// Weighted degree of a nonzero homogeneous polynomial.
  int degree() const {
    if (is_zero()) throw std::domain_error("degree of zero polynomial");
    if (!is_homogeneous()) throw std::domain_error("degree of inhomogeneous polynomial");
    return ring_->weighted_degree(terms_.front().monomial);
  }

  /// Largest total exponent sum among the terms.
  int total_degree() const noexcept {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff = detail::neg_mod(t.coeff, ring_->modulus());
    return out;
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return f.combine(g, 1); }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    return f.combine(g, g.ring_->modulus() - 1);
  }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    f.check_ring(g);
    std::vector<Term> acc;
    acc.reserve(f.size() * g.size());
    const std::uint32_t p = f.ring_->modulus();
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) acc.push_back({a.monomial * b.monomial, detail::mul_mod(a.coeff, b.coeff, p)});
    return from_terms(f.ring_, std::move(acc));
  }
  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }

  /// c * m * this. Order is preserved since term orders are multiplicative.
  Polynomial times_term(std::uint32_t c, const Monomial& m) const {
    Polynomial out(ring_);
    const std::uint32_t p = ring_->modulus();
    c %= p;
    if (c == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.monomial * m, detail::mul_mod(t.coeff, c, p)});
    return out;
  }

  Polynomial scaled(PrimeFieldScalar c) const { return times_term(c.residue(), Monomial{}); }

  /// this - c * m * g, merged in one pass.
  Polynomial minus_term_times(std::uint32_t c, const Monomial& m, const Polynomial& g) const {
    check_ring(g);
    const std::uint32_t p = ring_->modulus();
    const std::uint32_t neg = detail::neg_mod(c % p, p);
    Polynomial out(ring_);
    out.terms_.reserve(terms_.size() + g.terms_.size());
    auto it = terms_.begin();
    const auto end = terms_.end();
    for (const auto& gt : g.terms_) {
      const Term scaled{gt.monomial * m, detail::mul_mod(gt.coeff, neg, p)};
      while (it != end && ring_->compare(it->monomial, scaled.monomial) > 0) out.terms_.push_back(*it++);
      if (it != end && it->monomial == scaled.monomial) {
        const std::uint32_t s = detail::add_mod(it->coeff, scaled.coeff, p);
        if (s != 0) out.terms_.push_back({it->monomial, s});
        ++it;
      } else if (scaled.coeff != 0) {
        out.terms_.push_back(scaled);
      }
    }
    out.terms_.insert(out.terms_.end(), it, end);
    return out;
  }

  Polynomial without_leading_term() const {
    Polynomial out(ring_);
    if (!terms_.empty()) out.terms_.assign(terms_.begin() + 1, terms_.end());
    return out;
  }

  /// Scales so the leading coefficient is 1.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return times_term(detail::inv_mod(leading_coefficient(), ring_->modulus()), Monomial{});
  }

  /// The same polynomial viewed in `target`; variable i maps to var_map[i].
  Polynomial remap(RingPtr target, std::span<const std::size_t> var_map) const {
    if (var_map.size() != ring_->nvars()) throw std::invalid_argument("variable map length mismatch");
    if (target->modulus() != ring_->modulus()) throw std::invalid_argument("prime field modulus mismatch");
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        if (t.monomial[i] == 0) continue;
        if (var_map[i] >= target->nvars()) throw std::invalid_argument("variable has no image in target ring");
        m.set(var_map[i], m[var_map[i]] + t.monomial[i]);
      }
      terms.push_back({m, t.coeff});
    }
    return from_terms(std::move(target), std::move(terms));
  }

  /// Same variables, different order or grading.
  Polynomial in_ring(RingPtr target) const {
    if (target->nvars() != ring_->nvars()) throw std::invalid_argument("variable count mismatch");
    if (target->modulus() != ring_->modulus()) throw std::invalid_argument("prime field modulus mismatch");
    return from_terms(std::move(target), terms_);
  }

  PrimeFieldScalar evaluate(std::span<const PrimeFieldScalar> point) const {
    if (point.size() != ring_->nvars()) throw std::invalid_argument("point dimension mismatch");
    const std::uint32_t p = ring_->modulus();
    std::uint32_t acc = 0;
    for (const auto& t : terms_) {
      std::uint32_t v = t.coeff;
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        for (int e = 0; e < t.monomial[i]; ++e) v = detail::mul_mod(v, point[i].residue(), p);
      acc = detail::add_mod(acc, v, p);
    }
    return PrimeFieldScalar::from_residue(acc, p);
  }

  /// Uses only variables with index >= k.
  bool free_of_first(std::size_t k) const noexcept {
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < k; ++i)
        if (t.monomial[i] != 0) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    const std::uint32_t p = ring_->modulus();
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      // Residues above p/2 print as negatives.
      const bool negative = t.coeff > p / 2;
      const std::uint32_t mag = negative ? p - t.coeff : t.coeff;
      if (!first) os << (negative ? " - " : " + ");
      else if (negative) os << '-';
      const std::string mono = ring_->format(t.monomial);
      if (mono.empty()) os << mag;
      else if (mag != 1) os << mag << '*' << mono;
      else os << mono;
      first = false;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << f.to_string(); }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return same_ring(f.ring_, g.ring_) && f.terms_ == g.terms_;
  }

 private:
  void check_ring(const Polynomial& g) const {
    if (!same_ring(ring_, g.ring_)) throw std::invalid_argument("polynomial ring mismatch");
  }

  Polynomial combine(const Polynomial& g, std::uint32_t g_scale) const {
    return minus_term_times(detail::neg_mod(g_scale, ring_->modulus()), Monomial{}, g);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Product of f and g; throws on ring mismatch.
inline Polynomial poly_mul(const Polynomial& f, const Polynomial& g) { return f * g; }

/// Maximal term of f under `order`, which need not be the ring's order.
inline std::pair<Monomial, PrimeFieldScalar> leading_term(const Polynomial& f, const TermOrder& order) {
  if (f.is_zero()) throw std::domain_error("leading term of zero polynomial");
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms())
    if (order.compare(t.monomial, best->monomial, f.ring()->nvars()) > 0) best = &t;
  return {best->monomial, PrimeFieldScalar::from_residue(best->coeff, f.ring()->modulus())};
}

}  // namespace kabreg
