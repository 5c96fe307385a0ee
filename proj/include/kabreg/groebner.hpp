#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "polynomial.hpp"

namespace kabreg {

/// Normalized S-polynomial of two nonzero polynomials.
inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  const std::uint32_t p = f.ring()->modulus();
  const Polynomial left = f.times_term(detail::inv_mod(f.leading_coefficient(), p), l.quotient(f.leading_monomial()));
  return left.minus_term_times(detail::inv_mod(g.leading_coefficient(), p), l.quotient(g.leading_monomial()), g);
}

namespace detail {

inline const Polynomial* find_reducer(const Monomial& m, std::span<const Polynomial> basis) {
  for (const auto& g : basis)
    if (!g.is_zero() && g.leading_monomial().divides(m)) return &g;
  return nullptr;
}

/// Reduces until the leading term is not divisible by any basis leading term.
inline Polynomial top_reduce(Polynomial f, std::span<const Polynomial> basis) {
  const std::uint32_t p = f.ring()->modulus();
  while (!f.is_zero()) {
    const Polynomial* g = find_reducer(f.leading_monomial(), basis);
    if (!g) break;
    const std::uint32_t c = mul_mod(f.leading_coefficient(), inv_mod(g->leading_coefficient(), p), p);
    f = f.minus_term_times(c, f.leading_monomial().quotient(g->leading_monomial()), *g);
  }
  return f;
}

}  // namespace detail

/// Fully reduced remainder of f modulo `basis`: no term is divisible by a leading term of the basis.
/// When `basis` is a Groebner basis the result is the unique normal form.
inline Polynomial reduce(Polynomial f, std::span<const Polynomial> basis) {
  const std::uint32_t p = f.ring()->modulus();
  std::vector<Term> remainder;
  while (!f.is_zero()) {
    const Term lead = f.leading_term();
    if (const Polynomial* g = detail::find_reducer(lead.monomial, basis)) {
      const std::uint32_t c = detail::mul_mod(lead.coeff, detail::inv_mod(g->leading_coefficient(), p), p);
      f = f.minus_term_times(c, lead.monomial.quotient(g->leading_monomial()), *g);
    } else {
      remainder.push_back(lead);
      f = f.without_leading_term();
    }
  }
  return Polynomial::from_terms(f.ring(), std::move(remainder));
}

/// Sorts descending by leading monomial.
inline void sort_basis(std::vector<Polynomial>& basis) {
  std::sort(basis.begin(), basis.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.ring()->compare(a.leading_monomial(), b.leading_monomial()) > 0;
  });
}

/// Turns a Groebner basis into the reduced one: minimal, tail-reduced, monic, sorted.
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis) {
  std::erase_if(basis, [](const Polynomial& g) { return g.is_zero(); });
  sort_basis(basis);
  std::vector<Polynomial> minimal;
  // Ascending pass so the smaller leading monomials claim divisibility first.
  for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
    const bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Polynomial& h) {
      return h.leading_monomial().divides(it->leading_monomial());
    });
    if (!redundant) minimal.push_back(it->monic());
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    minimal[i] = reduce(minimal[i], others).monic();
  }
  sort_basis(minimal);
  return minimal;
}

/// Reduced Groebner basis under the ring's term order (normal strategy, sugar tie-break,
/// product and chain criteria).
inline std::vector<Polynomial> buchberger(std::vector<Polynomial> gens) {
  std::erase_if(gens, [](const Polynomial& g) { return g.is_zero(); });
  if (gens.empty()) return {};
  const RingPtr ring = gens.front().ring();
  for (const auto& g : gens)
    if (!same_ring(g.ring(), ring)) throw std::invalid_argument("polynomial ring mismatch");

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
  };

  std::vector<Polynomial> basis;
  std::vector<int> sugar;
  std::vector<Pair> pending;
  std::vector<std::vector<char>> is_pending;

  auto add = [&](Polynomial h, int h_sugar) {
    h = h.monic();
    const std::size_t k = basis.size();
    for (auto& row : is_pending) row.push_back(0);
    is_pending.emplace_back(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const Monomial l = lcm(basis[i].leading_monomial(), h.leading_monomial());
      const int s = std::max(sugar[i] + l.degree() - basis[i].leading_monomial().degree(),
                             h_sugar + l.degree() - h.leading_monomial().degree());
      pending.push_back({i, k, l, s});
      is_pending[i][k] = is_pending[k][i] = 1;
    }
    basis.push_back(std::move(h));
    sugar.push_back(h_sugar);
  };

  // Seed with the generators, lowest degree first.
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Polynomial& a, const Polynomial& b) { return a.total_degree() < b.total_degree(); });
  for (auto& g : gens) {
    Polynomial h = detail::top_reduce(g, basis);
    if (!h.is_zero()) add(std::move(h), g.total_degree());
  }

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), [](const Pair& a, const Pair& b) {
      return std::make_tuple(a.sugar, a.lcm.degree(), a.j, a.i) < std::make_tuple(b.sugar, b.lcm.degree(), b.j, b.i);
    });
    const Pair pair = *best;
    pending.erase(best);
    is_pending[pair.i][pair.j] = is_pending[pair.j][pair.i] = 0;

    const Monomial& li = basis[pair.i].leading_monomial();
    const Monomial& lj = basis[pair.j].leading_monomial();
    if (coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      chain = basis[k].leading_monomial().divides(pair.lcm) && !is_pending[pair.i][k] && !is_pending[pair.j][k];
    }
    if (chain) continue;

    Polynomial h = detail::top_reduce(s_polynomial(basis[pair.i], basis[pair.j]), basis);
    if (!h.is_zero()) add(std::move(h), pair.sugar);
  }
  return reduce_basis(std::move(basis));
}

/// Buchberger under an explicit order; the result lives in the re-ordered ring.
inline std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const TermOrder& order) {
  if (gens.empty()) return {};
  const RingPtr target = gens.front().ring()->with_order(order);
  std::vector<Polynomial> moved;
  for (const auto& g : gens) moved.push_back(g.in_ring(target));
  return buchberger(std::move(moved));
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
inline bool is_groebner_basis(std::span<const Polynomial> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

/// Homogeneous ideal given by generators, with a lazily computed reduced Groebner basis.
/// Copies share the cache; the basis is written once.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators)
      : ring_(std::move(ring)), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
    std::erase_if(generators_, [](const Polynomial& g) { return g.is_zero(); });
    for (const auto& g : generators_) {
      if (!same_ring(g.ring(), ring_)) throw std::invalid_argument("generator from a different ring");
      if (!g.is_homogeneous()) throw std::invalid_argument("ideal generators must be homogeneous");
    }
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }

  const std::vector<Polynomial>& groebner_basis() const {
    std::call_once(cache_->once, [this] { cache_->basis = buchberger(generators_); });
    return cache_->basis;
  }

  bool contains(const Polynomial& f) const { return reduce(f, groebner_basis()).is_zero(); }

  bool is_zero() const noexcept { return generators_.empty(); }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Polynomial> basis;
  };

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Normal form of f modulo I (fully reduced against I's reduced Groebner basis).
inline Polynomial normal_form(const Polynomial& f, const Ideal& ideal) {
  if (!same_ring(f.ring(), ideal.ring())) throw std::invalid_argument("polynomial ring mismatch");
  return reduce(f, ideal.groebner_basis());
}

/// Every generator of `inner` lies in `outer`.
inline bool is_subideal(const Ideal& inner, const Ideal& outer) {
  return std::all_of(inner.generators().begin(), inner.generators().end(),
                     [&](const Polynomial& g) { return outer.contains(g); });
}

inline bool ideal_equal(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("polynomial ring mismatch");
  return a.groebner_basis() == b.groebner_basis();
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("polynomial ring mismatch");
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

/// Ring with the first k variables removed (grevlex on the rest).
inline RingPtr drop_first_variables(const PolynomialRing& ring, std::size_t k) {
  if (k > ring.nvars()) throw std::invalid_argument("cannot drop more variables than the ring has");
  std::vector<int> weights(ring.weights().begin() + static_cast<std::ptrdiff_t>(k), ring.weights().end());
  std::vector<std::string> names(ring.names().begin() + static_cast<std::ptrdiff_t>(k), ring.names().end());
  return PolynomialRing::make(ring.nvars() - k, ring.field(), TermOrder::grevlex(), std::move(weights),
                              std::move(names));
}

/// Elimination ideal I ∩ k[x_k..x_{n-1}], returned in the ring of the remaining variables.
/// Recomputes the basis under block-elimination(k) unless the ring already uses that order.
inline Ideal eliminate(const Ideal& ideal, std::size_t k) {
  if (k == 0) return ideal;
  const PolynomialRing& ring = *ideal.ring();
  const RingPtr target = drop_first_variables(ring, k);
  std::vector<std::size_t> back(ring.nvars(), 0);
  for (std::size_t i = 0; i < ring.nvars(); ++i) back[i] = i < k ? target->nvars() : i - k;

  std::vector<Polynomial> basis;
  if (ring.order() == TermOrder::block_elimination(k)) {
    basis = ideal.groebner_basis();
  } else {
    basis = buchberger(ideal.generators(), TermOrder::block_elimination(k));
  }
  std::vector<Polynomial> kept;
  for (const auto& g : basis)
    if (g.free_of_first(k)) kept.push_back(g.remap(target, back));
  return Ideal(target, std::move(kept));
}

/// I ∩ J via elimination of t from t*I + (1-t)*J. The auxiliary variable t has weight 0,
/// which keeps every generator homogeneous in the original grading.
inline Ideal intersect(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("polynomial ring mismatch");
  if (a.is_zero() || b.is_zero()) return Ideal(a.ring(), {});
  const PolynomialRing& ring = *a.ring();
  if (ring.nvars() + 1 > kMaxVariables) throw std::invalid_argument("no room for the auxiliary variable");

  std::vector<int> weights{0};
  weights.insert(weights.end(), ring.weights().begin(), ring.weights().end());
  std::vector<std::string> names{"t"};
  names.insert(names.end(), ring.names().begin(), ring.names().end());
  const RingPtr lifted =
      PolynomialRing::make(ring.nvars() + 1, ring.field(), TermOrder::block_elimination(1), weights, names);
  std::vector<std::size_t> shift(ring.nvars());
  std::iota(shift.begin(), shift.end(), std::size_t{1});

  const Polynomial t = Polynomial::variable(lifted, 0);
  const Polynomial one_minus_t = Polynomial::constant(lifted, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.groebner_basis()) gens.push_back(t * g.remap(lifted, shift));
  for (const auto& h : b.groebner_basis()) gens.push_back(one_minus_t * h.remap(lifted, shift));

  Ideal eliminated = eliminate(Ideal(lifted, std::move(gens)), 1);
  std::vector<Polynomial> back;
  for (const auto& g : eliminated.generators()) back.push_back(g.in_ring(a.ring()));
  return Ideal(a.ring(), std::move(back));
}

/// Monomials of exact total degree d in the first nvars variables, descending lex.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial m;
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var + 1 == nvars) {
      m.set(var, left);
      out.push_back(m);
      m.set(var, 0);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m.set(var, e);
      self(self, var + 1, left - e);
    }
    m.set(var, 0);
  };
  rec(rec, 0, d);
  return out;
}

/// dim_k (S/I)_d for the standard grading, counted as standard monomials of the Groebner basis.
inline std::size_t hilbert_function(const Ideal& ideal, int d) {
  const auto& basis = ideal.groebner_basis();
  std::size_t count = 0;
  for (const auto& m : monomials_of_degree(ideal.ring()->nvars(), d)) {
    const bool standard = std::none_of(basis.begin(), basis.end(),
                                       [&](const Polynomial& g) { return g.leading_monomial().divides(m); });
    if (standard) ++count;
  }
  return count;
}

}  // namespace kabreg
