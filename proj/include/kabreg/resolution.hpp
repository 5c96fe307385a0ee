#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "groebner.hpp"
#include "module.hpp"

namespace kabreg {

struct GradedFreeModule {
  std::vector<int> twists;  // generator degrees
  std::size_t rank() const noexcept { return twists.size(); }
  friend bool operator==(const GradedFreeModule&, const GradedFreeModule&) = default;
};

/// Degree-preserving map source -> target. Entry (i, j) has degree source_j - target_i or is zero.
class GradedMap {
 public:
  using Matrix = std::vector<std::vector<Polynomial>>;

  GradedMap(RingPtr ring, GradedFreeModule source, GradedFreeModule target, Matrix entries)
      : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)) {
    if (entries_.size() != target_.rank()) throw std::invalid_argument("row count differs from target rank");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].size() != source_.rank()) throw std::invalid_argument("column count differs from source rank");
      for (std::size_t j = 0; j < entries_[i].size(); ++j) {
        const Polynomial& f = entries_[i][j];
        if (!same_ring(f.ring(), ring_)) throw std::invalid_argument("entry from a different ring");
        if (!f.is_zero() && f.degree() != source_.twists[j] - target_.twists[i])
          throw std::invalid_argument("entry degree incompatible with twists");
      }
    }
  }

  /// Row vector (g_1 ... g_m): sum S(-deg g_i) -> S.
  static GradedMap from_row(RingPtr ring, const std::vector<Polynomial>& row) {
    GradedFreeModule source;
    for (const auto& g : row) source.twists.push_back(g.is_zero() ? 0 : g.degree());
    return GradedMap(std::move(ring), std::move(source), GradedFreeModule{{0}}, Matrix{row});
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const GradedFreeModule& source() const noexcept { return source_; }
  const GradedFreeModule& target() const noexcept { return target_; }
  const Matrix& entries() const noexcept { return entries_; }
  const Polynomial& entry(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
  std::size_t rows() const noexcept { return target_.rank(); }
  std::size_t cols() const noexcept { return source_.rank(); }

  std::vector<Polynomial> column(std::size_t j) const {
    std::vector<Polynomial> out;
    for (const auto& row : entries_) out.push_back(row.at(j));
    return out;
  }

  bool is_zero() const {
    for (const auto& row : entries_)
      for (const auto& f : row)
        if (!f.is_zero()) return false;
    return true;
  }

  bool has_unit_entry() const {
    for (const auto& row : entries_)
      for (const auto& f : row)
        if (f.is_constant()) return true;
    return false;
  }

  /// after ∘ before.
  friend GradedMap compose(const GradedMap& after, const GradedMap& before) {
    if (!(after.source_ == before.target_)) throw std::invalid_argument("maps are not composable");
    Matrix out(after.rows(), std::vector<Polynomial>(before.cols(), Polynomial(after.ring_)));
    for (std::size_t i = 0; i < after.rows(); ++i)
      for (std::size_t k = 0; k < after.cols(); ++k) {
        const Polynomial& a = after.entries_[i][k];
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < before.cols(); ++j)
          if (!before.entries_[k][j].is_zero()) out[i][j] += a * before.entries_[k][j];
      }
    return GradedMap(after.ring_, before.source_, after.target_, std::move(out));
  }

 private:
  RingPtr ring_;
  GradedFreeModule source_;
  GradedFreeModule target_;
  Matrix entries_;
};

/// Graded Betti numbers beta_{i,j} of S/I (zero entries are not stored).
class BettiTable {
 public:
  using Entries = std::map<std::pair<int, int>, std::size_t>;

  BettiTable(std::size_t nvars, Entries entries) : nvars_(nvars) {
    for (const auto& [key, value] : entries)
      if (value != 0) entries_.emplace(key, value);
  }

  static BettiTable from_twists(std::size_t nvars, const std::vector<std::vector<int>>& twists) {
    Entries e;
    for (std::size_t i = 0; i < twists.size(); ++i)
      for (int j : twists[i]) ++e[{static_cast<int>(i), j}];
    return BettiTable(nvars, std::move(e));
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const Entries& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  std::size_t at(int i, int j) const {
    const auto it = entries_.find({i, j});
    return it == entries_.end() ? 0 : it->second;
  }

  std::size_t total(int i) const {
    std::size_t sum = 0;
    for (const auto& [key, value] : entries_)
      if (key.first == i) sum += value;
    return sum;
  }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  std::size_t nvars_;
  Entries entries_;
};

/// max{j - i : beta_{i,j} != 0}. With of_ideal the table of S/I is read as that of I
/// (homological index shifted by one), which is reg(S/I) + 1.
inline int regularity(const BettiTable& table, bool of_ideal = true) {
  if (table.empty()) throw std::domain_error("regularity of an empty Betti table");
  bool any = false;
  int reg = 0;
  for (const auto& [key, value] : table.entries()) {
    const auto [i, j] = key;
    if (of_ideal && i == 0) continue;
    const int r = of_ideal ? j - (i - 1) : j - i;
    reg = any ? std::max(reg, r) : r;
    any = true;
  }
  if (!any) throw std::domain_error("zero ideal has no regularity");
  return reg;
}

inline int projective_dimension(const BettiTable& table) {
  int pd = 0;
  for (const auto& [key, value] : table.entries()) pd = std::max(pd, key.first);
  return pd;
}

/// Degrees of the minimal generators of I, with multiplicity, ascending.
inline std::vector<int> min_generator_degrees(const BettiTable& table) {
  std::vector<int> out;
  for (const auto& [key, value] : table.entries())
    if (key.first == 1) out.insert(out.end(), value, key.second);
  return out;
}

namespace detail {

inline long long binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// dim S_d for S with nvars variables.
inline long long monomial_count(std::size_t nvars, int d) {
  return d < 0 ? 0 : detail::binomial(d + static_cast<long long>(nvars) - 1, static_cast<long long>(nvars) - 1);
}

/// Alternating sum of the resolution's graded pieces in degree d; equals HF_{S/I}(d).
inline long long hilbert_from_betti(const BettiTable& table, int d) {
  long long sum = 0;
  for (const auto& [key, value] : table.entries()) {
    const long long term = static_cast<long long>(value) * monomial_count(table.nvars(), d - key.second);
    sum += key.first % 2 == 0 ? term : -term;
  }
  return sum;
}

/// Kernel generators of phi, as a map into phi's source. Not necessarily minimal.
inline GradedMap syzygies(const GradedMap& phi) {
  const RingPtr& ring = phi.ring();
  const std::uint32_t p = ring->modulus();
  const std::size_t ncols = phi.cols();
  SchreyerFrame frame(ring, phi.rows());
  const Polynomial zero(ring);

  using SourceVector = std::vector<Polynomial>;
  auto unit = [&](std::size_t c) {
    SourceVector v(ncols, zero);
    v[c] = Polynomial::constant(ring, 1);
    return v;
  };
  auto accumulate = [&](SourceVector& acc, std::uint32_t coeff, const Monomial& m, const SourceVector& rep) {
    for (std::size_t c = 0; c < ncols; ++c)
      if (!rep[c].is_zero()) acc[c] = acc[c].minus_term_times(detail::neg_mod(coeff, p), m, rep[c]);
  };

  std::vector<SourceVector> kernel;
  std::vector<ModuleVector> columns(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    for (std::uint32_t r = 0; r < phi.rows(); ++r)
      for (const auto& t : phi.entry(r, c).terms()) columns[c].push_back(frame.make_term(0, t.monomial, r, t.coeff));
    frame.normalize(0, columns[c]);
    if (columns[c].empty()) kernel.push_back(unit(c));
  }

  // Module Buchberger with representations basis[l] = phi(reps[l]).
  std::vector<ModuleVector> basis;
  std::vector<SourceVector> reps;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto add = [&](ModuleVector v, SourceVector rep) {
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i)
      if (basis[i].front().component == v.front().component) pairs.emplace_back(i, k);
    basis.push_back(std::move(v));
    reps.push_back(std::move(rep));
  };
  for (std::size_t c = 0; c < ncols; ++c)
    if (!columns[c].empty()) add(columns[c], unit(c));

  while (!pairs.empty()) {
    const auto [i, j] = pairs.back();
    pairs.pop_back();
    const ModuleTerm& li = basis[i].front();
    const ModuleTerm& lj = basis[j].front();
    const Monomial l = lcm(li.monomial, lj.monomial);
    const std::uint32_t ci = detail::inv_mod(li.coeff, p);
    const std::uint32_t cj = detail::inv_mod(lj.coeff, p);
    ModuleVector sigma = frame.minus_term_times(0, {}, detail::neg_mod(ci, p), l.quotient(li.monomial), basis[i]);
    sigma = frame.minus_term_times(0, sigma, cj, l.quotient(lj.monomial), basis[j]);
    SourceVector rep(ncols, zero);
    accumulate(rep, ci, l.quotient(li.monomial), reps[i]);
    accumulate(rep, detail::neg_mod(cj, p), l.quotient(lj.monomial), reps[j]);
    std::vector<Quotient> quotients;
    sigma = top_reduce(frame, 0, std::move(sigma), basis, index_by_lead_component(basis, phi.rows()), &quotients);
    if (sigma.empty()) continue;
    for (const auto& q : quotients) accumulate(rep, detail::neg_mod(q.coeff, p), q.monomial, reps[q.index]);
    add(std::move(sigma), std::move(rep));
  }

  if (!basis.empty()) {
    frame.push_level(leads_of(basis));
    for (const auto& syz : schreyer_syzygies(frame, 1, basis)) {
      SourceVector v(ncols, zero);
      for (const auto& t : syz) accumulate(v, t.coeff, t.monomial, reps[t.component]);
      kernel.push_back(std::move(v));
    }
    // Each original column is a combination of the basis; e_c minus that combination is a relation.
    const auto by_component = index_by_lead_component(basis, phi.rows());
    for (std::size_t c = 0; c < ncols; ++c) {
      if (columns[c].empty()) continue;
      std::vector<Quotient> quotients;
      if (!top_reduce(frame, 0, columns[c], basis, by_component, &quotients).empty())
        throw std::logic_error("column not in the span of its Groebner basis");
      SourceVector v = unit(c);
      for (const auto& q : quotients) accumulate(v, detail::neg_mod(q.coeff, p), q.monomial, reps[q.index]);
      kernel.push_back(std::move(v));
    }
  }

  // Drop zero vectors and scalar duplicates.
  std::vector<SourceVector> kept;
  for (auto& v : kernel) {
    const auto first = std::find_if(v.begin(), v.end(), [](const Polynomial& f) { return !f.is_zero(); });
    if (first == v.end()) continue;
    const auto inv = PrimeFieldScalar::from_residue(detail::inv_mod(first->leading_coefficient(), p), p);
    for (auto& f : v) f = f.scaled(inv);
    if (std::find(kept.begin(), kept.end(), v) == kept.end()) kept.push_back(std::move(v));
  }

  GradedFreeModule source;
  GradedMap::Matrix entries(ncols);
  for (const auto& v : kept) {
    std::size_t c = 0;
    while (v[c].is_zero()) ++c;
    source.twists.push_back(v[c].degree() + phi.source().twists[c]);
    for (std::size_t r = 0; r < ncols; ++r) entries[r].push_back(v[r]);
  }
  return GradedMap(ring, std::move(source), phi.source(), std::move(entries));
}

/// maps[k] : F_{k+1} -> F_k, F_0 = S. The Betti table is that of S/I.
struct Resolution {
  std::vector<GradedMap> maps;
  BettiTable betti;

  GradedFreeModule module(std::size_t k) const {
    if (k == 0) return GradedFreeModule{{0}};
    return maps.at(k - 1).source();
  }
};

namespace detail {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Cancels constant entries of a complex of free modules until none remain.
/// maps[k] : F_{k+1} -> F_k with twists[k] the twists of F_k.
inline void prune_units(std::vector<PolyMatrix>& maps, std::vector<std::vector<int>>& twists, const RingPtr& ring) {
  auto find_unit = [](const PolyMatrix& a, std::size_t& r, std::size_t& c) {
    for (r = 0; r < a.size(); ++r)
      for (c = 0; c < a[r].size(); ++c)
        if (a[r][c].is_constant()) return true;
    return false;
  };
  const std::uint32_t p = ring->modulus();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      std::size_t r = 0, c = 0;
      while (find_unit(maps[k], r, c)) {
        changed = true;
        PolyMatrix& a = maps[k];
        const PrimeFieldScalar u_inv = invert(PrimeFieldScalar::from_residue(a[r][c].leading_coefficient(), p));
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (i == r || a[i][c].is_zero()) continue;
          const Polynomial factor = a[i][c].scaled(u_inv);
          for (std::size_t j = 0; j < a[i].size(); ++j)
            if (j != c && !a[r][j].is_zero()) a[i][j] -= factor * a[r][j];
        }
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(r));
        for (auto& row : a) row.erase(row.begin() + static_cast<std::ptrdiff_t>(c));
        if (k + 1 < maps.size()) maps[k + 1].erase(maps[k + 1].begin() + static_cast<std::ptrdiff_t>(c));
        if (k > 0)
          for (auto& row : maps[k - 1]) row.erase(row.begin() + static_cast<std::ptrdiff_t>(r));
        twists[k].erase(twists[k].begin() + static_cast<std::ptrdiff_t>(r));
        twists[k + 1].erase(twists[k + 1].begin() + static_cast<std::ptrdiff_t>(c));
      }
    }
  }
  while (!twists.empty() && twists.back().empty()) {
    twists.pop_back();
    if (!maps.empty()) maps.pop_back();
  }
}

}  // namespace detail

/// Minimal graded free resolution of S/I: a Schreyer resolution from the reduced Groebner basis,
/// then pruned of unit entries.
inline Resolution minimal_free_resolution(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  const auto& gb = ideal.groebner_basis();
  const std::size_t nvars = ring->nvars();
  if (gb.empty()) return {{}, BettiTable(nvars, {{{0, 0}, 1}})};
  if (gb.front().is_constant()) return {{}, BettiTable(nvars, {})};

  SchreyerFrame frame(ring, 1);
  std::vector<std::vector<ModuleVector>> levels;
  std::vector<std::vector<int>> twists{{0}};

  auto push = [&](std::vector<ModuleVector> elements, std::size_t below) {
    const auto leads = leads_of(elements);
    const auto perm = schreyer_sort_permutation(leads, nvars, *ring);
    std::vector<ModuleVector> sorted;
    std::vector<Lead> sorted_leads;
    std::vector<int> tw;
    for (std::size_t i : perm) {
      sorted_leads.push_back(leads[i]);
      tw.push_back(ring->weighted_degree(leads[i].monomial) + twists[below][leads[i].component]);
      sorted.push_back(std::move(elements[i]));
    }
    frame.push_level(sorted_leads);
    levels.push_back(std::move(sorted));
    twists.push_back(std::move(tw));
  };

  std::vector<ModuleVector> first;
  for (const auto& g : gb) {
    ModuleVector v;
    for (const auto& t : g.terms()) v.push_back(frame.make_term(0, t.monomial, 0, t.coeff));
    first.push_back(std::move(v));
  }
  push(std::move(first), 0);

  for (std::size_t k = 1;; ++k) {
    if (k > nvars + 1) throw std::logic_error("Schreyer frame longer than the number of variables");
    auto next = schreyer_syzygies(frame, k, levels.back());
    if (next.empty()) break;
    push(std::move(next), k);
  }

  // Dense polynomial matrices; column i of maps[k] is element i of level k+1.
  std::vector<detail::PolyMatrix> maps;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    detail::PolyMatrix m(twists[k].size(), std::vector<Polynomial>(levels[k].size(), Polynomial(ring)));
    for (std::size_t c = 0; c < levels[k].size(); ++c) {
      std::vector<std::vector<Term>> rows(twists[k].size());
      for (const auto& t : levels[k][c]) rows[t.component].push_back({t.monomial, t.coeff});
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (!rows[r].empty()) m[r][c] = Polynomial::from_terms(ring, std::move(rows[r]));
    }
    maps.push_back(std::move(m));
  }
  detail::prune_units(maps, twists, ring);

  Resolution res{{}, BettiTable::from_twists(nvars, twists)};
  for (std::size_t k = 0; k < maps.size(); ++k)
    res.maps.emplace_back(ring, GradedFreeModule{twists[k + 1]}, GradedFreeModule{twists[k]}, std::move(maps[k]));
  return res;
}

/// pd(S/I) == codim, which over a polynomial ring is arithmetic Cohen-Macaulayness.
inline bool is_acm(const BettiTable& table, int codim) { return projective_dimension(table) == codim; }

inline bool is_acm(const Ideal& ideal, int codim) { return is_acm(minimal_free_resolution(ideal).betti, codim); }

}  // namespace kabreg
