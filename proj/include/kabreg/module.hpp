#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace kabreg {

/// m * e_component with coefficient. `total` caches m times the image monomial of e_component
/// pushed all the way down to the base module, which is what the Schreyer order compares first.
struct ModuleTerm {
  Monomial monomial;
  Monomial total;
  std::uint32_t component = 0;
  std::uint32_t coeff = 0;
};

/// Terms sorted strictly descending in the frame order of its level.
using ModuleVector = std::vector<ModuleTerm>;

struct Lead {
  Monomial monomial;
  std::uint32_t component = 0;
};

/// Tower of induced (Schreyer) orders F_0 <- F_1 <- F_2 <- ...
///
/// F_0 has the term-over-position order (ring order first, then lower component index is larger).
/// Basis element i of F_k carries the lead (u_i, c_i) of its image in F_{k-1}; m e_i > n e_j in F_k
/// iff m u_i e_{c_i} > n u_j e_{c_j} in F_{k-1}, or these agree and i < j.
class SchreyerFrame {
 public:
  SchreyerFrame(RingPtr ring, std::size_t base_rank) : ring_(std::move(ring)) {
    totals_.emplace_back(base_rank, Monomial{});
    paths_.emplace_back();
    for (std::uint32_t c = 0; c < base_rank; ++c) paths_.back().push_back({c});
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t levels() const noexcept { return totals_.size(); }
  std::size_t rank(std::size_t level) const { return totals_.at(level).size(); }
  const Monomial& total(std::size_t level, std::size_t i) const { return totals_.at(level).at(i); }

  /// Adds level k = levels() whose basis elements map to the given leads in level k-1.
  void push_level(std::span<const Lead> leads) {
    const std::size_t below = levels() - 1;
    std::vector<Monomial> totals;
    std::vector<std::vector<std::uint32_t>> paths;
    for (const auto& lead : leads) {
      if (lead.component >= rank(below)) throw std::out_of_range("lead component outside previous level");
      totals.push_back(lead.monomial * totals_[below][lead.component]);
      auto path = paths_[below][lead.component];
      path.push_back(static_cast<std::uint32_t>(paths.size()));
      paths.push_back(std::move(path));
    }
    totals_.push_back(std::move(totals));
    paths_.push_back(std::move(paths));
  }

  ModuleTerm make_term(std::size_t level, const Monomial& m, std::uint32_t component, std::uint32_t coeff) const {
    return {m, m * total(level, component), component, coeff};
  }

  int compare(std::size_t level, const ModuleTerm& a, const ModuleTerm& b) const {
    if (int c = ring_->compare(a.total, b.total); c != 0) return c;
    const auto& pa = paths_[level][a.component];
    const auto& pb = paths_[level][b.component];
    for (std::size_t l = 0; l <= level; ++l)
      if (pa[l] != pb[l]) return pa[l] < pb[l] ? 1 : -1;
    return 0;
  }

  /// Sorts descending, merges equal terms and drops zeros.
  void normalize(std::size_t level, ModuleVector& v) const {
    std::sort(v.begin(), v.end(), [&](const ModuleTerm& a, const ModuleTerm& b) { return compare(level, a, b) > 0; });
    ModuleVector out;
    const std::uint32_t p = ring_->modulus();
    for (auto& t : v) {
      if (!out.empty() && out.back().component == t.component && out.back().monomial == t.monomial)
        out.back().coeff = detail::add_mod(out.back().coeff, t.coeff, p);
      else
        out.push_back(t);
      if (out.back().coeff == 0) out.pop_back();
    }
    v = std::move(out);
  }

  /// v - c * m * w, all at `level`.
  ModuleVector minus_term_times(std::size_t level, const ModuleVector& v, std::uint32_t c, const Monomial& m,
                                const ModuleVector& w) const {
    const std::uint32_t p = ring_->modulus();
    const std::uint32_t neg = detail::neg_mod(c % p, p);
    ModuleVector out;
    out.reserve(v.size() + w.size());
    auto it = v.begin();
    for (const auto& wt : w) {
      const ModuleTerm s{wt.monomial * m, wt.total * m, wt.component, detail::mul_mod(wt.coeff, neg, p)};
      int cmp = -1;
      while (it != v.end() && (cmp = compare(level, *it, s)) > 0) out.push_back(*it++);
      if (it != v.end() && cmp == 0) {
        const std::uint32_t sum = detail::add_mod(it->coeff, s.coeff, p);
        if (sum != 0) out.push_back({it->monomial, it->total, it->component, sum});
        ++it;
      } else if (s.coeff != 0) {
        out.push_back(s);
      }
    }
    out.insert(out.end(), it, v.end());
    return out;
  }

  ModuleVector scaled(const ModuleVector& v, std::uint32_t c) const {
    ModuleVector out = v;
    for (auto& t : out) t.coeff = detail::mul_mod(t.coeff, c, ring_->modulus());
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<std::vector<Monomial>> totals_;
  std::vector<std::vector<std::vector<std::uint32_t>>> paths_;
};

/// One division step record: coeff * monomial * e_index.
struct Quotient {
  Monomial monomial;
  std::uint32_t index = 0;
  std::uint32_t coeff = 0;
};

/// Basis elements grouped by the component of their lead term.
inline std::vector<std::vector<std::uint32_t>> index_by_lead_component(std::span<const ModuleVector> basis,
                                                                       std::size_t rank) {
  std::vector<std::vector<std::uint32_t>> out(rank);
  for (std::uint32_t i = 0; i < basis.size(); ++i)
    if (!basis[i].empty()) out.at(basis[i].front().component).push_back(i);
  return out;
}

/// Top-reduces v by `basis` (all at `level`), appending the quotient terms used.
inline ModuleVector top_reduce(const SchreyerFrame& frame, std::size_t level, ModuleVector v,
                               std::span<const ModuleVector> basis,
                               const std::vector<std::vector<std::uint32_t>>& by_component,
                               std::vector<Quotient>* quotients) {
  const std::uint32_t p = frame.ring()->modulus();
  while (!v.empty()) {
    const ModuleTerm& lead = v.front();
    const ModuleVector* reducer = nullptr;
    std::uint32_t index = 0;
    for (std::uint32_t i : by_component[lead.component]) {
      if (basis[i].front().monomial.divides(lead.monomial)) {
        reducer = &basis[i];
        index = i;
        break;
      }
    }
    if (!reducer) break;
    const std::uint32_t c = detail::mul_mod(lead.coeff, detail::inv_mod(reducer->front().coeff, p), p);
    const Monomial m = lead.monomial.quotient(reducer->front().monomial);
    if (quotients) quotients->push_back({m, index, c});
    v = frame.minus_term_times(level, v, c, m, *reducer);
  }
  return v;
}

/// Permutation ordering elements so that, with x_0..x_{s-1} absent from every lead monomial,
/// elements sharing a lead component come in descending exponent of x_s. This keeps the
/// Schreyer frame no longer than the number of variables.
inline std::vector<std::size_t> schreyer_sort_permutation(std::span<const Lead> leads, std::size_t nvars,
                                                          const PolynomialRing& ring) {
  std::size_t s = 0;
  while (s < nvars && std::all_of(leads.begin(), leads.end(), [s](const Lead& l) { return l.monomial[s] == 0; })) ++s;
  std::vector<std::size_t> perm(leads.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const Lead& la = leads[a];
    const Lead& lb = leads[b];
    if (la.component != lb.component) return la.component < lb.component;
    if (s < nvars && la.monomial[s] != lb.monomial[s]) return la.monomial[s] > lb.monomial[s];
    return ring.compare(la.monomial, lb.monomial) > 0;
  });
  return perm;
}

inline std::vector<Lead> leads_of(std::span<const ModuleVector> elements) {
  std::vector<Lead> out;
  for (const auto& v : elements) {
    if (v.empty()) throw std::invalid_argument("zero element has no lead");
    out.push_back({v.front().monomial, v.front().component});
  }
  return out;
}

/// Syzygies of a Groebner basis `gens` of a submodule of F_{k-1}, where level k of `frame`
/// was pushed with the leads of `gens`. Only pairs whose lead quotient is a minimal generator
/// of (lead_j : lead_i), j > i, are formed; by Schreyer's theorem the results are a Groebner
/// basis of the syzygy module in the induced order, each with lead term quotient * e_i.
inline std::vector<ModuleVector> schreyer_syzygies(const SchreyerFrame& frame, std::size_t k,
                                                   std::span<const ModuleVector> gens) {
  if (k == 0 || k >= frame.levels() || frame.rank(k) != gens.size())
    throw std::invalid_argument("frame level does not match the generators");
  const std::uint32_t p = frame.ring()->modulus();
  const auto by_component = index_by_lead_component(gens, frame.rank(k - 1));
  std::vector<ModuleVector> out;

  for (std::uint32_t i = 0; i < gens.size(); ++i) {
    const ModuleTerm& li = gens[i].front();
    std::vector<std::pair<Monomial, std::uint32_t>> candidates;
    for (std::uint32_t j = i + 1; j < gens.size(); ++j) {
      const ModuleTerm& lj = gens[j].front();
      if (lj.component != li.component) continue;
      candidates.push_back({lcm(li.monomial, lj.monomial).quotient(li.monomial), j});
    }
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Monomial& q = candidates[a].first;
      bool minimal = true;
      for (std::size_t b = 0; b < candidates.size() && minimal; ++b) {
        if (a == b) continue;
        const Monomial& r = candidates[b].first;
        minimal = !(r.divides(q) && (!(r == q) || b < a));
      }
      if (!minimal) continue;

      const std::uint32_t j = candidates[a].second;
      const ModuleTerm& lj = gens[j].front();
      const Monomial l = q * li.monomial;
      const Monomial qj = l.quotient(lj.monomial);
      const std::uint32_t ci = detail::inv_mod(li.coeff, p);
      const std::uint32_t cj = detail::inv_mod(lj.coeff, p);

      ModuleVector sigma = frame.minus_term_times(k - 1, {}, detail::neg_mod(ci, p), q, gens[i]);
      sigma = frame.minus_term_times(k - 1, sigma, cj, qj, gens[j]);
      std::vector<Quotient> quotients;
      sigma = top_reduce(frame, k - 1, std::move(sigma), gens, by_component, &quotients);
      if (!sigma.empty()) throw std::logic_error("generators are not a Groebner basis");

      ModuleVector syz;
      syz.push_back(frame.make_term(k, q, i, ci));
      syz.push_back(frame.make_term(k, qj, j, detail::neg_mod(cj, p)));
      for (const auto& quo : quotients) syz.push_back(frame.make_term(k, quo.monomial, quo.index, detail::neg_mod(quo.coeff, p)));
      frame.normalize(k, syz);
      if (syz.empty() || syz.front().component != i || !(syz.front().monomial == q))
        throw std::logic_error("unexpected Schreyer lead term");
      out.push_back(frame.scaled(syz, li.coeff));
    }
  }
  return out;
}

}  // namespace kabreg
