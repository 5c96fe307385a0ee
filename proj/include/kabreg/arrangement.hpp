#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "groebner.hpp"
#include "matrix.hpp"

namespace kabreg {

class InvalidArrangement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear subspace of P^n cut out by independent linear forms (rows of `forms`, n+1 columns).
class LinearSubspace {
 public:
  explicit LinearSubspace(DenseMatrix forms) : forms_(std::move(forms)) {
    if (forms_.cols() < 2) throw InvalidArrangement("ambient space too small");
    if (rank(forms_) != forms_.rows()) throw InvalidArrangement("defining forms are linearly dependent");
  }

  const DenseMatrix& forms() const noexcept { return forms_; }
  int ambient_dimension() const noexcept { return static_cast<int>(forms_.cols()) - 1; }
  int dimension() const noexcept { return ambient_dimension() - static_cast<int>(forms_.rows()); }

  /// Basis of the underlying vector space (rows are points spanning the subspace).
  DenseMatrix points() const { return nullspace(forms_); }

  std::vector<Polynomial> form_polynomials(const RingPtr& ring) const {
    std::vector<Polynomial> out;
    for (std::size_t r = 0; r < forms_.rows(); ++r) {
      const auto coeffs = forms_.row(r);
      out.push_back(Polynomial::linear_form(ring, coeffs));
    }
    return out;
  }

  Ideal ideal(const RingPtr& ring) const { return Ideal(ring, form_polynomials(ring)); }

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
    return row_space(a.forms_) == row_space(b.forms_);
  }

 private:
  DenseMatrix forms_;
};

/// Rank of the forms of all given subspaces stacked together.
inline std::size_t stacked_rank(std::span<const LinearSubspace* const> members) {
  if (members.empty()) return 0;
  DenseMatrix acc = members.front()->forms();
  for (std::size_t i = 1; i < members.size(); ++i) acc = acc.stacked(members[i]->forms());
  return rank(std::move(acc));
}

inline std::size_t stacked_rank(const LinearSubspace& a, const LinearSubspace& b) {
  return rank(a.forms().stacked(b.forms()));
}

using Bipartition = std::array<std::vector<std::size_t>, 2>;

/// Arrangement of (n-2)-planes in P^n, validated at construction: every member is cut out by
/// two forms and no member contains another.
class Arrangement {
 public:
  Arrangement(PrimeField field, int n, std::vector<LinearSubspace> members, std::optional<Bipartition> parts = {})
      : field_(field), n_(n), members_(std::move(members)), parts_(std::move(parts)) {
    if (n < 2) throw InvalidArrangement("ambient dimension must be at least 2");
    if (members_.empty()) throw InvalidArrangement("arrangement has no members");
    for (const auto& m : members_) {
      if (m.ambient_dimension() != n) throw InvalidArrangement("member in a different ambient space");
      if (m.forms().rows() != 2) throw InvalidArrangement("member is not of codimension 2");
      if (m.forms().field() != field) throw InvalidArrangement("member over a different field");
    }
    for (std::size_t i = 0; i < members_.size(); ++i)
      for (std::size_t j = i + 1; j < members_.size(); ++j)
        if (stacked_rank(members_[i], members_[j]) < 3)
          throw InvalidArrangement("members " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    if (parts_) {
      std::vector<int> seen(members_.size(), 0);
      for (const auto& part : *parts_)
        for (std::size_t v : part) {
          if (v >= members_.size()) throw InvalidArrangement("bipartition index out of range");
          ++seen[v];
        }
      if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; }))
        throw InvalidArrangement("bipartition must cover every member exactly once");
    }
  }

  const PrimeField& field() const noexcept { return field_; }
  int ambient_dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<LinearSubspace>& members() const noexcept { return members_; }
  const LinearSubspace& member(std::size_t i) const { return members_.at(i); }
  const std::optional<Bipartition>& bipartition() const noexcept { return parts_; }

  /// Polynomial ring of P^n under grevlex.
  RingPtr ring() const { return PolynomialRing::make(static_cast<std::size_t>(n_) + 1, field_); }

 private:
  PrimeField field_;
  int n_;
  std::vector<LinearSubspace> members_;
  std::optional<Bipartition> parts_;
};

class IncidenceGraph {
 public:
  explicit IncidenceGraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (u >= vertex_count_ || v >= vertex_count_) throw std::out_of_range("vertex index");
    edges_.insert(std::minmax(u, v));
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::set<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const { return edges_.count(std::minmax(u, v)) != 0; }

  friend bool operator==(const IncidenceGraph&, const IncidenceGraph&) = default;

 private:
  std::size_t vertex_count_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
};

/// Edge when two members meet in dimension n-3 (stacked rank 3) instead of n-4.
inline IncidenceGraph incidence_graph(const Arrangement& a) {
  IncidenceGraph g(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const std::size_t r = stacked_rank(a.member(i), a.member(j));
      if (r <= 2) throw InvalidArrangement("inclusion between members");
      if (r == 3) g.add_edge(i, j);
    }
  return g;
}

/// Two-coloring of a connected complete bipartite graph, or nullopt.
inline std::optional<Bipartition> complete_bipartition(const IncidenceGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) return std::nullopt;
  std::vector<int> color(n, -1);
  color[0] = 0;
  std::queue<std::size_t> todo;
  todo.push(0);
  while (!todo.empty()) {
    const std::size_t u = todo.front();
    todo.pop();
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || !g.adjacent(u, v)) continue;
      if (color[v] == -1) {
        color[v] = 1 - color[u];
        todo.push(v);
      } else if (color[v] == color[u]) {
        return std::nullopt;
      }
    }
  }
  Bipartition parts;
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == -1) return std::nullopt;
    parts[static_cast<std::size_t>(color[v])].push_back(v);
  }
  if (g.edges().size() != parts[0].size() * parts[1].size()) return std::nullopt;
  return parts;
}

/// Type (a, b) with a <= b when g is connected complete bipartite.
inline std::optional<std::pair<std::size_t, std::size_t>> is_complete_bipartite(const IncidenceGraph& g) {
  const auto parts = complete_bipartition(g);
  if (!parts) return std::nullopt;
  return std::minmax((*parts)[0].size(), (*parts)[1].size());
}

/// Point [s:t] of P^1.
struct RulingParameter {
  std::int64_t s = 0;
  std::int64_t t = 1;
  friend bool operator==(const RulingParameter&, const RulingParameter&) = default;
};

/// Defaults [0:1], [1:1], [2:1], ...
inline std::vector<RulingParameter> default_ruling_parameters(std::size_t count) {
  std::vector<RulingParameter> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({static_cast<std::int64_t>(i), 1});
  return out;
}

namespace detail {

inline bool same_projective_point(const RulingParameter& u, const RulingParameter& v, const PrimeField& f) {
  return (f(u.s) * f(v.t) - f(u.t) * f(v.s)).is_zero();
}

inline void check_distinct(std::span<const RulingParameter> params, const PrimeField& f) {
  for (const auto& q : params)
    if (f(q.s).is_zero() && f(q.t).is_zero()) throw InvalidArrangement("[0:0] is not a ruling parameter");
  for (std::size_t i = 0; i < params.size(); ++i)
    for (std::size_t j = i + 1; j < params.size(); ++j)
      if (same_projective_point(params[i], params[j], f))
        throw InvalidArrangement("repeated ruling parameter: degenerate arrangement");
}

}  // namespace detail

/// a lines V(t x - s z, t y - s w) from one ruling of the Segre quadric xw - yz and b lines
/// V(v x - u y, v z - u w) from the other. Members 0..a-1 form the first part.
inline Arrangement build_bipartite_on_quadric(std::size_t a, std::size_t b, PrimeField field,
                                              std::span<const RulingParameter> first = {},
                                              std::span<const RulingParameter> second = {}) {
  if (a == 0 || b == 0) throw InvalidArrangement("both rulings need at least one line");
  const auto default_first = default_ruling_parameters(a);
  const auto default_second = default_ruling_parameters(b);
  if (first.empty()) first = default_first;
  if (second.empty()) second = default_second;
  if (first.size() != a || second.size() != b) throw InvalidArrangement("wrong number of ruling parameters");
  if (field.modulus() <= a + b) throw InvalidArrangement("field too small for distinct ruling parameters");
  detail::check_distinct(first, field);
  detail::check_distinct(second, field);

  std::vector<LinearSubspace> members;
  Bipartition parts;
  for (const auto& q : first) {
    members.emplace_back(DenseMatrix::from_rows(field, {{q.t, 0, -q.s, 0}, {0, q.t, 0, -q.s}}));
    parts[0].push_back(members.size() - 1);
  }
  for (const auto& q : second) {
    members.emplace_back(DenseMatrix::from_rows(field, {{q.t, -q.s, 0, 0}, {0, 0, q.t, -q.s}}));
    parts[1].push_back(members.size() - 1);
  }
  return Arrangement(field, 3, std::move(members), std::move(parts));
}

/// Cone with m new coordinates: the forms are read in P^{n+m}.
inline Arrangement cone(const Arrangement& a, std::size_t m) {
  if (m == 0) return a;
  std::vector<LinearSubspace> members;
  for (const auto& l : a.members()) members.emplace_back(l.forms().padded(m));
  return Arrangement(a.field(), a.ambient_dimension() + static_cast<int>(m), std::move(members), a.bipartition());
}

/// Projective dimension of the common intersection (-1 when empty).
inline int common_intersection(const Arrangement& a) {
  std::vector<const LinearSubspace*> ptrs;
  for (const auto& m : a.members()) ptrs.push_back(&m);
  return a.ambient_dimension() - static_cast<int>(stacked_rank(ptrs));
}

/// Row space of the stacked forms of the selected members: the intersection as a subspace.
inline DenseMatrix intersection_forms(const Arrangement& a, std::span<const std::size_t> which) {
  DenseMatrix acc(a.field(), 0, static_cast<std::size_t>(a.ambient_dimension()) + 1);
  for (std::size_t i : which) acc = acc.stacked(a.member(i).forms());
  return row_space(std::move(acc));
}

/// Ideal of the union: intersection of the members' linear ideals.
inline Ideal defining_ideal(const Arrangement& a, RingPtr ring = nullptr) {
  if (!ring) ring = a.ring();
  if (ring->nvars() != static_cast<std::size_t>(a.ambient_dimension()) + 1)
    throw std::invalid_argument("ring does not match the ambient space");
  Ideal acc = a.member(0).ideal(ring);
  for (std::size_t i = 1; i < a.size(); ++i) acc = intersect(acc, a.member(i).ideal(ring));
  return Ideal(ring, acc.groebner_basis());
}

/// Quadric surface in P^3 as a symmetric 4x4 matrix (characteristic != 2).
class QuadraticForm {
 public:
  explicit QuadraticForm(DenseMatrix symmetric) : matrix_(std::move(symmetric)) {
    if (matrix_.rows() != 4 || matrix_.cols() != 4) throw std::invalid_argument("quadric needs a 4x4 matrix");
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (matrix_.at(i, j) != matrix_.at(j, i)) throw std::invalid_argument("quadric matrix must be symmetric");
  }

  const DenseMatrix& matrix() const noexcept { return matrix_; }
  bool is_smooth() const { return !determinant(matrix_).is_zero(); }

  /// sum_{i,j} M_ij x_i x_j.
  Polynomial to_polynomial(const RingPtr& ring) const {
    if (ring->nvars() != 4) throw std::invalid_argument("quadric lives in P^3");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        terms.push_back({Monomial::variable(i) * Monomial::variable(j), matrix_.at(i, j).residue()});
    return Polynomial::from_terms(ring, std::move(terms));
  }

 private:
  DenseMatrix matrix_;
};

/// Degree-2 monomials of P^3 in the order x^2, xy, xz, xw, y^2, yz, yw, z^2, zw, w^2.
inline std::vector<std::pair<std::size_t, std::size_t>> quadric_monomial_indices() {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) out.emplace_back(i, j);
  return out;
}

/// Points P0 + lambda P1 on a line for each lambda, where P0, P1 span the line;
/// lambda = nullopt stands for infinity (P1 itself).
inline std::vector<std::vector<PrimeFieldScalar>> sample_points(const LinearSubspace& line,
                                                               std::span<const std::optional<std::int64_t>> params) {
  const DenseMatrix basis = line.points();
  if (basis.rows() != 2) throw std::invalid_argument("sample points need a line");
  std::vector<std::vector<PrimeFieldScalar>> out;
  for (const auto& lambda : params) {
    std::vector<PrimeFieldScalar> pt;
    for (std::size_t c = 0; c < basis.cols(); ++c)
      pt.push_back(lambda ? basis.at(0, c) + basis.field()(*lambda) * basis.at(1, c) : basis.at(1, c));
    out.push_back(std::move(pt));
  }
  return out;
}

struct QuadricFit {
  QuadraticForm quadric;
  std::size_t solution_dimension;  // dimension of the solution space of the 9x10 system
};

/// Unique quadric through three pairwise skew lines of P^3, from three sample points per line
/// (parameters 0, 1, infinity by default) imposing 9 conditions on the 10 quadric coefficients.
inline QuadricFit quadric_through(std::span<const LinearSubspace> lines,
                                  std::span<const std::optional<std::int64_t>> params = {}) {
  static const std::array<std::optional<std::int64_t>, 3> kDefaultParams{0, 1, std::nullopt};
  if (params.empty()) params = kDefaultParams;
  if (lines.size() != 3 || params.size() != 3) throw std::invalid_argument("need three lines and three samples");
  for (const auto& l : lines)
    if (l.ambient_dimension() != 3 || l.dimension() != 1) throw std::invalid_argument("need lines in P^3");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (stacked_rank(lines[i], lines[j]) != 4) throw std::invalid_argument("lines must be pairwise skew");

  const PrimeField field = lines[0].forms().field();
  const auto monos = quadric_monomial_indices();
  DenseMatrix system(field, 9, monos.size());
  std::size_t row = 0;
  for (const auto& l : lines)
    for (const auto& pt : sample_points(l, params)) {
      for (std::size_t c = 0; c < monos.size(); ++c) system.set(row, c, pt[monos[c].first] * pt[monos[c].second]);
      ++row;
    }
  const std::vector<PrimeFieldScalar> zeros(9, field.zero());
  const auto sol = solve(system, zeros);
  if (!sol || sol->dimension() != 1) throw InvalidArrangement("quadric conditions are not independent: degenerate input");

  const PrimeFieldScalar half = invert(field(2));
  DenseMatrix sym(field, 4, 4);
  for (std::size_t c = 0; c < monos.size(); ++c) {
    const auto [i, j] = monos[c];
    const PrimeFieldScalar v = sol->kernel.at(0, c);
    if (i == j) {
      sym.set(i, i, v);
    } else {
      sym.set(i, j, v * half);
      sym.set(j, i, v * half);
    }
  }
  QuadraticForm q(std::move(sym));
  if (!q.is_smooth()) throw InvalidArrangement("quadric through the lines is singular");
  return {std::move(q), sol->dimension()};
}

/// f vanishes on the subspace (f reduces to zero modulo its linear ideal).
inline bool lies_on(const Polynomial& f, const LinearSubspace& l) { return l.ideal(f.ring()).contains(f); }

/// Star K_{1,b}: the line T = V(x, y) and b lines through distinct points of T with
/// pseudo-random directions. Draws creating extra incidences are rejected and resampled,
/// as are configurations (b >= 4) lying on a single quadric.
inline Arrangement build_generic_star(std::size_t b, PrimeField field, std::uint64_t seed, int max_attempts = 100) {
  if (b < 3) throw std::invalid_argument("generic star needs at least three rays");
  if (field.modulus() <= b + 1) throw InvalidArrangement("field too small");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> draw(0, field.modulus() - 1);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<LinearSubspace> members;
    members.emplace_back(DenseMatrix::from_rows(field, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
    bool ok = true;
    for (std::size_t j = 0; j < b && ok; ++j) {
      // Point on T: (0, 0, 1, j). Direction off T.
      DenseMatrix span = DenseMatrix::from_rows(
          field, {{0, 0, 1, static_cast<std::int64_t>(j)}, {draw(rng), draw(rng), draw(rng), draw(rng)}});
      if (rank(span) != 2 || (span.at(1, 0).is_zero() && span.at(1, 1).is_zero())) {
        ok = false;
        break;
      }
      members.emplace_back(nullspace(span));
    }
    if (!ok) continue;
    try {
      Bipartition parts;
      parts[0] = {0};
      for (std::size_t j = 1; j <= b; ++j) parts[1].push_back(j);
      Arrangement a(field, 3, std::move(members), parts);
      const IncidenceGraph g = incidence_graph(a);
      if (g.edges().size() != b || !is_complete_bipartite(g)) continue;
      if (b >= 4) {
        const std::vector<LinearSubspace> three{a.member(1), a.member(2), a.member(3)};
        const Polynomial q = quadric_through(three).quadric.to_polynomial(a.ring());
        bool all_on = true;
        for (std::size_t j = 4; j <= b && all_on; ++j) all_on = lies_on(q, a.member(j));
        if (all_on) continue;
      }
      return a;
    } catch (const InvalidArrangement&) {
      continue;
    }
  }
  throw InvalidArrangement("could not draw a generic star configuration");
}

/// Partition of an on-quadric K_{a1,a2} (with recorded rulings) into K_{b1,b2} and K_{c1,c2}:
/// the first b_i lines of ruling i go to the first piece, the rest to the second.
inline std::pair<Arrangement, Arrangement> split_bipartite(const Arrangement& a, std::size_t b1, std::size_t b2,
                                                           std::size_t c1, std::size_t c2) {
  if (!a.bipartition()) throw std::invalid_argument("arrangement has no recorded bipartition");
  const auto& parts = *a.bipartition();
  if (b1 + c1 != parts[0].size() || b2 + c2 != parts[1].size()) throw std::invalid_argument("split counts inconsistent");
  if (b1 == 0 || b2 == 0 || c1 == 0 || c2 == 0) throw std::invalid_argument("every piece needs lines in both rulings");
  auto take = [&](std::size_t from1, std::size_t n1, std::size_t from2, std::size_t n2) {
    std::vector<LinearSubspace> members;
    Bipartition sub;
    for (std::size_t i = from1; i < from1 + n1; ++i) {
      members.push_back(a.member(parts[0][i]));
      sub[0].push_back(members.size() - 1);
    }
    for (std::size_t i = from2; i < from2 + n2; ++i) {
      members.push_back(a.member(parts[1][i]));
      sub[1].push_back(members.size() - 1);
    }
    return Arrangement(a.field(), a.ambient_dimension(), std::move(members), std::move(sub));
  };
  return {take(0, b1, 0, b2), take(b1, c1, b2, c2)};
}

/// Line arrangement in P^3 of which `a` is a cone: the members' forms rewritten in a basis of
/// the span of all forms (extended to dimension 4 when the span is smaller).
inline Arrangement line_section(const Arrangement& a) {
  const std::size_t ncoords = static_cast<std::size_t>(a.ambient_dimension()) + 1;
  std::vector<std::size_t> all(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) all[i] = i;
  DenseMatrix basis = intersection_forms(a, all);
  if (basis.rows() > 4) throw InvalidArrangement("arrangement is not a cone over lines in P^3");
  for (std::size_t c = 0; c < ncoords && basis.rows() < 4; ++c) {
    DenseMatrix unit(a.field(), 1, ncoords);
    unit.raw(0, c) = 1;
    DenseMatrix candidate = basis.stacked(unit);
    if (rank(candidate) > basis.rows()) basis = std::move(candidate);
  }
  if (basis.rows() != 4) throw InvalidArrangement("ambient space too small for a line section");
  // Coordinates of each form in the basis: solve basis^T y = form^T.
  DenseMatrix transposed(a.field(), ncoords, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < ncoords; ++c) transposed.raw(c, r) = basis.raw(r, c);
  std::vector<LinearSubspace> lines;
  for (const auto& m : a.members()) {
    DenseMatrix coords(a.field(), 2, 4);
    for (std::size_t r = 0; r < 2; ++r) {
      const auto sol = solve(transposed, m.forms().row(r));
      if (!sol) throw std::logic_error("form outside the span of all forms");
      for (std::size_t c = 0; c < 4; ++c) coords.set(r, c, sol->particular[c]);
    }
    lines.emplace_back(std::move(coords));
  }
  return Arrangement(a.field(), 3, std::move(lines), a.bipartition());
}

/// For a complete bipartite arrangement of (n-2)-planes: whether its line section lies on a
/// smooth quadric with the two parts in opposite rulings.
inline bool lies_on_smooth_quadric(const Arrangement& a) {
  const Arrangement lines = line_section(a);
  const auto parts = complete_bipartition(incidence_graph(lines));
  if (!parts) return false;
  const auto& big = (*parts)[0].size() >= (*parts)[1].size() ? (*parts)[0] : (*parts)[1];
  if (big.size() < 3) return true;  // at most two lines per part always fit on a smooth quadric
  const std::vector<LinearSubspace> three{lines.member(big[0]), lines.member(big[1]), lines.member(big[2])};
  try {
    const Polynomial q = quadric_through(three).quadric.to_polynomial(lines.ring());
    return std::all_of(lines.members().begin(), lines.members().end(),
                       [&](const LinearSubspace& l) { return lies_on(q, l); });
  } catch (const InvalidArrangement&) {
    return false;
  }
}

/// Whether the regularity/ACM theorems cover K_{a,b} (a <= b) in P^n. In P^3 the case (1,3)
/// is covered as well.
inline bool theorem_covers(std::size_t a, std::size_t b, int n) {
  if (a > b) std::swap(a, b);
  if (a == 0) return false;
  if (b <= 2 || (a >= 2 && b <= 3) || a >= 3) return true;
  return n == 3 && a == 1 && b == 3;
}

}  // namespace kabreg
