#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace kabreg {

inline constexpr std::size_t kMaxVariables = 8;

/// Dense exponent vector with cached total degree.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  constexpr Monomial() noexcept = default;
  Monomial(std::initializer_list<int> exps) {
    if (exps.size() > kMaxVariables) throw std::invalid_argument("too many variables");
    std::size_t i = 0;
    for (int e : exps) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      exps_[i++] = static_cast<Exponent>(e);
      degree_ += e;
    }
  }

  static Monomial variable(std::size_t i, int power = 1) {
    if (i >= kMaxVariables) throw std::out_of_range("variable index");
    Monomial m;
    m.exps_[i] = static_cast<Exponent>(power);
    m.degree_ = power;
    return m;
  }

  constexpr int operator[](std::size_t i) const noexcept { return exps_[i]; }
  constexpr int degree() const noexcept { return degree_; }
  constexpr bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, int e) {
    degree_ += e - exps_[i];
    exps_[i] = static_cast<Exponent>(e);
  }

  friend constexpr Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.exps_[i] = static_cast<Exponent>(a.exps_[i] + b.exps_[i]);
    m.degree_ = a.degree_ + b.degree_;
    return m;
  }

  /// True when this monomial divides `other`.
  constexpr bool divides(const Monomial& other) const noexcept {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// this / divisor; requires divisor | this.
  constexpr Monomial quotient(const Monomial& divisor) const noexcept {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.exps_[i] = static_cast<Exponent>(exps_[i] - divisor.exps_[i]);
    m.degree_ = degree_ - divisor.degree_;
    return m;
  }

  friend constexpr Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
      m.degree_ += m.exps_[i];
    }
    return m;
  }

  friend constexpr bool coprime(const Monomial& a, const Monomial& b) noexcept {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  friend constexpr bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.exps_ == b.exps_; }

 private:
  std::array<Exponent, kMaxVariables> exps_{};
  int degree_ = 0;
};

/// Monomial order on the first `nvars` variables.
class TermOrder {
 public:
  enum class Kind { GradedReverseLex, Lex, BlockElimination };

  static constexpr TermOrder grevlex() noexcept { return TermOrder(Kind::GradedReverseLex, 0); }
  static constexpr TermOrder lex() noexcept { return TermOrder(Kind::Lex, 0); }
  /// Eliminates the first `k` variables: grevlex on that block, ties broken by grevlex on the rest.
  static constexpr TermOrder block_elimination(std::size_t k) noexcept { return TermOrder(Kind::BlockElimination, k); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr std::size_t block() const noexcept { return block_; }

  /// Negative, zero or positive as a <, =, > b.
  constexpr int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const noexcept {
    switch (kind_) {
      case Kind::Lex:
        for (std::size_t i = 0; i < nvars; ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::GradedReverseLex:
        return grevlex_range(a, b, 0, nvars);
      case Kind::BlockElimination: {
        const std::size_t k = std::min(block_, nvars);
        if (int c = grevlex_range(a, b, 0, k); c != 0) return c;
        return grevlex_range(a, b, k, nvars);
      }
    }
    return 0;
  }

  friend constexpr bool operator==(const TermOrder&, const TermOrder&) noexcept = default;

 private:
  constexpr TermOrder(Kind kind, std::size_t block) noexcept : kind_(kind), block_(block) {}

  static constexpr int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) noexcept {
    int da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }

  Kind kind_;
  std::size_t block_;
};

}  // namespace kabreg
