#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace kabreg {

inline constexpr std::uint32_t kDefaultModulus = 32003;

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

constexpr bool is_odd_prime(std::uint64_t p) noexcept {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

namespace detail {

constexpr std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

constexpr std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}

constexpr std::uint32_t neg_mod(std::uint32_t a, std::uint32_t p) noexcept { return a == 0 ? 0 : p - a; }

constexpr std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

// Extended Euclid on (a, p).
constexpr std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero in prime field");
  std::int64_t r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  s0 %= static_cast<std::int64_t>(p);
  if (s0 < 0) s0 += p;
  return static_cast<std::uint32_t>(s0);
}

constexpr std::uint32_t reduce_signed(std::int64_t v, std::uint32_t p) noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace detail

/// Element of F_p. Carries its modulus so mixed-field arithmetic is caught.
class PrimeFieldScalar {
 public:
  constexpr PrimeFieldScalar() noexcept = default;
  constexpr PrimeFieldScalar(std::int64_t value, std::uint32_t modulus) noexcept
      : residue_(detail::reduce_signed(value, modulus)), modulus_(modulus) {}

  static constexpr PrimeFieldScalar from_residue(std::uint32_t residue, std::uint32_t modulus) noexcept {
    PrimeFieldScalar s;
    s.residue_ = residue;
    s.modulus_ = modulus;
    return s;
  }

  constexpr std::uint32_t residue() const noexcept { return residue_; }
  constexpr std::uint32_t modulus() const noexcept { return modulus_; }
  constexpr bool is_zero() const noexcept { return residue_ == 0; }

  friend constexpr PrimeFieldScalar operator+(PrimeFieldScalar a, PrimeFieldScalar b) {
    check(a, b);
    return from_residue(detail::add_mod(a.residue_, b.residue_, a.modulus_), a.modulus_);
  }
  friend constexpr PrimeFieldScalar operator-(PrimeFieldScalar a, PrimeFieldScalar b) {
    check(a, b);
    return from_residue(detail::sub_mod(a.residue_, b.residue_, a.modulus_), a.modulus_);
  }
  friend constexpr PrimeFieldScalar operator*(PrimeFieldScalar a, PrimeFieldScalar b) {
    check(a, b);
    return from_residue(detail::mul_mod(a.residue_, b.residue_, a.modulus_), a.modulus_);
  }
  friend constexpr PrimeFieldScalar operator/(PrimeFieldScalar a, PrimeFieldScalar b) { return a * invert(b); }
  constexpr PrimeFieldScalar operator-() const noexcept {
    return from_residue(detail::neg_mod(residue_, modulus_), modulus_);
  }
  PrimeFieldScalar& operator+=(PrimeFieldScalar o) { return *this = *this + o; }
  PrimeFieldScalar& operator-=(PrimeFieldScalar o) { return *this = *this - o; }
  PrimeFieldScalar& operator*=(PrimeFieldScalar o) { return *this = *this * o; }

  friend constexpr bool operator==(PrimeFieldScalar, PrimeFieldScalar) noexcept = default;

  /// Multiplicative inverse; throws DivisionByZero on 0.
  friend constexpr PrimeFieldScalar invert(PrimeFieldScalar x) {
    return from_residue(detail::inv_mod(x.residue_, x.modulus_), x.modulus_);
  }

  friend std::ostream& operator<<(std::ostream& os, PrimeFieldScalar x) { return os << x.residue_; }

 private:
  static constexpr void check(PrimeFieldScalar a, PrimeFieldScalar b) {
    if (a.modulus_ != b.modulus_) throw std::invalid_argument("prime field modulus mismatch");
  }

  std::uint32_t residue_ = 0;
  std::uint32_t modulus_ = kDefaultModulus;
};

/// A validated prime field F_p, p odd and p^2 < 2^64.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t modulus = kDefaultModulus) : modulus_(modulus) {
    if (!is_odd_prime(modulus) || modulus >= (1u << 31))
      throw std::invalid_argument("modulus must be an odd prime below 2^31");
  }

  std::uint32_t modulus() const noexcept { return modulus_; }
  PrimeFieldScalar operator()(std::int64_t value) const noexcept { return {value, modulus_}; }
  PrimeFieldScalar zero() const noexcept { return {0, modulus_}; }
  PrimeFieldScalar one() const noexcept { return {1, modulus_}; }

  friend bool operator==(const PrimeField&, const PrimeField&) noexcept = default;

 private:
  std::uint32_t modulus_;
};

}  // namespace kabreg
