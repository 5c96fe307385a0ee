#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace kabreg::cohomology {

/// Raised when a twist falls outside the range where the quadric exact sequence identifies
/// the ideal sheaf's cohomology with that of O(-a,-b) on P^1 x P^1.
class FormulaRangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline long choose(long n, long k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// h^i(P^1, O(d)).
inline long h_p1(int i, long d) {
  switch (i) {
    case 0: return std::max(0L, d + 1);
    case 1: return std::max(0L, -d - 1);
    default: throw std::out_of_range("P^1 has cohomology only in degrees 0 and 1");
  }
}

/// h^i(P^1 x P^1, O(p, q)) by Kunneth.
inline long h_p1xp1(int i, long p, long q) {
  if (i < 0 || i > 2) throw std::out_of_range("P^1 x P^1 has cohomology only in degrees 0..2");
  long sum = 0;
  for (int j = 0; j <= 1; ++j) {
    const int k = i - j;
    if (k < 0 || k > 1) continue;
    sum += h_p1(j, p) * h_p1(k, q);
  }
  return sum;
}

/// h^i(P^3, O(m)).
inline long h_p3(int i, long m) {
  switch (i) {
    case 0: return detail::choose(m + 3, 3);
    case 1:
    case 2: return 0;
    case 3: return detail::choose(-m - 1, 3);
    default: throw std::out_of_range("P^3 has cohomology only in degrees 0..3");
  }
}

/// h^i(P^3, I_A(twist)) for the ideal sheaf of a lines in one ruling and b in the other of a
/// smooth quadric. Valid for i in {1,2,3} and twist >= -1; anything else is refused.
inline long h_ideal_sheaf(int i, long twist, int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("both rulings need at least one line");
  if (i < 1 || i > 3) throw std::out_of_range("ideal sheaf cohomology index must be 1, 2 or 3");
  if (twist < -1)
    throw FormulaRangeError("twist " + std::to_string(twist) + " with i = " + std::to_string(i) +
                            " is out of formula range (needs twist >= -1)");
  if (i == 3) return h_p3(3, twist - 2);
  return h_p1xp1(i, twist - a, twist - b);
}

/// Table of h^i(I_A(m)) for i = 1..3 and m in [lo, hi].
struct CohomologyTable {
  int lo = 0;
  int hi = 0;
  std::map<std::pair<int, int>, long> values;  // (i, m) -> h^i

  long at(int i, int m) const { return values.at({i, m}); }
};

inline CohomologyTable ideal_sheaf_table(int a, int b, int lo, int hi) {
  CohomologyTable t{lo, hi, {}};
  for (int m = lo; m <= hi; ++m)
    for (int i = 1; i <= 3; ++i) t.values[{i, m}] = h_ideal_sheaf(i, m, a, b);
  return t;
}

/// Least d with h^i(I_A(d - i)) = 0 for i = 1, 2, 3, scanning upward from d = 1.
inline int reg_from_cohomology(int a, int b) {
  if (a < 1 || a > b) throw std::invalid_argument("need 1 <= a <= b");
  const int cap = a + b + 2;
  for (int d = 1; d <= cap; ++d) {
    bool fails = false;
    bool unknown = false;
    for (int i = 1; i <= 3 && !fails; ++i) {
      if (d - i < -1) {
        unknown = true;
        continue;
      }
      fails = h_ideal_sheaf(i, d - i, a, b) != 0;
    }
    if (fails) continue;
    if (unknown) throw FormulaRangeError("regularity scan left the formula range at d = " + std::to_string(d));
    return d;
  }
  throw std::logic_error("regularity scan exceeded its cap");
}

/// h^1(I_A(m)) = 0 for every twist m >= -1; below that it vanishes for any reduced curve.
inline bool acm_from_cohomology(int a, int b) {
  if (a < 1 || a > b) throw std::invalid_argument("need 1 <= a <= b");
  for (int m = -1; m <= a + b + 2; ++m)
    if (h_ideal_sheaf(1, m, a, b) != 0) return false;
  return true;
}

}  // namespace kabreg::cohomology
