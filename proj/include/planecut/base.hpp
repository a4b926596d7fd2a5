#pragma once
// Shared substrate: error hierarchy, checked 64-bit arithmetic, exact fractions.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace planecut {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// sentinel for "no vertex / no dart / no face"
constexpr std::size_t NONE = static_cast<std::size_t>(-1);
// sentinel for unreachable distances
constexpr i64 INF64 = std::numeric_limits<i64>::max();

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define PLANECUT_DEFINE_ERROR(Name) \
  struct Name : Error {             \
    using Error::Error;             \
  }

PLANECUT_DEFINE_ERROR(InvalidInput);
PLANECUT_DEFINE_ERROR(FormatError);
PLANECUT_DEFINE_ERROR(NonPlanarEmbedding);
PLANECUT_DEFINE_ERROR(DisconnectedGraph);
PLANECUT_DEFINE_ERROR(NonpositiveCost);
PLANECUT_DEFINE_ERROR(UnreachableVertex);
PLANECUT_DEFINE_ERROR(DartInTree);
PLANECUT_DEFINE_ERROR(SelfCrossingCycle);
PLANECUT_DEFINE_ERROR(NoCut);
PLANECUT_DEFINE_ERROR(OddTotalWeight);
PLANECUT_DEFINE_ERROR(NoBalancedCut);
PLANECUT_DEFINE_ERROR(ClaimViolated);
PLANECUT_DEFINE_ERROR(BudgetExceeded);
PLANECUT_DEFINE_ERROR(NoPositiveDart);
PLANECUT_DEFINE_ERROR(LengthMismatch);
PLANECUT_DEFINE_ERROR(ArithmeticOverflow);

#undef PLANECUT_DEFINE_ERROR

// Contract check that survives any build mode.
inline void require(bool ok, const char* what) {
  if (!ok) throw Error(std::string("internal invariant violated: ") + what);
}

namespace detail {

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

}  // namespace detail

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("i64 add overflow");
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("i64 sub overflow");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("i64 mul overflow");
  return r;
}

inline std::string to_string_i128(i128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::string out(s.rbegin(), s.rend());
  return out;
}

namespace detail {

inline i128 iabs128(i128 x) { return x < 0 ? -x : x; }

inline i128 gcd128(i128 a, i128 b) {
  a = iabs128(a);
  b = iabs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Guard for cross-multiplication: both operands must stay below 2^62 so the
// i128 product cannot wrap.
constexpr i128 CROSS_LIMIT = (i128(1) << 62);

inline i128 checked_cross(i128 a, i128 b) {
  if (iabs128(a) >= CROSS_LIMIT || iabs128(b) >= CROSS_LIMIT)
    throw ArithmeticOverflow("fraction cross-multiply out of range");
  return a * b;
}

}  // namespace detail

// Exact rational with canonical form den > 0, gcd(|num|, den) == 1.
struct Fraction {
  i128 num = 0;
  i128 den = 1;

  Fraction() = default;
  Fraction(i128 n, i128 d) : num(n), den(d) { normalize(); }
  static Fraction integer(i64 n) { return Fraction(n, 1); }

  void normalize() {
    if (den == 0) throw InvalidInput("fraction with zero denominator");
    if (den < 0) {
      den = -den;
      num = -num;
    }
    i128 g = detail::gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  // negative / zero / positive comparison against other
  int compare(const Fraction& o) const {
    i128 lhs = detail::checked_cross(num, o.den);
    i128 rhs = detail::checked_cross(o.num, den);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  bool operator==(const Fraction& o) const { return compare(o) == 0; }
  bool operator!=(const Fraction& o) const { return compare(o) != 0; }
  bool operator<(const Fraction& o) const { return compare(o) < 0; }
  bool operator<=(const Fraction& o) const { return compare(o) <= 0; }
  bool operator>(const Fraction& o) const { return compare(o) > 0; }
  bool operator>=(const Fraction& o) const { return compare(o) >= 0; }

  Fraction operator+(const Fraction& o) const {
    return Fraction(detail::checked_cross(num, o.den) + detail::checked_cross(o.num, den),
                    detail::checked_cross(den, o.den));
  }
  Fraction operator-(const Fraction& o) const {
    return Fraction(detail::checked_cross(num, o.den) - detail::checked_cross(o.num, den),
                    detail::checked_cross(den, o.den));
  }
  Fraction operator*(const Fraction& o) const {
    return Fraction(detail::checked_cross(num, o.num), detail::checked_cross(den, o.den));
  }
  Fraction operator/(const Fraction& o) const {
    if (o.num == 0) throw InvalidInput("fraction division by zero");
    return Fraction(detail::checked_cross(num, o.den), detail::checked_cross(den, o.num));
  }

  Fraction abs() const { return num < 0 ? Fraction(-num, den) : *this; }

  // canonical "num/den" text (always with explicit denominator)
  std::string str() const { return to_string_i128(num) + "/" + to_string_i128(den); }

  double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
};

}  // namespace planecut
