#ifndef BQF_INTEGERS_HPP
#define BQF_INTEGERS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <utility>

#include "bqf/errors.hpp"

namespace bqf {

/* All arithmetic in this library is exact.  cpp_int keeps it that way for
 * coefficients of any size without a hard dependency beyond Boost headers. */
using Int = boost::multiprecision::cpp_int;

/* Quotient of a/b rounded toward minus infinity.  b must be nonzero. */
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

/* Representative of a modulo m in [0, m).  m must be positive. */
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

struct Bezout {
  Int g;  /* gcd(a, b) > 0 */
  Int x;  /* x*a + y*b == g */
  Int y;
};

/* Extended Euclidean algorithm. */
inline Bezout xgcd(const Int& a, const Int& b) {
  if (a == 0 && b == 0) throw precondition_error("undefined gcd");
  Int r0 = a, r1 = b;
  Int x0 = 1, x1 = 0;
  Int y0 = 0, y1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    r0 -= q * r1;
    x0 -= q * x1;
    y0 -= q * y1;
    r0.swap(r1);
    x0.swap(x1);
    y0.swap(y1);
  }
  if (r0 < 0) {
    r0 = -r0;
    x0 = -x0;
    y0 = -y0;
  }
  return {r0, x0, y0};
}

/* Integer square root, rounded down.  n must be nonnegative. */
inline Int isqrt(const Int& n) {
  if (n < 0) throw precondition_error("negative radicand");
  return sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

namespace detail {

inline bool miller_rabin_composite(const Int& n, const Int& base, const Int& d,
                                   int twos) {
  Int x = powm(base, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < twos; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

/* Deterministic for every input below 3.3e24 (covers all 64-bit values);
 * the witness set is the classical {2, 3, ..., 37}. */
inline bool is_odd_prime(const Int& n) {
  if (n < 3 || n % 2 == 0) return false;
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  int twos = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  for (int base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (detail::miller_rabin_composite(n, Int(base), d, twos)) return false;
  return true;
}

/* Legendre symbol of d modulo the odd prime f, by Euler's criterion. */
inline int kronecker(const Int& d, const Int& f) {
  if (!is_odd_prime(f)) throw precondition_error("unsupported modulus");
  Int a = mod_floor(d, f);
  if (a == 0) return 0;
  return powm(a, (f - 1) / 2, f) == 1 ? 1 : -1;
}

/* Number of distinct prime divisors of |n|, by trial division. */
inline int distinct_prime_factors(const Int& n) {
  Int m = abs(n);
  if (m <= 1) return 0;
  int count = 0;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    ++count;
    while (m % p == 0) m /= p;
  }
  if (m > 1) ++count;
  return count;
}

inline bool is_squarefree(const Int& n) {
  Int m = abs(n);
  if (m == 0) return false;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return false;
  }
  return true;
}

/* An integer that can occur as b² - 4ac: congruent to 0 or 1 modulo 4 and
 * not a perfect square. */
class Discriminant {
 public:
  explicit Discriminant(Int value) : value_(std::move(value)) {
    Int r = mod_floor(value_, 4);
    if (r != 0 && r != 1)
      throw precondition_error("discriminant must be 0 or 1 mod 4");
    if (is_perfect_square(value_))
      throw precondition_error("discriminant must not be a perfect square");
  }

  const Int& value() const { return value_; }
  bool negative() const { return value_ < 0; }

  bool operator==(const Discriminant&) const = default;

 private:
  Int value_;
};

/* True when no discriminant d and integer f > 1 satisfy value == d*f². */
inline bool is_fundamental(const Discriminant& d) {
  const Int& v = d.value();
  if (mod_floor(v, 4) == 1) return is_squarefree(v);
  Int q = v / 4;
  Int r = mod_floor(q, 4);
  return (r == 2 || r == 3) && is_squarefree(q);
}

}  // namespace bqf

#endif /* BQF_INTEGERS_HPP */
