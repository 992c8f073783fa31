#ifndef BQF_FORMS_HPP
#define BQF_FORMS_HPP

#include <tuple>
#include <utility>

#include "bqf/integers.hpp"

namespace bqf {

/*
 * 2x2 integer matrix with rows (p r) and (s t).  Matrices act on forms on the
 * right: (q·M)(x,y) = q(px + ry, sx + ty), so the first column substitutes
 * for x and the second for y.  Every other module relies on this convention.
 */
struct Mat2 {
  Int p{1}, r{0}, s{0}, t{1};

  Int det() const { return p * t - r * s; }

  static Mat2 identity() { return {}; }

  /* (0 -1 / 1 0), order four; sends (a, b, c) to (c, -b, a). */
  static Mat2 inversion() { return {0, -1, 1, 0}; }

  /* (1 k / 0 1); sends (a, b, c) to (a, b + 2ka, c + kb + k²a). */
  static Mat2 translation(const Int& k) { return {1, k, 0, 1}; }

  Mat2 operator*(const Mat2& o) const {
    return {p * o.p + r * o.s, p * o.r + r * o.t,
            s * o.p + t * o.s, s * o.r + t * o.t};
  }

  Mat2 operator-() const { return {-p, -r, -s, -t}; }

  Mat2 inverse_unimodular() const {
    Int d = det();
    if (d == 1) return {t, -r, -s, p};
    if (d == -1) return {-t, r, s, -p};
    throw precondition_error("matrix must be unimodular");
  }

  bool operator==(const Mat2&) const = default;
};

/*
 * Integer binary quadratic form ax² + bxy + cy².  The discriminant b² - 4ac
 * must not be a perfect square, and forms of negative discriminant must be
 * positive definite (a > 0).  Primitivity is not required.
 */
class Form {
 public:
  Form(Int a, Int b, Int c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    Int d = b_ * b_ - 4 * a_ * c_;
    if (is_perfect_square(d)) throw precondition_error("square discriminant");
    if (d < 0 && a_ <= 0)
      throw precondition_error("form must be positive definite");
  }

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }

  Int eval(const Int& x, const Int& y) const {
    return a_ * x * x + b_ * x * y + c_ * y * y;
  }

  Discriminant discriminant() const {
    return Discriminant(b_ * b_ - 4 * a_ * c_);
  }

  Int content() const { return gcd(gcd(a_, b_), c_); }

  bool is_primitive() const { return content() == 1; }

  bool operator==(const Form&) const = default;

  /* lexicographic on (a, b, c), used for canonical orderings */
  bool operator<(const Form& o) const {
    return std::tie(a_, b_, c_) < std::tie(o.a_, o.b_, o.c_);
  }

 private:
  Int a_, b_, c_;
};

/*
 * Right action of a nonsingular integer matrix: the new coefficients are
 * (q(p,s), q(p+r, s+t) - q(p,s) - q(r,t), q(r,t)).  Satisfies
 * (q·M)·N = q·(M·N) and scales the discriminant by det(M)².
 */
inline Form act(const Form& q, const Mat2& m) {
  if (m.det() == 0) throw precondition_error("zero determinant");
  Int first = q.eval(m.p, m.s);
  Int last = q.eval(m.r, m.t);
  Int middle = q.eval(m.p + m.r, m.s + m.t) - first - last;
  return Form(std::move(first), std::move(middle), std::move(last));
}

/* Self-test predicate: disc(q·M) == det(M)² · disc(q).  Always true. */
inline bool disc_scaling_check(const Form& q, const Mat2& m) {
  Int d = m.det();
  return act(q, m).discriminant().value() == d * d * q.discriminant().value();
}

}  // namespace bqf

#endif /* BQF_FORMS_HPP */
