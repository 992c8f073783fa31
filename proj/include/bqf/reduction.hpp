#ifndef BQF_REDUCTION_HPP
#define BQF_REDUCTION_HPP

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "bqf/forms.hpp"

namespace bqf {

/* Classical reduction conditions for a positive definite form:
 * |b| <= a <= c, with b >= 0 whenever |b| == a or a == c. */
inline bool is_reduced(const Form& q) {
  if (q.discriminant().value() >= 0) return false;
  const Int &a = q.a(), &b = q.b(), &c = q.c();
  if (abs(b) > a || a > c) return false;
  if (b < 0 && (-b == a || a == c)) return false;
  return true;
}

/* A positive definite form satisfying the reduction conditions; there is
 * exactly one per proper-equivalence class. */
class ReducedForm {
 public:
  explicit ReducedForm(Form f) : form_(std::move(f)) {
    if (!is_reduced(form_)) throw precondition_error("form is not reduced");
  }

  const Form& form() const { return form_; }
  operator const Form&() const { return form_; }

  bool operator==(const ReducedForm&) const = default;
  bool operator<(const ReducedForm& o) const { return form_ < o.form_; }

 private:
  Form form_;
};

/* Determinant-one matrix certifying q1·U == q2 for the pair it was issued
 * for.  The determinant is checked at construction. */
class EquivWitness {
 public:
  explicit EquivWitness(Mat2 u) : u_(std::move(u)) {
    if (u_.det() != 1)
      throw precondition_error("witness must have determinant 1");
  }

  const Mat2& matrix() const { return u_; }

 private:
  Mat2 u_;
};

struct Reduction {
  ReducedForm form;
  EquivWitness witness;  /* act(input, witness) == form */
};

/*
 * Gauss reduction: translate b into (-a, a], swap a and c while a > c,
 * then fix the boundary sign.  Each swap strictly decreases a, so the loop
 * terminates.  The returned witness U satisfies act(q, U) == reduced.
 */
inline Reduction reduce(const Form& q) {
  if (q.discriminant().value() >= 0)
    throw precondition_error("indefinite reduction unsupported");
  Form cur = q;
  Mat2 u = Mat2::identity();
  auto apply = [&](const Mat2& m) {
    cur = act(cur, m);
    u = u * m;
  };
  for (;;) {
    Int k = floor_div(cur.a() - cur.b(), 2 * cur.a());
    if (k != 0) apply(Mat2::translation(k));
    if (cur.a() > cur.c()) {
      apply(Mat2::inversion());
      continue;
    }
    break;
  }
  if (cur.a() == cur.c() && cur.b() < 0) apply(Mat2::inversion());
  return {ReducedForm(cur), EquivWitness(u)};
}

/*
 * Witness for proper equivalence of two positive definite forms, or nullopt.
 * Compares canonical representatives; the witness is composed from the two
 * reduction witnesses.  Mismatched discriminants yield nullopt rather than
 * an error.
 */
inline std::optional<EquivWitness> equivalent(const Form& q1, const Form& q2) {
  Int d1 = q1.discriminant().value();
  Int d2 = q2.discriminant().value();
  if (d1 >= 0 || d2 >= 0)
    throw precondition_error("indefinite equivalence unsupported");
  if (d1 != d2) return std::nullopt;
  Reduction r1 = reduce(q1);
  Reduction r2 = reduce(q2);
  if (!(r1.form == r2.form)) return std::nullopt;
  return EquivWitness(r1.witness.matrix() *
                      r2.witness.matrix().inverse_unimodular());
}

/* The finite set H(D): all reduced primitive forms of discriminant D < 0,
 * in lexicographic order. */
class ClassSet {
 public:
  ClassSet(Discriminant disc, std::vector<ReducedForm> members)
      : disc_(std::move(disc)), members_(std::move(members)) {}

  const Discriminant& discriminant() const { return disc_; }
  const std::vector<ReducedForm>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  bool contains(const ReducedForm& f) const {
    return std::binary_search(members_.begin(), members_.end(), f);
  }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  Discriminant disc_;
  std::vector<ReducedForm> members_;
};

/*
 * Enumerates H(D) directly: a runs over 1..floor(sqrt(|D|/3)), b over
 * |b| <= a with b ≡ D (mod 2), and c = (b² - D)/(4a) when the division is
 * exact; keep (a, b, c) when c >= a, the form is primitive, and the
 * boundary sign rule holds.
 */
inline ClassSet class_set(const Discriminant& d) {
  const Int& D = d.value();
  if (D >= 0) throw precondition_error("negative discriminant required");
  std::vector<ReducedForm> members;
  for (Int a = 1; 3 * a * a <= -D; ++a) {
    for (Int b = -a; b <= a; ++b) {
      if (mod_floor(b - D, 2) != 0) continue;
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (-b == a || a == c)) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      members.emplace_back(Form(a, b, c));
    }
  }
  return ClassSet(d, std::move(members));
}

namespace detail {

/* Coprime pairs (x, y) with max(|x|, |y|) == radius, ordered so that
 * (1, 0) and (0, 1) come first on the unit ring. */
inline std::vector<std::pair<Int, Int>> coprime_ring(int radius) {
  std::vector<std::pair<long, long>> ring;
  for (long x = -radius; x <= radius; ++x)
    for (long y = -radius; y <= radius; ++y) {
      if (std::max(std::abs(x), std::abs(y)) != radius) continue;
      if (std::gcd(std::abs(x), std::abs(y)) != 1) continue;
      ring.emplace_back(x, y);
    }
  std::sort(ring.begin(), ring.end(), [](const auto& l, const auto& r) {
    auto key = [](const std::pair<long, long>& v) {
      return std::make_tuple(std::abs(v.second), std::abs(v.first),
                             v.second < 0, v.first < 0);
    };
    return key(l) < key(r);
  });
  std::vector<std::pair<Int, Int>> out;
  out.reserve(ring.size());
  for (auto [x, y] : ring) out.emplace_back(x, y);
  return out;
}

}  // namespace detail

struct CoprimeNormalization {
  Form form;             /* equivalent to the input, gcd(form.a, f) == 1 */
  EquivWitness witness;  /* act(input, witness) == form */
};

/*
 * Replaces a primitive form by an equivalent one whose leading coefficient
 * is coprime to f.  Searches coprime vectors (x, y) by increasing
 * max(|x|, |y|) until gcd(q(x, y), f) == 1, then extends (x, y) to a
 * determinant-one matrix with first column (x, y) via a Bezout identity.
 * For primitive q a suitable vector exists within a small radius; running
 * past the cap means a bug, not bad input.
 */
inline CoprimeNormalization normalize_coprime(const Form& q, const Int& f) {
  if (f == 0) throw precondition_error("conductor must be nonzero");
  if (!q.is_primitive()) throw precondition_error("form must be primitive");
  const int cap = 4 * distinct_prime_factors(f) + 4;
  for (int radius = 1; radius <= cap; ++radius) {
    for (const auto& [x, y] : detail::coprime_ring(radius)) {
      if (gcd(q.eval(x, y), f) != 1) continue;
      Bezout bz = xgcd(x, y);  /* bz.x * x + bz.y * y == 1 */
      Mat2 m{x, -bz.y, y, bz.x};
      return {act(q, m), EquivWitness(m)};
    }
  }
  throw std::logic_error("coprime normalization search radius exhausted");
}

/*
 * Determinant-one matrices fixing a reduced form: {±I} below -4, plus the
 * inversion pair on x² + y² for D == -4, plus two order-six rotations on
 * x² + xy + y² for D == -3.  The reduced form of those two discriminants
 * is unique, so no further case analysis is needed.
 */
inline std::vector<Mat2> automorphisms(const ReducedForm& rf) {
  const Int D = rf.form().discriminant().value();
  const Mat2 id = Mat2::identity();
  if (D < -4) return {id, -id};
  if (D == -4) {
    Mat2 s = Mat2::inversion();
    return {id, -id, s, -s};
  }
  Mat2 u{0, -1, 1, 1};
  Mat2 v{1, 1, -1, 0};
  return {id, -id, u, -u, v, -v};
}

}  // namespace bqf

#endif /* BQF_REDUCTION_HPP */
