#ifndef BQF_NESTING_HPP
#define BQF_NESTING_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "bqf/reduction.hpp"

namespace bqf {

/*
 * Index g in {0, ..., f} selecting a determinant-f lift matrix for an odd
 * prime conductor f:
 *
 *     g < f:  (f g / 0 1)        g == f:  (1 0 / 0 f)
 *
 * The f + 1 matrices are pairwise inequivalent under right multiplication
 * by determinant-one matrices, and every integer matrix of determinant f
 * factors through exactly one of them (see decompose_det_f).
 */
class LiftIndex {
 public:
  LiftIndex(Int g, Int f) : g_(std::move(g)), f_(std::move(f)) {
    if (!is_odd_prime(f_))
      throw precondition_error("conductor must be an odd prime");
    if (g_ < 0 || g_ > f_) throw precondition_error("lift index out of range");
  }

  const Int& g() const { return g_; }
  const Int& f() const { return f_; }

  /* the index f selects the lift (a, b, c) -> (a, fb, f²c) */
  bool principal() const { return g_ == f_; }

  Mat2 matrix() const {
    if (g_ == f_) return {1, 0, 0, f_};
    return {f_, g_, 0, 1};
  }

  bool operator==(const LiftIndex&) const = default;

 private:
  Int g_, f_;
};

/*
 * Lift of a primitive form along R_g.  For g < f the result is
 * (f²a, f(2ag + b), ag² + bg + c); for g == f it is (a, fb, f²c).  The
 * discriminant is multiplied by f².  The lift is primitive exactly when
 * f does not divide q(g, 1); for g == f this requires gcd(a, f) == 1.
 */
inline Form lift_g(const Form& q, const LiftIndex& idx) {
  if (!q.is_primitive()) throw precondition_error("form must be primitive");
  return act(q, idx.matrix());
}

/*
 * The indices g for which lift_g(q, g) stays primitive: those with
 * q(g, 1) ≢ 0 (mod f), together with g == f.  There are exactly
 * f - kronecker(disc(q), f) of them.  Requires gcd(q.a, f) == 1; apply
 * normalize_coprime first when it is not.
 */
inline std::vector<LiftIndex> primitive_lift_indices(const Form& q,
                                                     const Int& f) {
  if (!is_odd_prime(f))
    throw precondition_error("conductor must be an odd prime");
  if (!q.is_primitive()) throw precondition_error("form must be primitive");
  if (gcd(q.a(), f) != 1)
    throw precondition_error("leading coefficient not coprime");
  std::vector<LiftIndex> out;
  for (Int g = 0; g < f; ++g)
    if (mod_floor(q.eval(g, 1), f) != 0) out.emplace_back(g, f);
  out.emplace_back(f, f);
  return out;
}

struct DetConductorDecomposition {
  LiftIndex index;
  EquivWitness unimodular;  /* input == index.matrix() * unimodular.matrix() */
};

/*
 * Factors a determinant-f matrix M as R_g·U with det U == 1; g is unique.
 * gcd(s, t) divides f, hence equals 1 or f.  When it is 1, a Bezout pair
 * λs + μt == 1 gives M·(t λ / -s μ) == (f λp+μr / 0 1), and reducing
 * λp + μr modulo f into [0, f) yields g and U == (μ+ks kt-λ / s t).
 * When gcd(s, t) == f, the factorization is M == R_f·(p r / s/f t/f).
 */
inline DetConductorDecomposition decompose_det_f(const Mat2& m, const Int& f) {
  if (!is_odd_prime(f))
    throw precondition_error("conductor must be an odd prime");
  if (m.det() != f)
    throw precondition_error("matrix determinant must equal conductor");
  if (gcd(m.s, m.t) == f) {
    Mat2 u{m.p, m.r, m.s / f, m.t / f};
    return {LiftIndex(f, f), EquivWitness(u)};
  }
  Bezout bz = xgcd(m.s, m.t);  /* bz.x * s + bz.y * t == 1 */
  Int g0 = bz.x * m.p + bz.y * m.r;
  Int k = floor_div(g0, f);
  Mat2 u{bz.y + k * m.s, k * m.t - bz.x, m.s, m.t};
  return {LiftIndex(g0 - k * f, f), EquivWitness(u)};
}

struct DescentNormalization {
  Form form;             /* same leading coefficient, f | b, f² | c */
  EquivWitness witness;  /* act(input, witness) == form */
};

/*
 * Translates a form of discriminant divisible by f² into an equivalent one
 * whose middle coefficient is divisible by f and last by f².  With
 * 2λA + μf == 1, the translation by -λB leaves A fixed and sends B to
 * B(1 - 2λA) == Bμf; the discriminant relation then forces f² | C'.
 */
inline DescentNormalization normalize_for_descent(const Form& big,
                                                  const Int& f) {
  if (gcd(2 * big.a(), f) != 1)
    throw precondition_error("leading coefficient not coprime");
  if (big.discriminant().value() % (f * f) != 0)
    throw precondition_error("discriminant not divisible by conductor squared");
  Bezout bz = xgcd(2 * big.a(), f);
  Mat2 m = Mat2::translation(-bz.x * big.b());
  return {act(big, m), EquivWitness(m)};
}

struct DescentResult {
  ReducedForm base;  /* primitive, disc(base) · f² == disc(input) */
  Mat2 lift_matrix;  /* determinant f, act(base, lift_matrix) == input */
};

/*
 * The descent map: a primitive positive definite form of discriminant Df²
 * is sent to the canonical representative of the unique class of
 * discriminant D it lifts from.  Chains normalize_coprime and
 * normalize_for_descent, strips one factor f from b and f² from c, and
 * reduces.  When D is itself divisible by f², exactly one factor f² is
 * stripped per call; iterate to reach the fundamental level.
 */
inline DescentResult descend(const Form& big, const Int& f) {
  if (!is_odd_prime(f))
    throw precondition_error("conductor must be an odd prime");
  if (!big.is_primitive()) throw precondition_error("form must be primitive");
  const Int d2 = big.discriminant().value();
  if (d2 >= 0) throw precondition_error("indefinite descent unsupported");
  if (d2 % (f * f) != 0)
    throw precondition_error("discriminant not divisible by conductor squared");

  CoprimeNormalization cn = normalize_coprime(big, f);
  DescentNormalization dn = normalize_for_descent(cn.form, f);
  Form stripped(dn.form.a(), dn.form.b() / f, dn.form.c() / (f * f));
  Reduction red = reduce(stripped);

  /* act(stripped, R_f) == dn.form and act(big, w) == dn.form, so
   * big == act(base, U3⁻¹ · R_f · w⁻¹). */
  Mat2 w = cn.witness.matrix() * dn.witness.matrix();
  Mat2 principal{1, 0, 0, f};
  Mat2 m = red.witness.matrix().inverse_unimodular() * principal *
           w.inverse_unimodular();
  if (!(act(red.form.form(), m) == big))
    throw std::logic_error("descent matrix reconstruction failed");
  return {red.form, m};
}

/*
 * Two primitive forms of equal discriminant Df² are semi-equivalent when
 * they lift from equivalent forms of discriminant D.  Deciding it reduces
 * to comparing descended classes.
 */
inline bool semi_equivalent(const Form& lhs, const Form& rhs, const Int& f) {
  if (!(lhs.discriminant() == rhs.discriminant()))
    throw precondition_error("discriminant mismatch");
  DescentResult dl = descend(lhs, f);
  DescentResult dr = descend(rhs, f);
  return equivalent(dl.base.form(), dr.base.form()).has_value();
}

struct PrincipalLift {
  Form base;        /* equivalent to the input form */
  Mat2 unimodular;  /* act(base, R_f · unimodular) == act(input, R_g) */
};

/*
 * Rewrites a lift along R_g as a lift along the principal matrix R_f:
 * for g < f, act(q, R_g) == act(q·(g -1 / 1 0), R_f · S⁻¹) where the first
 * factor is unimodular, so the base form stays in the class of q.
 */
inline PrincipalLift to_principal_lift(const Form& q, const LiftIndex& idx) {
  if (!q.is_primitive()) throw precondition_error("form must be primitive");
  if (idx.principal()) return {q, Mat2::identity()};
  Mat2 pre{idx.g(), -1, 1, 0};
  Mat2 inv_s{0, 1, -1, 0};
  return {act(q, pre), inv_s};
}

/*
 * Conjugate V == R_f · U · R_f⁻¹ == (p r/f / fs t) of a determinant-one
 * matrix U == (p r / s t).  Integral exactly when f divides r, and in that
 * case det V == 1.  When f does not divide r the action of V on any form
 * with gcd(a, f) == 1 has a non-integral coefficient, so nullopt is
 * returned; tests probe exactly this dichotomy.
 */
inline std::optional<Mat2> integral_conjugate(const EquivWitness& w,
                                              const Int& f, const Form& q) {
  if (f < 1) throw precondition_error("conductor must be positive");
  if (gcd(q.a(), f) != 1)
    throw precondition_error("leading coefficient not coprime");
  const Mat2& u = w.matrix();
  if (u.r % f != 0) return std::nullopt;
  return Mat2{u.p, u.r / f, f * u.s, u.t};
}

struct FiberClass {
  ReducedForm representative;
  std::vector<LiftIndex> indices;  /* primitive indices lifting into it */
};

/*
 * The classes of discriminant Df² lying over the class of q: lifts q at
 * every primitive index, reduces, and groups by canonical representative.
 * For D < -4 no two indices collide, so there are f - kronecker(D, f)
 * classes.  For D == -4 the indices pair up (two per class, g with
 * -g⁻¹ mod f, and 0 with f); for D == -3 they come in triples (g with
 * -g⁻¹-1 and -(g+1)⁻¹, and 0 with f-1 and f).  The exceptional grouping
 * matches the extra automorphisms of x² + y² and x² + xy + y² and is
 * cross-checked against the brute-force orbit oracle in the test suite.
 */
inline std::vector<FiberClass> fiber(const Form& q, const Int& f) {
  if (q.discriminant().value() >= 0)
    throw precondition_error("negative discriminant required");
  std::vector<FiberClass> classes;
  for (const LiftIndex& idx : primitive_lift_indices(q, f)) {
    Reduction red = reduce(act(q, idx.matrix()));
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const FiberClass& fc) {
                             return fc.representative == red.form;
                           });
    if (it == classes.end())
      classes.push_back({red.form, {idx}});
    else
      it->indices.push_back(idx);
  }
  return classes;
}

}  // namespace bqf

#endif /* BQF_NESTING_HPP */
