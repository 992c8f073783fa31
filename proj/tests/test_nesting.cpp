#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include <bqf/bqf.hpp>

#include "helpers.hpp"

using bqf::Discriminant;
using bqf::Form;
using bqf::Int;
using bqf::LiftIndex;
using bqf::Mat2;

TEST_CASE("lift index matrices") {
  CHECK((LiftIndex(3, 3).matrix() == Mat2{1, 0, 0, 3}));
  CHECK((LiftIndex(1, 3).matrix() == Mat2{3, 1, 0, 1}));
  CHECK((LiftIndex(0, 5).matrix() == Mat2{5, 0, 0, 1}));
  for (long g = 0; g <= 7; ++g) CHECK(LiftIndex(g, 7).matrix().det() == 7);

  CHECK_THROWS_AS(LiftIndex(0, 2), bqf::precondition_error);
  CHECK_THROWS_AS(LiftIndex(0, 9), bqf::precondition_error);
  CHECK_THROWS_AS(LiftIndex(-1, 3), bqf::precondition_error);
  CHECK_THROWS_AS(LiftIndex(4, 3), bqf::precondition_error);
}

TEST_CASE("lift_g on the worked examples") {
  CHECK(bqf::lift_g(Form(1, 0, 1), LiftIndex(3, 3)) == Form(1, 0, 9));
  CHECK(bqf::lift_g(Form(1, 0, 1), LiftIndex(0, 3)) == Form(9, 0, 1));
  CHECK(bqf::lift_g(Form(1, 1, 1), LiftIndex(1, 5)) == Form(25, 15, 3));
  CHECK(bqf::lift_g(Form(1, 1, 1), LiftIndex(1, 5)).discriminant().value() ==
        -75);

  CHECK_THROWS_AS(bqf::lift_g(Form(2, 4, 6), LiftIndex(0, 3)),
                  bqf::precondition_error);
}

TEST_CASE("lift matches the closed coefficient formulas") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    Form q = th::random_definite_form(rng, true);
    const Int &a = q.a(), &b = q.b(), &c = q.c();
    for (long f : {3, 5, 7}) {
      for (Int g = 0; g < f; ++g) {
        Form lifted = bqf::lift_g(q, LiftIndex(g, f));
        CHECK(lifted ==
              Form(f * f * a, f * (2 * a * g + b), a * g * g + b * g + c));
      }
      Form principal = bqf::lift_g(q, LiftIndex(f, f));
      CHECK(principal == Form(a, f * b, f * f * c));
      CHECK(principal.discriminant().value() ==
            f * f * q.discriminant().value());
    }
  }
}

TEST_CASE("primitive lift indices on the worked examples") {
  auto gauss = bqf::primitive_lift_indices(Form(1, 0, 1), 3);
  REQUIRE(gauss.size() == 4);  /* 3 - (-1) */
  CHECK(gauss[0].g() == 0);
  CHECK(gauss[1].g() == 1);
  CHECK(gauss[2].g() == 2);
  CHECK(gauss[3].g() == 3);

  auto c23 = bqf::primitive_lift_indices(Form(1, 1, 6), 3);
  REQUIRE(c23.size() == 2);  /* 3 - (+1) */
  CHECK(c23[0].g() == 1);
  CHECK(c23[1].g() == 3);

  auto eisenstein = bqf::primitive_lift_indices(Form(1, 1, 1), 3);
  REQUIRE(eisenstein.size() == 3);  /* 3 - 0 */
  CHECK(eisenstein[0].g() == 0);
  CHECK(eisenstein[1].g() == 2);
  CHECK(eisenstein[2].g() == 3);

  CHECK_THROWS_AS(bqf::primitive_lift_indices(Form(3, 1, 2), 3),
                  bqf::precondition_error);
  CHECK_THROWS_WITH(bqf::primitive_lift_indices(Form(3, 1, 2), 3),
                    "leading coefficient not coprime");
}

TEST_CASE("primitive lift count equals f - kronecker(D, f)") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    Form q = th::random_definite_form(rng, true);
    for (long f : {3, 5, 7, 11}) {
      if (gcd(q.a(), Int(f)) != 1) continue;
      auto indices = bqf::primitive_lift_indices(q, f);
      CHECK(Int(indices.size()) ==
            f - bqf::kronecker(q.discriminant().value(), f));
      for (const auto& idx : indices)
        CHECK(bqf::lift_g(q, idx).is_primitive());
    }
  }
}

TEST_CASE("decompose_det_f on the worked examples") {
  auto principal = bqf::decompose_det_f(Mat2{1, 0, 0, 3}, 3);
  CHECK(principal.index.g() == 3);
  CHECK(principal.unimodular.matrix() == Mat2::identity());

  auto direct = bqf::decompose_det_f(Mat2{3, 1, 0, 1}, 3);
  CHECK(direct.index.g() == 1);
  CHECK(direct.unimodular.matrix() == Mat2::identity());

  Mat2 m{2, 1, 1, 2};
  auto mixed = bqf::decompose_det_f(m, 3);
  CHECK(mixed.index.g() == 2);
  CHECK((mixed.unimodular.matrix() == Mat2{0, -1, 1, 2}));
  CHECK(mixed.index.matrix() * mixed.unimodular.matrix() == m);
}

TEST_CASE("decompose_det_f preconditions") {
  CHECK_THROWS_AS(bqf::decompose_det_f(Mat2{1, 0, 0, 3}, 5),
                  bqf::precondition_error);
  CHECK_THROWS_AS(bqf::decompose_det_f(Mat2{1, 0, 0, 9}, 9),
                  bqf::precondition_error);
  CHECK_THROWS_AS(bqf::decompose_det_f(Mat2{1, 0, 0, 2}, 2),
                  bqf::precondition_error);
}

TEST_CASE("decomposition reproduces the matrix with a unique index") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<long> g_dist(0, 100);
  for (long f : {3, 5, 7, 11}) {
    for (int i = 0; i < 250; ++i) {
      Int g = g_dist(rng) % (f + 1);
      Mat2 m = LiftIndex(g, f).matrix() * th::random_unimodular(rng);
      auto dec = bqf::decompose_det_f(m, f);
      CHECK(dec.index.g() == g);
      CHECK(dec.index.matrix() * dec.unimodular.matrix() == m);

      /* no other index admits an integral unimodular cofactor */
      for (Int h = 0; h <= f; ++h) {
        if (h == g) continue;
        bool integral;
        if (h == f)
          integral = m.s % f == 0 && m.t % f == 0;
        else
          integral = (m.p - h * m.s) % f == 0 && (m.r - h * m.t) % f == 0;
        CHECK_FALSE(integral);
      }
    }
  }
}

TEST_CASE("normalize_for_descent on the worked examples") {
  auto untouched = bqf::normalize_for_descent(Form(1, 0, 9), 3);
  CHECK(untouched.form == Form(1, 0, 9));
  CHECK(untouched.witness.matrix() == Mat2::identity());

  Form wide(1, 6, 18); /* disc -36 */
  auto normalized = bqf::normalize_for_descent(wide, 3);
  CHECK(normalized.form.a() == 1);
  CHECK(normalized.form.b() % 3 == 0);
  CHECK(normalized.form.c() % 9 == 0);
  CHECK(th::sound_witness(wide, normalized.witness.matrix(), normalized.form));

  CHECK_THROWS_WITH(bqf::normalize_for_descent(Form(25, 15, 3), 5),
                    "leading coefficient not coprime");
  CHECK_THROWS_WITH(bqf::normalize_for_descent(Form(1, 1, 6), 3),
                    "discriminant not divisible by conductor squared");
}

TEST_CASE("descend on the worked examples") {
  auto principal = bqf::descend(Form(1, 0, 9), 3);
  CHECK(principal.base.form() == Form(1, 0, 1));
  CHECK(principal.lift_matrix.det() == 3);
  CHECK(act(principal.base.form(), principal.lift_matrix) == Form(1, 0, 9));

  auto eisenstein = bqf::descend(Form(25, 15, 3), 5);
  CHECK(eisenstein.base.form() == Form(1, 1, 1));
  CHECK(eisenstein.lift_matrix.det() == 5);
  CHECK(act(eisenstein.base.form(), eisenstein.lift_matrix) ==
        Form(25, 15, 3));
}

TEST_CASE("descend inverts every primitive lift of H(-23)") {
  const Int f = 3;
  for (const auto& rep : bqf::class_set(Discriminant(-23))) {
    Form q = bqf::normalize_coprime(rep.form(), f).form;
    for (const auto& idx : bqf::primitive_lift_indices(q, f)) {
      auto res = bqf::descend(bqf::lift_g(q, idx), f);
      CHECK(res.base.form() == rep.form());
    }
  }
}

TEST_CASE("descend preconditions") {
  CHECK_THROWS_AS(bqf::descend(Form(1, 1, 6), 3), bqf::precondition_error);
  CHECK_THROWS_AS(bqf::descend(Form(1, 0, 9), 9), bqf::precondition_error);
  CHECK_THROWS_AS(bqf::descend(Form(1, 0, 9), 2), bqf::precondition_error);
  CHECK_THROWS_AS(bqf::descend(Form(3, 0, 3), 3), bqf::precondition_error);
  /* disc 45 = 5·3², indefinite */
  CHECK_THROWS_AS(bqf::descend(Form(1, 9, 9), 3), bqf::precondition_error);
}

TEST_CASE("descend strips exactly one conductor at a time") {
  /* disc -144 = (-4)·6²  is reached from -4 via two descents only through
   * the odd part: -144 = (-16)·3², and -16 is itself a discriminant */
  auto first = bqf::descend(Form(1, 0, 36), 3);
  CHECK(first.base.form().discriminant().value() == -16);
}

TEST_CASE("semi-equivalence on the worked examples") {
  Form lifted = bqf::lift_g(Form(1, 1, 6), LiftIndex(1, 3));
  std::mt19937_64 rng(34);
  Form moved = act(lifted, th::random_unimodular(rng));
  CHECK(bqf::semi_equivalent(lifted, moved, 3));

  /* two primitive lifts of the same base */
  Form q(1, 1, 6);
  auto indices = bqf::primitive_lift_indices(q, 3);
  REQUIRE(indices.size() == 2);
  CHECK(bqf::semi_equivalent(bqf::lift_g(q, indices[0]),
                             bqf::lift_g(q, indices[1]), 3));

  /* lifts of inequivalent bases of disc -23 */
  Form other(2, 1, 3);
  auto other_indices = bqf::primitive_lift_indices(other, 3);
  CHECK_FALSE(bqf::semi_equivalent(bqf::lift_g(q, indices[0]),
                                   bqf::lift_g(other, other_indices[0]), 3));

  CHECK_THROWS_WITH(
      bqf::semi_equivalent(Form(1, 0, 9), Form(1, 0, 36), 3),
      "discriminant mismatch");
}

TEST_CASE("equivalent lifts are always semi-equivalent") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 100; ++i) {
    Form q = th::random_definite_form(rng, true);
    const Int f = 5;
    Form coprime = bqf::normalize_coprime(q, f).form;
    auto indices = bqf::primitive_lift_indices(coprime, f);
    std::uniform_int_distribution<std::size_t> pick(0, indices.size() - 1);
    Form lift = bqf::lift_g(coprime, indices[pick(rng)]);
    Form moved = act(lift, th::random_unimodular(rng));
    REQUIRE(bqf::equivalent(lift, moved).has_value());
    CHECK(bqf::semi_equivalent(lift, moved, f));
  }
}

TEST_CASE("to_principal_lift rewrites R_g as R_f") {
  auto already = bqf::to_principal_lift(Form(1, 0, 1), LiftIndex(3, 3));
  CHECK(already.base == Form(1, 0, 1));
  CHECK(already.unimodular == Mat2::identity());

  auto zero = bqf::to_principal_lift(Form(1, 0, 1), LiftIndex(0, 3));
  CHECK(zero.base == Form(1, 0, 1));
  CHECK(act(zero.base, LiftIndex(3, 3).matrix() * zero.unimodular) ==
        bqf::lift_g(Form(1, 0, 1), LiftIndex(0, 3)));

  auto shifted = bqf::to_principal_lift(Form(1, 1, 6), LiftIndex(1, 3));
  CHECK(shifted.base == Form(8, -3, 1));
  CHECK(act(shifted.base, LiftIndex(3, 3).matrix() * shifted.unimodular) ==
        bqf::lift_g(Form(1, 1, 6), LiftIndex(1, 3)));
}

TEST_CASE("to_principal_lift over random inputs") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 200; ++i) {
    Form q = th::random_definite_form(rng, true);
    for (long f : {3, 7}) {
      std::uniform_int_distribution<long> g_dist(0, f);
      LiftIndex idx(g_dist(rng), f);
      auto pl = bqf::to_principal_lift(q, idx);
      CHECK(pl.unimodular.det() == 1);
      CHECK(bqf::equivalent(q, pl.base).has_value());
      CHECK(act(pl.base, LiftIndex(f, f).matrix() * pl.unimodular) ==
            act(q, idx.matrix()));
    }
  }
}

TEST_CASE("integral conjugates of unimodular matrices") {
  using bqf::EquivWitness;
  Form q(1, 0, 1);

  auto id = bqf::integral_conjugate(EquivWitness(Mat2::identity()), 3, q);
  REQUIRE(id.has_value());
  CHECK(*id == Mat2::identity());

  auto blocked =
      bqf::integral_conjugate(EquivWitness(Mat2::translation(1)), 3, q);
  CHECK_FALSE(blocked.has_value());

  auto full =
      bqf::integral_conjugate(EquivWitness(Mat2::translation(3)), 3, q);
  REQUIRE(full.has_value());
  CHECK(*full == Mat2::translation(1));

  CHECK_THROWS_AS(
      bqf::integral_conjugate(EquivWitness(Mat2::identity()), 3, Form(3, 0, 1)),
      bqf::precondition_error);
}

TEST_CASE("a non-integral conjugate never acts integrally") {
  /* falsification search for the dichotomy: whenever the conjugate
   * (p r/f / fs t) is rejected, the c-coefficient a(r/f)² + b(r/f)t + ct²
   * of the acted form must itself be non-integral */
  std::mt19937_64 rng(37);
  for (int i = 0; i < 500; ++i) {
    Form q = th::random_definite_form(rng, true);
    for (long f : {3, 5}) {
      if (gcd(q.a(), Int(f)) != 1) continue;
      Mat2 u = th::random_unimodular(rng);
      auto v = bqf::integral_conjugate(bqf::EquivWitness(u), f, q);
      if (v.has_value()) {
        CHECK(v->det() == 1);
        CHECK(u.r % f == 0);
      } else {
        Int numerator = q.a() * u.r * u.r + q.b() * u.r * u.t * f;
        CHECK(numerator % (f * f) != 0);
      }
    }
  }
}

TEST_CASE("fiber structure on the worked examples") {
  auto c23 = bqf::fiber(Form(1, 1, 6), 3);
  REQUIRE(c23.size() == 2);
  CHECK(c23[0].indices.size() == 1);
  CHECK(c23[1].indices.size() == 1);

  auto gauss = bqf::fiber(Form(1, 0, 1), 5);
  REQUIRE(gauss.size() == 2); /* h(-100) = 2 */
  CHECK(gauss[0].representative.form() == Form(1, 0, 25));
  CHECK(gauss[0].indices.size() == 2);
  CHECK(gauss[0].indices[0].g() == 0);
  CHECK(gauss[0].indices[1].g() == 5);
  CHECK(gauss[1].representative.form() == Form(2, 2, 13));
  CHECK(gauss[1].indices[0].g() == 1);
  CHECK(gauss[1].indices[1].g() == 4);

  auto eisenstein = bqf::fiber(Form(1, 1, 1), 5);
  REQUIRE(eisenstein.size() == 2); /* h(-75) = 2 */
  CHECK(eisenstein[0].indices.size() == 3);
  CHECK(eisenstein[1].indices.size() == 3);

  CHECK(bqf::class_set(Discriminant(-100)).size() == 2);
  CHECK(bqf::class_set(Discriminant(-75)).size() == 2);
}

TEST_CASE("fiber rejects bad inputs") {
  CHECK_THROWS_AS(bqf::fiber(Form(1, 0, -2), 3), bqf::precondition_error);
  CHECK_THROWS_AS(bqf::fiber(Form(3, 1, 2), 3), bqf::precondition_error);
  CHECK_THROWS_AS(bqf::fiber(Form(2, 4, 6), 3), bqf::precondition_error);
  CHECK_THROWS_AS(bqf::fiber(Form(1, 1, 6), 4), bqf::precondition_error);
}

TEST_CASE("fiber classes partition the primitive lift indices") {
  std::mt19937_64 rng(38);
  for (int i = 0; i < 100; ++i) {
    Form q = th::random_definite_form(rng, true);
    for (long f : {3, 5}) {
      Form coprime = bqf::normalize_coprime(q, f).form;
      auto indices = bqf::primitive_lift_indices(coprime, f);
      auto classes = bqf::fiber(coprime, f);
      std::set<Int> seen;
      std::size_t total = 0;
      for (const auto& fc : classes) {
        total += fc.indices.size();
        for (const auto& idx : fc.indices) {
          seen.insert(idx.g());
          auto red = bqf::reduce(bqf::lift_g(coprime, idx));
          CHECK(red.form == fc.representative);
        }
      }
      CHECK(total == indices.size());
      CHECK(seen.size() == indices.size());
      const Int d = coprime.discriminant().value();
      if (d < -4)
        CHECK(Int(classes.size()) == f - bqf::kronecker(d, f));
    }
  }
}
