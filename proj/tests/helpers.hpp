#ifndef BQF_TESTS_HELPERS_HPP
#define BQF_TESTS_HELPERS_HPP

#include <random>

#include <bqf/bqf.hpp>

/* shared generators for the randomized suites; fixed seeds keep runs
 * reproducible */
namespace th {

inline bqf::Mat2 random_unimodular(std::mt19937_64& rng, int max_len = 8,
                                   int max_k = 4) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> k_dist(-max_k, max_k);
  std::uniform_int_distribution<int> coin(0, 1);
  bqf::Mat2 u = bqf::Mat2::identity();
  const int len = len_dist(rng);
  for (int i = 0; i < len; ++i) {
    if (coin(rng))
      u = u * bqf::Mat2::inversion();
    else
      u = u * bqf::Mat2::translation(k_dist(rng));
  }
  return u;
}

inline bqf::Form random_definite_form(std::mt19937_64& rng,
                                      bool primitive_only = false) {
  std::uniform_int_distribution<long> a_dist(1, 12);
  std::uniform_int_distribution<long> b_dist(-12, 12);
  std::uniform_int_distribution<long> extra_dist(0, 20);
  for (;;) {
    bqf::Int a = a_dist(rng);
    bqf::Int b = b_dist(rng);
    bqf::Int c = bqf::floor_div(b * b, 4 * a) + 1 + extra_dist(rng);
    bqf::Form q(a, b, c);
    if (!primitive_only || q.is_primitive()) return q;
  }
}

/* any valid form, definite or indefinite */
inline bqf::Form random_any_form(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-12, 12);
  for (;;) {
    bqf::Int a = dist(rng), b = dist(rng), c = dist(rng);
    bqf::Int d = b * b - 4 * a * c;
    if (bqf::is_perfect_square(d)) continue;
    if (d < 0 && a <= 0) continue;
    return bqf::Form(a, b, c);
  }
}

/* uniform member of H(D) for a uniform valid D in [lo, hi] */
inline bqf::Form random_class_member(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d_dist(lo, hi);
  for (;;) {
    long d = d_dist(rng);
    long r = ((d % 4) + 4) % 4;
    if (r != 0 && r != 1) continue;
    bqf::ClassSet cs = bqf::class_set(bqf::Discriminant(d));
    if (cs.size() == 0) continue;
    std::uniform_int_distribution<std::size_t> pick(0, cs.size() - 1);
    return cs.members()[pick(rng)].form();
  }
}

inline bqf::Int modinv(const bqf::Int& a, const bqf::Int& f) {
  return bqf::mod_floor(bqf::xgcd(a, f).x, f);
}

inline bool sound_witness(const bqf::Form& from, const bqf::Mat2& u,
                          const bqf::Form& to) {
  return bqf::act(from, u) == to;
}

}  // namespace th

#endif /* BQF_TESTS_HELPERS_HPP */
