#pragma once

#include <string>
#include <vector>

#include "bdiv/checks.hpp"
#include "bdiv/cones.hpp"
#include "bdiv/intersect.hpp"

namespace bdiv::testing {

inline Vec rvec(std::initializer_list<long long> xs) {
  Vec v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

inline NSClass cls(const Tower& tw, ModelId m, std::initializer_list<long long> xs) {
  return make_class(tw, m, rvec(xs));
}

inline CartierBClass bcls(const Tower& tw, ModelId m, std::initializer_list<long long> xs) {
  return CartierBClass{cls(tw, m, xs)};
}

/// Standard plane towers reused across the suites. The chain uses its own
/// label so that every label carries one host across the whole tower.
struct PlaneTowers {
  Tower tw;
  ModelId p2, bl_p, bl_q, bl_pq, chain_pq;

  PlaneTowers() {
    p2 = tw.base_model(BaseKind::ProjectivePlane);
    bl_p = tw.blow_up(p2, {"p", ""});
    bl_q = tw.blow_up(p2, {"q", ""});
    bl_pq = tw.join(bl_p, bl_q);
    chain_pq = tw.register_model(BaseKind::ProjectivePlane, {{"p", ""}, {"r", "p"}});
  }
};

/// The model family used by the seeded suites: free points, chains, and a
/// host carrying two infinitely-near points, up to four centers. One global
/// center forest (a,b,c,d on the base; e,g on a; f on e), so all joins exist.
inline std::vector<ModelId> sample_pool(const Tower& tw) {
  const BaseKind p2 = BaseKind::ProjectivePlane;
  return {
      tw.base_model(p2),
      tw.register_model(p2, {{"a", ""}}),
      tw.register_model(p2, {{"b", ""}}),
      tw.register_model(p2, {{"a", ""}, {"b", ""}}),
      tw.register_model(p2, {{"a", ""}, {"e", "a"}}),
      tw.register_model(p2, {{"a", ""}, {"b", ""}, {"c", ""}}),
      tw.register_model(p2, {{"a", ""}, {"e", "a"}, {"b", ""}}),
      tw.register_model(p2, {{"a", ""}, {"e", "a"}, {"g", "a"}}),
      tw.register_model(p2, {{"a", ""}, {"b", ""}, {"c", ""}, {"d", ""}}),
      tw.register_model(p2, {{"a", ""}, {"e", "a"}, {"f", "e"}, {"b", ""}}),
  };
}

template <typename Pred>
inline NSClass draw_class(Prng& rng, const Tower& tw, ModelId m, Pred pred) {
  for (int tries = 0; tries < 2000; ++tries) {
    Vec coeffs(tw.model(m).rank());
    for (auto& c : coeffs) c = rng.int_in(-5, 5);
    NSClass cand{m, std::move(coeffs)};
    if (pred(cand)) return cand;
  }
  fail(ErrorKind::Internal, "sampling cap exceeded in test helper");
}

/// Seeded ample class: interior point of the nef cone plus a conic draw over
/// its generators (the coefficient box misses the ample cone on deep chains).
inline NSClass draw_ample(Prng& rng, const Tower& tw, ConeOracle& cones, ModelId m) {
  const auto& gens = cones.nef_generators(m);
  Vec sum(tw.model(m).rank(), Rat(0));
  for (const auto& g : gens) sum = vec_add(sum, g);
  for (const auto& g : gens) sum = vec_add(sum, vec_scale(Rat(rng.int_in(0, 3)), g));
  return NSClass{m, std::move(sum)};
}

/// Seeded nef class as a conic combination of the nef generators.
inline NSClass draw_nef(Prng& rng, const Tower& tw, ConeOracle& cones, ModelId m) {
  const auto& gens = cones.nef_generators(m);
  Vec sum(tw.model(m).rank(), Rat(0));
  for (const auto& g : gens) sum = vec_add(sum, vec_scale(Rat(rng.int_in(0, 2)), g));
  return NSClass{m, std::move(sum)};
}

}  // namespace bdiv::testing
