#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bdiv/prng.hpp"
#include "bdiv/session.hpp"

namespace bdiv {

struct CheckResult {
  std::string name;
  std::string property;
  int samples = 0;
  bool passed = true;
  Json counterexample;  // null when passed
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int samples = 100;
  std::vector<std::string> scope;  // empty = all checks
};

namespace detail {

constexpr int kRedrawCap = 500;

/// Deterministic sampling environment shared by the property checks: a fixed
/// family of towers of at most four centers over the plane (free points,
/// chains and a two-children host), plus coefficient draws in [-5, 5] with a
/// capped redraw loop for conditioned draws. The family uses one global
/// center forest, so every pair of models has a join.
class Sampler {
 public:
  Sampler(const Tower& tw, ConeOracle& cones, Prng& rng)
      : tw_(tw), cones_(cones), rng_(rng) {
    const BaseKind p2 = BaseKind::ProjectivePlane;
    pool_.push_back(tw.base_model(p2));
    pool_.push_back(tw.register_model(p2, {{"a", ""}}));
    pool_.push_back(tw.register_model(p2, {{"b", ""}}));
    pool_.push_back(tw.register_model(p2, {{"a", ""}, {"b", ""}}));
    pool_.push_back(tw.register_model(p2, {{"a", ""}, {"e", "a"}}));
    pool_.push_back(tw.register_model(p2, {{"a", ""}, {"b", ""}, {"c", ""}}));
    pool_.push_back(tw.register_model(p2, {{"a", ""}, {"e", "a"}, {"b", ""}}));
    pool_.push_back(tw.register_model(p2, {{"a", ""}, {"b", ""}, {"c", ""}, {"d", ""}}));
    pool_.push_back(tw.register_model(p2, {{"a", ""}, {"e", "a"}, {"f", "e"}, {"b", ""}}));
    pool_.push_back(tw.register_model(p2, {{"a", ""}, {"e", "a"}, {"g", "a"}}));
  }

  const Tower& tower() const { return tw_; }
  ConeOracle& cones() { return cones_; }
  Prng& rng() { return rng_; }

  ModelId model() { return pool_[static_cast<std::size_t>(rng_.int_in(0, pool_.size() - 1))]; }

  std::pair<ModelId, ModelId> incomparable_models() {
    for (int i = 0; i < kRedrawCap; ++i) {
      const ModelId a = model();
      const ModelId b = model();
      if (tw_.compare(a, b) == Order::Incomparable) return {a, b};
    }
    fail(ErrorKind::Internal, "redraw cap hit while sampling incomparable models");
  }

  /// upper strictly dominates lower
  std::pair<ModelId, ModelId> comparable_models() {
    for (int i = 0; i < kRedrawCap; ++i) {
      const ModelId a = model();
      const ModelId b = tw_.join(a, model());
      if (tw_.compare(b, a) == Order::Above) return {b, a};
    }
    fail(ErrorKind::Internal, "redraw cap hit while sampling comparable models");
  }

  NSClass any_class(ModelId m) {
    Vec coeffs(tw_.model(m).rank());
    for (auto& c : coeffs) c = rng_.int_in(-5, 5);
    return NSClass{m, std::move(coeffs)};
  }

  template <typename Pred>
  NSClass class_where(ModelId m, Pred pred, const char* what) {
    for (int i = 0; i < kRedrawCap; ++i) {
      NSClass c = any_class(m);
      if (pred(c)) return c;
    }
    fail(ErrorKind::Internal,
         std::string("redraw cap hit while sampling a ") + what + " class on " +
             tw_.model(m).spec_string());
  }

  /// Conic combination of the nef generators; covers the whole cone and
  /// stays feasible on towers where the draw box barely meets it.
  NSClass nef_class(ModelId m) {
    const auto& gens = cones_.nef_generators(m);
    Vec sum(tw_.model(m).rank(), Rat(0));
    for (const auto& g : gens)
      sum = vec_add(sum, vec_scale(Rat(rng_.int_in(0, 2)), g));
    return NSClass{m, std::move(sum)};
  }

  /// Interior point of the nef cone plus a random conic combination of its
  /// generators. Deep chain towers admit no ample class with coefficients in
  /// the draw box, so rejection sampling cannot produce these.
  NSClass ample_class(ModelId m) {
    const auto& gens = cones_.nef_generators(m);
    Vec sum(tw_.model(m).rank(), Rat(0));
    for (const auto& g : gens) sum = vec_add(sum, g);
    for (const auto& g : gens)
      sum = vec_add(sum, vec_scale(Rat(rng_.int_in(0, 3)), g));
    return NSClass{m, std::move(sum)};
  }

  NSClass psef_class(ModelId m) {
    return class_where(m, [&](const NSClass& c) { return cones_.is_psef(c); },
                       "pseudo-effective");
  }

  NSClass big_class(ModelId m) {
    return class_where(m, [&](const NSClass& c) { return cones_.volume(c) > 0; }, "big");
  }

  /// An ample class fixed per model: the sum of the nef generators.
  NSClass interior_class(ModelId m) {
    Vec sum(tw_.model(m).rank(), Rat(0));
    for (const auto& g : cones_.nef_generators(m)) sum = vec_add(sum, g);
    return NSClass{m, std::move(sum)};
  }

 private:
  const Tower& tw_;
  ConeOracle& cones_;
  Prng& rng_;
  std::vector<ModelId> pool_;
};

inline Json counterexample_class(const Tower& tw, const char* key, const NSClass& c) {
  return Json{{key, class_json(tw, c)}};
}

}  // namespace detail

/// Seeded property checks for the structural results the library implements.
/// Deterministic for a fixed seed; each check draws from its own stream, so
/// restricting the scope does not change the outcomes of the others.
inline std::vector<CheckResult> run_theorem_suite(const SuiteOptions& opts) {
  struct Def {
    const char* name;
    const char* property;
    std::function<void(detail::Sampler&, int, CheckResult&)> run;
  };

  auto fail_with = [](CheckResult& r, Json ce) {
    r.passed = false;
    r.counterexample = std::move(ce);
  };

  const std::vector<Def> defs = {
      {"ample-convexity",
       "sums and positive rational multiples of ample b-classes are ample",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const auto [m1, m2] = i % 2 ? s.incomparable_models()
                                       : std::pair{s.model(), s.model()};
           const CartierBClass a{s.ample_class(m1)};
           const CartierBClass b{s.ample_class(m2)};
           const Rat lam = s.rng().positive_rational();
           const Rat mu = s.rng().positive_rational();
           const CartierBClass sum = add(tw, a, b);
           const CartierBClass mix = linear_combination(tw, {{lam, a}, {mu, b}});
           if (!s.cones().b_positivity(sum).ample || !s.cones().b_positivity(mix).ample)
             fail_with(r, Json{{"lhs", detail::class_json(tw, a.det)},
                               {"rhs", detail::class_json(tw, b.det)}});
           r.samples++;
         }
       }},
      {"big-convexity",
       "sums and positive rational multiples of big b-classes are big",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const auto [m1, m2] = i % 2 ? s.incomparable_models()
                                       : std::pair{s.model(), s.model()};
           const CartierBClass a{s.big_class(m1)};
           const CartierBClass b{s.big_class(m2)};
           const Rat lam = s.rng().positive_rational();
           const CartierBClass sum = add(tw, a, b);
           if (s.cones().c_volume(sum).value <= 0 ||
               s.cones().c_volume(scale(tw, lam, a)).value <= 0)
             fail_with(r, Json{{"lhs", detail::class_json(tw, a.det)},
                               {"rhs", detail::class_json(tw, b.det)}});
           r.samples++;
         }
       }},
      {"slice-identities",
       "membership of [c] in the nef/big b-cones agrees with the class-level "
       "cones on each model, big implies pseudo-effective, and every "
       "pseudo-effective class is a limit of big ones",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const ModelId m = s.model();
           const NSClass c = s.any_class(m);
           const Positivity p = s.cones().b_positivity(CartierBClass{c});
           const bool nef_ok = p.nef == s.cones().is_nef(c);
           const bool big_ok = p.big == (s.cones().volume(c) > 0);
           bool limit_ok = !p.big || p.psef;
           if (limit_ok && p.psef) {
             const NSClass amp = s.interior_class(m);
             for (long long k = 1; k <= 10 && limit_ok; ++k) {
               const Vec approx =
                   vec_add(c.coeffs, vec_scale(Rat(1, k), amp.coeffs));
               limit_ok = s.cones().volume(NSClass{m, approx}) > 0;
             }
           }
           if (!nef_ok || !big_ok || !limit_ok)
             fail_with(r, detail::counterexample_class(tw, "class", c));
           r.samples++;
         }
       }},
      {"volume-invariance",
       "the volume of a Cartier b-class agrees on all of its determinations",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const auto [upper, lower] = s.comparable_models();
           const NSClass c = s.psef_class(lower);
           const NSClass up = pullback_class(tw, c, upper);
           const Rat vl = s.cones().volume(c);
           const Rat vu = s.cones().volume(up);
           const Rat vb = s.cones().c_volume(CartierBClass{up}).value;
           if (vl != vu || vl != vb)
             fail_with(r, detail::counterexample_class(tw, "class", c));
           r.samples++;
         }
       }},
      {"negativity-lemma",
       "for nef classes upstairs, pullback of pushforward exceeds the class "
       "by a pseudo-effective one",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const auto [upper, lower] = s.comparable_models();
           const NSClass a = s.nef_class(upper);
           const NSClass down = pushforward_class(tw, a, lower);
           const NSClass back = pullback_class(tw, down, upper);
           const NSClass diff{upper, vec_sub(back.coeffs, a.coeffs)};
           if (!s.cones().is_psef(diff))
             fail_with(r, detail::counterexample_class(tw, "class", a));
           r.samples++;
         }
       }},
      {"projection-formula",
       "<pullback a, b> upstairs equals <a, pushforward b> downstairs, exactly",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const auto [upper, lower] = s.comparable_models();
           const NSClass a = s.any_class(lower);
           const NSClass b = s.any_class(upper);
           const Rat lhs =
               tw.form_product(upper, pullback_class(tw, a, upper).coeffs, b.coeffs);
           const Rat rhs =
               tw.form_product(lower, a.coeffs, pushforward_class(tw, b, lower).coeffs);
           if (lhs != rhs)
             fail_with(r, Json{{"a", detail::class_json(tw, a)},
                               {"b", detail::class_json(tw, b)}});
           r.samples++;
         }
       }},
      {"seshadri-bound",
       "the square of the global Seshadri constant of a nef class is bounded "
       "by its self-intersection",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const ModelId m = s.model();
           const NSClass c = s.nef_class(m);
           const SeshadriValue v = s.cones().seshadri_global(c);
           if (v.flag != SeshadriFlag::Exact ||
               v.value * v.value > tw.form_product(m, c.coeffs, c.coeffs))
             fail_with(r, detail::counterexample_class(tw, "class", c));
           r.samples++;
         }
       }},
      {"seshadri-homogeneity",
       "the b-level Seshadri constant scales exactly linearly under positive "
       "rational scaling",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const ModelId m = s.model();
           const CartierBClass a{s.nef_class(m)};
           const Rat lam = s.rng().positive_rational();
           const Rat lhs = s.cones().seshadri_b(scale(tw, lam, a)).value;
           const Rat rhs = lam * s.cones().seshadri_b(a).value;
           if (lhs != rhs) fail_with(r, detail::counterexample_class(tw, "class", a.det));
           r.samples++;
         }
       }},
      {"big-pullback",
       "volume is preserved exactly under pullback along tower maps",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         for (int i = 0; i < n && r.passed; ++i) {
           const auto [upper, lower] = s.comparable_models();
           const NSClass c = s.psef_class(lower);
           if (s.cones().volume(pullback_class(tw, c, upper)) != s.cones().volume(c))
             fail_with(r, detail::counterexample_class(tw, "class", c));
           r.samples++;
         }
       }},
      {"functorial-nef",
       "the maps induced by the bundle projections and identities preserve "
       "nefness in both directions and are exactly linear",
       [&](detail::Sampler& s, int n, CheckResult& r) {
         const Tower& tw = s.tower();
         const ModelId line = tw.base_model(BaseKind::ProjectiveLine);
         const InducedMap pr1 = make_morphism(tw, {MorphismKind::ProjectionFirst, {}});
         const InducedMap pr2 = make_morphism(tw, {MorphismKind::ProjectionSecond, {}});
         for (int i = 0; i < n && r.passed; ++i) {
           const InducedMap& f = i % 2 ? pr1 : pr2;
           const CartierBClass a{NSClass{line, Vec{Rat(s.rng().int_in(-5, 5))}}};
           const CartierBClass b{NSClass{line, Vec{Rat(s.rng().int_in(-5, 5))}}};
           const CartierBClass fa = induced_map(tw, f, a);
           const bool nef_a = s.cones().b_positivity(a).nef;
           const bool nef_fa = s.cones().b_positivity(fa).nef;
           const Rat u = s.rng().positive_rational();
           const Rat v = s.rng().positive_rational();
           const CartierBClass lin =
               induced_map(tw, f, linear_combination(tw, {{u, a}, {v, b}}));
           const CartierBClass expect = linear_combination(
               tw, {{u, fa}, {v, induced_map(tw, f, b)}});
           const InducedMap ident =
               make_morphism(tw, {MorphismKind::Identity, BaseKind::ProjectivePlane});
           const CartierBClass c{s.any_class(s.model())};
           if (nef_a != nef_fa || !equals(tw, lin, expect) ||
               !equals(tw, induced_map(tw, ident, c), c))
             fail_with(r, detail::counterexample_class(tw, "class", a.det));
           r.samples++;
         }
       }},
  };

  std::vector<const Def*> selected;
  if (opts.scope.empty()) {
    for (const auto& d : defs) selected.push_back(&d);
  } else {
    for (const auto& name : opts.scope) {
      const Def* found = nullptr;
      for (const auto& d : defs)
        if (name == d.name) { found = &d; break; }
      if (!found) fail(ErrorKind::UnknownCheckName, "no check named '" + name + "'");
      selected.push_back(found);
    }
  }

  std::vector<CheckResult> results;
  for (const Def* d : selected) {
    CheckResult r;
    r.name = d->name;
    r.property = d->property;
    r.counterexample = nullptr;
    // per-check stream: outcomes do not depend on the selected scope
    std::uint64_t mix = opts.seed;
    for (const char* p = d->name; *p; ++p) mix = mix * 1099511628211ULL + *p;
    Prng rng(mix);
    Tower tw;
    ConeOracle cones(tw);
    detail::Sampler sampler(tw, cones, rng);
    try {
      d->run(sampler, opts.samples, r);
    } catch (const Error& e) {
      r.passed = false;
      r.counterexample = Json{{"error", e.what()}};
    }
    results.push_back(std::move(r));
  }
  return results;
}

inline Json suite_report(const SuiteOptions& opts, const std::vector<CheckResult>& results) {
  Json out = Json::object();
  out["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  out["seed"] = opts.seed;
  out["samples"] = opts.samples;
  bool all = true;
  Json checks = Json::array();
  for (const auto& r : results) {
    Json c = Json::object();
    c["name"] = r.name;
    c["property"] = r.property;
    c["samples"] = r.samples;
    c["passed"] = r.passed;
    if (!r.passed) c["counterexample"] = r.counterexample;
    checks.push_back(std::move(c));
    all &= r.passed;
  }
  out["checks"] = std::move(checks);
  out["all_passed"] = all;
  return out;
}

}  // namespace bdiv
