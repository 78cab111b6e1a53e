#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bdiv/session.hpp"
#include "helpers.hpp"

using namespace bdiv;
using namespace bdiv::testing;

namespace {

/// Tracks one acceptance criterion and prints its pass/fail line.
class Criterion {
 public:
  Criterion(int number, const char* name)
      : number_(number), name_(name), start_(std::chrono::steady_clock::now()) {}

  void expect(bool cond, const std::string& what) {
    if (!cond && ok_) first_failure_ = what;
    ok_ = ok_ && cond;
  }

  bool finish() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    std::printf("[acceptance] %2d %-22s %s (%lld ms)%s%s\n", number_, name_,
                ok_ ? "pass" : "FAIL", static_cast<long long>(ms),
                ok_ ? "" : " -- ", ok_ ? "" : first_failure_.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  int number_;
  const char* name_;
  bool ok_ = true;
  std::string first_failure_;
  std::chrono::steady_clock::time_point start_;
};

/// Independent monomial-count oracle: sections of degree n on the plane,
/// counted one exponent pair at a time.
long long monomial_count(long long n) {
  long long count = 0;
  for (long long i = 0; i <= n; ++i)
    for (long long j = 0; i + j <= n; ++j) ++count;
  return count;
}

/// Independent re-enumeration of the negative classes for k general points:
/// plain odometer loops instead of the library's pruned recursion.
std::vector<Vec> brute_force_curves(std::size_t k) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < k; ++i) {
    Vec tail(k + 1, Rat(0));
    tail[1 + i] = 1;
    out.push_back(tail);
  }
  for (long long d = 1; d <= 6; ++d) {
    std::vector<long long> m(k, 0);
    while (true) {
      long long sum = 0, sq = 0;
      for (const auto mi : m) sum += mi, sq += mi * mi;
      if (sum == 3 * d - 1 && sq == d * d + 1) {
        Vec v(k + 1, Rat(0));
        v[0] = d;
        for (std::size_t i = 0; i < k; ++i) v[1 + i] = -m[i];
        out.push_back(v);
      }
      std::size_t pos = 0;
      while (pos < k && m[pos] == d) m[pos++] = 0;
      if (pos == k) break;
      ++m[pos];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("criterion 1: exact seshadri values", "[acceptance]") {
  Criterion cr(1, "seshadri-values");
  PlaneTowers t;
  ConeOracle cones(t.tw);

  for (long long d = 1; d <= 5; ++d) {
    const SeshadriValue v = cones.seshadri_b(bcls(t.tw, t.p2, {d}));
    cr.expect(v.value == d && v.flag == SeshadriFlag::Exact,
              "seshadri_b of degree-" + std::to_string(d) + " class");
  }
  const SeshadriValue upstairs = cones.seshadri_global(cls(t.tw, t.bl_p, {1, 0}));
  cr.expect(upstairs.value == 0 && upstairs.flag == SeshadriFlag::Exact,
            "pullback class has global constant 0 upstairs");
  const SeshadriValue attained = cones.seshadri_b(bcls(t.tw, t.bl_p, {1, 0}));
  cr.expect(attained.value == 1 && attained.flag == SeshadriFlag::Exact,
            "b-level supremum attained at the minimal determination");
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 2: seshadri bound", "[acceptance]") {
  Criterion cr(2, "seshadri-bound");
  Tower tw;
  ConeOracle cones(tw);
  const auto pool = sample_pool(tw);
  Prng rng(1002);
  for (int i = 0; i < 500; ++i) {
    const ModelId m = pool[rng.int_in(0, pool.size() - 1)];
    const NSClass c =
        draw_nef(rng, tw, cones, m);
    const SeshadriValue v = cones.seshadri_global(c);
    cr.expect(v.flag == SeshadriFlag::Exact, "stratified value is exact");
    cr.expect(v.value >= 0, "nef classes have nonnegative constants");
    cr.expect(v.value * v.value <= tw.form_product(m, c.coeffs, c.coeffs),
              "square of the constant exceeds the self-intersection");
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 3: ample cone convexity", "[acceptance]") {
  Criterion cr(3, "ample-convexity");
  Tower tw;
  ConeOracle cones(tw);
  const auto pool = sample_pool(tw);
  Prng rng(1003);
  for (int i = 0; i < 200; ++i) {
    ModelId m1 = pool[rng.int_in(0, pool.size() - 1)];
    ModelId m2 = pool[rng.int_in(0, pool.size() - 1)];
    int guard = 0;
    while (tw.compare(m1, m2) != Order::Incomparable && guard++ < 100) {
      m1 = pool[rng.int_in(0, pool.size() - 1)];
      m2 = pool[rng.int_in(0, pool.size() - 1)];
    }
    cr.expect(guard < 100, "found incomparable determinations");
    const CartierBClass a{draw_ample(rng, tw, cones, m1)};
    const CartierBClass b{draw_ample(rng, tw, cones, m2)};
    cr.expect(cones.is_ample(a.det) && cones.is_ample(b.det), "sampled classes are ample");

    const CartierBClass sum = add(tw, a, b);
    cr.expect(cones.b_positivity(sum).ample, "sum of ample classes is ample");

    const Rat lam = rng.positive_rational();
    const CartierBClass scaled = scale(tw, lam, a);
    cr.expect(cones.b_positivity(scaled).ample, "positive scaling preserves ampleness");
    cr.expect(cones.seshadri_b(scaled).value == lam * cones.seshadri_b(a).value,
              "seshadri constant scales exactly linearly");
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 4: zariski and volume against the section-count oracle",
          "[acceptance]") {
  Criterion cr(4, "zariski-volume");
  PlaneTowers t;
  ConeOracle cones(t.tw);

  const ZariskiPair zp = cones.zariski_decomposition(cls(t.tw, t.bl_p, {1, 1}));
  cr.expect(zp.positive.coeffs == rvec({1, 0}) && zp.negative.coeffs == rvec({0, 1}),
            "H+E splits into positive part H and negative part E");
  cr.expect(cones.volume(cls(t.tw, t.bl_p, {1, 1})) == 1, "volume of H+E");

  cr.expect(cones.is_nef(cls(t.tw, t.bl_p, {3, -2})), "3H-2E is nef");
  cr.expect(cones.volume(cls(t.tw, t.bl_p, {3, -2})) == 5, "volume of 3H-2E");

  cr.expect(cones.volume(cls(t.tw, t.p2, {2})) == 4, "volume of 2H");
  // the section counts of O(2m) force the exact limit 2*h0/m^2 = 4
  for (long long m = 1; m <= 50; ++m) {
    const long long h0 = monomial_count(2 * m);
    cr.expect(2 * h0 - 4 * m * m == 6 * m + 2,
              "section count at m=" + std::to_string(m));
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 5: volume invariance and big pullback", "[acceptance]") {
  Criterion cr(5, "volume-invariance");
  PlaneTowers t;
  ConeOracle cones(t.tw);

  const Rat v0 = cones.volume(cls(t.tw, t.p2, {2}));
  const Rat v1 = cones.volume(cls(t.tw, t.bl_p, {2, 0}));
  const Rat v2 = cones.volume(cls(t.tw, t.bl_pq, {2, 0, 0}));
  cr.expect(v0 == 4 && v1 == 4 && v2 == 4, "volume of [2H] on three determinations");
  cr.expect(cones.c_volume(bcls(t.tw, t.bl_pq, {2, 0, 0})).value == 4,
            "b-class volume agrees");

  Tower tw;
  ConeOracle sampled(tw);
  const auto pool = sample_pool(tw);
  Prng rng(1005);
  for (int i = 0; i < 200; ++i) {
    const ModelId lower = pool[rng.int_in(0, pool.size() - 1)];
    const ModelId upper = tw.join(lower, pool[rng.int_in(0, pool.size() - 1)]);
    const NSClass c =
        draw_class(rng, tw, lower, [&](const NSClass& x) { return sampled.is_psef(x); });
    cr.expect(sampled.volume(pullback_class(tw, c, upper)) == sampled.volume(c),
              "pullback preserves volume");
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 6: slice identities", "[acceptance]") {
  Criterion cr(6, "slice-identities");
  Tower tw;
  ConeOracle cones(tw);
  const auto pool = sample_pool(tw);
  Prng rng(1006);
  for (const ModelId m : pool) {
    NSClass interior{m, Vec(tw.model(m).rank(), Rat(0))};
    for (const auto& g : cones.nef_generators(m))
      interior.coeffs = vec_add(interior.coeffs, g);
    cr.expect(cones.is_ample(interior), "sum of nef generators is ample");
    for (int i = 0; i < 500; ++i) {
      Vec coeffs(tw.model(m).rank());
      for (auto& c : coeffs) c = rng.int_in(-5, 5);
      const NSClass c{m, coeffs};
      const Positivity p = cones.b_positivity(CartierBClass{c});
      cr.expect(p.nef == cones.is_nef(c), "nef slice identity");
      cr.expect(p.big == (cones.volume(c) > 0), "big slice identity");
      if (p.big) cr.expect(p.psef, "big implies pseudo-effective");
      if (p.psef) {
        bool limit = true;
        for (long long k = 1; k <= 100 && limit; ++k) {
          const Vec approx = vec_add(c.coeffs, vec_scale(Rat(1, k), interior.coeffs));
          limit = cones.volume(NSClass{m, approx}) > 0;
        }
        cr.expect(limit, "pseudo-effective class is a limit of big classes");
      }
    }
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 7: negative curve enumeration oracle", "[acceptance]") {
  Criterion cr(7, "curve-enumeration");
  Tower tw;
  ConeOracle cones(tw);
  const std::vector<std::size_t> expected = {1, 3, 6, 10, 16, 27, 56, 240};
  std::vector<Center> centers;
  for (std::size_t k = 1; k <= 8; ++k) {
    centers.push_back({std::string("p") + std::to_string(k), ""});
    const ModelId m = tw.register_model(BaseKind::ProjectivePlane, centers);
    auto catalog = cones.catalog(m).negative_curves;
    cr.expect(catalog.size() == expected[k - 1],
              "catalog count at k=" + std::to_string(k));
    auto oracle = brute_force_curves(k);
    std::sort(catalog.begin(), catalog.end());
    std::sort(oracle.begin(), oracle.end());
    cr.expect(catalog == oracle, "independent enumeration agrees at k=" + std::to_string(k));
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 8: projection formula and negativity lemma", "[acceptance]") {
  Criterion cr(8, "projection-negativity");
  Tower tw;
  ConeOracle cones(tw);
  const auto pool = sample_pool(tw);
  Prng rng(1008);
  for (int i = 0; i < 500; ++i) {
    const ModelId lower = pool[rng.int_in(0, pool.size() - 1)];
    const ModelId upper = tw.join(lower, pool[rng.int_in(0, pool.size() - 1)]);

    const NSClass a = draw_class(rng, tw, lower, [](const NSClass&) { return true; });
    const NSClass b = draw_class(rng, tw, upper, [](const NSClass&) { return true; });
    cr.expect(tw.form_product(upper, pullback_class(tw, a, upper).coeffs, b.coeffs) ==
                  tw.form_product(lower, a.coeffs, pushforward_class(tw, b, lower).coeffs),
              "projection formula");

    const NSClass nef =
        draw_nef(rng, tw, cones, upper);
    const NSClass back =
        pullback_class(tw, pushforward_class(tw, nef, lower), upper);
    cr.expect(cones.is_psef(NSClass{upper, vec_sub(back.coeffs, nef.coeffs)}),
              "negativity lemma difference is pseudo-effective");
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 9: positivity pairing propositions", "[acceptance]") {
  Criterion cr(9, "positivity-pairing");
  Tower tw;
  ConeOracle cones(tw);
  const auto pool = sample_pool(tw);
  Prng rng(1009);

  for (int i = 0; i < 100; ++i) {
    const ModelId ma = pool[rng.int_in(0, pool.size() - 1)];
    const ModelId mw = pool[rng.int_in(0, pool.size() - 1)];
    const CartierBClass alpha{draw_ample(rng, tw, cones, ma)};
    WeilBClass w;
    for (int tries = 0;; ++tries) {
      const CartierBClass beta{draw_class(
          rng, tw, mw, [&](const NSClass& x) { return cones.is_psef(x); })};
      w = weil_from_cartier(tw, beta);
      if (!is_almost_zero(tw, w)) break;
      if (tries > 200) {
        cr.expect(false, "could not sample a non-almost-zero pseudo-effective class");
        break;
      }
    }
    cr.expect(alpha_pos(tw, alpha, w),
              "ample classes pair strictly positively with nonzero psef classes");
  }

  // dual characterization: ample iff strictly positive against every
  // effective-cone generator of the minimal determination, with the
  // generators recovered by dualizing the nef cone
  for (int i = 0; i < 100; ++i) {
    const ModelId m = pool[rng.int_in(0, pool.size() - 1)];
    const NSClass c = draw_class(rng, tw, m, [](const NSClass&) { return true; });
    const CartierBClass a{c};
    const NSClass det = minimal_determination(tw, a).det;
    const auto eff = cones.dual_rays(det.model, cones.nef_generators(det.model));
    bool strict = true;
    for (const auto& g : eff)
      strict = strict && tw.form_product(det.model, det.coeffs, g) > 0;
    cr.expect(cones.b_positivity(a).ample == strict,
              "ample iff strictly positive on the effective generators");
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 10: nef transfer along the morphism catalog", "[acceptance]") {
  Criterion cr(10, "functorial-transfer");
  Tower tw;
  ConeOracle cones(tw);
  const ModelId line = tw.base_model(BaseKind::ProjectiveLine);
  const InducedMap pr1 = make_morphism(tw, {MorphismKind::ProjectionFirst, {}});
  const InducedMap pr2 = make_morphism(tw, {MorphismKind::ProjectionSecond, {}});
  for (long long d = -3; d <= 3; ++d) {
    for (const auto* f : {&pr1, &pr2}) {
      const CartierBClass a = bcls(tw, line, {d});
      const bool source_nef = cones.b_positivity(induced_map(tw, *f, a)).nef;
      const bool target_nef = cones.b_positivity(a).nef;
      cr.expect(source_nef == target_nef && target_nef == (d >= 0),
                "nef transfer at degree " + std::to_string(d));
    }
  }
  Prng rng(1010);
  for (int i = 0; i < 50; ++i) {
    const CartierBClass a = bcls(tw, line, {rng.int_in(-5, 5)});
    const CartierBClass b = bcls(tw, line, {rng.int_in(-5, 5)});
    const Rat u = rng.positive_rational();
    const Rat v = rng.positive_rational();
    const CartierBClass lhs =
        induced_map(tw, pr1, linear_combination(tw, {{u, a}, {v, b}}));
    const CartierBClass rhs = linear_combination(
        tw, {{u, induced_map(tw, pr1, a)}, {v, induced_map(tw, pr1, b)}});
    cr.expect(equals(tw, lhs, rhs), "induced map is exactly linear");
  }
  REQUIRE(cr.finish());
}

TEST_CASE("criterion 11: deterministic front end", "[acceptance]") {
  Criterion cr(11, "cli-determinism");
  const std::string path = std::string(BDIV_SOURCE_DIR) + "/demo/session.json";
  const SessionResult first = Session::run_file(path);
  const SessionResult second = Session::run_file(path);
  cr.expect(first.exit_code == 0, "shipped session executes cleanly");
  cr.expect(first.report.dump(2) == second.report.dump(2),
            "structured reports are byte-identical across runs");

  SuiteOptions opts;  // library defaults: seed 1, 100 samples per check
  const auto checks = run_theorem_suite(opts);
  cr.expect(checks.size() == 10, "full suite runs all checks");
  for (const auto& r : checks) cr.expect(r.passed, "check " + r.name + " passes");
  REQUIRE(cr.finish());
}
