#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "bdiv/bclasses.hpp"

namespace bdiv {

/// Classes of the irreducible curves with negative self-intersection on one
/// model. Shipped catalogs cover the projective plane and the quadric with no
/// centers (both empty) and towers of at most eight centers over the plane,
/// each center general on its host; anything else needs a user catalog and is
/// flagged accordingly.
struct CurveCatalog {
  enum class Exactness { Shipped, UserSupplied };

  ModelId model;
  std::vector<Vec> negative_curves;
  Exactness exactness = Exactness::Shipped;
};

struct ZariskiPair {
  NSClass positive;                  // nef
  NSClass negative;                  // effective, negative-definite support
  std::vector<std::size_t> support;  // indices into the curve catalog
  Vec multiplicities;                // coefficients of the support curves
};

enum class SeshadriFlag { Exact, UpperBound };

struct SeshadriValue {
  Rat value;
  SeshadriFlag flag = SeshadriFlag::Exact;
};

/// Where to probe a Seshadri constant: a point general on the base surface
/// (empty host) or general on the exceptional divisor of a named center.
struct PointSpec {
  std::string on_exceptional;
};

struct Positivity {
  bool nef = false;
  bool ample = false;
  bool psef = false;
  bool big = false;
};

/// Positivity oracle over one tower. Catalogs, effective-cone generators and
/// nef generators are computed once per model and cached; all queries are
/// pure, so concurrent evaluation is safe.
class ConeOracle {
 public:
  explicit ConeOracle(const Tower& tw) : tw_(tw) {}
  ConeOracle(const ConeOracle&) = delete;
  ConeOracle& operator=(const ConeOracle&) = delete;

  const Tower& tower() const { return tw_; }

  /// Registers the asserted-complete list of negative curve classes for a
  /// model outside the shipped range.
  void register_user_catalog(ModelId id, std::vector<Vec> curves) {
    const Model& m = tw_.model(id);
    if (shipped_range(m))
      fail(ErrorKind::ValidationError,
           m.spec_string() + " already has a shipped catalog");
    for (const auto& c : curves) {
      if (c.size() != m.rank())
        fail(ErrorKind::ValidationError, "catalog class length does not match model rank");
      if (tw_.form_product(id, c, c) >= 0)
        fail(ErrorKind::ValidationError,
             "catalog classes must have negative self-intersection");
    }
    std::unique_lock lock(mu_);
    if (catalogs_.count(id.value))
      fail(ErrorKind::ValidationError,
           "a catalog for " + m.spec_string() + " is already registered");
    CurveCatalog cat;
    cat.model = id;
    cat.negative_curves = std::move(curves);
    cat.exactness = CurveCatalog::Exactness::UserSupplied;
    catalogs_.emplace(id.value, std::move(cat));
  }

  const CurveCatalog& catalog(ModelId id) const {
    {
      std::shared_lock lock(mu_);
      auto it = catalogs_.find(id.value);
      if (it != catalogs_.end()) return it->second;
    }
    const Model& m = tw_.model(id);
    if (!shipped_range(m))
      fail(ErrorKind::OutsideCatalogRange,
           "no shipped curve catalog for " + m.spec_string() +
               "; register a user catalog to proceed");
    CurveCatalog cat;
    cat.model = id;
    cat.exactness = CurveCatalog::Exactness::Shipped;
    cat.negative_curves = enumerate_negative_curves(m);
    std::unique_lock lock(mu_);
    return catalogs_.try_emplace(id.value, std::move(cat)).first->second;
  }

  /// Extremal rays of the dual of an arbitrary generated cone under the
  /// model's intersection form.
  std::vector<Vec> dual_rays(ModelId id, const std::vector<Vec>& gens) const {
    std::vector<Vec> rays = dual_cone_rays(id, gens);
    std::sort(rays.begin(), rays.end());
    return rays;
  }

  /// Extremal-ray generators of the nef cone, computed as the exact rational
  /// dual of the effective cone (double description).
  const std::vector<Vec>& nef_generators(ModelId id) const {
    {
      std::shared_lock lock(mu_);
      auto it = nef_gens_.find(id.value);
      if (it != nef_gens_.end()) return it->second;
    }
    if (base_is_curve(tw_.model(id).base)) {
      // the degree pairing is degenerate; the cone is the ray of the point
      std::unique_lock lock(mu_);
      return nef_gens_.try_emplace(id.value, std::vector<Vec>{Vec{Rat(1)}}).first->second;
    }
    std::vector<Vec> rays = dual_cone_rays(id, effective_generators(id));
    std::sort(rays.begin(), rays.end());
    std::unique_lock lock(mu_);
    return nef_gens_.try_emplace(id.value, std::move(rays)).first->second;
  }

  /// Nef test: non-negative against every catalog curve and against a fixed
  /// positive polarization, with non-negative self-intersection. On a surface
  /// this decides membership in the dual of the full curve cone exactly.
  bool is_nef(const NSClass& c) const {
    const Model& m = tw_.model(c.model);
    if (base_is_curve(m.base)) return c.coeffs[0] >= 0;
    for (const auto& curve : catalog(c.model).negative_curves)
      if (tw_.form_product(c.model, c.coeffs, curve) < 0) return false;
    if (tw_.form_product(c.model, c.coeffs, polarization(m)) < 0) return false;
    return tw_.form_product(c.model, c.coeffs, c.coeffs) >= 0;
  }

  /// Nakai-type ample test: strict against every catalog curve, strictly
  /// positive self-intersection, and on the positive side of the light cone.
  bool is_ample(const NSClass& c) const {
    const Model& m = tw_.model(c.model);
    if (base_is_curve(m.base)) return c.coeffs[0] > 0;
    for (const auto& curve : catalog(c.model).negative_curves)
      if (tw_.form_product(c.model, c.coeffs, curve) <= 0) return false;
    if (tw_.form_product(c.model, c.coeffs, polarization(m)) <= 0) return false;
    return tw_.form_product(c.model, c.coeffs, c.coeffs) > 0;
  }

  /// Pseudo-effectivity as duality against the nef generators. Large shipped
  /// towers and user catalogs fall back to an explicit Zariski-type
  /// decomposition attempt, which decides the same cone membership without
  /// materializing the dual generators.
  bool is_psef(const NSClass& c) const {
    const Model& m = tw_.model(c.model);
    if (base_is_curve(m.base)) return c.coeffs[0] >= 0;
    const CurveCatalog& cat = catalog(c.model);
    if (cat.exactness == CurveCatalog::Exactness::Shipped && m.centers.size() <= 6) {
      for (const auto& n : nef_generators(c.model))
        if (tw_.form_product(c.model, c.coeffs, n) < 0) return false;
      return true;
    }
    return try_zariski(c).has_value();
  }

  ZariskiPair zariski_decomposition(const NSClass& c) const {
    const Model& m = tw_.model(c.model);
    if (base_is_curve(m.base)) {
      if (c.coeffs[0] < 0)
        fail(ErrorKind::NotPseudoEffective, "negative degree on " + m.spec_string());
      return ZariskiPair{c, NSClass{c.model, Vec(1, Rat(0))}, {}, {}};
    }
    auto zp = try_zariski(c);
    if (!zp)
      fail(ErrorKind::NotPseudoEffective,
           "class is not pseudo-effective on " + m.spec_string());
    return std::move(*zp);
  }

  /// Volume: zero off the pseudo-effective cone, otherwise the
  /// self-intersection of the Zariski positive part.
  Rat volume(const NSClass& c) const {
    const Model& m = tw_.model(c.model);
    if (base_is_curve(m.base)) return c.coeffs[0] >= 0 ? c.coeffs[0] : Rat(0);
    (void)catalog(c.model);
    auto zp = try_zariski(c);
    if (!zp) return Rat(0);
    return tw_.form_product(c.model, zp->positive.coeffs, zp->positive.coeffs);
  }

  /// Exact nef threshold of the class against the exceptional divisor of a
  /// blow-up at the given point: the minimum of finitely many linear ratios
  /// over the effective generators of the extended model.
  SeshadriValue seshadri_point(const NSClass& c, const PointSpec& point) const {
    const Model& m = tw_.model(c.model);
    if (!point.on_exceptional.empty() && !m.center_index(point.on_exceptional))
      fail(ErrorKind::UnknownHost,
           "'" + point.on_exceptional + "' is not a center of " + m.spec_string());
    if (base_is_curve(m.base)) {
      if (c.coeffs[0] < 0) fail(ErrorKind::NotNef, "negative degree on " + m.spec_string());
      return SeshadriValue{c.coeffs[0], SeshadriFlag::Exact};
    }
    if (!is_nef(c)) fail(ErrorKind::NotNef, "Seshadri constants are defined for nef classes");
    std::string label = "~pt";
    while (m.center_index(label)) label += "'";
    const ModelId ext = tw_.blow_up(c.model, Center{label, point.on_exceptional});
    const Model& me = tw_.model(ext);
    const CurveCatalog& ext_cat = catalog(ext);
    const Vec pulled = pullback_class(tw_, c, ext).coeffs;
    const std::size_t idx = base_rank(me.base) + *me.center_index(label);
    std::optional<Rat> best;
    for (const auto& g : effective_generators(ext)) {
      const Rat mult = -g[idx];  // multiplicity of the generator at the point
      if (mult <= 0) continue;
      const Rat ratio = tw_.form_product(ext, pulled, g) / mult;
      if (!best || ratio < *best) best = ratio;
    }
    if (!best) {
      if (ext_cat.exactness == CurveCatalog::Exactness::Shipped)
        fail(ErrorKind::Internal, "no curve through the probed point on " + me.spec_string());
      fail(ErrorKind::OutsideCatalogRange,
           "user catalog for " + me.spec_string() + " lists no curve through the probed point");
    }
    const bool exact = ext_cat.exactness == CurveCatalog::Exactness::Shipped;
    return SeshadriValue{*best, exact ? SeshadriFlag::Exact : SeshadriFlag::UpperBound};
  }

  /// Global Seshadri constant via the finite stratification: one general
  /// point of the base, one general point on each exceptional divisor, and
  /// one general point on each catalog curve. Strata whose blow-up leaves the
  /// catalog range are skipped and the result is flagged as an upper bound.
  SeshadriValue seshadri_global(const NSClass& c) const {
    const Model& m = tw_.model(c.model);
    if (base_is_curve(m.base)) {
      if (c.coeffs[0] < 0) fail(ErrorKind::NotNef, "negative degree on " + m.spec_string());
      return SeshadriValue{c.coeffs[0], SeshadriFlag::Exact};
    }
    if (!is_nef(c)) fail(ErrorKind::NotNef, "Seshadri constants are defined for nef classes");
    std::optional<Rat> best;
    bool exact = true;
    std::vector<std::string> hosts;
    hosts.emplace_back();
    for (const auto& center : m.centers) hosts.push_back(center.label);
    for (const auto& host : hosts) {
      try {
        const SeshadriValue v = seshadri_point(c, PointSpec{host});
        if (v.flag != SeshadriFlag::Exact) exact = false;
        if (!best || v.value < *best) best = v.value;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OutsideCatalogRange) throw;
        exact = false;
      }
    }
    // At a general point of a catalog curve the curve itself bounds the
    // threshold by its degree against the class; the other ratios already
    // appear in the generic stratum.
    for (const auto& curve : catalog(c.model).negative_curves) {
      const Rat v = tw_.form_product(c.model, c.coeffs, curve);
      if (!best || v < *best) best = v;
    }
    if (!best)
      fail(ErrorKind::OutsideCatalogRange,
           "no computable Seshadri stratum on " + m.spec_string());
    return SeshadriValue{*best, exact ? SeshadriFlag::Exact : SeshadriFlag::UpperBound};
  }

  /// Positivity of a Cartier b-class, evaluated on its minimal determination.
  /// Nef, pseudo-effective and ample transfer between determinations, and the
  /// b-level Seshadri constant is realized on the minimal one, so the
  /// class-level tests there decide the b-level cones.
  Positivity b_positivity(const CartierBClass& a) const {
    const NSClass det = minimal_determination(tw_, a).det;
    Positivity p;
    p.nef = is_nef(det);
    p.psef = is_psef(det);
    p.ample = is_ample(det);
    p.big = volume(det) > 0;
    return p;
  }

  /// Seshadri constant of a nef Cartier b-class: the supremum of the global
  /// Seshadri constants over all determinations. Every strictly dominating
  /// determination carries an exceptional curve pairing zero with the class,
  /// which forces its global value to zero, so the supremum is attained on
  /// the minimal determination.
  SeshadriValue seshadri_b(const CartierBClass& a) const {
    const NSClass det = minimal_determination(tw_, a).det;
    if (!is_nef(det))
      fail(ErrorKind::NotNef, "Seshadri constants are defined for nef b-classes");
    return seshadri_global(det);
  }

  struct CVolume {
    Rat value;
    bool psef = false;  // false means the value 0 falls outside the domain
  };

  /// Volume of a Cartier b-class. The volume agrees on every determination,
  /// so it is evaluated on the minimal one. Non-pseudo-effective input yields
  /// value zero with the domain flag cleared.
  CVolume c_volume(const CartierBClass& a) const {
    const NSClass det = minimal_determination(tw_, a).det;
    CVolume out;
    out.psef = is_psef(det);
    out.value = out.psef ? volume(det) : Rat(0);
    return out;
  }

 private:
  static bool shipped_range(const Model& m) {
    if (base_is_curve(m.base)) return true;
    if (m.base == BaseKind::QuadricProduct) return m.centers.empty();
    return m.centers.size() <= 8;
  }

  /// Fixed positive class on the base: the hyperplane pullback, or the sum
  /// of the two rulings.
  static Vec polarization(const Model& m) {
    Vec a(m.rank(), Rat(0));
    a[0] = 1;
    if (m.base == BaseKind::QuadricProduct) a[1] = 1;
    return a;
  }

  /// Exceptional classes of a tower: the strict transform of each
  /// exceptional divisor (tail classes for childless centers, chain
  /// differences past infinitely-near ones).
  static std::vector<Vec> exceptional_curves(const Model& m) {
    const std::size_t nb = base_rank(m.base);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < m.centers.size(); ++i) {
      Vec v(m.rank(), Rat(0));
      v[nb + i] = 1;
      for (const std::size_t j : m.children_of(i)) v[nb + j] = -1;
      out.push_back(std::move(v));
    }
    return out;
  }

  /// Negative curves of a tower of general centers over the plane: the
  /// exceptional classes plus every degree-d class, d <= 6, whose
  /// multiplicity vector satisfies sum m = 3d-1, sum m^2 = d^2+1 and the
  /// proximity inequalities of the center tree. Those numerical conditions
  /// pin self-intersection -1 and anticanonical degree 1.
  static std::vector<Vec> enumerate_negative_curves(const Model& m) {
    std::vector<Vec> out = exceptional_curves(m);
    if (m.centers.empty()) return {};
    const std::size_t k = m.centers.size();
    std::vector<long long> mult(k, 0);
    for (long long d = 1; d <= 6; ++d) {
      const long long target_sum = 3 * d - 1;
      const long long target_sq = d * d + 1;
      enumerate_multiplicities(m, d, 0, target_sum, target_sq, mult, out);
    }
    return out;
  }

  static void enumerate_multiplicities(const Model& m, long long d, std::size_t pos,
                                       long long sum_left, long long sq_left,
                                       std::vector<long long>& mult,
                                       std::vector<Vec>& out) {
    const std::size_t k = m.centers.size();
    if (pos == k) {
      if (sum_left != 0 || sq_left != 0) return;
      for (std::size_t i = 0; i < k; ++i) {
        long long child_sum = 0;
        for (const std::size_t j : m.children_of(i)) child_sum += mult[j];
        if (mult[i] < child_sum) return;
      }
      Vec v(m.rank(), Rat(0));
      v[0] = d;
      for (std::size_t i = 0; i < k; ++i) v[1 + i] = -mult[i];
      out.push_back(std::move(v));
      return;
    }
    const long long remaining = static_cast<long long>(k - pos);
    for (long long mi = 0; mi <= std::min(d, sum_left); ++mi) {
      if (mi * mi > sq_left) break;
      // the other positions can contribute at most d per slot
      if (sum_left - mi > (remaining - 1) * d) continue;
      mult[pos] = mi;
      enumerate_multiplicities(m, d, pos + 1, sum_left - mi, sq_left - mi * mi, mult, out);
    }
    mult[pos] = 0;
  }

  /// Polyhedral generators of the pseudo-effective cone: the catalog curves,
  /// the boundary rays of the low-rank towers where those do not suffice,
  /// and the polarization (redundant on shipped models, a documented guard
  /// for user catalogs).
  const std::vector<Vec>& effective_generators(ModelId id) const {
    {
      std::shared_lock lock(mu_);
      auto it = eff_gens_.find(id.value);
      if (it != eff_gens_.end()) return it->second;
    }
    const Model& m = tw_.model(id);
    std::vector<Vec> gens;
    if (base_is_curve(m.base)) {
      gens.push_back(Vec{Rat(1)});
    } else if (m.base == BaseKind::QuadricProduct && m.centers.empty()) {
      gens.push_back(Vec{Rat(1), Rat(0)});
      gens.push_back(Vec{Rat(0), Rat(1)});
    } else if (m.base == BaseKind::ProjectivePlane && m.centers.empty()) {
      gens.push_back(Vec{Rat(1)});
    } else if (m.base == BaseKind::ProjectivePlane && m.centers.size() == 1 &&
               catalog(id).exactness == CurveCatalog::Exactness::Shipped) {
      gens.push_back(Vec{Rat(0), Rat(1)});   // exceptional curve
      gens.push_back(Vec{Rat(1), Rat(-1)});  // line through the center
    } else {
      gens = catalog(id).negative_curves;
      bool has_polarization = false;
      for (const auto& g : gens) has_polarization |= (g == polarization(m));
      if (!has_polarization) gens.push_back(polarization(m));
    }
    std::unique_lock lock(mu_);
    return eff_gens_.try_emplace(id.value, std::move(gens)).first->second;
  }

  /// Iterative Zariski decomposition. Succeeds exactly on the
  /// pseudo-effective classes: enlarge the support by every catalog curve
  /// pairing negatively with the current positive part, solve the exact Gram
  /// system, and stop when the positive part clears the whole catalog.
  std::optional<ZariskiPair> try_zariski(const NSClass& c) const {
    const std::vector<Vec>& curves = catalog(c.model).negative_curves;
    const std::size_t n = curves.size();
    std::vector<char> in_support(n, 0);
    std::vector<std::size_t> support;
    Vec p = c.coeffs;
    Vec mults;
    while (true) {
      bool added = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_support[i] && tw_.form_product(c.model, p, curves[i]) < 0) {
          in_support[i] = 1;
          support.push_back(i);
          added = true;
        }
      }
      if (!added) break;
      std::sort(support.begin(), support.end());
      const std::size_t s = support.size();
      Mat gram(s, s);
      Vec rhs(s);
      for (std::size_t i = 0; i < s; ++i) {
        rhs[i] = tw_.form_product(c.model, c.coeffs, curves[support[i]]);
        for (std::size_t j = 0; j < s; ++j)
          gram.at(i, j) = tw_.form_product(c.model, curves[support[i]], curves[support[j]]);
      }
      if (!is_negative_definite(gram)) return std::nullopt;
      auto sol = solve_linear(gram, rhs);
      if (!sol) return std::nullopt;
      mults = *sol;
      p = c.coeffs;
      for (std::size_t i = 0; i < s; ++i)
        p = vec_sub(p, vec_scale(mults[i], curves[support[i]]));
    }
    for (const auto& a : mults)
      if (a < 0) return std::nullopt;
    const Model& m = tw_.model(c.model);
    if (tw_.form_product(c.model, p, polarization(m)) < 0) return std::nullopt;
    if (tw_.form_product(c.model, p, p) < 0) return std::nullopt;
    Vec neg(c.coeffs.size(), Rat(0));
    for (std::size_t i = 0; i < support.size(); ++i)
      neg = vec_add(neg, vec_scale(mults[i], curves[support[i]]));
    return ZariskiPair{NSClass{c.model, std::move(p)}, NSClass{c.model, std::move(neg)},
                       std::move(support), std::move(mults)};
  }

  /// Extremal rays of {x : <x, g> >= 0 for all g}, by incremental double
  /// description with exact arithmetic. The lineality space shrinks as
  /// constraints arrive; the final cone must be pointed.
  std::vector<Vec> dual_cone_rays(ModelId id, const std::vector<Vec>& gens) const {
    const std::size_t r = tw_.model(id).rank();
    struct Ray {
      Vec v;
      std::vector<char> tight;
    };
    std::vector<Vec> lineality;
    for (std::size_t i = 0; i < r; ++i) {
      Vec e(r, Rat(0));
      e[i] = 1;
      lineality.push_back(std::move(e));
    }
    std::vector<Ray> rays;
    for (std::size_t t = 0; t < gens.size(); ++t) {
      const Vec& g = gens[t];
      auto value = [&](const Vec& x) { return tw_.form_product(id, x, g); };
      std::size_t piv = lineality.size();
      for (std::size_t i = 0; i < lineality.size(); ++i)
        if (value(lineality[i]) != 0) { piv = i; break; }
      if (piv < lineality.size()) {
        Vec l0 = lineality[piv];
        Rat a0 = value(l0);
        if (a0 < 0) {
          l0 = vec_scale(Rat(-1), l0);
          a0 = -a0;
        }
        std::vector<Vec> next;
        for (std::size_t i = 0; i < lineality.size(); ++i) {
          if (i == piv) continue;
          const Rat ai = value(lineality[i]);
          next.push_back(ai == 0 ? lineality[i]
                                 : vec_sub(lineality[i], vec_scale(ai / a0, l0)));
        }
        lineality = std::move(next);
        for (auto& ray : rays) {
          const Rat ar = value(ray.v);
          if (ar != 0) ray.v = normalize_ray(vec_sub(ray.v, vec_scale(ar / a0, l0)));
          ray.tight.push_back(1);
        }
        Ray fresh;
        fresh.v = normalize_ray(l0);
        fresh.tight.assign(t, 1);  // orthogonal to every processed constraint
        fresh.tight.push_back(0);
        rays.push_back(std::move(fresh));
        continue;
      }
      std::vector<Ray> keep;
      std::vector<std::size_t> plus, minus;
      std::vector<Rat> vals(rays.size());
      for (std::size_t i = 0; i < rays.size(); ++i) vals[i] = value(rays[i].v);
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (vals[i] > 0)
          plus.push_back(i);
        else if (vals[i] < 0)
          minus.push_back(i);
      }
      auto adjacent = [&](std::size_t a, std::size_t b) {
        for (std::size_t o = 0; o < rays.size(); ++o) {
          if (o == a || o == b) continue;
          bool dominates = true;
          for (std::size_t s = 0; s < t; ++s) {
            if (rays[a].tight[s] && rays[b].tight[s] && !rays[o].tight[s]) {
              dominates = false;
              break;
            }
          }
          if (dominates) return false;
        }
        return true;
      };
      std::vector<Ray> born;
      for (const std::size_t p : plus) {
        for (const std::size_t q : minus) {
          if (!adjacent(p, q)) continue;
          Ray w;
          w.v = normalize_ray(
              vec_sub(vec_scale(vals[p], rays[q].v), vec_scale(vals[q], rays[p].v)));
          w.tight.resize(t + 1);
          for (std::size_t s = 0; s < t; ++s)
            w.tight[s] = rays[p].tight[s] && rays[q].tight[s];
          w.tight[t] = 1;
          born.push_back(std::move(w));
        }
      }
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (vals[i] < 0) continue;
        rays[i].tight.push_back(vals[i] == 0 ? 1 : 0);
        keep.push_back(std::move(rays[i]));
      }
      for (auto& w : born) keep.push_back(std::move(w));
      rays = std::move(keep);
    }
    if (!lineality.empty())
      fail(ErrorKind::Internal, "dual cone is not pointed on " + tw_.model(id).spec_string());
    std::vector<Vec> out;
    out.reserve(rays.size());
    for (auto& ray : rays) out.push_back(std::move(ray.v));
    return out;
  }

  /// Scales to a primitive integer vector, preserving direction.
  static Vec normalize_ray(Vec v) {
    Int lcm = 1;
    for (const auto& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
    Int gcd = 0;
    for (auto& x : v) {
      x *= lcm;
      gcd = boost::multiprecision::gcd(gcd, numerator(x));
    }
    if (gcd == 0) fail(ErrorKind::Internal, "zero ray");
    for (auto& x : v) x /= gcd;
    return v;
  }

  const Tower& tw_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::uint32_t, CurveCatalog> catalogs_;
  mutable std::map<std::uint32_t, std::vector<Vec>> eff_gens_;
  mutable std::map<std::uint32_t, std::vector<Vec>> nef_gens_;
};

}  // namespace bdiv
