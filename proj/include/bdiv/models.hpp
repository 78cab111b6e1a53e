#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "bdiv/errors.hpp"
#include "bdiv/linalg.hpp"

namespace bdiv {

enum class BaseKind { ProjectivePlane, QuadricProduct, ProjectiveLine };

inline const char* base_kind_name(BaseKind k) {
  switch (k) {
    case BaseKind::ProjectivePlane: return "P2";
    case BaseKind::QuadricProduct: return "P1xP1";
    case BaseKind::ProjectiveLine: return "P1";
  }
  return "?";
}

inline std::optional<BaseKind> base_kind_from_name(std::string_view s) {
  if (s == "P2") return BaseKind::ProjectivePlane;
  if (s == "P1xP1") return BaseKind::QuadricProduct;
  if (s == "P1") return BaseKind::ProjectiveLine;
  return std::nullopt;
}

inline std::size_t base_rank(BaseKind k) {
  return k == BaseKind::QuadricProduct ? 2 : 1;
}

inline bool base_is_curve(BaseKind k) { return k == BaseKind::ProjectiveLine; }

/// A blow-up center. `host` is empty for a point general on the base surface,
/// otherwise it names an earlier center: the point is general on that
/// center's exceptional divisor (an infinitely-near point).
struct Center {
  std::string label;
  std::string host;

  bool operator==(const Center& o) const { return label == o.label && host == o.host; }
  bool operator<(const Center& o) const {
    return label != o.label ? label < o.label : host < o.host;
  }
};

struct ModelId {
  std::uint32_t value = 0;
  bool operator==(const ModelId& o) const { return value == o.value; }
  bool operator!=(const ModelId& o) const { return value != o.value; }
  bool operator<(const ModelId& o) const { return value < o.value; }
};

/// A smooth model in the tower: the base surface together with an ordered
/// list of blow-up centers. The numerical lattice is taken in the
/// total-transform basis (base classes first, then one exceptional class per
/// center in canonical order), where the intersection form is the base form
/// extended by -1 on each exceptional class.
struct Model {
  ModelId id;
  BaseKind base = BaseKind::ProjectivePlane;
  std::vector<Center> centers;  // canonical order: hosts precede children

  std::size_t rank() const { return base_rank(base) + centers.size(); }

  std::optional<std::size_t> center_index(std::string_view label) const {
    for (std::size_t i = 0; i < centers.size(); ++i)
      if (centers[i].label == label) return i;
    return std::nullopt;
  }

  std::vector<std::size_t> children_of(std::size_t center_idx) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < centers.size(); ++j)
      if (centers[j].host == centers[center_idx].label) out.push_back(j);
    return out;
  }

  std::string spec_string() const {
    std::string s = base_kind_name(base);
    if (!centers.empty()) {
      s += "[";
      for (std::size_t i = 0; i < centers.size(); ++i) {
        if (i) s += ",";
        s += centers[i].label;
        if (!centers[i].host.empty()) s += "@" + centers[i].host;
      }
      s += "]";
    }
    return s;
  }
};

enum class Order { Equal, Above, Below, Incomparable };

namespace detail {

/// Deterministic basis order: a center may only appear after its host, ties
/// broken by label. Fails with UnknownHost if some host is missing (or the
/// host relation is cyclic), LabelConflict on duplicate labels.
inline std::vector<Center> canonical_center_order(std::vector<Center> centers) {
  std::sort(centers.begin(), centers.end(),
            [](const Center& a, const Center& b) { return a.label < b.label; });
  for (std::size_t i = 0; i + 1 < centers.size(); ++i)
    if (centers[i].label == centers[i + 1].label)
      fail(ErrorKind::LabelConflict, "duplicate center label '" + centers[i].label + "'");
  std::vector<Center> placed;
  std::vector<bool> used(centers.size(), false);
  placed.reserve(centers.size());
  while (placed.size() < centers.size()) {
    bool advanced = false;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if (used[i]) continue;
      const std::string& host = centers[i].host;
      bool host_ok = host.empty();
      if (!host_ok)
        for (const auto& p : placed)
          if (p.label == host) { host_ok = true; break; }
      if (host_ok) {
        placed.push_back(centers[i]);
        used[i] = true;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      for (std::size_t i = 0; i < centers.size(); ++i)
        if (!used[i])
          fail(ErrorKind::UnknownHost,
               "center '" + centers[i].label + "' has unknown host '" + centers[i].host + "'");
    }
  }
  return placed;
}

inline std::string registry_key(BaseKind base, const std::vector<Center>& canonical) {
  std::string key = base_kind_name(base);
  for (const auto& c : canonical) key += "|" + c.label + ">" + c.host;
  return key;
}

}  // namespace detail

/// The directed system of smooth models over a base surface, realized as a
/// registry of blow-up towers keyed by their center sets. Models are
/// canonicalized so that comparison and join are set operations. Registration
/// is lazy and logically const: the directed system exists independently of
/// which finite part has been materialized. All registered models are
/// immutable; reads may run concurrently, registration is serialized.
class Tower {
 public:
  Tower() = default;
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  ModelId base_model(BaseKind kind) const { return register_model(kind, {}); }

  /// Canonical entry point: validates labels and hosts, orders the centers,
  /// and returns the unique registered model with that center set.
  ModelId register_model(BaseKind base, std::vector<Center> centers) const {
    if (base_is_curve(base) && !centers.empty())
      fail(ErrorKind::BlowUpOnCurve, "a smooth curve admits no nontrivial blow-ups");
    auto canonical = detail::canonical_center_order(std::move(centers));
    const std::string key = detail::registry_key(base, canonical);
    {
      std::shared_lock lock(mu_);
      auto it = index_.find(key);
      if (it != index_.end()) return ModelId{it->second};
    }
    std::unique_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return ModelId{it->second};
    Model m;
    m.id = ModelId{static_cast<std::uint32_t>(models_.size())};
    m.base = base;
    m.centers = std::move(canonical);
    models_.push_back(std::move(m));
    index_.emplace(key, models_.back().id.value);
    return models_.back().id;
  }

  ModelId blow_up(ModelId id, const Center& center) const {
    const Model& m = model(id);
    if (base_is_curve(m.base))
      fail(ErrorKind::BlowUpOnCurve, "cannot blow up a point on " + m.spec_string());
    if (center.label.empty())
      fail(ErrorKind::ValidationError, "blow-up center needs a nonempty label");
    if (m.center_index(center.label))
      fail(ErrorKind::LabelConflict, "center label '" + center.label + "' already used");
    if (!center.host.empty() && !m.center_index(center.host))
      fail(ErrorKind::UnknownHost,
           "host '" + center.host + "' is not a center of " + m.spec_string());
    auto centers = m.centers;
    centers.push_back(center);
    return register_model(m.base, std::move(centers));
  }

  const Model& model(ModelId id) const {
    std::shared_lock lock(mu_);
    if (id.value >= models_.size()) fail(ErrorKind::Internal, "unknown model id");
    return models_[id.value];
  }

  /// Snapshot of all currently registered models.
  std::vector<ModelId> registered() const {
    std::shared_lock lock(mu_);
    std::vector<ModelId> out;
    out.reserve(models_.size());
    for (const auto& m : models_) out.push_back(m.id);
    return out;
  }

  Order compare(ModelId a, ModelId b) const {
    const Model& ma = model(a);
    const Model& mb = model(b);
    if (ma.base != mb.base)
      fail(ErrorKind::DifferentBase,
           ma.spec_string() + " and " + mb.spec_string() + " have different bases");
    const bool a_in_b = contains(mb, ma);
    const bool b_in_a = contains(ma, mb);
    if (a_in_b && b_in_a) return Order::Equal;
    if (b_in_a) return Order::Above;
    if (a_in_b) return Order::Below;
    return Order::Incomparable;
  }

  /// Least model dominating both: the union of the two center trees.
  ModelId join(ModelId a, ModelId b) const {
    const Model& ma = model(a);
    const Model& mb = model(b);
    if (ma.base != mb.base)
      fail(ErrorKind::DifferentBase,
           ma.spec_string() + " and " + mb.spec_string() + " have different bases");
    std::vector<Center> merged = ma.centers;
    for (const auto& c : mb.centers) {
      bool found = false;
      for (const auto& d : merged) {
        if (d.label == c.label) {
          if (d.host != c.host)
            fail(ErrorKind::LabelConflict,
                 "center '" + c.label + "' has host '" + d.host + "' in one tower and '" +
                     c.host + "' in the other");
          found = true;
          break;
        }
      }
      if (!found) merged.push_back(c);
    }
    return register_model(ma.base, std::move(merged));
  }

  /// Largest model dominated by both: the intersection of the center trees.
  ModelId meet(ModelId a, ModelId b) const {
    const Model& ma = model(a);
    const Model& mb = model(b);
    if (ma.base != mb.base)
      fail(ErrorKind::DifferentBase,
           ma.spec_string() + " and " + mb.spec_string() + " have different bases");
    std::vector<Center> common;
    for (const auto& c : ma.centers)
      for (const auto& d : mb.centers)
        if (c == d) { common.push_back(c); break; }
    return register_model(ma.base, std::move(common));
  }

  /// Total-transform pullback along upper -> lower: every basis class of the
  /// lower model maps to the same-named class upstairs.
  Mat pullback_matrix(ModelId lower, ModelId upper) const {
    const Model& lo = model(lower);
    const Model& up = model(upper);
    require_dominates(up, lo);
    Mat m(up.rank(), lo.rank());
    const std::size_t nb = base_rank(lo.base);
    for (std::size_t i = 0; i < nb; ++i) m.at(i, i) = 1;
    for (std::size_t i = 0; i < lo.centers.size(); ++i) {
      const auto pos = up.center_index(lo.centers[i].label);
      m.at(nb + *pos, nb + i) = 1;
    }
    return m;
  }

  /// Drops the coefficients of exceptional classes absent downstairs;
  /// pushforward o pullback is the identity on the lower lattice.
  Mat pushforward_matrix(ModelId upper, ModelId lower) const {
    const Model& lo = model(lower);
    const Model& up = model(upper);
    require_dominates(up, lo);
    Mat m(lo.rank(), up.rank());
    const std::size_t nb = base_rank(lo.base);
    for (std::size_t i = 0; i < nb; ++i) m.at(i, i) = 1;
    for (std::size_t i = 0; i < lo.centers.size(); ++i) {
      const auto pos = up.center_index(lo.centers[i].label);
      m.at(nb + i, nb + *pos) = 1;
    }
    return m;
  }

  Mat intersection_form(ModelId id) const {
    const Model& m = model(id);
    Mat f(m.rank(), m.rank());
    switch (m.base) {
      case BaseKind::ProjectivePlane: f.at(0, 0) = 1; break;
      case BaseKind::QuadricProduct:
        f.at(0, 1) = 1;
        f.at(1, 0) = 1;
        break;
      case BaseKind::ProjectiveLine: break;  // degenerate degree pairing
    }
    const std::size_t nb = base_rank(m.base);
    for (std::size_t i = 0; i < m.centers.size(); ++i) f.at(nb + i, nb + i) = -1;
    return f;
  }

  /// <a, b> in the total-transform basis of the given model.
  Rat form_product(ModelId id, const Vec& a, const Vec& b) const {
    const Model& m = model(id);
    if (a.size() != m.rank() || b.size() != m.rank())
      fail(ErrorKind::ValidationError, "class length does not match rank of " + m.spec_string());
    Rat out(0);
    switch (m.base) {
      case BaseKind::ProjectivePlane: out = a[0] * b[0]; break;
      case BaseKind::QuadricProduct: out = a[0] * b[1] + a[1] * b[0]; break;
      case BaseKind::ProjectiveLine: break;
    }
    const std::size_t nb = base_rank(m.base);
    for (std::size_t i = nb; i < m.rank(); ++i) out -= a[i] * b[i];
    return out;
  }

 private:
  static bool contains(const Model& big, const Model& small) {
    for (const auto& c : small.centers) {
      bool found = false;
      for (const auto& d : big.centers)
        if (d == c) { found = true; break; }
      if (!found) return false;
    }
    return true;
  }

  void require_dominates(const Model& upper, const Model& lower) const {
    if (upper.base != lower.base)
      fail(ErrorKind::DifferentBase,
           upper.spec_string() + " and " + lower.spec_string() + " have different bases");
    if (!contains(upper, lower))
      fail(ErrorKind::NotComparable,
           upper.spec_string() + " does not dominate " + lower.spec_string());
  }

  mutable std::shared_mutex mu_;
  mutable std::deque<Model> models_;
  mutable std::map<std::string, std::uint32_t> index_;
};

}  // namespace bdiv
