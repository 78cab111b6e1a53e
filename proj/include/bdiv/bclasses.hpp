#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bdiv/models.hpp"

namespace bdiv {

/// A numerical divisor class on one model, as exact rational coefficients in
/// the total-transform basis of that model.
struct NSClass {
  ModelId model;
  Vec coeffs;

  bool operator==(const NSClass& o) const { return model == o.model && coeffs == o.coeffs; }
};

inline NSClass make_class(const Tower& tw, ModelId m, Vec coeffs) {
  if (coeffs.size() != tw.model(m).rank())
    fail(ErrorKind::ValidationError,
         "expected " + std::to_string(tw.model(m).rank()) + " coefficients for " +
             tw.model(m).spec_string() + ", got " + std::to_string(coeffs.size()));
  return NSClass{m, std::move(coeffs)};
}

inline NSClass pullback_class(const Tower& tw, const NSClass& c, ModelId upper) {
  const Model& lo = tw.model(c.model);
  const Model& up = tw.model(upper);
  const Order o = tw.compare(upper, c.model);
  if (o != Order::Above && o != Order::Equal)
    fail(ErrorKind::NotComparable,
         up.spec_string() + " does not dominate " + lo.spec_string());
  Vec out(up.rank(), Rat(0));
  const std::size_t nb = base_rank(lo.base);
  for (std::size_t i = 0; i < nb; ++i) out[i] = c.coeffs[i];
  for (std::size_t i = 0; i < lo.centers.size(); ++i)
    out[nb + *up.center_index(lo.centers[i].label)] = c.coeffs[nb + i];
  return NSClass{upper, std::move(out)};
}

inline NSClass pushforward_class(const Tower& tw, const NSClass& c, ModelId lower) {
  const Model& up = tw.model(c.model);
  const Model& lo = tw.model(lower);
  const Order o = tw.compare(c.model, lower);
  if (o != Order::Above && o != Order::Equal)
    fail(ErrorKind::NotComparable,
         up.spec_string() + " does not dominate " + lo.spec_string());
  Vec out(lo.rank(), Rat(0));
  const std::size_t nb = base_rank(lo.base);
  for (std::size_t i = 0; i < nb; ++i) out[i] = c.coeffs[i];
  for (std::size_t i = 0; i < lo.centers.size(); ++i)
    out[nb + i] = c.coeffs[nb + *up.center_index(lo.centers[i].label)];
  return NSClass{lower, std::move(out)};
}

/// A Cartier b-divisor class, stored as a determination: one model plus a
/// class on it, considered up to pullback equivalence (two determinations are
/// the same class when their pullbacks to a common dominating model agree).
struct CartierBClass {
  NSClass det;
};

inline CartierBClass cartier_from_class(const Tower& tw, const NSClass& c) {
  (void)tw.model(c.model);
  return CartierBClass{c};
}

/// Incarnation on an arbitrary model of the same directed system: pull the
/// determination to the join, then push down. For m above the determination
/// this is a pure pullback.
inline NSClass incarnation(const Tower& tw, const CartierBClass& a, ModelId m) {
  const ModelId j = tw.join(a.det.model, m);
  return pushforward_class(tw, pullback_class(tw, a.det, j), m);
}

inline bool equals(const Tower& tw, const CartierBClass& a, const CartierBClass& b) {
  const ModelId j = tw.join(a.det.model, b.det.model);
  return pullback_class(tw, a.det, j).coeffs == pullback_class(tw, b.det, j).coeffs;
}

/// Incarnation-wise linear combination, determined on the join of all
/// determination models.
inline CartierBClass linear_combination(
    const Tower& tw, const std::vector<std::pair<Rat, CartierBClass>>& terms) {
  if (terms.empty()) fail(ErrorKind::EmptyInput, "linear combination of no terms");
  ModelId j = terms[0].second.det.model;
  for (std::size_t i = 1; i < terms.size(); ++i) j = tw.join(j, terms[i].second.det.model);
  Vec sum(tw.model(j).rank(), Rat(0));
  for (const auto& [coef, cls] : terms)
    sum = vec_add(sum, vec_scale(coef, pullback_class(tw, cls.det, j).coeffs));
  return CartierBClass{NSClass{j, std::move(sum)}};
}

inline CartierBClass scale(const Tower& tw, const Rat& s, const CartierBClass& a) {
  return linear_combination(tw, {{s, a}});
}

inline CartierBClass add(const Tower& tw, const CartierBClass& a, const CartierBClass& b) {
  return linear_combination(tw, {{Rat(1), a}, {Rat(1), b}});
}

/// Canonical representative: descends past every blow-up center whose
/// exceptional coefficient vanishes. The result is determined on the
/// host-closure of the centers actually carrying a coefficient, so it is not
/// a pullback from any strictly lower model. Descent is order-independent.
inline CartierBClass minimal_determination(const Tower& tw, const CartierBClass& a) {
  const Model& m = tw.model(a.det.model);
  const std::size_t nb = base_rank(m.base);
  std::vector<bool> keep(m.centers.size(), false);
  for (std::size_t i = 0; i < m.centers.size(); ++i)
    if (a.det.coeffs[nb + i] != 0) keep[i] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < m.centers.size(); ++i) {
      if (!keep[i] || m.centers[i].host.empty()) continue;
      const std::size_t h = *m.center_index(m.centers[i].host);
      if (!keep[h]) { keep[h] = true; changed = true; }
    }
  }
  std::vector<Center> centers;
  for (std::size_t i = 0; i < m.centers.size(); ++i)
    if (keep[i]) centers.push_back(m.centers[i]);
  const ModelId sub = tw.register_model(m.base, std::move(centers));
  return CartierBClass{pushforward_class(tw, a.det, sub)};
}

/// The canonical class of a model in the total-transform basis: the base
/// canonical class plus one copy of each exceptional class.
inline NSClass canonical_class(const Tower& tw, ModelId id) {
  const Model& m = tw.model(id);
  Vec c(m.rank(), Rat(1));
  switch (m.base) {
    case BaseKind::ProjectivePlane: c[0] = -3; break;
    case BaseKind::QuadricProduct: c[0] = -2; c[1] = -2; break;
    case BaseKind::ProjectiveLine: c[0] = -2; break;
  }
  return NSClass{id, std::move(c)};
}

/// A Weil b-divisor class: a pushforward-compatible family of incarnations,
/// represented either by a rule defined on every model (induced by a Cartier
/// class, or the canonical family) or by a finite compatible table. Table
/// rules answer only on models dominated by some table entry; anything beyond
/// fails loudly instead of extrapolating.
struct WeilBClass {
  enum class Rule { CartierInduced, Canonical, Table };

  Rule rule = Rule::Canonical;
  BaseKind base = BaseKind::ProjectivePlane;
  std::optional<CartierBClass> inducing;          // CartierInduced
  std::vector<std::pair<ModelId, Vec>> table;     // Table, sorted by model id
};

inline WeilBClass weil_from_cartier(const Tower& tw, const CartierBClass& a) {
  WeilBClass w;
  w.rule = WeilBClass::Rule::CartierInduced;
  w.base = tw.model(a.det.model).base;
  w.inducing = a;
  return w;
}

inline WeilBClass weil_canonical(BaseKind base) {
  WeilBClass w;
  w.rule = WeilBClass::Rule::Canonical;
  w.base = base;
  return w;
}

/// Validates pairwise pushforward compatibility. Incomparable entries are
/// compared after pushing to their meet, so every incarnation derivable from
/// the table is well defined.
inline WeilBClass weil_from_table(const Tower& tw, std::map<ModelId, Vec> entries) {
  if (entries.empty()) fail(ErrorKind::EmptyInput, "table rule with no incarnations");
  WeilBClass w;
  w.rule = WeilBClass::Rule::Table;
  for (auto& [id, coeffs] : entries) {
    if (coeffs.size() != tw.model(id).rank())
      fail(ErrorKind::ValidationError,
           "incarnation length does not match rank of " + tw.model(id).spec_string());
    w.table.emplace_back(id, coeffs);
  }
  w.base = tw.model(w.table.front().first).base;
  for (const auto& [id, coeffs] : w.table)
    if (tw.model(id).base != w.base)
      fail(ErrorKind::DifferentBase, "table mixes models over different bases");
  for (std::size_t i = 0; i < w.table.size(); ++i) {
    for (std::size_t j = i + 1; j < w.table.size(); ++j) {
      const auto& [ma, va] = w.table[i];
      const auto& [mb, vb] = w.table[j];
      const ModelId low = tw.meet(ma, mb);
      const Vec pa = pushforward_class(tw, NSClass{ma, va}, low).coeffs;
      const Vec pb = pushforward_class(tw, NSClass{mb, vb}, low).coeffs;
      if (pa != pb)
        fail(ErrorKind::IncompatibleTable,
             "incarnations on " + tw.model(ma).spec_string() + " and " +
                 tw.model(mb).spec_string() + " disagree after pushforward to " +
                 tw.model(low).spec_string());
    }
  }
  return w;
}

inline bool weil_covers(const Tower& tw, const WeilBClass& w, ModelId m) {
  if (w.rule != WeilBClass::Rule::Table) return tw.model(m).base == w.base;
  for (const auto& [id, coeffs] : w.table) {
    const Order o = tw.compare(id, m);
    if (o == Order::Above || o == Order::Equal) return true;
  }
  return false;
}

inline NSClass weil_incarnation(const Tower& tw, const WeilBClass& w, ModelId m) {
  switch (w.rule) {
    case WeilBClass::Rule::CartierInduced:
      return incarnation(tw, *w.inducing, m);
    case WeilBClass::Rule::Canonical:
      return canonical_class(tw, m);
    case WeilBClass::Rule::Table:
      for (const auto& [id, coeffs] : w.table) {
        const Order o = tw.compare(id, m);
        if (o == Order::Equal) return NSClass{m, coeffs};
        if (o == Order::Above) return pushforward_class(tw, NSClass{id, coeffs}, m);
      }
      fail(ErrorKind::OutsideProbeSet,
           "no table incarnation on or above " + tw.model(m).spec_string());
  }
  fail(ErrorKind::Internal, "unreachable");
}

/// True iff some available incarnation vanishes. "Available" means the
/// registered models the rule covers; table rules are probed on the downward
/// closure of their entries.
inline bool is_almost_zero(const Tower& tw, const WeilBClass& w) {
  for (const ModelId id : tw.registered()) {
    if (tw.model(id).base != w.base) continue;
    if (!weil_covers(tw, w, id)) continue;
    if (vec_is_zero(weil_incarnation(tw, w, id).coeffs)) return true;
  }
  return false;
}

}  // namespace bdiv
