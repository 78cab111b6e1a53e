#pragma once

#include "bdiv/bclasses.hpp"

namespace bdiv {

/// Result of an intersection product on a surface tower. Codimension-two
/// classes are identified with their degree, so the product is a single
/// rational; the witness records where it was evaluated. By the projection
/// formula the value does not depend on the witness, as long as it dominates
/// the Cartier argument's determination.
struct PairingValue {
  Rat value;
  ModelId witness;
};

/// Product of two Cartier b-classes: pull both to the join of their
/// determinations and evaluate the intersection form there.
inline PairingValue intersect_cartier(const Tower& tw, const CartierBClass& a,
                                      const CartierBClass& b) {
  const ModelId j = tw.join(a.det.model, b.det.model);
  const Vec va = pullback_class(tw, a.det, j).coeffs;
  const Vec vb = pullback_class(tw, b.det, j).coeffs;
  return PairingValue{tw.form_product(j, va, vb), j};
}

/// Product of a Cartier class with a Weil class, evaluated on the lowest
/// usable witness: the Cartier determination itself. Table rules must cover
/// some model on or above it.
inline PairingValue pair_with_weil(const Tower& tw, const CartierBClass& a,
                                   const WeilBClass& w) {
  const ModelId witness = a.det.model;
  if (!weil_covers(tw, w, witness))
    fail(ErrorKind::OutsideProbeSet,
         "no incarnation available on or above " + tw.model(witness).spec_string());
  const Vec wv = weil_incarnation(tw, w, witness).coeffs;
  return PairingValue{tw.form_product(witness, a.det.coeffs, wv), witness};
}

/// Membership in the strictly-positive pairing locus of a Cartier class.
inline bool alpha_pos(const Tower& tw, const CartierBClass& a, const WeilBClass& w) {
  return pair_with_weil(tw, a, w).value > 0;
}

}  // namespace bdiv
