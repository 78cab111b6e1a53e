#pragma once

#include "bdiv/bclasses.hpp"

namespace bdiv {

/// The catalog of smooth surjective morphisms with computable induced maps:
/// identities, and the two bundle projections from the quadric to the line.
/// A curve target has a single model, so every target b-class is determined
/// on the base and the lifted model is the source itself.
enum class MorphismKind { Identity, ProjectionFirst, ProjectionSecond };

struct MorphismSpec {
  MorphismKind kind = MorphismKind::Identity;
  BaseKind base = BaseKind::ProjectivePlane;  // Identity only
};

struct InducedMap {
  MorphismSpec spec;
  BaseKind source_base;
  BaseKind target_base;
  Mat class_action;  // N^1(target base) -> N^1(source base)
};

inline InducedMap make_morphism(const Tower& tw, const MorphismSpec& spec) {
  InducedMap out;
  out.spec = spec;
  switch (spec.kind) {
    case MorphismKind::Identity: {
      out.source_base = out.target_base = spec.base;
      out.class_action = Mat::identity(base_rank(spec.base));
      (void)tw.base_model(spec.base);
      return out;
    }
    case MorphismKind::ProjectionFirst:
    case MorphismKind::ProjectionSecond: {
      out.source_base = BaseKind::QuadricProduct;
      out.target_base = BaseKind::ProjectiveLine;
      out.class_action = Mat(2, 1);
      // the point class pulls back to the corresponding fiber class
      out.class_action.at(spec.kind == MorphismKind::ProjectionFirst ? 0 : 1, 0) = 1;
      (void)tw.base_model(out.source_base);
      (void)tw.base_model(out.target_base);
      return out;
    }
  }
  fail(ErrorKind::UnsupportedMorphism, "unknown morphism kind");
}

/// Applies the induced linear map to a Cartier b-class over the target.
inline CartierBClass induced_map(const Tower& tw, const InducedMap& f,
                                 const CartierBClass& a) {
  const Model& det = tw.model(a.det.model);
  if (det.base != f.target_base)
    fail(ErrorKind::UnsupportedMorphism,
         "class over " + std::string(base_kind_name(det.base)) +
             " fed to a morphism with target " + base_kind_name(f.target_base));
  if (f.spec.kind == MorphismKind::Identity) return a;
  // curve target: the determination is the base model itself
  const Vec image = mat_vec(f.class_action, a.det.coeffs);
  return CartierBClass{NSClass{tw.base_model(f.source_base), image}};
}

}  // namespace bdiv
