#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdiv/cones.hpp"
#include "bdiv/functorial.hpp"
#include "bdiv/intersect.hpp"

namespace bdiv {

inline constexpr const char* kToolName = "bdiv";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

namespace detail {

inline bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (const char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

inline Json fraction_json(const Rat& r) { return Json(to_fraction(r)); }

inline Json coeffs_json(const Vec& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(to_fraction(x));
  return arr;
}

inline Json class_json(const Tower& tw, const NSClass& c) {
  Json out = Json::object();
  out["model"] = tw.model(c.model).spec_string();
  out["coeffs"] = coeffs_json(c.coeffs);
  return out;
}

inline Json seshadri_json(const SeshadriValue& v) {
  Json out = Json::object();
  out["value"] = to_fraction(v.value);
  out["flag"] = v.flag == SeshadriFlag::Exact ? "exact" : "upper-bound";
  return out;
}

}  // namespace detail

/// Parses "P2", "P2:p,q@p" or "P2[p,q@p]" into a registered model.
inline ModelId parse_model_spec(const Tower& tw, const std::string& spec) {
  std::string base_part = spec;
  std::string centers_part;
  const auto colon = spec.find(':');
  const auto bracket = spec.find('[');
  if (colon != std::string::npos) {
    base_part = spec.substr(0, colon);
    centers_part = spec.substr(colon + 1);
  } else if (bracket != std::string::npos) {
    if (spec.back() != ']') fail(ErrorKind::ParseError, "unterminated '[' in model spec");
    base_part = spec.substr(0, bracket);
    centers_part = spec.substr(bracket + 1, spec.size() - bracket - 2);
  }
  const auto kind = base_kind_from_name(base_part);
  if (!kind)
    fail(ErrorKind::ParseError,
         "unknown base surface '" + base_part + "' (expected P2, P1xP1 or P1)");
  std::vector<Center> centers;
  std::string token;
  std::istringstream in(centers_part);
  while (std::getline(in, token, ',')) {
    if (token.empty()) fail(ErrorKind::ParseError, "empty center in model spec");
    const auto at = token.find('@');
    Center c;
    c.label = token.substr(0, at == std::string::npos ? token.size() : at);
    if (at != std::string::npos) c.host = token.substr(at + 1);
    if (!detail::valid_label(c.label) || (!c.host.empty() && !detail::valid_label(c.host)))
      fail(ErrorKind::ParseError, "invalid center '" + token + "' in model spec");
    centers.push_back(std::move(c));
  }
  return tw.register_model(*kind, std::move(centers));
}

/// Process exit code conventions: 0 success, 2 validation, 3 catalog range,
/// 4 internal.
inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::OutsideCatalogRange: return 3;
    case ErrorKind::Internal:
    case ErrorKind::SingularGram: return 4;
    default: return 2;
  }
}

struct SessionResult {
  int exit_code = 0;
  Json report;
  std::string human;
};

/// Executes a session document against a fresh tower. Queries run in order;
/// catalog-range and per-query domain errors are recorded in the report
/// rather than aborting the run.
class Session {
 public:
  static SessionResult run_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ValidationError, "cannot open session file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return run_text(buf.str());
  }

  static SessionResult run_text(const std::string& text) {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::ParseError, e.what());
    }
    Session s;
    s.load(doc);
    return s.execute();
  }

 private:
  void load(const Json& doc) {
    if (!doc.is_object()) fail(ErrorKind::ValidationError, "session root must be an object");
    const auto kind = base_kind_from_name(str_field(doc, "base"));
    if (!kind) fail(ErrorKind::ValidationError, "unknown base surface in session");
    base_ = *kind;
    std::vector<Center> centers;
    if (doc.contains("centers")) {
      for (const auto& item : doc.at("centers")) {
        Center c;
        c.label = str_field(item, "label");
        if (item.contains("host") && !item.at("host").is_null()) {
          const std::string h = item.at("host").get<std::string>();
          if (h != "base") c.host = h;
        }
        if (!detail::valid_label(c.label) || (!c.host.empty() && !detail::valid_label(c.host)))
          fail(ErrorKind::ValidationError, "invalid center label or host '" + c.label + "'");
        centers.push_back(std::move(c));
      }
    }
    top_ = tw_.register_model(base_, centers);
    declared_ = std::move(centers);
    if (doc.contains("classes")) {
      for (const auto& [name, decl] : doc.at("classes").items()) {
        const ModelId m = submodel(decl);
        if (!decl.contains("coeffs") || !decl.at("coeffs").is_array())
          fail(ErrorKind::ValidationError, "class '" + name + "' needs a coeffs array");
        Vec coeffs;
        for (const auto& c : decl.at("coeffs"))
          coeffs.push_back(parse_fraction_or_fail(c.get<std::string>(),
                                                  "coefficients of class '" + name + "'"));
        classes_.emplace(name, CartierBClass{make_class(tw_, m, std::move(coeffs))});
      }
    }
    if (doc.contains("queries")) {
      if (!doc.at("queries").is_array())
        fail(ErrorKind::ValidationError, "queries must be an array");
      for (const auto& q : doc.at("queries")) queries_.push_back(q);
    }
  }

  ModelId submodel(const Json& decl) const {
    std::vector<Center> centers;
    if (decl.contains("model")) {
      for (const auto& lbl : decl.at("model")) {
        const std::string label = lbl.get<std::string>();
        bool found = false;
        for (const auto& c : declared_)
          if (c.label == label) {
            centers.push_back(c);
            found = true;
            break;
          }
        if (!found)
          fail(ErrorKind::ValidationError, "center '" + label + "' is not declared");
      }
    }
    return tw_.register_model(base_, std::move(centers));
  }

  const CartierBClass& named_class(const Json& q, const char* key) const {
    const std::string name = str_field(q, key);
    auto it = classes_.find(name);
    if (it == classes_.end())
      fail(ErrorKind::ValidationError, "unknown class '" + name + "'");
    return it->second;
  }

  static std::string str_field(const Json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string())
      fail(ErrorKind::ValidationError, std::string("missing string field '") + key + "'");
    return obj.at(key).get<std::string>();
  }

  SessionResult execute() {
    ConeOracle cones(tw_);
    SessionResult result;
    result.report = Json::object();
    result.report["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    result.report["base"] = base_kind_name(base_);
    Json results = Json::array();
    std::ostringstream human;
    int severity = 0;
    for (std::size_t qi = 0; qi < queries_.size(); ++qi) {
      const Json& q = queries_[qi];
      Json entry = Json::object();
      entry["query"] = q;
      try {
        entry["value"] = run_query(cones, q);
        entry["status"] = "ok";
        human << "[" << qi << "] " << q.value("op", "?") << ": " << entry["value"].dump()
              << "\n";
      } catch (const Error& e) {
        entry["status"] = "error";
        entry["error"] = Json{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
        human << "[" << qi << "] " << q.value("op", "?") << ": error " << e.what() << "\n";
        severity = std::max(severity, exit_code_for(e.kind()));
      }
      results.push_back(std::move(entry));
    }
    result.report["results"] = std::move(results);
    result.human = human.str();
    result.exit_code = severity;
    return result;
  }

  Json run_query(ConeOracle& cones, const Json& q) {
    const std::string op = str_field(q, "op");
    if (op == "is_nef") return cones.is_nef(named_class(q, "class").det);
    if (op == "is_ample") return cones.is_ample(named_class(q, "class").det);
    if (op == "is_psef") return cones.is_psef(named_class(q, "class").det);
    if (op == "b_positivity") {
      const Positivity p = cones.b_positivity(named_class(q, "class"));
      return Json{{"nef", p.nef}, {"ample", p.ample}, {"psef", p.psef}, {"big", p.big}};
    }
    if (op == "zariski") {
      const auto& cls = named_class(q, "class");
      const ZariskiPair zp = cones.zariski_decomposition(cls.det);
      Json out = Json::object();
      out["positive"] = detail::coeffs_json(zp.positive.coeffs);
      out["negative"] = detail::coeffs_json(zp.negative.coeffs);
      Json supp = Json::array();
      for (const auto s : zp.support) supp.push_back(s);
      out["support"] = std::move(supp);
      out["volume"] = to_fraction(
          tw_.form_product(zp.positive.model, zp.positive.coeffs, zp.positive.coeffs));
      return out;
    }
    if (op == "volume") return detail::fraction_json(cones.volume(named_class(q, "class").det));
    if (op == "c_volume") {
      const auto cv = cones.c_volume(named_class(q, "class"));
      return Json{{"value", to_fraction(cv.value)}, {"pseudo_effective", cv.psef}};
    }
    if (op == "seshadri_global")
      return detail::seshadri_json(cones.seshadri_global(named_class(q, "class").det));
    if (op == "seshadri_b")
      return detail::seshadri_json(cones.seshadri_b(named_class(q, "class")));
    if (op == "seshadri_point") {
      PointSpec point;
      if (q.contains("host") && !q.at("host").is_null())
        point.on_exceptional = q.at("host").get<std::string>();
      return detail::seshadri_json(cones.seshadri_point(named_class(q, "class").det, point));
    }
    if (op == "intersect") {
      const PairingValue v =
          intersect_cartier(tw_, named_class(q, "lhs"), named_class(q, "rhs"));
      return Json{{"value", to_fraction(v.value)},
                  {"witness", tw_.model(v.witness).spec_string()}};
    }
    if (op == "equals")
      return equals(tw_, named_class(q, "lhs"), named_class(q, "rhs"));
    if (op == "incarnation") {
      const ModelId m = submodel(q);
      return detail::class_json(tw_, incarnation(tw_, named_class(q, "class"), m));
    }
    if (op == "minimal_determination")
      return detail::class_json(tw_, minimal_determination(tw_, named_class(q, "class")).det);
    if (op == "pair_canonical") {
      const auto& cls = named_class(q, "class");
      const WeilBClass canon = weil_canonical(tw_.model(cls.det.model).base);
      const PairingValue v = pair_with_weil(tw_, cls, canon);
      return Json{{"value", to_fraction(v.value)},
                  {"witness", tw_.model(v.witness).spec_string()}};
    }
    if (op == "catalog") {
      const ModelId m = submodel(q);
      const CurveCatalog& cat = cones.catalog(m);
      Json out = Json::object();
      out["model"] = tw_.model(m).spec_string();
      Json curves = Json::array();
      for (const auto& c : cat.negative_curves) curves.push_back(detail::coeffs_json(c));
      out["negative_curves"] = std::move(curves);
      Json gens = Json::array();
      for (const auto& g : cones.nef_generators(m)) gens.push_back(detail::coeffs_json(g));
      out["nef_generators"] = std::move(gens);
      out["exactness"] =
          cat.exactness == CurveCatalog::Exactness::Shipped ? "shipped" : "user-supplied";
      return out;
    }
    fail(ErrorKind::ValidationError, "unknown query op '" + op + "'");
  }

  Tower tw_;
  BaseKind base_ = BaseKind::ProjectivePlane;
  ModelId top_;
  std::vector<Center> declared_;
  std::map<std::string, CartierBClass> classes_;
  std::vector<Json> queries_;
};

/// Structured report for the `catalog` subcommand.
inline Json catalog_report(const Tower& tw, ConeOracle& cones, ModelId m) {
  Json out = Json::object();
  out["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  out["model"] = tw.model(m).spec_string();
  const CurveCatalog& cat = cones.catalog(m);
  Json curves = Json::array();
  for (const auto& c : cat.negative_curves) curves.push_back(detail::coeffs_json(c));
  out["negative_curves"] = std::move(curves);
  Json gens = Json::array();
  for (const auto& g : cones.nef_generators(m)) gens.push_back(detail::coeffs_json(g));
  out["nef_generators"] = std::move(gens);
  out["exactness"] =
      cat.exactness == CurveCatalog::Exactness::Shipped ? "shipped" : "user-supplied";
  return out;
}

}  // namespace bdiv
