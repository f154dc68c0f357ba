#pragma once

// The on-disk interchange format: JSON documents for operads, functors,
// squares, categories and presentations.  Serialization normalizes by
// ordering colors, profiles and morphism names lexicographically, so
// serialize(parse(text)) is the normal form of `text` and parse(serialize(d))
// returns d unchanged.  Morphisms are referenced as "<profile index>/<name>"
// against the homs array of the operad they live in.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "opemodel/category.hpp"
#include "opemodel/core.hpp"
#include "opemodel/functors.hpp"
#include "opemodel/lifting.hpp"
#include "opemodel/presented.hpp"

namespace opemodel {

using json = nlohmann::json;

json parse_json_text(const std::string& text);

namespace detail {

inline const json& expect(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(what) + ": missing key \"" + key + "\"");
  return *it;
}

inline std::string expect_string(const json& j, const char* key, const char* what) {
  const json& v = expect(j, key, what);
  if (!v.is_string()) throw ParseError(std::string(what) + ": \"" + key + "\" is not a string");
  return v.get<std::string>();
}

struct ProfileIndex {
  std::vector<Profile> profiles;
  std::map<Profile, int> index;

  // canonical (sorted) order, as emitted by the serializer
  explicit ProfileIndex(const FiniteOperad& op) {
    for (const auto& [p, names] : op.homs) {
      index[p] = static_cast<int>(profiles.size());
      profiles.push_back(p);
    }
  }

  // the homs-array order of a parsed document, which its references use
  explicit ProfileIndex(std::vector<Profile> order) : profiles(std::move(order)) {
    for (size_t i = 0; i < profiles.size(); ++i)
      index.emplace(profiles[i], static_cast<int>(i));
  }

  std::string ref(const Morphism& m) const {
    auto it = index.find(m.profile);
    if (it == index.end()) throw ParseError("morphism " + m.name + " has an unlisted profile");
    return std::to_string(it->second) + "/" + m.name;
  }

  Morphism parse_ref(const std::string& s) const {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw ParseError("morphism reference \"" + s + "\" lacks '/'");
    int idx = -1;
    try {
      idx = std::stoi(s.substr(0, slash));
    } catch (...) {
      throw ParseError("morphism reference \"" + s + "\" has a malformed index");
    }
    if (idx < 0 || idx >= static_cast<int>(profiles.size()))
      throw ParseError("morphism reference \"" + s + "\" is out of range");
    return Morphism{s.substr(slash + 1), profiles[static_cast<size_t>(idx)]};
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Operads.

inline json operad_to_json(const FiniteOperad& op) {
  json j;
  j["symmetric"] = op.symmetric;
  j["colors"] = json::array();
  for (const Color& c : op.colors) j["colors"].push_back(c);
  detail::ProfileIndex pi(op);
  j["homs"] = json::array();
  for (const auto& [p, names] : op.homs) {
    json h;
    h["inputs"] = p.inputs;
    h["output"] = p.output;
    h["morphisms"] = json::array();
    for (const auto& n : names) h["morphisms"].push_back(n);
    j["homs"].push_back(std::move(h));
  }
  j["identities"] = json::object();
  for (const auto& [c, n] : op.identities) j["identities"][c] = n;
  j["composition"] = json::array();
  for (const auto& [key, result] : op.composition) {
    json e;
    e["outer"] = pi.ref(key.first);
    e["inners"] = json::array();
    for (const auto& m : key.second) e["inners"].push_back(pi.ref(m));
    e["result"] = pi.ref(result);
    j["composition"].push_back(std::move(e));
  }
  bool needs_symmetry = false;
  for (const auto& [p, names] : op.homs) needs_symmetry |= op.symmetric && p.arity() >= 2;
  if (needs_symmetry) {
    j["symmetry"] = json::array();
    for (const auto& [key, result] : op.symmetry) {
      json e;
      e["morphism"] = pi.ref(key.first);
      e["transposition"] = key.second + 1;
      e["result"] = pi.ref(result);
      j["symmetry"].push_back(std::move(e));
    }
  }
  return j;
}

struct ParsedOperad {
  FiniteOperad op;
  std::vector<Profile> profile_order;  // homs-array order of the document
};

inline ParsedOperad operad_from_json_ordered(const json& j) {
  if (!j.is_object()) throw ParseError("operad: payload is not an object");
  FiniteOperad op;
  const json& sym = detail::expect(j, "symmetric", "operad");
  if (!sym.is_boolean()) throw ParseError("operad: \"symmetric\" is not a boolean");
  op.symmetric = sym.get<bool>();
  for (const json& c : detail::expect(j, "colors", "operad"))
    op.colors.insert(c.get<std::string>());
  std::vector<Profile> order;
  for (const json& h : detail::expect(j, "homs", "operad")) {
    Profile p;
    for (const json& c : detail::expect(h, "inputs", "hom entry"))
      p.inputs.push_back(c.get<std::string>());
    p.output = detail::expect_string(h, "output", "hom entry");
    for (const json& n : detail::expect(h, "morphisms", "hom entry"))
      op.homs[p].insert(n.get<std::string>());
    order.push_back(std::move(p));
  }
  detail::ProfileIndex pi(order);
  const json& ids = detail::expect(j, "identities", "operad");
  for (auto it = ids.begin(); it != ids.end(); ++it)
    op.identities[it.key()] = it.value().get<std::string>();
  for (const json& e : detail::expect(j, "composition", "operad")) {
    Morphism outer = pi.parse_ref(detail::expect_string(e, "outer", "composition entry"));
    std::vector<Morphism> inners;
    for (const json& r : detail::expect(e, "inners", "composition entry"))
      inners.push_back(pi.parse_ref(r.get<std::string>()));
    Morphism result = pi.parse_ref(detail::expect_string(e, "result", "composition entry"));
    op.composition[{std::move(outer), std::move(inners)}] = std::move(result);
  }
  if (j.contains("symmetry")) {
    for (const json& e : j["symmetry"]) {
      Morphism m = pi.parse_ref(detail::expect_string(e, "morphism", "symmetry entry"));
      const json& t = detail::expect(e, "transposition", "symmetry entry");
      if (!t.is_number_integer()) throw ParseError("symmetry entry: \"transposition\" is not an integer");
      Morphism result = pi.parse_ref(detail::expect_string(e, "result", "symmetry entry"));
      op.symmetry[{std::move(m), t.get<int>() - 1}] = std::move(result);
    }
  }
  return ParsedOperad{std::move(op), std::move(order)};
}

inline FiniteOperad operad_from_json(const json& j) { return operad_from_json_ordered(j).op; }

// ---------------------------------------------------------------------------
// Categories.

inline json category_to_json(const FiniteCategory& cat) {
  json j;
  j["objects"] = json::array();
  for (const Color& c : cat.objects) j["objects"].push_back(c);
  std::vector<std::pair<Color, Color>> keys;
  std::map<std::pair<Color, Color>, int> key_index;
  j["homs"] = json::array();
  for (const auto& [key, names] : cat.homs) {
    key_index[key] = static_cast<int>(keys.size());
    keys.push_back(key);
    json h;
    h["source"] = key.first;
    h["target"] = key.second;
    h["morphisms"] = json::array();
    for (const auto& n : names) h["morphisms"].push_back(n);
    j["homs"].push_back(std::move(h));
  }
  auto ref = [&key_index](const CatArrow& f) {
    return std::to_string(key_index.at({f.src, f.dst})) + "/" + f.name;
  };
  j["identities"] = json::object();
  for (const auto& [c, n] : cat.identities) j["identities"][c] = n;
  j["composition"] = json::array();
  for (const auto& [key, result] : cat.composition) {
    json e;
    e["g"] = ref(key.first);
    e["f"] = ref(key.second);
    e["result"] = ref(result);
    j["composition"].push_back(std::move(e));
  }
  return j;
}

inline FiniteCategory category_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("category: payload is not an object");
  FiniteCategory cat;
  for (const json& c : detail::expect(j, "objects", "category"))
    cat.objects.insert(c.get<std::string>());
  std::vector<std::pair<Color, Color>> keys;
  for (const json& h : detail::expect(j, "homs", "category")) {
    std::pair<Color, Color> key{detail::expect_string(h, "source", "hom entry"),
                                detail::expect_string(h, "target", "hom entry")};
    keys.push_back(key);
    for (const json& n : detail::expect(h, "morphisms", "hom entry"))
      cat.homs[key].insert(n.get<std::string>());
  }
  auto parse_ref = [&keys](const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw ParseError("arrow reference \"" + s + "\" lacks '/'");
    int idx = std::stoi(s.substr(0, slash));
    if (idx < 0 || idx >= static_cast<int>(keys.size()))
      throw ParseError("arrow reference \"" + s + "\" is out of range");
    return CatArrow{s.substr(slash + 1), keys[static_cast<size_t>(idx)].first,
                    keys[static_cast<size_t>(idx)].second};
  };
  const json& ids = detail::expect(j, "identities", "category");
  for (auto it = ids.begin(); it != ids.end(); ++it)
    cat.identities[it.key()] = it.value().get<std::string>();
  for (const json& e : detail::expect(j, "composition", "category")) {
    CatArrow g = parse_ref(detail::expect_string(e, "g", "composition entry"));
    CatArrow f = parse_ref(detail::expect_string(e, "f", "composition entry"));
    cat.composition[{g, f}] = parse_ref(detail::expect_string(e, "result", "composition entry"));
  }
  return cat;
}

// ---------------------------------------------------------------------------
// Functors.

inline json functor_to_json(const OperadFunctor& F) {
  json j;
  j["source"] = operad_to_json(F.source());
  j["target"] = operad_to_json(F.target());
  j["objects"] = json::object();
  for (const auto& [c, fc] : F.object_map()) j["objects"][c] = fc;
  detail::ProfileIndex src(F.source()), tgt(F.target());
  j["morphisms"] = json::object();
  for (const auto& [m, fm] : F.morphism_map()) j["morphisms"][src.ref(m)] = tgt.ref(fm);
  return j;
}

inline ParsedOperad resolve_operad_field_ordered(const json& j, const std::string& base_dir);

inline OperadFunctor functor_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ParseError("functor: payload is not an object");
  ParsedOperad source =
      resolve_operad_field_ordered(detail::expect(j, "source", "functor"), base_dir);
  ParsedOperad target =
      resolve_operad_field_ordered(detail::expect(j, "target", "functor"), base_dir);
  std::map<Color, Color> obj;
  const json& objects = detail::expect(j, "objects", "functor");
  for (auto it = objects.begin(); it != objects.end(); ++it)
    obj[it.key()] = it.value().get<std::string>();
  detail::ProfileIndex src(source.profile_order), tgt(target.profile_order);
  std::map<Morphism, Morphism> mor;
  const json& morphisms = detail::expect(j, "morphisms", "functor");
  for (auto it = morphisms.begin(); it != morphisms.end(); ++it)
    mor[src.parse_ref(it.key())] = tgt.parse_ref(it.value().get<std::string>());
  try {
    return OperadFunctor::make(std::move(source.op), std::move(target.op), std::move(obj),
                               std::move(mor));
  } catch (const InvalidFunctor& e) {
    throw SemanticError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Presentations.

inline json term_to_json(const TreeTerm& t, const std::map<Morphism, int>& gen_index) {
  std::function<json(const PlanarTerm&)> planar = [&](const PlanarTerm& p) -> json {
    if (p.is_leaf()) return json{{"leaf", p.leaf_color}};
    json node;
    node["gen"] = gen_index.at(*p.gen);
    node["children"] = json::array();
    for (const auto& c : p.children) node["children"].push_back(planar(c));
    return node;
  };
  json body = planar(t.planar);
  if (is_identity_perm(t.root_perm)) return body;
  json out;
  out["perm"] = json::array();
  for (int v : t.root_perm) out["perm"].push_back(v + 1);
  out["of"] = std::move(body);
  return out;
}

inline TreeTerm term_from_json(const json& j, const std::vector<Morphism>& gens) {
  if (!j.is_object()) throw ParseError("term: not an object");
  try {
    if (j.contains("perm")) {
      Perm sigma;
      for (const json& v : j["perm"]) sigma.push_back(v.get<int>() - 1);
      return TreeTerm::permuted(sigma, term_from_json(detail::expect(j, "of", "term"), gens));
    }
    if (j.contains("leaf")) return TreeTerm::leaf(j["leaf"].get<std::string>());
    const json& g = detail::expect(j, "gen", "term");
    if (!g.is_number_integer()) throw ParseError("term: \"gen\" is not an integer");
    int idx = g.get<int>();
    if (idx < 0 || idx >= static_cast<int>(gens.size()))
      throw ParseError("term: generator index out of range");
    std::vector<TreeTerm> children;
    for (const json& c : detail::expect(j, "children", "term"))
      children.push_back(term_from_json(c, gens));
    return TreeTerm::node(gens[static_cast<size_t>(idx)], children);
  } catch (const ColorMismatch& e) {
    throw SemanticError(e.what());
  } catch (const ProfileMismatch& e) {
    throw SemanticError(e.what());
  }
}

inline json presentation_to_json(const Presentation& pres) {
  json j;
  j["colors"] = json::array();
  for (const Color& c : pres.collection.colors) j["colors"].push_back(c);
  j["generators"] = json::array();
  std::map<Morphism, int> gen_index;
  for (const auto& g : pres.collection.generators) {
    gen_index[g] = static_cast<int>(j["generators"].size());
    json e;
    e["name"] = g.name;
    e["inputs"] = g.profile.inputs;
    e["output"] = g.profile.output;
    j["generators"].push_back(std::move(e));
  }
  j["relations"] = json::array();
  for (const auto& [l, r] : pres.relations) {
    json e;
    e["lhs"] = term_to_json(l, gen_index);
    e["rhs"] = term_to_json(r, gen_index);
    j["relations"].push_back(std::move(e));
  }
  return j;
}

inline Presentation presentation_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("presentation: payload is not an object");
  Presentation pres;
  for (const json& c : detail::expect(j, "colors", "presentation"))
    pres.collection.colors.insert(c.get<std::string>());
  std::vector<Morphism> gens;
  for (const json& e : detail::expect(j, "generators", "presentation")) {
    Morphism g;
    g.name = detail::expect_string(e, "name", "generator");
    for (const json& c : detail::expect(e, "inputs", "generator"))
      g.profile.inputs.push_back(c.get<std::string>());
    g.profile.output = detail::expect_string(e, "output", "generator");
    gens.push_back(g);
    pres.collection.generators.insert(std::move(g));
  }
  for (const json& e : detail::expect(j, "relations", "presentation")) {
    TreeTerm l = term_from_json(detail::expect(e, "lhs", "relation"), gens);
    TreeTerm r = term_from_json(detail::expect(e, "rhs", "relation"), gens);
    try {
      pres.add_relation(l, r);
    } catch (const Error& err) {
      throw SemanticError(err.what());
    }
  }
  return pres;
}

// ---------------------------------------------------------------------------
// Documents.

struct Document {
  enum class Kind { operad, functor, square, category, presentation };
  Kind kind;
  std::variant<FiniteOperad, OperadFunctor, LiftingSquare, FiniteCategory, Presentation> payload;
};

inline std::string kind_name(Document::Kind k) {
  switch (k) {
    case Document::Kind::operad: return "operad";
    case Document::Kind::functor: return "functor";
    case Document::Kind::square: return "square";
    case Document::Kind::category: return "category";
    case Document::Kind::presentation: return "presentation";
  }
  return "?";
}

inline json document_to_json(const Document& doc) {
  json j;
  j["kind"] = kind_name(doc.kind);
  switch (doc.kind) {
    case Document::Kind::operad:
      j["payload"] = operad_to_json(std::get<FiniteOperad>(doc.payload));
      break;
    case Document::Kind::functor:
      j["payload"] = functor_to_json(std::get<OperadFunctor>(doc.payload));
      break;
    case Document::Kind::square: {
      const LiftingSquare& sq = std::get<LiftingSquare>(doc.payload);
      j["payload"] = json{{"left", functor_to_json(sq.left)},
                          {"right", functor_to_json(sq.right)},
                          {"top", functor_to_json(sq.top)},
                          {"bottom", functor_to_json(sq.bottom)}};
      break;
    }
    case Document::Kind::category:
      j["payload"] = category_to_json(std::get<FiniteCategory>(doc.payload));
      break;
    case Document::Kind::presentation:
      j["payload"] = presentation_to_json(std::get<Presentation>(doc.payload));
      break;
  }
  return j;
}

inline std::string serialize_document(const Document& doc) {
  return document_to_json(doc).dump(2) + "\n";
}

inline Document parse_document_json(const json& j, const std::string& base_dir);

inline Document parse_document_file(const std::string& path);

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline ParsedOperad resolve_operad_field_ordered(const json& j, const std::string& base_dir) {
  json payload = j;
  if (j.is_object() && j.contains("file")) {
    std::filesystem::path p = std::filesystem::path(base_dir) / j["file"].get<std::string>();
    json doc = read_json_file(p.string());
    if (detail::expect_string(doc, "kind", "document") != "operad")
      throw SemanticError("referenced file " + p.string() + " is not an operad document");
    payload = detail::expect(doc, "payload", "document");
  }
  ParsedOperad parsed = operad_from_json_ordered(payload);
  ValidationReport rep = validate(parsed.op);
  if (!rep.ok()) throw SemanticError(rep.issues[0].axiom + ": " + rep.issues[0].witness);
  return parsed;
}

inline FiniteOperad resolve_operad_field(const json& j, const std::string& base_dir) {
  return resolve_operad_field_ordered(j, base_dir).op;
}

inline OperadFunctor resolve_functor_field(const json& j, const std::string& base_dir) {
  if (j.is_object() && j.contains("file")) {
    std::filesystem::path p =
        std::filesystem::path(base_dir) / j["file"].get<std::string>();
    Document doc = parse_document_file(p.string());
    if (doc.kind != Document::Kind::functor)
      throw SemanticError("referenced file " + p.string() + " is not a functor document");
    return std::get<OperadFunctor>(doc.payload);
  }
  return functor_from_json(j, base_dir);
}

inline Document parse_document_json_impl(const json& j, const std::string& base_dir);

inline Document parse_document_json(const json& j, const std::string& base_dir) {
  try {
    return parse_document_json_impl(j, base_dir);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

inline Document parse_document_json_impl(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ParseError("document: not a JSON object");
  std::string kind = detail::expect_string(j, "kind", "document");
  const json& payload = detail::expect(j, "payload", "document");
  if (kind == "operad")
    return Document{Document::Kind::operad, resolve_operad_field(payload, base_dir)};
  if (kind == "functor")
    return Document{Document::Kind::functor, resolve_functor_field(payload, base_dir)};
  if (kind == "square") {
    OperadFunctor left = resolve_functor_field(detail::expect(payload, "left", "square"), base_dir);
    OperadFunctor right =
        resolve_functor_field(detail::expect(payload, "right", "square"), base_dir);
    OperadFunctor top = resolve_functor_field(detail::expect(payload, "top", "square"), base_dir);
    OperadFunctor bottom =
        resolve_functor_field(detail::expect(payload, "bottom", "square"), base_dir);
    try {
      return Document{Document::Kind::square,
                      LiftingSquare::make(std::move(left), std::move(right), std::move(top),
                                          std::move(bottom))};
    } catch (const InvalidFunctor& e) {
      throw SemanticError(e.what());
    }
  }
  if (kind == "category") {
    FiniteCategory cat = category_from_json(payload);
    ValidationReport rep = validate(cat);
    if (!rep.ok()) throw SemanticError(rep.issues[0].axiom + ": " + rep.issues[0].witness);
    return Document{Document::Kind::category, std::move(cat)};
  }
  if (kind == "presentation")
    return Document{Document::Kind::presentation, presentation_from_json(payload)};
  throw ParseError("unknown document kind \"" + kind + "\"");
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // recover line and column from the byte offset
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

inline Document parse_document(const std::string& text, const std::string& base_dir = ".") {
  return parse_document_json(parse_json_text(text), base_dir);
}

inline Document parse_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace opemodel
