#pragma once

// Finite categories with total binary composition tables, the same three
// model-structure classes implemented directly on categories, and the small
// named categories used as fixtures.  The class predicates here are written
// against the category data, not derived from the operad ones, so the two
// levels genuinely cross-check each other.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "opemodel/core.hpp"

namespace opemodel {

struct CatArrow {
  std::string name;
  Color src;
  Color dst;

  auto operator<=>(const CatArrow&) const = default;
};

inline std::string to_string(const CatArrow& f) {
  return f.name + "(" + f.src + "->" + f.dst + ")";
}

struct FiniteCategory {
  std::set<Color> objects;
  std::map<std::pair<Color, Color>, std::set<std::string>> homs;
  std::map<Color, std::string> identities;
  // (g, f) -> g after f, defined exactly when f.dst == g.src.
  std::map<std::pair<CatArrow, CatArrow>, CatArrow> composition;

  friend auto operator<=>(const FiniteCategory&, const FiniteCategory&) = default;

  bool has_arrow(const CatArrow& f) const {
    auto it = homs.find({f.src, f.dst});
    return it != homs.end() && it->second.count(f.name) > 0;
  }

  CatArrow identity_at(const Color& c) const {
    auto it = identities.find(c);
    if (it == identities.end()) throw MalformedTable("no identity at object " + c);
    return CatArrow{it->second, c, c};
  }

  bool is_identity(const CatArrow& f) const {
    if (f.src != f.dst) return false;
    auto it = identities.find(f.src);
    return it != identities.end() && it->second == f.name;
  }

  std::vector<CatArrow> all_arrows() const {
    std::vector<CatArrow> out;
    for (const auto& [key, names] : homs)
      for (const auto& n : names) out.push_back(CatArrow{n, key.first, key.second});
    return out;
  }

  std::vector<CatArrow> hom(const Color& a, const Color& b) const {
    std::vector<CatArrow> out;
    auto it = homs.find({a, b});
    if (it == homs.end()) return out;
    for (const auto& n : it->second) out.push_back(CatArrow{n, a, b});
    return out;
  }
};

inline CatArrow compose(const FiniteCategory& cat, const CatArrow& g, const CatArrow& f) {
  if (f.dst != g.src)
    throw NotComposable("cannot compose " + to_string(g) + " after " + to_string(f));
  auto it = cat.composition.find({g, f});
  if (it == cat.composition.end())
    throw MalformedTable("missing composition entry (" + g.name + ", " + f.name + ")");
  return it->second;
}

inline ValidationReport validate(const FiniteCategory& cat) {
  ValidationReport rep;
  auto issue = [&rep](const std::string& axiom, const std::string& witness) {
    rep.issues.push_back({axiom, witness});
  };
  for (const Color& c : cat.objects)
    if (!is_identifier(c)) issue("object-name", c);
  for (const auto& [key, names] : cat.homs) {
    if (cat.objects.count(key.first) == 0 || cat.objects.count(key.second) == 0)
      issue("hom-object", key.first + "->" + key.second);
    for (const auto& n : names)
      if (!is_identifier(n)) issue("arrow-name", n);
    if (names.empty()) issue("empty-hom-entry", key.first + "->" + key.second);
  }
  for (const Color& c : cat.objects) {
    auto it = cat.identities.find(c);
    if (it == cat.identities.end()) {
      issue("identity-missing", c);
      continue;
    }
    auto h = cat.homs.find({c, c});
    if (h == cat.homs.end() || h->second.count(it->second) == 0) issue("identity-profile", c);
  }
  for (const auto& [c, name] : cat.identities)
    if (cat.objects.count(c) == 0) issue("identity-object", c);
  if (!rep.ok()) return rep;

  auto arrows = cat.all_arrows();
  for (const auto& [key, result] : cat.composition) {
    const auto& [g, f] = key;
    if (!cat.has_arrow(g) || !cat.has_arrow(f) || !cat.has_arrow(result)) {
      issue("malformed-table", "(" + g.name + ", " + f.name + ")");
      continue;
    }
    if (f.dst != g.src)
      issue("malformed-table", "non-composable key (" + g.name + ", " + f.name + ")");
    else if (result.src != f.src || result.dst != g.dst)
      issue("closure", "(" + g.name + ", " + f.name + ") -> " + result.name);
  }
  if (!rep.ok()) return rep;
  for (const auto& g : arrows)
    for (const auto& f : arrows) {
      if (f.dst != g.src) continue;
      if (cat.composition.find({g, f}) == cat.composition.end())
        issue("partial-composition", "(" + g.name + ", " + f.name + ")");
    }
  if (!rep.ok()) return rep;
  for (const auto& f : arrows) {
    if (compose(cat, f, cat.identity_at(f.src)) != f) issue("unit-right", to_string(f));
    if (compose(cat, cat.identity_at(f.dst), f) != f) issue("unit-left", to_string(f));
  }
  for (const auto& h : arrows)
    for (const auto& g : arrows) {
      if (g.dst != h.src) continue;
      for (const auto& f : arrows) {
        if (f.dst != g.src) continue;
        if (compose(cat, compose(cat, h, g), f) != compose(cat, h, compose(cat, g, f)))
          issue("associativity", "(" + h.name + ", " + g.name + ", " + f.name + ")");
      }
    }
  return rep;
}

inline std::vector<std::pair<CatArrow, CatArrow>> isomorphisms(const FiniteCategory& cat) {
  std::vector<std::pair<CatArrow, CatArrow>> out;
  auto arrows = cat.all_arrows();
  for (const auto& f : arrows) {
    for (const auto& g : arrows) {
      if (g.src != f.dst || g.dst != f.src) continue;
      if (compose(cat, g, f) == cat.identity_at(f.src) &&
          compose(cat, f, g) == cat.identity_at(f.dst)) {
        out.emplace_back(f, g);
        break;
      }
    }
  }
  return out;
}

inline std::vector<std::vector<Color>> iso_classes(const FiniteCategory& cat) {
  std::map<Color, Color> parent;
  for (const Color& c : cat.objects) parent[c] = c;
  auto find = [&](Color c) {
    while (parent[c] != c) c = parent[c];
    return c;
  };
  for (const auto& [f, g] : isomorphisms(cat)) {
    Color a = find(f.src), b = find(f.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<Color, std::vector<Color>> classes;
  for (const Color& c : cat.objects) classes[find(c)].push_back(c);
  std::vector<std::vector<Color>> out;
  for (auto& [root, members] : classes) out.push_back(members);
  return out;
}

class CatFunctor {
public:
  static CatFunctor make(FiniteCategory source, FiniteCategory target,
                         std::map<Color, Color> object_map,
                         std::map<CatArrow, CatArrow> morphism_map) {
    return make(std::make_shared<const FiniteCategory>(std::move(source)),
                std::make_shared<const FiniteCategory>(std::move(target)),
                std::move(object_map), std::move(morphism_map));
  }

  static CatFunctor make(std::shared_ptr<const FiniteCategory> source,
                         std::shared_ptr<const FiniteCategory> target,
                         std::map<Color, Color> object_map,
                         std::map<CatArrow, CatArrow> morphism_map) {
    CatFunctor F(std::move(source), std::move(target), std::move(object_map),
                 std::move(morphism_map));
    F.check();
    return F;
  }

  const FiniteCategory& source() const { return *source_; }
  const FiniteCategory& target() const { return *target_; }
  const std::shared_ptr<const FiniteCategory>& source_ptr() const { return source_; }
  const std::shared_ptr<const FiniteCategory>& target_ptr() const { return target_; }
  const std::map<Color, Color>& object_map() const { return object_map_; }
  const std::map<CatArrow, CatArrow>& morphism_map() const { return morphism_map_; }

  const Color& map(const Color& c) const { return object_map_.at(c); }
  const CatArrow& map(const CatArrow& f) const { return morphism_map_.at(f); }

  friend bool operator==(const CatFunctor& a, const CatFunctor& b) {
    return *a.source_ == *b.source_ && *a.target_ == *b.target_ &&
           a.object_map_ == b.object_map_ && a.morphism_map_ == b.morphism_map_;
  }

private:
  CatFunctor(std::shared_ptr<const FiniteCategory> source,
             std::shared_ptr<const FiniteCategory> target, std::map<Color, Color> object_map,
             std::map<CatArrow, CatArrow> morphism_map)
      : source_(std::move(source)),
        target_(std::move(target)),
        object_map_(std::move(object_map)),
        morphism_map_(std::move(morphism_map)) {}

  void check() const {
    for (const Color& c : source_->objects) {
      auto it = object_map_.find(c);
      if (it == object_map_.end()) throw InvalidFunctor("object map misses " + c);
      if (target_->objects.count(it->second) == 0)
        throw InvalidFunctor("object map leaves the target at " + c);
    }
    if (object_map_.size() != source_->objects.size())
      throw InvalidFunctor("object map has extra entries");
    auto arrows = source_->all_arrows();
    if (morphism_map_.size() != arrows.size()) throw InvalidFunctor("arrow map size mismatch");
    for (const auto& f : arrows) {
      auto it = morphism_map_.find(f);
      if (it == morphism_map_.end()) throw InvalidFunctor("arrow map misses " + to_string(f));
      const CatArrow& ff = it->second;
      if (!target_->has_arrow(ff) || ff.src != map(f.src) || ff.dst != map(f.dst))
        throw InvalidFunctor("arrow image mismatch at " + to_string(f));
    }
    for (const Color& c : source_->objects)
      if (map(source_->identity_at(c)) != target_->identity_at(map(c)))
        throw InvalidFunctor("identity not preserved at " + c);
    for (const auto& g : arrows)
      for (const auto& f : arrows) {
        if (f.dst != g.src) continue;
        if (map(compose(*source_, g, f)) != compose(*target_, map(g), map(f)))
          throw InvalidFunctor("composition not preserved at (" + g.name + ", " + f.name + ")");
      }
  }

  std::shared_ptr<const FiniteCategory> source_;
  std::shared_ptr<const FiniteCategory> target_;
  std::map<Color, Color> object_map_;
  std::map<CatArrow, CatArrow> morphism_map_;
};

inline CatFunctor identity_functor(const FiniteCategory& cat) {
  auto ptr = std::make_shared<const FiniteCategory>(cat);
  std::map<Color, Color> obj;
  for (const Color& c : cat.objects) obj[c] = c;
  std::map<CatArrow, CatArrow> mor;
  for (const auto& f : cat.all_arrows()) mor[f] = f;
  return CatFunctor::make(ptr, ptr, std::move(obj), std::move(mor));
}

inline CatFunctor compose_functors(const CatFunctor& G, const CatFunctor& F) {
  if (!(F.target() == G.source()))
    throw InvalidFunctor("compose_functors: middle categories differ");
  std::map<Color, Color> obj;
  for (const auto& [c, fc] : F.object_map()) obj[c] = G.map(fc);
  std::map<CatArrow, CatArrow> mor;
  for (const auto& [f, ff] : F.morphism_map()) mor[f] = G.map(ff);
  return CatFunctor::make(F.source_ptr(), G.target_ptr(), std::move(obj), std::move(mor));
}

// Model-structure classes on Cat, decided directly from the tables.
inline bool is_cofibration(const CatFunctor& F) {
  std::set<Color> image;
  for (const auto& [c, fc] : F.object_map())
    if (!image.insert(fc).second) return false;
  return true;
}

inline bool is_fibration(const CatFunctor& F) {
  auto target_isos = isomorphisms(F.target());
  auto source_isos = isomorphisms(F.source());
  for (const Color& c : F.source().objects) {
    for (const auto& [psi, psi_inv] : target_isos) {
      if (psi.src != F.map(c)) continue;
      bool lifted = false;
      for (const auto& [phi, phi_inv] : source_isos) {
        if (phi.src == c && F.map(phi) == psi) {
          lifted = true;
          break;
        }
      }
      if (!lifted) return false;
    }
  }
  return true;
}

inline bool is_fully_faithful(const CatFunctor& F) {
  std::map<Color, std::vector<Color>> preimage;
  for (const auto& [c, fc] : F.object_map()) preimage[fc].push_back(c);
  for (const auto& [key, names] : F.target().homs) {
    auto ps = preimage.find(key.first);
    auto qs = preimage.find(key.second);
    if (ps == preimage.end() || qs == preimage.end()) continue;
    for (const Color& a : ps->second)
      for (const Color& b : qs->second) {
        auto as = F.source().hom(a, b);
        if (as.size() != names.size()) return false;
        std::set<CatArrow> images;
        for (const auto& f : as)
          if (!images.insert(F.map(f)).second) return false;
      }
  }
  return true;
}

inline bool is_essentially_surjective(const CatFunctor& F) {
  std::set<Color> image;
  for (const auto& [c, fc] : F.object_map()) image.insert(fc);
  for (const auto& cls : iso_classes(F.target())) {
    bool hit = false;
    for (const Color& c : cls)
      if (image.count(c)) hit = true;
    if (!hit) return false;
  }
  return true;
}

inline bool is_weak_equivalence(const CatFunctor& F) {
  return is_fully_faithful(F) && is_essentially_surjective(F);
}

inline bool is_trivial_fibration(const CatFunctor& F) {
  std::set<Color> image;
  for (const auto& [c, fc] : F.object_map()) image.insert(fc);
  return image.size() == F.target().objects.size() && is_fully_faithful(F);
}

inline bool is_trivial_cofibration(const CatFunctor& F) {
  return is_cofibration(F) && is_weak_equivalence(F);
}

// Named small categories.
inline FiniteCategory terminal_category() {
  FiniteCategory c;
  c.objects = {"star"};
  c.homs[{"star", "star"}] = {"id"};
  c.identities["star"] = "id";
  CatArrow id{"id", "star", "star"};
  c.composition[{id, id}] = id;
  return c;
}

inline FiniteCategory discrete_category(const std::vector<Color>& objects) {
  FiniteCategory c;
  for (const Color& o : objects) {
    c.objects.insert(o);
    c.homs[{o, o}] = {"id"};
    c.identities[o] = "id";
    CatArrow id{"id", o, o};
    c.composition[{id, id}] = id;
  }
  return c;
}

inline FiniteCategory walking_arrow_category() {
  FiniteCategory c = discrete_category({"x", "y"});
  c.homs[{"x", "y"}] = {"f"};
  CatArrow f{"f", "x", "y"};
  c.composition[{f, c.identity_at("x")}] = f;
  c.composition[{c.identity_at("y"), f}] = f;
  return c;
}

inline FiniteCategory walking_iso_category() {
  FiniteCategory c = discrete_category({"a", "b"});
  c.homs[{"a", "b"}] = {"u"};
  c.homs[{"b", "a"}] = {"u_inv"};
  CatArrow u{"u", "a", "b"};
  CatArrow v{"u_inv", "b", "a"};
  CatArrow ida = c.identity_at("a");
  CatArrow idb = c.identity_at("b");
  c.composition[{u, ida}] = u;
  c.composition[{idb, u}] = u;
  c.composition[{v, idb}] = v;
  c.composition[{ida, v}] = v;
  c.composition[{v, u}] = ida;
  c.composition[{u, v}] = idb;
  return c;
}

inline FiniteCategory product_category(const FiniteCategory& C, const FiniteCategory& D) {
  FiniteCategory P;
  for (const Color& c : C.objects)
    for (const Color& d : D.objects) P.objects.insert(mangle({c, d}));
  auto pair_arrow = [](const CatArrow& f, const CatArrow& g) {
    return CatArrow{mangle({f.name, g.name}), mangle({f.src, g.src}), mangle({f.dst, g.dst})};
  };
  auto cas = C.all_arrows();
  auto das = D.all_arrows();
  for (const auto& f : cas)
    for (const auto& g : das) {
      CatArrow fg = pair_arrow(f, g);
      P.homs[{fg.src, fg.dst}].insert(fg.name);
    }
  for (const Color& c : C.objects)
    for (const Color& d : D.objects)
      P.identities[mangle({c, d})] = mangle({C.identities.at(c), D.identities.at(d)});
  for (const auto& f2 : cas)
    for (const auto& g2 : das)
      for (const auto& f1 : cas) {
        if (f1.dst != f2.src) continue;
        for (const auto& g1 : das) {
          if (g1.dst != g2.src) continue;
          P.composition[{pair_arrow(f2, g2), pair_arrow(f1, g1)}] =
              pair_arrow(compose(C, f2, f1), compose(D, g2, g1));
        }
      }
  return P;
}

namespace detail {

inline bool arrow_bijection_search(const FiniteCategory& C, const FiniteCategory& D,
                                   const std::map<Color, Color>& obj,
                                   std::map<CatArrow, CatArrow>& mor,
                                   const std::vector<std::pair<Color, Color>>& hom_keys,
                                   size_t k) {
  if (k == hom_keys.size()) {
    try {
      CatFunctor::make(C, D, obj, mor);
      return true;
    } catch (const InvalidFunctor&) {
      return false;
    }
  }
  auto [a, b] = hom_keys[k];
  auto as = C.hom(a, b);
  auto bs = D.hom(obj.at(a), obj.at(b));
  if (as.size() != bs.size()) return false;
  std::vector<size_t> idx(bs.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  do {
    bool ok = true;
    for (size_t i = 0; i < as.size(); ++i) {
      if (C.is_identity(as[i]) != D.is_identity(bs[idx[i]])) {
        ok = false;
        break;
      }
      mor[as[i]] = bs[idx[i]];
    }
    if (ok && arrow_bijection_search(C, D, obj, mor, hom_keys, k + 1)) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  for (const auto& f : as) mor.erase(f);
  return false;
}

}  // namespace detail

// Exhaustive isomorphism search; intended for desk-sized categories.
inline bool categories_isomorphic(const FiniteCategory& C, const FiniteCategory& D) {
  if (C.objects.size() != D.objects.size()) return false;
  if (C.all_arrows().size() != D.all_arrows().size()) return false;
  std::vector<Color> cs(C.objects.begin(), C.objects.end());
  std::vector<Color> ds(D.objects.begin(), D.objects.end());
  std::sort(ds.begin(), ds.end());
  do {
    std::map<Color, Color> obj;
    for (size_t i = 0; i < cs.size(); ++i) obj[cs[i]] = ds[i];
    bool sizes_ok = true;
    std::vector<std::pair<Color, Color>> hom_keys;
    for (const auto& a : cs)
      for (const auto& b : cs) {
        auto ca = C.hom(a, b);
        auto da = D.hom(obj[a], obj[b]);
        if (ca.size() != da.size()) {
          sizes_ok = false;
          break;
        }
        if (!ca.empty()) hom_keys.emplace_back(a, b);
      }
    if (sizes_ok) {
      std::map<CatArrow, CatArrow> mor;
      if (detail::arrow_bijection_search(C, D, obj, mor, hom_keys, 0)) return true;
    }
  } while (std::next_permutation(ds.begin(), ds.end()));
  return false;
}

}  // namespace opemodel
