#pragma once

// Operad functors, natural isomorphisms, the model-structure classes as
// decidable predicates, quasi-inverses of trivial cofibrations, the passage
// between operads and categories (unary part in one direction, unary
// inclusion in the other), and the slice equivalence over the one-point
// operad.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "opemodel/category.hpp"
#include "opemodel/core.hpp"

namespace opemodel {

class OperadFunctor {
public:
  static OperadFunctor make(FiniteOperad source, FiniteOperad target,
                            std::map<Color, Color> object_map,
                            std::map<Morphism, Morphism> morphism_map) {
    return make(std::make_shared<const FiniteOperad>(std::move(source)),
                std::make_shared<const FiniteOperad>(std::move(target)),
                std::move(object_map), std::move(morphism_map));
  }

  static OperadFunctor make(std::shared_ptr<const FiniteOperad> source,
                            std::shared_ptr<const FiniteOperad> target,
                            std::map<Color, Color> object_map,
                            std::map<Morphism, Morphism> morphism_map) {
    OperadFunctor F(std::move(source), std::move(target), std::move(object_map),
                    std::move(morphism_map));
    F.check();
    return F;
  }

  const FiniteOperad& source() const { return *source_; }
  const FiniteOperad& target() const { return *target_; }
  const std::shared_ptr<const FiniteOperad>& source_ptr() const { return source_; }
  const std::shared_ptr<const FiniteOperad>& target_ptr() const { return target_; }
  const std::map<Color, Color>& object_map() const { return object_map_; }
  const std::map<Morphism, Morphism>& morphism_map() const { return morphism_map_; }

  const Color& map(const Color& c) const {
    auto it = object_map_.find(c);
    if (it == object_map_.end()) throw InvalidFunctor("object map misses " + c);
    return it->second;
  }

  Profile map(const Profile& p) const {
    Profile q;
    q.output = map(p.output);
    for (const Color& c : p.inputs) q.inputs.push_back(map(c));
    return q;
  }

  const Morphism& map(const Morphism& m) const {
    auto it = morphism_map_.find(m);
    if (it == morphism_map_.end()) throw InvalidFunctor("morphism map misses " + to_string(m));
    return it->second;
  }

  friend bool operator==(const OperadFunctor& a, const OperadFunctor& b) {
    return *a.source_ == *b.source_ && *a.target_ == *b.target_ &&
           a.object_map_ == b.object_map_ && a.morphism_map_ == b.morphism_map_;
  }

private:
  OperadFunctor(std::shared_ptr<const FiniteOperad> source,
                std::shared_ptr<const FiniteOperad> target, std::map<Color, Color> object_map,
                std::map<Morphism, Morphism> morphism_map)
      : source_(std::move(source)),
        target_(std::move(target)),
        object_map_(std::move(object_map)),
        morphism_map_(std::move(morphism_map)) {}

  void check() const {
    if (source_->symmetric != target_->symmetric)
      throw InvalidFunctor("source and target disagree on the symmetric flag");
    for (const Color& c : source_->colors) {
      auto it = object_map_.find(c);
      if (it == object_map_.end()) throw InvalidFunctor("object map misses " + c);
      if (target_->colors.count(it->second) == 0)
        throw InvalidFunctor("object image of " + c + " not a target color");
    }
    if (object_map_.size() != source_->colors.size())
      throw InvalidFunctor("object map has extra entries");
    auto morphisms = source_->all_morphisms();
    if (morphism_map_.size() != morphisms.size())
      throw InvalidFunctor("morphism map size mismatch");
    for (const auto& m : morphisms) {
      auto it = morphism_map_.find(m);
      if (it == morphism_map_.end()) throw InvalidFunctor("morphism map misses " + to_string(m));
      const Morphism& fm = it->second;
      if (!target_->has_morphism(fm) || fm.profile != map(m.profile))
        throw InvalidFunctor("image profile mismatch at " + to_string(m));
    }
    for (const Color& c : source_->colors)
      if (map(source_->identity_at(c)) != target_->identity_at(map(c)))
        throw InvalidFunctor("identity not preserved at " + c);
    for (const auto& [key, result] : source_->composition) {
      const auto& [outer, inners] = key;
      std::vector<Morphism> fi;
      fi.reserve(inners.size());
      for (const auto& m : inners) fi.push_back(map(m));
      if (compose(*target_, map(outer), fi) != map(result))
        throw InvalidFunctor("composition not preserved at " +
                             detail::tuple_witness(outer, inners));
    }
    if (source_->symmetric)
      for (const auto& [key, result] : source_->symmetry) {
        const auto& [m, i] = key;
        if (target_->symmetry.at({map(m), i}) != map(result))
          throw InvalidFunctor("symmetry not preserved at (" + m.name + ", " +
                               std::to_string(i + 1) + ")");
      }
  }

  std::shared_ptr<const FiniteOperad> source_;
  std::shared_ptr<const FiniteOperad> target_;
  std::map<Color, Color> object_map_;
  std::map<Morphism, Morphism> morphism_map_;
};

inline OperadFunctor identity_functor(std::shared_ptr<const FiniteOperad> op) {
  std::map<Color, Color> obj;
  for (const Color& c : op->colors) obj[c] = c;
  std::map<Morphism, Morphism> mor;
  for (const auto& m : op->all_morphisms()) mor[m] = m;
  return OperadFunctor::make(op, op, std::move(obj), std::move(mor));
}

inline OperadFunctor identity_functor(const FiniteOperad& op) {
  return identity_functor(std::make_shared<const FiniteOperad>(op));
}

inline OperadFunctor compose_functors(const OperadFunctor& G, const OperadFunctor& F) {
  if (!(F.target() == G.source()))
    throw InvalidFunctor("compose_functors: middle operads differ");
  std::map<Color, Color> obj;
  for (const auto& [c, fc] : F.object_map()) obj[c] = G.map(fc);
  std::map<Morphism, Morphism> mor;
  for (const auto& [m, fm] : F.morphism_map()) mor[m] = G.map(fm);
  return OperadFunctor::make(F.source_ptr(), G.target_ptr(), std::move(obj), std::move(mor));
}

// ---------------------------------------------------------------------------
// The three classes.

inline bool is_cofibration(const OperadFunctor& F) {
  std::set<Color> image;
  for (const auto& [c, fc] : F.object_map())
    if (!image.insert(fc).second) return false;
  return true;
}

inline bool is_fibration(const OperadFunctor& F) {
  auto target_isos = isomorphisms(F.target());
  auto source_isos = isomorphisms(F.source());
  for (const Color& p : F.source().colors) {
    for (const auto& [psi, psi_inv] : target_isos) {
      if (psi.profile.inputs[0] != F.map(p)) continue;
      bool lifted = false;
      for (const auto& [phi, phi_inv] : source_isos) {
        if (phi.profile.inputs[0] == p && F.map(phi) == psi) {
          lifted = true;
          break;
        }
      }
      if (!lifted) return false;
    }
  }
  return true;
}

// Every profile component must be a bijection onto the hom-set of the image
// profile, including components whose source hom-set is empty.
inline bool is_fully_faithful(const OperadFunctor& F) {
  std::map<Color, std::vector<Color>> preimage;
  for (const auto& [c, fc] : F.object_map()) preimage[fc].push_back(c);
  for (const auto& [tau, names] : F.target().homs) {
    std::vector<const std::vector<Color>*> slots;
    bool reachable = true;
    auto out_it = preimage.find(tau.output);
    if (out_it == preimage.end()) continue;
    for (const Color& c : tau.inputs) {
      auto it = preimage.find(c);
      if (it == preimage.end()) {
        reachable = false;
        break;
      }
      slots.push_back(&it->second);
    }
    if (!reachable) continue;
    // Enumerate source profiles mapping onto tau.
    std::vector<size_t> idx(slots.size(), 0);
    while (true) {
      for (const Color& out : out_it->second) {
        Profile pi;
        pi.output = out;
        for (size_t i = 0; i < slots.size(); ++i) pi.inputs.push_back((*slots[i])[idx[i]]);
        auto srcs = F.source().hom(pi);
        if (srcs.size() != names.size()) return false;
        std::set<Morphism> images;
        for (const auto& m : srcs)
          if (!images.insert(F.map(m)).second) return false;
      }
      size_t i = slots.size();
      while (i > 0) {
        --i;
        if (++idx[i] < slots[i]->size()) break;
        idx[i] = 0;
        if (i == 0) {
          i = slots.size() + 1;
          break;
        }
      }
      if (slots.empty() || i == slots.size() + 1) break;
    }
  }
  return true;
}

inline bool is_essentially_surjective(const OperadFunctor& F) {
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

inline bool is_weak_equivalence(const OperadFunctor& F) {
  return is_fully_faithful(F) && is_essentially_surjective(F);
}

// Decided by the surjective-on-objects + fully-faithful characterization;
// the equivalence with fibration-and-weak-equivalence is exercised by the
// test suites.
inline bool is_trivial_fibration(const OperadFunctor& F) {
  std::set<Color> image;
  for (const auto& [c, fc] : F.object_map()) image.insert(fc);
  return image.size() == F.target().colors.size() && is_fully_faithful(F);
}

inline bool is_trivial_cofibration(const OperadFunctor& F) {
  return is_cofibration(F) && is_weak_equivalence(F);
}

// ---------------------------------------------------------------------------
// Natural isomorphisms and quasi-inverses.

struct NaturalIso {
  OperadFunctor source;  // F
  OperadFunctor target;  // G, parallel to F
  std::map<Color, Morphism> components;  // p -> alpha_p : F(p) -> G(p)

  static NaturalIso make(OperadFunctor F, OperadFunctor G, std::map<Color, Morphism> components) {
    if (!(F.source() == G.source()) || !(F.target() == G.target()))
      throw InvalidFunctor("NaturalIso: functors are not parallel");
    const FiniteOperad& Q = F.target();
    auto isos = isomorphisms(Q);
    auto is_iso = [&isos](const Morphism& m) {
      for (const auto& [f, g] : isos)
        if (f == m) return true;
      return false;
    };
    for (const Color& p : F.source().colors) {
      auto it = components.find(p);
      if (it == components.end()) throw InvalidFunctor("NaturalIso: missing component at " + p);
      const Morphism& a = it->second;
      if (a.arity() != 1 || a.profile.inputs[0] != F.map(p) || a.output() != G.map(p))
        throw InvalidFunctor("NaturalIso: component profile mismatch at " + p);
      if (!is_iso(a)) throw InvalidFunctor("NaturalIso: component not invertible at " + p);
    }
    for (const auto& psi : F.source().all_morphisms()) {
      std::vector<Morphism> comps;
      for (const Color& c : psi.profile.inputs) comps.push_back(components.at(c));
      Morphism lhs = compose_unary(Q, components.at(psi.output()), F.map(psi));
      Morphism rhs = psi.arity() == 0 ? G.map(psi) : compose(Q, G.map(psi), comps);
      if (lhs != rhs) throw InvalidFunctor("NaturalIso: naturality fails at " + to_string(psi));
    }
    return NaturalIso{std::move(F), std::move(G), std::move(components)};
  }
};

struct QuasiInverse {
  OperadFunctor inverse;  // F' with F' o F = id
  NaturalIso alpha;       // F o F' => id, identity at image objects
};

// For a trivial cofibration F : P -> Q, the deterministic quasi-inverse:
// non-canonical choices are resolved by the first witness in canonical
// (color, then morphism) order.
inline QuasiInverse quasi_inverse(const OperadFunctor& F) {
  if (!is_trivial_cofibration(F))
    throw NotTrivialCofibration("quasi_inverse requires a trivial cofibration");
  const FiniteOperad& P = F.source();
  const FiniteOperad& Q = F.target();

  std::map<Color, Color> image_preimage;
  for (const auto& [p, fp] : F.object_map()) image_preimage[fp] = p;

  auto isos = isomorphisms(Q);
  std::map<Color, Color> inv_obj;           // q -> F'(q)
  std::map<Color, Morphism> alpha;           // q -> alpha_q : F(F'q) -> q
  std::map<Color, Morphism> alpha_inv;       // q -> alpha_q^{-1}
  for (const Color& q : Q.colors) {
    auto it = image_preimage.find(q);
    if (it != image_preimage.end()) {
      inv_obj[q] = it->second;
      alpha[q] = Q.identity_at(q);
      alpha_inv[q] = Q.identity_at(q);
      continue;
    }
    bool found = false;
    for (const Color& p : P.colors) {
      for (const auto& [m, m_inv] : isos) {
        if (m.profile.inputs[0] == F.map(p) && m.output() == q) {
          inv_obj[q] = p;
          alpha[q] = m;
          alpha_inv[q] = m_inv;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) throw NotTrivialCofibration("no isomorphism witnesses essential surjectivity at " + q);
  }

  std::map<Morphism, Morphism> inv_mor;
  for (const auto& psi : Q.all_morphisms()) {
    // chi = alpha_q^{-1} . psi . (alpha_{q_1},...,alpha_{q_n})
    Morphism inner = psi;
    if (psi.arity() > 0) {
      std::vector<Morphism> comps;
      for (const Color& c : psi.profile.inputs) comps.push_back(alpha.at(c));
      inner = compose(Q, psi, comps);
    }
    Morphism chi = compose_unary(Q, alpha_inv.at(psi.output()), inner);
    // Unique preimage under the hom-bijection of F.
    Profile pre;
    pre.output = inv_obj.at(psi.output());
    for (const Color& c : psi.profile.inputs) pre.inputs.push_back(inv_obj.at(c));
    bool found = false;
    for (const auto& m : P.hom(pre)) {
      if (F.map(m) == chi) {
        inv_mor[psi] = m;
        found = true;
        break;
      }
    }
    if (!found) throw NotTrivialCofibration("hom component not surjective at " + to_string(psi));
  }

  OperadFunctor Fprime =
      OperadFunctor::make(F.target_ptr(), F.source_ptr(), std::move(inv_obj), std::move(inv_mor));
  NaturalIso iso = NaturalIso::make(compose_functors(F, Fprime), identity_functor(F.target_ptr()),
                                    std::move(alpha));
  return QuasiInverse{std::move(Fprime), std::move(iso)};
}

// ---------------------------------------------------------------------------
// Between operads and categories.

inline FiniteOperad j_lower(const FiniteCategory& C, bool symmetric) {
  FiniteOperad op;
  op.symmetric = symmetric;
  op.colors = C.objects;
  for (const auto& [key, names] : C.homs) op.homs[Profile{{key.first}, key.second}] = names;
  op.identities = C.identities;
  auto as_morphism = [](const CatArrow& f) { return Morphism{f.name, Profile{{f.src}, f.dst}}; };
  for (const auto& [key, result] : C.composition)
    op.composition[{as_morphism(key.first), {as_morphism(key.second)}}] = as_morphism(result);
  return op;
}

inline FiniteCategory j_upper(const FiniteOperad& P) {
  FiniteCategory C;
  C.objects = P.colors;
  for (const auto& [profile, names] : P.homs)
    if (profile.arity() == 1) C.homs[{profile.inputs[0], profile.output}] = names;
  C.identities = P.identities;
  for (const auto& [key, result] : P.composition) {
    const auto& [outer, inners] = key;
    if (outer.arity() != 1 || inners[0].arity() != 1) continue;
    C.composition[{CatArrow{outer.name, outer.profile.inputs[0], outer.output()},
                   CatArrow{inners[0].name, inners[0].profile.inputs[0], inners[0].output()}}] =
        CatArrow{result.name, result.profile.inputs[0], result.output()};
  }
  return C;
}

inline OperadFunctor j_lower(const CatFunctor& F, bool symmetric) {
  std::map<Morphism, Morphism> mor;
  for (const auto& [f, ff] : F.morphism_map())
    mor[Morphism{f.name, Profile{{f.src}, f.dst}}] = Morphism{ff.name, Profile{{ff.src}, ff.dst}};
  return OperadFunctor::make(j_lower(F.source(), symmetric), j_lower(F.target(), symmetric),
                             F.object_map(), std::move(mor));
}

inline CatFunctor j_upper(const OperadFunctor& F) {
  std::map<CatArrow, CatArrow> mor;
  for (const auto& [m, fm] : F.morphism_map()) {
    if (m.arity() != 1) continue;
    mor[CatArrow{m.name, m.profile.inputs[0], m.output()}] =
        CatArrow{fm.name, fm.profile.inputs[0], fm.output()};
  }
  return CatFunctor::make(j_upper(F.source()), j_upper(F.target()), F.object_map(),
                          std::move(mor));
}

// Per-class comparison between an operad functor and its unary part.  The
// unary inclusion detects fibrations and cofibrations exactly; a weak
// equivalence of operads restricts to one of categories, but a functor can
// be an equivalence on the unary level while a higher-arity component fails
// to be bijective, so for weak equivalences only preservation is asserted.
struct ClassMembership {
  bool cofibration = false;
  bool fibration = false;
  bool weak_equivalence = false;
  bool trivial_cofibration = false;
  bool trivial_fibration = false;
};

struct PreservationReport {
  ClassMembership upstairs;    // the given functor
  ClassMembership downstairs;  // its image level
  bool cofibration_matches = false;
  bool fibration_matches = false;
  bool weak_equivalence_preserved = false;
  bool ok() const { return cofibration_matches && fibration_matches && weak_equivalence_preserved; }
};

inline ClassMembership classify(const OperadFunctor& F) {
  ClassMembership c;
  c.cofibration = is_cofibration(F);
  c.fibration = is_fibration(F);
  c.weak_equivalence = is_weak_equivalence(F);
  c.trivial_cofibration = c.cofibration && c.weak_equivalence;
  c.trivial_fibration = is_trivial_fibration(F);
  return c;
}

inline ClassMembership classify(const CatFunctor& F) {
  ClassMembership c;
  c.cofibration = is_cofibration(F);
  c.fibration = is_fibration(F);
  c.weak_equivalence = is_weak_equivalence(F);
  c.trivial_cofibration = c.cofibration && c.weak_equivalence;
  c.trivial_fibration = is_trivial_fibration(F);
  return c;
}

inline PreservationReport preserves_classes(const OperadFunctor& F) {
  PreservationReport rep;
  rep.upstairs = classify(F);
  rep.downstairs = classify(j_upper(F));
  rep.cofibration_matches = rep.upstairs.cofibration == rep.downstairs.cofibration;
  rep.fibration_matches = rep.upstairs.fibration == rep.downstairs.fibration;
  rep.weak_equivalence_preserved =
      !rep.upstairs.weak_equivalence || rep.downstairs.weak_equivalence;
  return rep;
}

// For a category functor the unary inclusion detects all three classes.
inline PreservationReport preserves_classes(const CatFunctor& F, bool symmetric) {
  PreservationReport rep;
  rep.upstairs = classify(j_lower(F, symmetric));
  rep.downstairs = classify(F);
  rep.cofibration_matches = rep.upstairs.cofibration == rep.downstairs.cofibration;
  rep.fibration_matches = rep.upstairs.fibration == rep.downstairs.fibration;
  rep.weak_equivalence_preserved =
      rep.upstairs.weak_equivalence == rep.downstairs.weak_equivalence;
  return rep;
}

// ---------------------------------------------------------------------------
// The slice over the one-point operad.

inline bool is_point_operad(const FiniteOperad& op) {
  return op.colors.size() == 1 && op.morphism_count() == 1;
}

inline FiniteCategory slice_to_cat(const OperadFunctor& F) {
  if (!is_point_operad(F.target()))
    throw NotOverStar("the functor is not over the one-point operad");
  for (const auto& m : F.source().all_morphisms())
    if (m.arity() != 1)
      throw NotOverStar("source has the non-unary morphism " + to_string(m));
  return j_upper(F.source());
}

OperadFunctor slice_from_cat(const FiniteCategory& C, bool symmetric);

// ---------------------------------------------------------------------------
// Coproducts (tagged disjoint unions).

struct OperadCoproduct {
  FiniteOperad operad;
  OperadFunctor left;   // inclusion of the first summand
  OperadFunctor right;  // inclusion of the second summand
};

namespace detail {

inline FiniteOperad relabel(const FiniteOperad& P, const std::string& tag) {
  auto rc = [&tag](const Color& c) { return mangle({tag, c}); };
  auto rp = [&rc](const Profile& p) {
    Profile q;
    q.output = rc(p.output);
    for (const Color& c : p.inputs) q.inputs.push_back(rc(c));
    return q;
  };
  auto rm = [&rp](const Morphism& m) { return Morphism{m.name, rp(m.profile)}; };
  FiniteOperad out;
  out.symmetric = P.symmetric;
  for (const Color& c : P.colors) out.colors.insert(rc(c));
  for (const auto& [profile, names] : P.homs) out.homs[rp(profile)] = names;
  for (const auto& [c, name] : P.identities) out.identities[rc(c)] = name;
  for (const auto& [key, result] : P.composition) {
    std::vector<Morphism> inners;
    for (const auto& m : key.second) inners.push_back(rm(m));
    out.composition[{rm(key.first), inners}] = rm(result);
  }
  for (const auto& [key, result] : P.symmetry)
    out.symmetry[{rm(key.first), key.second}] = rm(result);
  return out;
}

}  // namespace detail

inline OperadCoproduct coproduct(const FiniteOperad& P, const FiniteOperad& Q) {
  if (P.symmetric != Q.symmetric) throw InvalidArgument("coproduct: symmetric flags differ");
  FiniteOperad lp = detail::relabel(P, "l");
  FiniteOperad rq = detail::relabel(Q, "r");
  FiniteOperad out = lp;
  out.colors.insert(rq.colors.begin(), rq.colors.end());
  out.homs.insert(rq.homs.begin(), rq.homs.end());
  out.identities.insert(rq.identities.begin(), rq.identities.end());
  out.composition.insert(rq.composition.begin(), rq.composition.end());
  out.symmetry.insert(rq.symmetry.begin(), rq.symmetry.end());
  auto shared = std::make_shared<const FiniteOperad>(std::move(out));

  auto include = [&shared](const FiniteOperad& S, const std::string& tag) {
    std::map<Color, Color> obj;
    for (const Color& c : S.colors) obj[c] = mangle({tag, c});
    std::map<Morphism, Morphism> mor;
    for (const auto& m : S.all_morphisms()) {
      Profile q;
      q.output = mangle({tag, m.output()});
      for (const Color& c : m.profile.inputs) q.inputs.push_back(mangle({tag, c}));
      mor[m] = Morphism{m.name, q};
    }
    return OperadFunctor::make(std::make_shared<const FiniteOperad>(S), shared, std::move(obj),
                               std::move(mor));
  };
  return OperadCoproduct{*shared, include(P, "l"), include(Q, "r")};
}

// The fold [F, G] out of a coproduct built by `coproduct`.
inline OperadFunctor fold_functor(const OperadCoproduct& cp, const OperadFunctor& F,
                                  const OperadFunctor& G) {
  if (!(F.target() == G.target())) throw InvalidFunctor("fold_functor: targets differ");
  std::map<Color, Color> obj;
  std::map<Morphism, Morphism> mor;
  for (const auto& [c, lc] : cp.left.object_map()) obj[lc] = F.map(c);
  for (const auto& [c, rc] : cp.right.object_map()) obj[rc] = G.map(c);
  for (const auto& [m, lm] : cp.left.morphism_map()) mor[lm] = F.map(m);
  for (const auto& [m, rm] : cp.right.morphism_map()) mor[rm] = G.map(m);
  return OperadFunctor::make(std::make_shared<const FiniteOperad>(cp.operad), F.target_ptr(),
                             std::move(obj), std::move(mor));
}

}  // namespace opemodel
