#pragma once

// Lifting problems: the two constructive solutions available in the model
// structure (cofibration against trivial fibration, trivial cofibration
// against fibration) and exhaustive right-lifting-property checking by
// enumeration of commutative squares.  Non-canonical choices are resolved
// lexicographically-first so repeated calls return identical lifts.

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "opemodel/core.hpp"
#include "opemodel/functors.hpp"

namespace opemodel {

struct LiftingSquare {
  OperadFunctor left;    // P -> Q
  OperadFunctor right;   // R -> S
  OperadFunctor top;     // P -> R
  OperadFunctor bottom;  // Q -> S

  static LiftingSquare make(OperadFunctor left, OperadFunctor right, OperadFunctor top,
                            OperadFunctor bottom) {
    if (!(top.source() == left.source()) || !(top.target() == right.source()) ||
        !(bottom.source() == left.target()) || !(bottom.target() == right.target()))
      throw InvalidFunctor("LiftingSquare: boundary functors do not share corners");
    if (!(compose_functors(right, top) == compose_functors(bottom, left)))
      throw SquareNotCommutative("right o top differs from bottom o left");
    return LiftingSquare{std::move(left), std::move(right), std::move(top), std::move(bottom)};
  }
};

// ---------------------------------------------------------------------------
// Constructive lifts.

// left a cofibration, right a trivial fibration.  Objects are lifted through
// the object surjection (matching top on the image of left, otherwise the
// first preimage in canonical order); morphisms through the hom-bijections.
inline OperadFunctor solve_lift_trivfib(const LiftingSquare& sq) {
  if (!is_cofibration(sq.left) || !is_trivial_fibration(sq.right))
    throw NotApplicable("solve_lift_trivfib needs (cofibration, trivial fibration)");
  const FiniteOperad& Q = sq.left.target();
  const FiniteOperad& R = sq.right.source();

  std::map<Color, Color> left_preimage;
  for (const auto& [p, q] : sq.left.object_map()) left_preimage[q] = p;

  std::map<Color, Color> obj;
  for (const Color& q : Q.colors) {
    auto it = left_preimage.find(q);
    if (it != left_preimage.end()) {
      obj[q] = sq.top.map(it->second);
      continue;
    }
    bool found = false;
    for (const Color& r : R.colors) {
      if (sq.right.map(r) == sq.bottom.map(q)) {
        obj[q] = r;
        found = true;
        break;
      }
    }
    if (!found) throw NotApplicable("object surjection has no preimage at " + q);
  }

  std::map<Morphism, Morphism> mor;
  for (const auto& psi : Q.all_morphisms()) {
    Profile target_profile;
    target_profile.output = obj.at(psi.output());
    for (const Color& c : psi.profile.inputs) target_profile.inputs.push_back(obj.at(c));
    Morphism image = sq.bottom.map(psi);
    bool found = false;
    for (const auto& m : R.hom(target_profile)) {
      if (sq.right.map(m) == image) {
        mor[psi] = m;
        found = true;
        break;
      }
    }
    if (!found) throw NotApplicable("hom bijection has no preimage at " + to_string(psi));
  }

  OperadFunctor H = OperadFunctor::make(sq.left.target_ptr(), sq.right.source_ptr(),
                                        std::move(obj), std::move(mor));
  if (!(compose_functors(H, sq.left) == sq.top) || !(compose_functors(sq.right, H) == sq.bottom))
    throw NotApplicable("solve_lift_trivfib produced a non-commuting lift");
  return H;
}

// left a trivial cofibration, right a fibration.  Builds the quasi-inverse
// of the left leg, then lifts each component isomorphism through the
// fibration, normalized to the identity at image objects.
inline OperadFunctor solve_lift_trivcof(const LiftingSquare& sq) {
  if (!is_trivial_cofibration(sq.left) || !is_fibration(sq.right))
    throw NotApplicable("solve_lift_trivcof needs (trivial cofibration, fibration)");
  const OperadFunctor& F = sq.left;    // P -> Q
  const OperadFunctor& G = sq.right;   // R -> S
  const OperadFunctor& U = sq.top;     // P -> R
  const OperadFunctor& V = sq.bottom;  // Q -> S
  const FiniteOperad& Q = F.target();
  const FiniteOperad& R = G.source();

  QuasiInverse qi = quasi_inverse(F);
  const OperadFunctor& Fprime = qi.inverse;

  std::map<Color, Color> image_preimage;
  for (const auto& [p, fp] : F.object_map()) image_preimage[fp] = p;

  auto isos_R = isomorphisms(R);
  std::map<Color, Color> obj;            // q -> Hq
  std::map<Color, Morphism> beta;        // q -> beta_q : U F' q -> H q
  std::map<Color, Morphism> beta_inv;
  for (const Color& q : Q.colors) {
    auto it = image_preimage.find(q);
    if (it != image_preimage.end()) {
      Color up = U.map(it->second);
      obj[q] = up;
      beta[q] = R.identity_at(up);
      beta_inv[q] = R.identity_at(up);
      continue;
    }
    Color source_obj = U.map(Fprime.map(q));
    Morphism valpha = V.map(qi.alpha.components.at(q));
    bool found = false;
    for (const auto& [b, b_inv] : isos_R) {
      if (b.profile.inputs[0] != source_obj) continue;
      if (G.map(b) != valpha) continue;
      obj[q] = b.output();
      beta[q] = b;
      beta_inv[q] = b_inv;
      found = true;
      break;
    }
    if (!found) throw NotApplicable("fibration lift not found at " + q);
  }

  std::map<Morphism, Morphism> mor;
  for (const auto& psi : Q.all_morphisms()) {
    Morphism core = U.map(Fprime.map(psi));
    if (psi.arity() > 0) {
      std::vector<Morphism> invs;
      for (const Color& c : psi.profile.inputs) invs.push_back(beta_inv.at(c));
      core = compose(R, core, invs);
    }
    mor[psi] = compose_unary(R, beta.at(psi.output()), core);
  }

  OperadFunctor H = OperadFunctor::make(F.target_ptr(), G.source_ptr(), std::move(obj),
                                        std::move(mor));
  if (!(compose_functors(H, F) == U) || !(compose_functors(G, H) == V))
    throw NotApplicable("solve_lift_trivcof produced a non-commuting lift");
  return H;
}

// ---------------------------------------------------------------------------
// Exhaustive functor enumeration.

namespace detail {

struct IndexedOperad {
  const FiniteOperad* op;
  std::vector<Color> colors;
  std::map<Color, int> color_index;
  std::vector<Morphism> morphisms;
  std::map<Morphism, int> morphism_index;
  std::vector<int> identity_of_color;  // per color
  std::vector<bool> identity_flag;     // per morphism
  std::vector<int> output_of;
  std::vector<std::vector<int>> inputs_of;
  std::map<std::vector<int>, std::vector<int>> hom_by_profile;  // [out, in...] -> morphisms
  struct CompEntry {
    int outer;
    std::vector<int> inners;
    int result;
  };
  std::vector<CompEntry> comp_entries;
  std::map<std::pair<int, std::vector<int>>, int> comp_lookup;
  struct SymEntry {
    int m;
    int t;
    int result;
  };
  std::vector<SymEntry> sym_entries;
  std::map<std::pair<int, int>, int> sym_lookup;

  explicit IndexedOperad(const FiniteOperad& o) : op(&o) {
    colors.assign(o.colors.begin(), o.colors.end());
    for (size_t i = 0; i < colors.size(); ++i) color_index[colors[i]] = static_cast<int>(i);
    morphisms = o.all_morphisms();
    for (size_t i = 0; i < morphisms.size(); ++i)
      morphism_index[morphisms[i]] = static_cast<int>(i);
    identity_of_color.assign(colors.size(), -1);
    for (size_t i = 0; i < colors.size(); ++i)
      identity_of_color[i] = morphism_index.at(o.identity_at(colors[i]));
    identity_flag.assign(morphisms.size(), false);
    output_of.resize(morphisms.size());
    inputs_of.resize(morphisms.size());
    for (size_t i = 0; i < morphisms.size(); ++i) {
      const Morphism& m = morphisms[i];
      identity_flag[i] = o.is_identity(m);
      output_of[i] = color_index.at(m.output());
      for (const Color& c : m.profile.inputs) inputs_of[i].push_back(color_index.at(c));
      std::vector<int> key;
      key.push_back(output_of[i]);
      for (int c : inputs_of[i]) key.push_back(c);
      hom_by_profile[key].push_back(static_cast<int>(i));
    }
    for (const auto& [key, result] : o.composition) {
      CompEntry e;
      e.outer = morphism_index.at(key.first);
      for (const auto& m : key.second) e.inners.push_back(morphism_index.at(m));
      e.result = morphism_index.at(result);
      comp_lookup[{e.outer, e.inners}] = e.result;
      comp_entries.push_back(std::move(e));
    }
    for (const auto& [key, result] : o.symmetry) {
      SymEntry e{morphism_index.at(key.first), key.second, morphism_index.at(result)};
      sym_lookup[{e.m, e.t}] = e.result;
      sym_entries.push_back(e);
    }
  }
};

struct FunctorData {
  std::vector<int> obj;  // per source color
  std::vector<int> mor;  // per source morphism
};

// Exhaustive enumeration of functors S -> T compatible with optional forced
// assignments and a per-morphism filter.  `budget` is decremented once per
// assignment node; exhausting it throws SearchBudgetExceeded.  The visitor
// returns true to continue enumerating, false to stop early.
class FunctorSearch {
public:
  FunctorSearch(const IndexedOperad& S, const IndexedOperad& T, long long* budget)
      : S_(S), T_(T), budget_(budget) {
    obj_force_.assign(S.colors.size(), -1);
    mor_force_.assign(S.morphisms.size(), -1);
  }

  bool force_object(int src, int tgt) {
    if (obj_force_[static_cast<size_t>(src)] != -1 &&
        obj_force_[static_cast<size_t>(src)] != tgt)
      return false;
    obj_force_[static_cast<size_t>(src)] = tgt;
    return true;
  }

  bool force_morphism(int src, int tgt) {
    if (mor_force_[static_cast<size_t>(src)] != -1 &&
        mor_force_[static_cast<size_t>(src)] != tgt)
      return false;
    mor_force_[static_cast<size_t>(src)] = tgt;
    return true;
  }

  void set_object_filter(std::function<bool(int, int)> f) { obj_filter_ = std::move(f); }
  void set_morphism_filter(std::function<bool(int, int)> f) { mor_filter_ = std::move(f); }

  // Enumerates in canonical order; returns false when the visitor stopped
  // the search early.
  bool for_each(const std::function<bool(const FunctorData&)>& visitor) {
    data_.obj.assign(S_.colors.size(), -1);
    data_.mor.assign(S_.morphisms.size(), -1);
    visitor_ = &visitor;
    return assign_object(0);
  }

private:
  void spend() {
    if (--(*budget_) < 0) throw SearchBudgetExceeded("functor enumeration budget exhausted");
  }

  bool assign_object(size_t i) {
    if (i == S_.colors.size()) return assign_morphism(0);
    spend();
    int forced = obj_force_[i];
    if (forced != -1) {
      if (obj_filter_ && !obj_filter_(static_cast<int>(i), forced)) return true;
      data_.obj[i] = forced;
      bool keep = assign_object(i + 1);
      data_.obj[i] = -1;
      return keep;
    }
    for (int t = 0; t < static_cast<int>(T_.colors.size()); ++t) {
      if (obj_filter_ && !obj_filter_(static_cast<int>(i), t)) continue;
      data_.obj[i] = t;
      if (!assign_object(i + 1)) {
        data_.obj[i] = -1;
        return false;
      }
      data_.obj[i] = -1;
    }
    return true;
  }

  bool assign_morphism(size_t k) {
    if (k == S_.morphisms.size()) return finish();
    // identities are determined by the object map
    if (S_.identity_flag[k]) {
      int img = T_.identity_of_color[static_cast<size_t>(
          data_.obj[static_cast<size_t>(S_.output_of[k])])];
      if (mor_force_[k] != -1 && mor_force_[k] != img) return true;
      if (mor_filter_ && !mor_filter_(static_cast<int>(k), img)) return true;
      data_.mor[k] = img;
      bool keep = assign_morphism(k + 1);
      data_.mor[k] = -1;
      return keep;
    }
    spend();
    std::vector<int> key;
    key.push_back(data_.obj[static_cast<size_t>(S_.output_of[k])]);
    for (int c : S_.inputs_of[k]) key.push_back(data_.obj[static_cast<size_t>(c)]);
    auto it = T_.hom_by_profile.find(key);
    if (it == T_.hom_by_profile.end()) return true;  // dead branch
    int forced = mor_force_[k];
    for (int cand : it->second) {
      if (forced != -1 && cand != forced) continue;
      if (mor_filter_ && !mor_filter_(static_cast<int>(k), cand)) continue;
      data_.mor[k] = cand;
      if (!assign_morphism(k + 1)) {
        data_.mor[k] = -1;
        return false;
      }
      data_.mor[k] = -1;
    }
    return true;
  }

  bool finish() {
    spend();
    for (const auto& e : S_.comp_entries) {
      std::vector<int> imgs;
      imgs.reserve(e.inners.size());
      for (int m : e.inners) imgs.push_back(data_.mor[static_cast<size_t>(m)]);
      auto it = T_.comp_lookup.find({data_.mor[static_cast<size_t>(e.outer)], imgs});
      if (it == T_.comp_lookup.end() || it->second != data_.mor[static_cast<size_t>(e.result)])
        return true;
    }
    for (const auto& e : S_.sym_entries) {
      auto it = T_.sym_lookup.find({data_.mor[static_cast<size_t>(e.m)], e.t});
      if (it == T_.sym_lookup.end() || it->second != data_.mor[static_cast<size_t>(e.result)])
        return true;
    }
    return (*visitor_)(data_);
  }

  const IndexedOperad& S_;
  const IndexedOperad& T_;
  long long* budget_;
  std::vector<int> obj_force_;
  std::vector<int> mor_force_;
  std::function<bool(int, int)> obj_filter_;
  std::function<bool(int, int)> mor_filter_;
  FunctorData data_;
  const std::function<bool(const FunctorData&)>* visitor_ = nullptr;
};

inline FunctorData index_functor(const OperadFunctor& F, const IndexedOperad& S,
                                 const IndexedOperad& T) {
  FunctorData d;
  d.obj.resize(S.colors.size());
  d.mor.resize(S.morphisms.size());
  for (size_t i = 0; i < S.colors.size(); ++i)
    d.obj[i] = T.color_index.at(F.map(S.colors[i]));
  for (size_t k = 0; k < S.morphisms.size(); ++k)
    d.mor[k] = T.morphism_index.at(F.map(S.morphisms[k]));
  return d;
}

inline OperadFunctor materialize(const FunctorData& d, const IndexedOperad& S,
                                 const IndexedOperad& T,
                                 std::shared_ptr<const FiniteOperad> src,
                                 std::shared_ptr<const FiniteOperad> tgt) {
  std::map<Color, Color> obj;
  for (size_t i = 0; i < S.colors.size(); ++i)
    obj[S.colors[i]] = T.colors[static_cast<size_t>(d.obj[i])];
  std::map<Morphism, Morphism> mor;
  for (size_t k = 0; k < S.morphisms.size(); ++k)
    mor[S.morphisms[k]] = T.morphisms[static_cast<size_t>(d.mor[k])];
  return OperadFunctor::make(std::move(src), std::move(tgt), std::move(obj), std::move(mor));
}

}  // namespace detail

inline constexpr long long kDefaultSearchBudget = 1000000;

// Enumerates functors P -> Q in canonical order, at most `limit` of them.
inline std::vector<OperadFunctor> enumerate_functors(const FiniteOperad& P,
                                                     const FiniteOperad& Q, size_t limit,
                                                     long long budget = kDefaultSearchBudget) {
  if (P.symmetric != Q.symmetric) return {};
  detail::IndexedOperad S(P), T(Q);
  auto src = std::make_shared<const FiniteOperad>(P);
  auto tgt = std::make_shared<const FiniteOperad>(Q);
  std::vector<OperadFunctor> out;
  detail::FunctorSearch search(S, T, &budget);
  search.for_each([&](const detail::FunctorData& d) {
    out.push_back(detail::materialize(d, S, T, src, tgt));
    return out.size() < limit;
  });
  return out;
}

// Decides whether every commutative square with the given left and right
// legs admits a lift, by exhaustive enumeration of squares and lifts.
inline bool has_rlp(const OperadFunctor& left, const OperadFunctor& right,
                    long long budget = kDefaultSearchBudget) {
  if (left.source().symmetric != right.source().symmetric)
    throw InvalidArgument("has_rlp: functors live over different symmetric flags");
  detail::IndexedOperad A(left.source()), B(left.target());
  detail::IndexedOperad X(right.source()), Y(right.target());
  detail::FunctorData leftD = detail::index_functor(left, A, B);
  detail::FunctorData rightD = detail::index_functor(right, X, Y);

  bool all_lift = true;
  detail::FunctorSearch tops(A, X, &budget);
  tops.for_each([&](const detail::FunctorData& top) {
    // bottom is constrained by commutativity along the left leg
    detail::FunctorSearch bottoms(B, Y, &budget);
    bool consistent = true;
    for (size_t i = 0; i < A.colors.size() && consistent; ++i)
      consistent = bottoms.force_object(leftD.obj[i],
                                        rightD.obj[static_cast<size_t>(top.obj[i])]);
    for (size_t k = 0; k < A.morphisms.size() && consistent; ++k)
      consistent = bottoms.force_morphism(leftD.mor[k],
                                          rightD.mor[static_cast<size_t>(top.mor[k])]);
    if (!consistent) return true;  // no commutative square over this top
    bottoms.for_each([&](const detail::FunctorData& bottom) {
      // search a lift H : B -> X with H o left = top and right o H = bottom
      detail::FunctorSearch lifts(B, X, &budget);
      bool feasible = true;
      for (size_t i = 0; i < A.colors.size() && feasible; ++i)
        feasible = lifts.force_object(leftD.obj[i], top.obj[i]);
      for (size_t k = 0; k < A.morphisms.size() && feasible; ++k)
        feasible = lifts.force_morphism(leftD.mor[k], top.mor[k]);
      bool found = false;
      if (feasible) {
        lifts.set_object_filter([&](int b, int x) {
          return rightD.obj[static_cast<size_t>(x)] == bottom.obj[static_cast<size_t>(b)];
        });
        lifts.set_morphism_filter([&](int b, int x) {
          return rightD.mor[static_cast<size_t>(x)] == bottom.mor[static_cast<size_t>(b)];
        });
        found = !lifts.for_each([&](const detail::FunctorData&) { return false; });
      }
      if (!found) {
        all_lift = false;
        return false;
      }
      return true;
    });
    return all_lift;
  });
  return all_lift;
}

}  // namespace opemodel
