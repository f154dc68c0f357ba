#pragma once

// The named small operads (the one-point operad, the initial operad, the
// free-living isomorphism, the walking n-ary arrow and its boundary and
// parallel-pair variants) and the generating families of (trivial)
// cofibrations, in symmetric and non-symmetric flavors.  Symmetric variants
// of the arrow operads carry the free symmetric-group orbit of their
// generating arrows.

#include <string>
#include <vector>

#include "opemodel/core.hpp"
#include "opemodel/functors.hpp"

namespace opemodel {

namespace detail {

// Adds a color together with its identity and the identity self-composite.
inline void add_color_with_identity(FiniteOperad& op, const Color& c) {
  op.colors.insert(c);
  op.homs[Profile{{c}, c}].insert("id");
  op.identities[c] = "id";
  Morphism id{"id", Profile{{c}, c}};
  op.composition[{id, {id}}] = id;
}

// Completes the composition table with the unit-law entries of `m`; for the
// arrow-style operads these are the only composable tuples involving m.
inline void add_unit_entries(FiniteOperad& op, const Morphism& m) {
  if (m.arity() > 0) {
    std::vector<Morphism> ids;
    for (const Color& c : m.profile.inputs) ids.push_back(op.identity_at(c));
    op.composition[{m, ids}] = m;
  }
  op.composition[{op.identity_at(m.output()), {m}}] = m;
}

}  // namespace detail

inline FiniteOperad star(bool symmetric) {
  FiniteOperad op;
  op.symmetric = symmetric;
  detail::add_color_with_identity(op, "star");
  return op;
}

inline FiniteOperad empty_operad(bool symmetric) {
  FiniteOperad op;
  op.symmetric = symmetric;
  return op;
}

// Two objects and, besides the identities, one isomorphism between them.
inline FiniteOperad walking_iso(bool symmetric) {
  FiniteOperad op;
  op.symmetric = symmetric;
  detail::add_color_with_identity(op, "a");
  detail::add_color_with_identity(op, "b");
  Morphism u{"u", Profile{{"a"}, "b"}};
  Morphism v{"u_inv", Profile{{"b"}, "a"}};
  op.homs[u.profile].insert(u.name);
  op.homs[v.profile].insert(v.name);
  detail::add_unit_entries(op, u);
  detail::add_unit_entries(op, v);
  op.composition[{v, {u}}] = op.identity_at("a");
  op.composition[{u, {v}}] = op.identity_at("b");
  return op;
}

namespace detail {

inline std::vector<Color> numbered_colors(int n) {
  std::vector<Color> out;
  for (int i = 0; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

// Colors 0..n with identities only.
inline FiniteOperad arrow_skeleton(int n, bool symmetric) {
  FiniteOperad op;
  op.symmetric = symmetric;
  for (const Color& c : numbered_colors(n)) add_color_with_identity(op, c);
  return op;
}

inline Profile generator_profile(int n, const Perm& pi) {
  Profile p;
  p.output = "0";
  for (int i = 0; i < n; ++i) p.inputs.push_back(std::to_string(pi[static_cast<size_t>(i)] + 1));
  return p;
}

// Adds the free symmetric orbit (or the single planar copy) of a generating
// arrow named `name` from (1,...,n) to 0.
inline void add_generating_arrow(FiniteOperad& op, int n, const std::string& name) {
  if (!op.symmetric || n < 2) {
    Morphism g{name, generator_profile(n, identity_perm(n))};
    op.homs[g.profile].insert(name);
    add_unit_entries(op, g);
    return;
  }
  for (const Perm& pi : all_permutations(n)) {
    Morphism g{name, generator_profile(n, pi)};
    op.homs[g.profile].insert(name);
    add_unit_entries(op, g);
    for (int i = 0; i + 1 < n; ++i) {
      Perm swapped = compose_perm(pi, adjacent_transposition(n, i));
      op.symmetry[{g, i}] = Morphism{name, generator_profile(n, swapped)};
    }
  }
}

}  // namespace detail

// The walking n-ary arrow: n+1 objects, one generating arrow (1,...,n) -> 0.
inline FiniteOperad ar(int n, bool symmetric) {
  FiniteOperad op = detail::arrow_skeleton(n, symmetric);
  detail::add_generating_arrow(op, n, "a");
  return op;
}

// The object-only sub-operad of ar(n).
inline FiniteOperad boundary_ar(int n, bool symmetric) {
  return detail::arrow_skeleton(n, symmetric);
}

// Two distinct generating arrows (1,...,n) -> 0.
inline FiniteOperad par(int n, bool symmetric) {
  FiniteOperad op = detail::arrow_skeleton(n, symmetric);
  detail::add_generating_arrow(op, n, "a");
  detail::add_generating_arrow(op, n, "b");
  return op;
}

namespace detail {

inline OperadFunctor inclusion_on_names(const FiniteOperad& sub, const FiniteOperad& super) {
  std::map<Color, Color> obj;
  for (const Color& c : sub.colors) obj[c] = c;
  std::map<Morphism, Morphism> mor;
  for (const auto& m : sub.all_morphisms()) mor[m] = m;
  return OperadFunctor::make(sub, super, std::move(obj), std::move(mor));
}

}  // namespace detail

// The single generating trivial cofibration: the one-point operad into the
// free-living isomorphism at the color a.
inline std::vector<OperadFunctor> generating_trivial_cofibrations(bool symmetric) {
  FiniteOperad s = star(symmetric);
  FiniteOperad h = walking_iso(symmetric);
  std::map<Color, Color> obj{{"star", "a"}};
  std::map<Morphism, Morphism> mor{
      {Morphism{"id", Profile{{"star"}, "star"}}, Morphism{"id", Profile{{"a"}, "a"}}}};
  return {OperadFunctor::make(std::move(s), std::move(h), std::move(obj), std::move(mor))};
}

// The finite truncation of the generating cofibrations up to the given
// arity: the empty operad into the point, and for every n <= max_arity the
// boundary inclusion and the parallel-pair collapse of the walking arrow.
inline std::vector<OperadFunctor> generating_cofibrations(int max_arity, bool symmetric) {
  if (max_arity < 0) throw InvalidArgument("generating_cofibrations: negative arity bound");
  std::vector<OperadFunctor> out;
  {
    FiniteOperad e = empty_operad(symmetric);
    FiniteOperad s = star(symmetric);
    out.push_back(OperadFunctor::make(std::move(e), std::move(s), {}, {}));
  }
  for (int n = 0; n <= max_arity; ++n) {
    FiniteOperad arn = ar(n, symmetric);
    out.push_back(detail::inclusion_on_names(boundary_ar(n, symmetric), arn));
    FiniteOperad parn = par(n, symmetric);
    std::map<Color, Color> obj;
    for (const Color& c : parn.colors) obj[c] = c;
    std::map<Morphism, Morphism> mor;
    for (const auto& m : parn.all_morphisms())
      mor[m] = m.name == "b" ? Morphism{"a", m.profile} : m;
    out.push_back(OperadFunctor::make(std::move(parn), std::move(arn), std::move(obj),
                                      std::move(mor)));
  }
  return out;
}

// Defined here so it can reuse star().
inline OperadFunctor slice_from_cat(const FiniteCategory& C, bool symmetric) {
  FiniteOperad src = j_lower(C, symmetric);
  FiniteOperad dst = star(symmetric);
  std::map<Color, Color> obj;
  for (const Color& c : src.colors) obj[c] = "star";
  std::map<Morphism, Morphism> mor;
  for (const auto& m : src.all_morphisms()) mor[m] = dst.identity_at("star");
  return OperadFunctor::make(std::move(src), std::move(dst), std::move(obj), std::move(mor));
}

}  // namespace opemodel
