#pragma once

// The two explicit factorizations of an operad functor: through the operad
// of isomorphism triples (trivial cofibration then fibration) and through
// the relabelled coproduct of the object sets (cofibration then trivial
// fibration).  Middle operads use canonical tuple and tagged-sum color
// names, so factoring equal inputs yields bit-identical results.

#include <map>
#include <string>
#include <vector>

#include "opemodel/core.hpp"
#include "opemodel/functors.hpp"

namespace opemodel {

struct Factorization {
  OperadFunctor first;
  OperadFunctor second;
  FiniteOperad middle;
};

namespace detail {

// Iterates over all choices drawing element i from slots[i].
template <typename T, typename Fn>
void for_each_assignment(const std::vector<const std::vector<T>*>& slots, Fn&& fn) {
  for (const auto* s : slots)
    if (s->empty()) return;
  std::vector<size_t> idx(slots.size(), 0);
  while (true) {
    std::vector<T> pick;
    pick.reserve(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) pick.push_back((*slots[i])[idx[i]]);
    fn(pick);
    size_t i = slots.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++idx[i] < slots[i]->size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
}

}  // namespace detail

// Factor F : P -> Q as a trivial cofibration G : P -> P' followed by a
// fibration H : P' -> Q, where the objects of P' are the triples (p, phi, q)
// with phi : Fp -> q an isomorphism of Q.
inline Factorization factor_trivcof_fib(const OperadFunctor& F) {
  const FiniteOperad& P = F.source();
  const FiniteOperad& Q = F.target();

  struct Triple {
    Color p;
    Morphism phi;
    Morphism phi_inv;
    Color q;
    Color name;
  };
  std::vector<Triple> triples;
  std::map<Color, std::vector<size_t>> triples_of;  // P color -> indices
  for (const Color& p : P.colors) {
    for (const auto& [phi, phi_inv] : isomorphisms(Q)) {
      if (phi.profile.inputs[0] != F.map(p)) continue;
      Color q = phi.output();
      Triple t{p, phi, phi_inv, q, mangle({p, phi.name, q})};
      triples_of[p].push_back(triples.size());
      triples.push_back(std::move(t));
    }
  }

  FiniteOperad middle;
  middle.symmetric = P.symmetric;
  for (const auto& t : triples) middle.colors.insert(t.name);
  for (const auto& t : triples) middle.identities[t.name] = P.identities.at(t.p);

  auto slot_lists = [&](const Profile& pi) {
    std::vector<const std::vector<size_t>*> slots;
    slots.push_back(&triples_of.at(pi.output));
    for (const Color& c : pi.inputs) slots.push_back(&triples_of.at(c));
    return slots;
  };
  auto lift_profile = [&](const std::vector<size_t>& pick) {
    Profile out;
    out.output = triples[pick[0]].name;
    for (size_t i = 1; i < pick.size(); ++i) out.inputs.push_back(triples[pick[i]].name);
    return out;
  };

  for (const auto& [pi, names] : P.homs) {
    detail::for_each_assignment<size_t>(slot_lists(pi), [&](const std::vector<size_t>& pick) {
      middle.homs[lift_profile(pick)] = names;
    });
  }

  // Composition: one triple choice per syntactic position of the nesting.
  for (const auto& [key, result] : P.composition) {
    const auto& [outer, inners] = key;
    std::vector<const std::vector<size_t>*> slots;
    slots.push_back(&triples_of.at(outer.output()));        // shared output
    for (const auto& m : inners) slots.push_back(&triples_of.at(m.output()));  // joints
    for (const auto& m : inners)
      for (const Color& c : m.profile.inputs) slots.push_back(&triples_of.at(c));
    detail::for_each_assignment<size_t>(slots, [&](const std::vector<size_t>& pick) {
      size_t n = inners.size();
      Profile outer_pi;
      outer_pi.output = triples[pick[0]].name;
      for (size_t i = 0; i < n; ++i) outer_pi.inputs.push_back(triples[pick[1 + i]].name);
      std::vector<Morphism> lifted_inners;
      Profile comp_pi;
      comp_pi.output = outer_pi.output;
      size_t leaf = 1 + n;
      for (size_t i = 0; i < n; ++i) {
        Profile inner_pi;
        inner_pi.output = triples[pick[1 + i]].name;
        for (size_t j = 0; j < inners[i].profile.inputs.size(); ++j) {
          inner_pi.inputs.push_back(triples[pick[leaf]].name);
          comp_pi.inputs.push_back(triples[pick[leaf]].name);
          ++leaf;
        }
        lifted_inners.push_back(Morphism{inners[i].name, inner_pi});
      }
      middle.composition[{Morphism{outer.name, outer_pi}, lifted_inners}] =
          Morphism{result.name, comp_pi};
    });
  }

  if (P.symmetric) {
    for (const auto& [key, result] : P.symmetry) {
      const auto& [m, i] = key;
      detail::for_each_assignment<size_t>(slot_lists(m.profile),
                                          [&](const std::vector<size_t>& pick) {
        Profile pi = lift_profile(pick);
        Profile swapped = pi;
        std::swap(swapped.inputs[static_cast<size_t>(i)],
                  swapped.inputs[static_cast<size_t>(i) + 1]);
        middle.symmetry[{Morphism{m.name, pi}, i}] = Morphism{result.name, swapped};
      });
    }
  }

  auto middle_ptr = std::make_shared<const FiniteOperad>(std::move(middle));

  // G : P -> P', p |-> (p, id_{Fp}, Fp).
  std::map<Color, Color> g_obj;
  for (const Color& p : P.colors)
    g_obj[p] = mangle({p, Q.identities.at(F.map(p)), F.map(p)});
  std::map<Morphism, Morphism> g_mor;
  for (const auto& m : P.all_morphisms()) {
    Profile pi;
    pi.output = g_obj.at(m.output());
    for (const Color& c : m.profile.inputs) pi.inputs.push_back(g_obj.at(c));
    g_mor[m] = Morphism{m.name, pi};
  }
  OperadFunctor G = OperadFunctor::make(F.source_ptr(), middle_ptr, std::move(g_obj),
                                        std::move(g_mor));

  // H : P' -> Q, (p, phi, q) |-> q, psi |-> phi . F(psi) . (phi_i^{-1}).
  std::map<Color, Triple> triple_by_name;
  for (const auto& t : triples) triple_by_name[t.name] = t;
  std::map<Color, Color> h_obj;
  for (const auto& t : triples) h_obj[t.name] = t.q;
  std::map<Morphism, Morphism> h_mor;
  for (const auto& m : middle_ptr->all_morphisms()) {
    const Triple& out_t = triple_by_name.at(m.output());
    Profile under;
    under.output = out_t.p;
    std::vector<Morphism> inv_comps;
    for (const Color& c : m.profile.inputs) {
      const Triple& t = triple_by_name.at(c);
      under.inputs.push_back(t.p);
      inv_comps.push_back(t.phi_inv);
    }
    Morphism fpsi = F.map(Morphism{m.name, under});
    Morphism mid = inv_comps.empty() ? fpsi : compose(Q, fpsi, inv_comps);
    h_mor[m] = compose_unary(Q, out_t.phi, mid);
  }
  OperadFunctor H = OperadFunctor::make(middle_ptr, F.target_ptr(), std::move(h_obj),
                                        std::move(h_mor));

  if (!is_trivial_cofibration(G))
    throw InvalidFunctor("factor_trivcof_fib: first factor is not a trivial cofibration");
  if (!is_fibration(H)) throw InvalidFunctor("factor_trivcof_fib: second factor is not a fibration");
  if (!(compose_functors(H, G) == F))
    throw InvalidFunctor("factor_trivcof_fib: factors do not compose to the input");
  return Factorization{std::move(G), std::move(H), *middle_ptr};
}

// Factor F : P -> Q as a cofibration G : P -> Q' followed by a trivial
// fibration H : Q' -> Q, where ob(Q') is the tagged sum of the object sets
// and hom-sets are pulled back along the label map.
inline Factorization factor_cof_trivfib(const OperadFunctor& F) {
  const FiniteOperad& P = F.source();
  const FiniteOperad& Q = F.target();

  std::map<Color, Color> label;                 // tagged color -> Q color
  std::map<Color, std::vector<Color>> fibers;   // Q color -> tagged colors
  for (const Color& x : P.colors) {
    Color t = mangle({"p", x});
    label[t] = F.map(x);
    fibers[F.map(x)].push_back(t);
  }
  for (const Color& y : Q.colors) {
    Color t = mangle({"q", y});
    label[t] = y;
    fibers[y].push_back(t);
  }
  for (auto& [y, ts] : fibers) std::sort(ts.begin(), ts.end());

  FiniteOperad middle;
  middle.symmetric = P.symmetric;
  for (const auto& [t, y] : label) middle.colors.insert(t);
  for (const auto& [t, y] : label) middle.identities[t] = Q.identities.at(y);

  auto fiber_slots = [&](const Profile& tau) {
    std::vector<const std::vector<Color>*> slots;
    slots.push_back(&fibers.at(tau.output));
    for (const Color& c : tau.inputs) slots.push_back(&fibers.at(c));
    return slots;
  };
  auto lift_profile = [&](const std::vector<Color>& pick) {
    Profile out;
    out.output = pick[0];
    for (size_t i = 1; i < pick.size(); ++i) out.inputs.push_back(pick[i]);
    return out;
  };

  for (const auto& [tau, names] : Q.homs) {
    detail::for_each_assignment<Color>(fiber_slots(tau), [&](const std::vector<Color>& pick) {
      middle.homs[lift_profile(pick)] = names;
    });
  }

  for (const auto& [key, result] : Q.composition) {
    const auto& [outer, inners] = key;
    std::vector<const std::vector<Color>*> slots;
    slots.push_back(&fibers.at(outer.output()));
    for (const auto& m : inners) slots.push_back(&fibers.at(m.output()));
    for (const auto& m : inners)
      for (const Color& c : m.profile.inputs) slots.push_back(&fibers.at(c));
    detail::for_each_assignment<Color>(slots, [&](const std::vector<Color>& pick) {
      size_t n = inners.size();
      Profile outer_pi;
      outer_pi.output = pick[0];
      for (size_t i = 0; i < n; ++i) outer_pi.inputs.push_back(pick[1 + i]);
      std::vector<Morphism> lifted_inners;
      Profile comp_pi;
      comp_pi.output = pick[0];
      size_t leaf = 1 + n;
      for (size_t i = 0; i < n; ++i) {
        Profile inner_pi;
        inner_pi.output = pick[1 + i];
        for (size_t j = 0; j < inners[i].profile.inputs.size(); ++j) {
          inner_pi.inputs.push_back(pick[leaf]);
          comp_pi.inputs.push_back(pick[leaf]);
          ++leaf;
        }
        lifted_inners.push_back(Morphism{inners[i].name, inner_pi});
      }
      middle.composition[{Morphism{outer.name, outer_pi}, lifted_inners}] =
          Morphism{result.name, comp_pi};
    });
  }

  if (Q.symmetric) {
    for (const auto& [key, result] : Q.symmetry) {
      const auto& [m, i] = key;
      detail::for_each_assignment<Color>(fiber_slots(m.profile),
                                         [&](const std::vector<Color>& pick) {
        Profile pi = lift_profile(pick);
        Profile swapped = pi;
        std::swap(swapped.inputs[static_cast<size_t>(i)],
                  swapped.inputs[static_cast<size_t>(i) + 1]);
        middle.symmetry[{Morphism{m.name, pi}, i}] = Morphism{result.name, swapped};
      });
    }
  }

  auto middle_ptr = std::make_shared<const FiniteOperad>(std::move(middle));

  std::map<Color, Color> g_obj;
  for (const Color& x : P.colors) g_obj[x] = mangle({"p", x});
  std::map<Morphism, Morphism> g_mor;
  for (const auto& m : P.all_morphisms()) {
    Profile pi;
    pi.output = g_obj.at(m.output());
    for (const Color& c : m.profile.inputs) pi.inputs.push_back(g_obj.at(c));
    g_mor[m] = Morphism{F.map(m).name, pi};
  }
  OperadFunctor G = OperadFunctor::make(F.source_ptr(), middle_ptr, std::move(g_obj),
                                        std::move(g_mor));

  std::map<Color, Color> h_obj = label;
  std::map<Morphism, Morphism> h_mor;
  for (const auto& m : middle_ptr->all_morphisms()) {
    Profile pi;
    pi.output = label.at(m.output());
    for (const Color& c : m.profile.inputs) pi.inputs.push_back(label.at(c));
    h_mor[m] = Morphism{m.name, pi};
  }
  OperadFunctor H = OperadFunctor::make(middle_ptr, F.target_ptr(), std::move(h_obj),
                                        std::move(h_mor));

  if (!is_cofibration(G)) throw InvalidFunctor("factor_cof_trivfib: first factor is not a cofibration");
  if (!is_trivial_fibration(H))
    throw InvalidFunctor("factor_cof_trivfib: second factor is not a trivial fibration");
  if (!(compose_functors(H, G) == F))
    throw InvalidFunctor("factor_cof_trivfib: factors do not compose to the input");
  return Factorization{std::move(G), std::move(H), *middle_ptr};
}

}  // namespace opemodel
