#pragma once

// Finite colored operads (symmetric and non-symmetric) represented by total
// composition tables over finitely many nonempty hom-sets.  Values are
// immutable once validated; every operation here is a pure function.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opemodel/errors.hpp"
#include "opemodel/perm.hpp"

namespace opemodel {

using Color = std::string;

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

// Injective encoding of identifier tuples into the identifier alphabet:
// each component has '_' escaped to "_u", components are joined by "__".
inline std::string mangle_component(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '_')
      out += "_u";
    else
      out += c;
  }
  return out;
}

inline std::string mangle(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "__";
    out += mangle_component(parts[i]);
  }
  return out;
}

struct Profile {
  std::vector<Color> inputs;
  Color output;

  int arity() const { return static_cast<int>(inputs.size()); }
  auto operator<=>(const Profile&) const = default;
};

inline std::string to_string(const Profile& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.inputs.size(); ++i) {
    if (i) s += ",";
    s += p.inputs[i];
  }
  s += ";" + p.output + ")";
  return s;
}

// A morphism is identified by its name together with its exact profile;
// names are namespaced per hom-set, so distinct hom-sets may reuse them.
struct Morphism {
  std::string name;
  Profile profile;

  int arity() const { return profile.arity(); }
  const Color& output() const { return profile.output; }
  auto operator<=>(const Morphism&) const = default;
};

inline std::string to_string(const Morphism& m) {
  return m.name + to_string(m.profile);
}

struct ValidationIssue {
  std::string axiom;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

struct FiniteOperad {
  bool symmetric = false;
  std::set<Color> colors;
  // Profiles absent from the map denote empty hom-sets.
  std::map<Profile, std::set<std::string>> homs;
  std::map<Color, std::string> identities;
  // Total on composable tuples with outer arity >= 1; a nullary outer
  // composes with the empty family to itself and is not tabulated.
  std::map<std::pair<Morphism, std::vector<Morphism>>, Morphism> composition;
  // Generating symmetric-group action: (m, i) is the adjacent transposition
  // of inputs i and i+1 (0-based), present for every m of arity >= 2 when
  // the operad is symmetric.
  std::map<std::pair<Morphism, int>, Morphism> symmetry;

  friend auto operator<=>(const FiniteOperad&, const FiniteOperad&) = default;

  bool has_morphism(const Morphism& m) const {
    auto it = homs.find(m.profile);
    return it != homs.end() && it->second.count(m.name) > 0;
  }

  Morphism identity_at(const Color& c) const {
    auto it = identities.find(c);
    if (it == identities.end()) throw MalformedTable("no identity at color " + c);
    return Morphism{it->second, Profile{{c}, c}};
  }

  bool is_identity(const Morphism& m) const {
    if (m.arity() != 1 || m.profile.inputs[0] != m.output()) return false;
    auto it = identities.find(m.output());
    return it != identities.end() && it->second == m.name;
  }

  std::vector<Morphism> all_morphisms() const {
    std::vector<Morphism> out;
    for (const auto& [profile, names] : homs)
      for (const auto& name : names) out.push_back(Morphism{name, profile});
    return out;
  }

  std::vector<Morphism> hom(const Profile& p) const {
    std::vector<Morphism> out;
    auto it = homs.find(p);
    if (it == homs.end()) return out;
    for (const auto& name : it->second) out.push_back(Morphism{name, p});
    return out;
  }

  std::size_t morphism_count() const {
    std::size_t n = 0;
    for (const auto& [profile, names] : homs) n += names.size();
    return n;
  }
};

namespace detail {

inline std::string tuple_witness(const Morphism& outer, const std::vector<Morphism>& inners) {
  std::string s = "(" + outer.name + "; ";
  for (size_t i = 0; i < inners.size(); ++i) {
    if (i) s += ",";
    s += inners[i].name;
  }
  s += ")";
  return s;
}

// Calls fn(inners) for every composable inner family of `outer`, drawing
// slot i from by_output[input color].  fn returns false to abort.
template <typename Fn>
bool for_each_composable(const std::map<Color, std::vector<Morphism>>& by_output,
                         const Morphism& outer, Fn&& fn) {
  int n = outer.arity();
  if (n == 0) return true;
  std::vector<const std::vector<Morphism>*> slots;
  slots.reserve(static_cast<size_t>(n));
  for (const Color& c : outer.profile.inputs) {
    auto it = by_output.find(c);
    if (it == by_output.end() || it->second.empty()) return true;  // no tuples
    slots.push_back(&it->second);
  }
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  std::vector<Morphism> inners;
  inners.reserve(static_cast<size_t>(n));
  while (true) {
    inners.clear();
    for (int i = 0; i < n; ++i) inners.push_back((*slots[static_cast<size_t>(i)])[idx[static_cast<size_t>(i)]]);
    if (!fn(static_cast<const std::vector<Morphism>&>(inners))) return false;
    int i = n - 1;
    while (i >= 0) {
      if (++idx[static_cast<size_t>(i)] < slots[static_cast<size_t>(i)]->size()) break;
      idx[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return true;
  }
}

inline std::map<Color, std::vector<Morphism>> morphisms_by_output(const FiniteOperad& op) {
  std::map<Color, std::vector<Morphism>> by_output;
  for (const auto& m : op.all_morphisms()) by_output[m.output()].push_back(m);
  return by_output;
}

}  // namespace detail

// Profile of the composite of `outer` with the family `inners` (inputs are
// the concatenated inner inputs).  Throws NotComposable naming the first
// mismatched slot.
inline Profile composite_profile(const Morphism& outer, const std::vector<Morphism>& inners) {
  if (static_cast<int>(inners.size()) != outer.arity())
    throw NotComposable("arity " + std::to_string(outer.arity()) + " outer given " +
                        std::to_string(inners.size()) + " inner morphisms");
  Profile p;
  p.output = outer.output();
  for (size_t i = 0; i < inners.size(); ++i) {
    if (inners[i].output() != outer.profile.inputs[i])
      throw NotComposable("position " + std::to_string(i + 1) + ": inner output " +
                          inners[i].output() + " does not match input " +
                          outer.profile.inputs[i]);
    for (const Color& c : inners[i].profile.inputs) p.inputs.push_back(c);
  }
  return p;
}

// Table lookup for the total composition; total on composable tuples of a
// validated operad.
inline Morphism compose(const FiniteOperad& op, const Morphism& outer,
                        const std::vector<Morphism>& inners) {
  composite_profile(outer, inners);  // throws NotComposable on mismatch
  if (outer.arity() == 0) return outer;
  auto it = op.composition.find({outer, inners});
  if (it == op.composition.end())
    throw MalformedTable("missing composition entry " + detail::tuple_witness(outer, inners));
  return it->second;
}

// gamma(outer; id,...,phi,...,id) with phi substituted in slot `i` (0-based).
inline Morphism compose_at(const FiniteOperad& op, const Morphism& outer, int i,
                           const Morphism& inner) {
  std::vector<Morphism> inners;
  inners.reserve(static_cast<size_t>(outer.arity()));
  for (int k = 0; k < outer.arity(); ++k) {
    if (k == i)
      inners.push_back(inner);
    else
      inners.push_back(op.identity_at(outer.profile.inputs[static_cast<size_t>(k)]));
  }
  return compose(op, outer, inners);
}

inline Morphism compose_unary(const FiniteOperad& op, const Morphism& g, const Morphism& f) {
  return compose(op, g, {f});
}

// Action of an arbitrary permutation, computed by composing the stored
// adjacent-transposition actions along a decomposition of `sigma`; the
// result is decomposition-independent on a validated operad.
inline Morphism apply_symmetry(const FiniteOperad& op, const Morphism& m, const Perm& sigma) {
  if (!op.symmetric) throw NotSymmetric("apply_symmetry on a non-symmetric operad");
  if (static_cast<int>(sigma.size()) != m.arity() || !is_permutation(sigma))
    throw InvalidArgument("apply_symmetry: not a permutation of the arity of " + m.name);
  Morphism cur = m;
  for (int j : adjacent_word(sigma)) {
    auto it = op.symmetry.find({cur, j});
    if (it == op.symmetry.end())
      throw MalformedTable("missing symmetry entry (" + cur.name + ", " +
                           std::to_string(j + 1) + ")");
    cur = it->second;
  }
  return cur;
}

// All inverse pairs (m, m^{-1}) of unary morphisms, identities included.
inline std::vector<std::pair<Morphism, Morphism>> isomorphisms(const FiniteOperad& op) {
  std::vector<std::pair<Morphism, Morphism>> out;
  std::vector<Morphism> unary;
  for (const auto& m : op.all_morphisms())
    if (m.arity() == 1) unary.push_back(m);
  for (const auto& m : unary) {
    const Color& a = m.profile.inputs[0];
    const Color& b = m.output();
    for (const auto& v : unary) {
      if (v.profile.inputs[0] != b || v.output() != a) continue;
      if (compose_unary(op, v, m) == op.identity_at(a) &&
          compose_unary(op, m, v) == op.identity_at(b)) {
        out.emplace_back(m, v);
        break;  // inverses are unique in a validated operad
      }
    }
  }
  return out;
}

// Isomorphisms with source color `c` (identity included), in canonical order.
inline std::vector<std::pair<Morphism, Morphism>> isomorphisms_from(const FiniteOperad& op,
                                                                    const Color& c) {
  std::vector<std::pair<Morphism, Morphism>> out;
  for (const auto& pr : isomorphisms(op))
    if (pr.first.profile.inputs[0] == c) out.push_back(pr);
  return out;
}

// Partition of the color set into connected components under isomorphism.
inline std::vector<std::vector<Color>> iso_classes(const FiniteOperad& op) {
  std::map<Color, Color> parent;
  for (const Color& c : op.colors) parent[c] = c;
  auto find = [&](Color c) {
    while (parent[c] != c) c = parent[c];
    return c;
  };
  for (const auto& [m, inv] : isomorphisms(op)) {
    Color a = find(m.profile.inputs[0]);
    Color b = find(m.output());
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<Color, std::vector<Color>> classes;
  for (const Color& c : op.colors) classes[find(c)].push_back(c);
  std::vector<std::vector<Color>> out;
  for (auto& [root, members] : classes) out.push_back(members);
  return out;
}

// Axiom validation.  Reports every violated axiom with a witness tuple; the
// stages build on each other, so later stages are skipped once an earlier
// one fails (their lookups would only produce noise).
inline ValidationReport validate(const FiniteOperad& op) {
  ValidationReport rep;
  auto issue = [&rep](const std::string& axiom, const std::string& witness) {
    rep.issues.push_back({axiom, witness});
  };

  // Stage 1: names, profiles, identities.
  for (const Color& c : op.colors)
    if (!is_identifier(c)) issue("color-name", c);
  for (const auto& [profile, names] : op.homs) {
    if (op.colors.count(profile.output) == 0) issue("profile-color", to_string(profile));
    for (const Color& c : profile.inputs)
      if (op.colors.count(c) == 0) issue("profile-color", to_string(profile));
    for (const std::string& n : names)
      if (!is_identifier(n)) issue("morphism-name", n + to_string(profile));
    if (names.empty()) issue("empty-hom-entry", to_string(profile));
  }
  for (const Color& c : op.colors) {
    auto it = op.identities.find(c);
    if (it == op.identities.end()) {
      issue("identity-missing", c);
      continue;
    }
    Profile idp{{c}, c};
    auto h = op.homs.find(idp);
    if (h == op.homs.end() || h->second.count(it->second) == 0)
      issue("identity-profile", c);
  }
  for (const auto& [c, name] : op.identities)
    if (op.colors.count(c) == 0) issue("identity-color", c);
  if (!op.symmetric && !op.symmetry.empty()) issue("symmetric-flag", "symmetry table on non-symmetric operad");
  if (!rep.ok()) return rep;

  auto by_output = detail::morphisms_by_output(op);

  // Stage 2: the composition table is exactly the set of composable tuples
  // and lands in the declared hom-sets.
  for (const auto& [key, result] : op.composition) {
    const auto& [outer, inners] = key;
    if (!op.has_morphism(outer)) {
      issue("malformed-table", "unknown outer " + to_string(outer));
      continue;
    }
    bool known = true;
    for (const auto& m : inners)
      if (!op.has_morphism(m)) {
        issue("malformed-table", "unknown inner " + to_string(m));
        known = false;
      }
    if (!known) continue;
    if (outer.arity() == 0) {
      issue("malformed-table", "tabulated nullary composition " + detail::tuple_witness(outer, inners));
      continue;
    }
    try {
      Profile p = composite_profile(outer, inners);
      if (!op.has_morphism(result) || result.profile != p)
        issue("closure", detail::tuple_witness(outer, inners) + " -> " + to_string(result));
    } catch (const NotComposable&) {
      issue("malformed-table", "non-composable key " + detail::tuple_witness(outer, inners));
    }
  }
  if (!rep.ok()) return rep;

  for (const auto& outer : op.all_morphisms()) {
    detail::for_each_composable(by_output, outer, [&](const std::vector<Morphism>& inners) {
      if (op.composition.find({outer, inners}) == op.composition.end())
        issue("partial-composition", detail::tuple_witness(outer, inners));
      return true;
    });
  }
  if (!rep.ok()) return rep;

  // Stage 3: unit laws.
  for (const auto& m : op.all_morphisms()) {
    if (m.arity() > 0) {
      std::vector<Morphism> ids;
      for (const Color& c : m.profile.inputs) ids.push_back(op.identity_at(c));
      if (compose(op, m, ids) != m) issue("unit-right", to_string(m));
    }
    if (compose_unary(op, op.identity_at(m.output()), m) != m) issue("unit-left", to_string(m));
  }
  if (!rep.ok()) return rep;

  // Stage 4: associativity.  Together with the unit laws, the one-slot
  // decomposition of the total table plus the sequential and parallel
  // one-slot axioms imply associativity of every composable nesting; the
  // full nested form is checked exhaustively only in the test suites, where
  // the enumeration stays desk-sized.
  for (const auto& outer : op.all_morphisms()) {
    detail::for_each_composable(by_output, outer, [&](const std::vector<Morphism>& inners) {
      Morphism folded = outer;
      for (int i = outer.arity() - 1; i >= 0; --i)
        folded = compose_at(op, folded, i, inners[static_cast<size_t>(i)]);
      if (folded != compose(op, outer, inners))
        issue("assoc-decomposition", detail::tuple_witness(outer, inners));
      return true;
    });
  }
  for (const auto& psi : op.all_morphisms()) {
    int n = psi.arity();
    for (int i = 0; i < n; ++i) {
      const Color& ci = psi.profile.inputs[static_cast<size_t>(i)];
      auto phis = by_output.find(ci);
      if (phis == by_output.end()) continue;
      for (const auto& phi : phis->second) {
        Morphism left = compose_at(op, psi, i, phi);
        // sequential: substitute into phi's slot j.
        for (int j = 0; j < phi.arity(); ++j) {
          const Color& cj = phi.profile.inputs[static_cast<size_t>(j)];
          auto chis = by_output.find(cj);
          if (chis == by_output.end()) continue;
          for (const auto& chi : chis->second) {
            Morphism lhs = compose_at(op, left, i + j, chi);
            Morphism rhs = compose_at(op, psi, i, compose_at(op, phi, j, chi));
            if (lhs != rhs)
              issue("assoc-sequential",
                    "(" + psi.name + " o_" + std::to_string(i + 1) + " " + phi.name + ") o " + chi.name);
          }
        }
        // parallel: substitute into a later slot of psi.
        for (int j = i + 1; j < n; ++j) {
          const Color& cj = psi.profile.inputs[static_cast<size_t>(j)];
          auto chis = by_output.find(cj);
          if (chis == by_output.end()) continue;
          for (const auto& chi : chis->second) {
            Morphism lhs = compose_at(op, left, j + phi.arity() - 1, chi);
            Morphism rhs = compose_at(op, compose_at(op, psi, j, chi), i, phi);
            if (lhs != rhs)
              issue("assoc-parallel",
                    psi.name + " o_" + std::to_string(i + 1) + " " + phi.name + " / o_" +
                        std::to_string(j + 1) + " " + chi.name);
          }
        }
      }
    }
  }
  if (!rep.ok()) return rep;

  if (!op.symmetric) return rep;

  // Stage 5: symmetric-group action generated by adjacent transpositions.
  for (const auto& [key, result] : op.symmetry) {
    const auto& [m, i] = key;
    if (!op.has_morphism(m) || !op.has_morphism(result)) {
      issue("symmetry-reference", "(" + to_string(m) + ", " + std::to_string(i + 1) + ")");
      continue;
    }
    if (i < 0 || i >= m.arity() - 1) {
      issue("symmetry-reference", "(" + m.name + ", " + std::to_string(i + 1) + ") out of range");
      continue;
    }
    Profile expected = m.profile;
    std::swap(expected.inputs[static_cast<size_t>(i)], expected.inputs[static_cast<size_t>(i) + 1]);
    if (result.profile != expected)
      issue("symmetry-profile", "(" + m.name + ", " + std::to_string(i + 1) + ")");
  }
  for (const auto& m : op.all_morphisms())
    for (int i = 0; i + 1 < m.arity(); ++i)
      if (op.symmetry.find({m, i}) == op.symmetry.end())
        issue("symmetry-partial", "(" + to_string(m) + ", " + std::to_string(i + 1) + ")");
  if (!rep.ok()) return rep;

  auto act = [&op](const Morphism& m, int i) { return op.symmetry.at({m, i}); };
  for (const auto& m : op.all_morphisms()) {
    int n = m.arity();
    for (int i = 0; i + 1 < n; ++i) {
      if (act(act(m, i), i) != m) issue("symmetry-involution", "(" + to_string(m) + ", " + std::to_string(i + 1) + ")");
      for (int j = i + 2; j + 1 < n; ++j)
        if (act(act(m, i), j) != act(act(m, j), i))
          issue("symmetry-commute", "(" + to_string(m) + ", " + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      if (i + 2 < n) {
        Morphism lhs = act(act(act(m, i), i + 1), i);
        Morphism rhs = act(act(act(m, i + 1), i), i + 1);
        if (lhs != rhs) issue("symmetry-braid", "(" + to_string(m) + ", " + std::to_string(i + 1) + ")");
      }
    }
  }
  if (!rep.ok()) return rep;

  // Stage 6: equivariance of composition.  Acting on the outer morphism by
  // an adjacent transposition permutes the inner blocks; acting inside an
  // inner morphism acts within its block of the composite.
  for (const auto& outer : op.all_morphisms()) {
    int n = outer.arity();
    detail::for_each_composable(by_output, outer, [&](const std::vector<Morphism>& inners) {
      Morphism composite = compose(op, outer, inners);
      std::vector<int> sizes;
      sizes.reserve(inners.size());
      for (const auto& phi : inners) sizes.push_back(phi.arity());
      for (int t = 0; t + 1 < n; ++t) {
        Morphism outer_t = op.symmetry.at({outer, t});
        std::vector<Morphism> swapped = inners;
        std::swap(swapped[static_cast<size_t>(t)], swapped[static_cast<size_t>(t) + 1]);
        Morphism lhs = compose(op, outer_t, swapped);
        Morphism rhs = apply_symmetry(op, composite, block_perm(adjacent_transposition(n, t), sizes));
        if (lhs != rhs)
          issue("equivariance-outer", detail::tuple_witness(outer, inners) + " at " + std::to_string(t + 1));
      }
      int offset = 0;
      for (size_t i = 0; i < inners.size(); ++i) {
        for (int r = 0; r + 1 < inners[i].arity(); ++r) {
          std::vector<Morphism> acted = inners;
          acted[i] = op.symmetry.at({inners[i], r});
          Morphism lhs = compose(op, outer, acted);
          Morphism rhs = op.symmetry.at({composite, offset + r});
          if (lhs != rhs)
            issue("equivariance-inner", detail::tuple_witness(outer, inners) + " slot " + std::to_string(i + 1));
        }
        offset += inners[i].arity();
      }
      return true;
    });
  }
  return rep;
}

inline void require_valid(const FiniteOperad& op, const std::string& what = "operad") {
  ValidationReport rep = validate(op);
  if (!rep.ok())
    throw InvalidOperad(what + ": " + rep.issues.front().axiom + " " + rep.issues.front().witness);
}

}  // namespace opemodel
