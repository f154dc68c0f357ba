#pragma once

// Presentations of operads by colored generators and tree-term relations:
// the free operad carrier, the Boardman-Vogt tensor presentation, bounded
// equality decision by bidirectional rewriting, realization of unary
// presentations as categories, presentation-level pushouts and the
// object-level pushout-product corner check.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "opemodel/core.hpp"
#include "opemodel/functors.hpp"
#include "opemodel/perm.hpp"
#include "opemodel/tree.hpp"

namespace opemodel {

struct ColoredCollection {
  std::set<Color> colors;
  std::set<Morphism> generators;

  friend auto operator<=>(const ColoredCollection&, const ColoredCollection&) = default;
};

// Checks colors along every edge and that every generator and leaf color is
// declared.
inline void require_term(const ColoredCollection& col, const TreeTerm& t) {
  if (!is_permutation(t.root_perm) ||
      t.root_perm.size() != static_cast<size_t>(t.planar.leaf_count()))
    throw ProfileMismatch("term root permutation does not match the leaf count");
  auto walk = [&col](auto&& self, const PlanarTerm& p) -> void {
    if (p.is_leaf()) {
      if (col.colors.count(p.leaf_color) == 0)
        throw ColorMismatch("undeclared leaf color " + p.leaf_color);
      return;
    }
    if (col.generators.count(*p.gen) == 0)
      throw ColorMismatch("undeclared generator " + to_string(*p.gen));
    if (p.children.size() != static_cast<size_t>(p.gen->arity()))
      throw ColorMismatch("arity mismatch at " + p.gen->name);
    for (size_t i = 0; i < p.children.size(); ++i) {
      if (p.children[i].root_color() != p.gen->profile.inputs[i])
        throw ColorMismatch("edge color mismatch under " + p.gen->name);
      self(self, p.children[i]);
    }
  };
  walk(walk, t.planar);
}

struct Presentation {
  ColoredCollection collection;
  std::vector<std::pair<TreeTerm, TreeTerm>> relations;

  // Relation instances are checked at emission: both sides must be valid
  // terms of the same profile.  Trivial and duplicate instances are dropped.
  void add_relation(const TreeTerm& lhs, const TreeTerm& rhs) {
    require_term(collection, lhs);
    require_term(collection, rhs);
    if (lhs.profile() != rhs.profile())
      throw ProfileMismatch("relation sides have profiles " + to_string(lhs.profile()) +
                            " and " + to_string(rhs.profile()));
    if (lhs == rhs) return;
    for (const auto& [l, r] : relations)
      if ((l == lhs && r == rhs) || (l == rhs && r == lhs)) return;
    relations.emplace_back(lhs, rhs);
  }

  friend auto operator<=>(const Presentation&, const Presentation&) = default;
};

// ---------------------------------------------------------------------------
// The interchange permutation.

// The permutation equating the domains of the two sides of the interchange
// relation: it sends the block-reading position (i, j) to (j, i).
struct InterchangePermutation {
  int m = 0;
  int n = 0;
  Perm sigma;

  static InterchangePermutation make(int m, int n) {
    if (m < 0 || n < 0) throw InvalidArgument("InterchangePermutation: negative arity");
    return InterchangePermutation{m, n, interchange_perm(m, n)};
  }
};

// ---------------------------------------------------------------------------
// The Boardman-Vogt tensor presentation.

inline Color bv_color(const Color& p, const Color& q) { return mangle({p, q}); }

inline Morphism bv_left_generator(const Morphism& psi, const Color& q) {
  Profile prof;
  prof.output = bv_color(psi.output(), q);
  for (const Color& p : psi.profile.inputs) prof.inputs.push_back(bv_color(p, q));
  return Morphism{mangle({"l", psi.name, q}), std::move(prof)};
}

inline Morphism bv_right_generator(const Color& p, const Morphism& phi) {
  Profile prof;
  prof.output = bv_color(p, phi.output());
  for (const Color& q : phi.profile.inputs) prof.inputs.push_back(bv_color(p, q));
  return Morphism{mangle({"r", p, phi.name}), std::move(prof)};
}

namespace detail {

inline TreeTerm generator_term(const Morphism& gen) {
  std::vector<TreeTerm> leaves;
  for (const Color& c : gen.profile.inputs) leaves.push_back(TreeTerm::leaf(c));
  return TreeTerm::node(gen, leaves);
}

}  // namespace detail

// The presentation of the Boardman-Vogt tensor product of two symmetric
// operads: generators psi (x) q and p (x) phi over the product color set,
// the two families of composition and equivariance relations, the
// interchange relations, and the unit identifications id_p (x) q = id and
// p (x) id_q = id.
inline Presentation bv_presentation(const FiniteOperad& P, const FiniteOperad& Q) {
  if (!P.symmetric || !Q.symmetric)
    throw NotSymmetric("the tensor presentation exists only for symmetric operads");
  Presentation pres;
  for (const Color& p : P.colors)
    for (const Color& q : Q.colors) pres.collection.colors.insert(bv_color(p, q));
  for (const auto& psi : P.all_morphisms())
    for (const Color& q : Q.colors) pres.collection.generators.insert(bv_left_generator(psi, q));
  for (const Color& p : P.colors)
    for (const auto& phi : Q.all_morphisms())
      pres.collection.generators.insert(bv_right_generator(p, phi));

  auto left_term = [&](const Morphism& psi, const Color& q) {
    return detail::generator_term(bv_left_generator(psi, q));
  };
  auto right_term = [&](const Color& p, const Morphism& phi) {
    return detail::generator_term(bv_right_generator(p, phi));
  };

  // unit identifications
  for (const Color& p : P.colors)
    for (const Color& q : Q.colors) {
      pres.add_relation(left_term(P.identity_at(p), q), TreeTerm::leaf(bv_color(p, q)));
      pres.add_relation(right_term(p, Q.identity_at(q)), TreeTerm::leaf(bv_color(p, q)));
    }

  // type 1 and type 3: compositions in either factor
  for (const auto& [key, result] : P.composition) {
    const auto& [psi, psis] = key;
    for (const Color& q : Q.colors) {
      std::vector<TreeTerm> inners;
      for (const auto& pi : psis) inners.push_back(left_term(pi, q));
      pres.add_relation(TreeTerm::node(bv_left_generator(psi, q), inners), left_term(result, q));
    }
  }
  for (const auto& [key, result] : Q.composition) {
    const auto& [phi, phis] = key;
    for (const Color& p : P.colors) {
      std::vector<TreeTerm> inners;
      for (const auto& fi : phis) inners.push_back(right_term(p, fi));
      pres.add_relation(TreeTerm::node(bv_right_generator(p, phi), inners), right_term(p, result));
    }
  }

  // type 2 and type 4: equivariance in either factor
  for (const auto& psi : P.all_morphisms()) {
    if (psi.arity() < 2) continue;
    for (const Perm& sigma : all_permutations(psi.arity()))
      for (const Color& q : Q.colors)
        pres.add_relation(TreeTerm::permuted(sigma, left_term(psi, q)),
                          left_term(apply_symmetry(P, psi, sigma), q));
  }
  for (const auto& phi : Q.all_morphisms()) {
    if (phi.arity() < 2) continue;
    for (const Perm& sigma : all_permutations(phi.arity()))
      for (const Color& p : P.colors)
        pres.add_relation(TreeTerm::permuted(sigma, right_term(p, phi)),
                          right_term(p, apply_symmetry(Q, phi, sigma)));
  }

  // type 5: interchange
  for (const auto& psi : P.all_morphisms()) {
    int n = psi.arity();
    for (const auto& phi : Q.all_morphisms()) {
      int m = phi.arity();
      const Color& q = phi.output();
      std::vector<TreeTerm> lhs_inners;
      for (const Color& p_i : psi.profile.inputs) lhs_inners.push_back(right_term(p_i, phi));
      TreeTerm lhs = TreeTerm::node(bv_left_generator(psi, q), lhs_inners);
      std::vector<TreeTerm> rhs_inners;
      for (const Color& q_t : phi.profile.inputs) rhs_inners.push_back(left_term(psi, q_t));
      TreeTerm rhs_planar = TreeTerm::node(bv_right_generator(psi.output(), phi), rhs_inners);
      TreeTerm rhs = TreeTerm::permuted(InterchangePermutation::make(m, n).sigma, rhs_planar);
      pres.add_relation(lhs, rhs);
    }
  }
  return pres;
}

// The tautological presentation of a finite operad: its non-identity
// morphisms as generators, its composition and symmetry tables as relations.
inline Presentation presentation_of(const FiniteOperad& P) {
  Presentation pres;
  pres.collection.colors = P.colors;
  for (const auto& m : P.all_morphisms())
    if (!P.is_identity(m)) pres.collection.generators.insert(m);
  auto small_term = [&P](const Morphism& m) {
    return P.is_identity(m) ? TreeTerm::leaf(m.output()) : detail::generator_term(m);
  };
  for (const auto& [key, result] : P.composition) {
    const auto& [outer, inners] = key;
    if (P.is_identity(outer)) continue;  // unit laws hold definitionally for terms
    std::vector<TreeTerm> ts;
    for (const auto& m : inners) ts.push_back(small_term(m));
    pres.add_relation(TreeTerm::node(outer, ts), small_term(result));
  }
  for (const auto& [key, result] : P.symmetry) {
    const auto& [m, i] = key;
    pres.add_relation(
        TreeTerm::permuted(adjacent_transposition(m.arity(), i), detail::generator_term(m)),
        detail::generator_term(result));
  }
  return pres;
}

// ---------------------------------------------------------------------------
// Rewriting.

namespace detail {

// Matches the planar pattern as a top cluster of the subject, binding the
// subtrees hanging under the pattern leaves in planar order.
inline bool cluster_match(const PlanarTerm& pattern, const PlanarTerm& subject,
                          std::vector<PlanarTerm>& bound) {
  if (pattern.is_leaf()) {
    if (pattern.leaf_color != subject.root_color()) return false;
    bound.push_back(subject);
    return true;
  }
  if (subject.is_leaf() || !(*pattern.gen == *subject.gen)) return false;
  for (size_t i = 0; i < pattern.children.size(); ++i)
    if (!cluster_match(pattern.children[i], subject.children[i], bound)) return false;
  return true;
}

inline const PlanarTerm* subtree_at(const PlanarTerm& t, const std::vector<int>& path) {
  const PlanarTerm* cur = &t;
  for (int i : path) cur = &cur->children[static_cast<size_t>(i)];
  return cur;
}

// Replaces the subtree at `path` by a fresh leaf, returning the context and
// the planar index of the hole among its leaves.
inline std::pair<PlanarTerm, int> puncture(const PlanarTerm& t, const std::vector<int>& path) {
  int hole = 0;
  auto walk = [&](auto&& self, const PlanarTerm& cur, size_t depth) -> PlanarTerm {
    if (depth == path.size()) {
      PlanarTerm leaf;
      leaf.leaf_color = cur.root_color();
      return leaf;
    }
    PlanarTerm out;
    out.gen = cur.gen;
    int branch = path[depth];
    for (int i = 0; i < static_cast<int>(cur.children.size()); ++i) {
      if (i < branch) hole += cur.children[static_cast<size_t>(i)].leaf_count();
      out.children.push_back(i == branch ? self(self, cur.children[static_cast<size_t>(i)], depth + 1)
                                         : cur.children[static_cast<size_t>(i)]);
    }
    return out;
  };
  PlanarTerm context = walk(walk, t, 0);
  return {std::move(context), hole};
}

inline void all_paths(const PlanarTerm& t, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  for (int i = 0; i < static_cast<int>(t.children.size()); ++i) {
    cur.push_back(i);
    all_paths(t.children[static_cast<size_t>(i)], cur, out);
    cur.pop_back();
  }
}

// One rewrite of `t` at `path` along the oriented relation (from -> to);
// empty result when the pattern does not match there.
inline std::optional<TreeTerm> rewrite_at(const TreeTerm& t, const std::vector<int>& path,
                                          const TreeTerm& from, const TreeTerm& to) {
  const PlanarTerm* subject = subtree_at(t.planar, path);
  std::vector<PlanarTerm> bound;
  if (!cluster_match(from.planar, *subject, bound)) return std::nullopt;
  std::vector<TreeTerm> hung;
  hung.reserve(bound.size());
  for (auto& b : bound) hung.push_back(TreeTerm{identity_perm(b.leaf_count()), std::move(b)});
  TreeTerm replacement = graft(TreeTerm::permuted(inverse_perm(from.root_perm), to), hung);
  auto [context, hole] = puncture(t.planar, path);
  std::vector<TreeTerm> plugs;
  int leaf_index = 0;
  auto gather = [&](auto&& self, const PlanarTerm& c) -> void {
    if (c.is_leaf()) {
      if (leaf_index == hole)
        plugs.push_back(replacement);
      else
        plugs.push_back(TreeTerm::leaf(c.leaf_color));
      ++leaf_index;
      return;
    }
    for (const auto& ch : c.children) self(self, ch);
  };
  gather(gather, context);
  TreeTerm body = graft(TreeTerm{identity_perm(context.leaf_count()), context}, plugs);
  return TreeTerm::permuted(t.root_perm, body);
}

inline std::set<TreeTerm> rewrite_neighbors(const Presentation& pres, const TreeTerm& t) {
  std::set<TreeTerm> out;
  std::vector<std::vector<int>> paths;
  std::vector<int> cur;
  all_paths(t.planar, cur, paths);
  for (const auto& [lhs, rhs] : pres.relations) {
    for (const auto& path : paths) {
      if (auto r = rewrite_at(t, path, lhs, rhs); r && !(*r == t)) out.insert(std::move(*r));
      if (auto r = rewrite_at(t, path, rhs, lhs); r && !(*r == t)) out.insert(std::move(*r));
    }
  }
  return out;
}

}  // namespace detail

enum class Equality { equal, distinct, unknown };

// Bidirectional breadth-first search over relation rewrites at any position,
// modulo the root-normal form.  `equal` within the bound is definitive, and
// so is `distinct`: it is reported only when a whole rewrite component has
// been exhausted without meeting the other side.
inline Equality decide_equal(const Presentation& pres, const TreeTerm& t1, const TreeTerm& t2,
                             int bound) {
  require_term(pres.collection, t1);
  require_term(pres.collection, t2);
  Profile p1 = t1.profile(), p2 = t2.profile();
  std::vector<Color> s1 = p1.inputs, s2 = p2.inputs;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (p1.output != p2.output || s1 != s2)
    throw ProfileMismatch("terms have profiles " + to_string(p1) + " and " + to_string(p2));
  if (t1 == t2) return Equality::equal;
  if (bound < 0) throw InvalidArgument("decide_equal: negative bound");

  std::set<TreeTerm> visited_a{t1}, visited_b{t2};
  std::set<TreeTerm> front_a{t1}, front_b{t2};
  for (int step = 0; step < bound; ++step) {
    // the side to expand is chosen symmetrically in the two arguments
    bool expand_a = front_a.size() != front_b.size() ? front_a.size() < front_b.size()
                                                     : !(front_b < front_a);
    auto& front = expand_a ? front_a : front_b;
    auto& visited = expand_a ? visited_a : visited_b;
    auto& other_visited = expand_a ? visited_b : visited_a;
    std::set<TreeTerm> next;
    for (const auto& t : front)
      for (auto& n : detail::rewrite_neighbors(pres, t))
        if (visited.count(n) == 0) next.insert(std::move(n));
    if (next.empty()) return Equality::distinct;  // the component is exhausted
    for (const auto& n : next)
      if (other_visited.count(n)) return Equality::equal;
    visited.insert(next.begin(), next.end());
    front = std::move(next);
  }
  return Equality::unknown;
}

// ---------------------------------------------------------------------------
// Realization of unary presentations.

namespace detail {

// Chains of unary generators, innermost first.
struct ChainSpace {
  std::vector<Morphism> gens;                 // sorted
  std::map<Morphism, int> gen_index;
  std::vector<Color> src_of, dst_of;
  std::map<Color, std::vector<int>> from;     // color -> generators out of it

  explicit ChainSpace(const ColoredCollection& col) {
    for (const auto& g : col.generators) {
      if (g.arity() != 1) throw InvalidArgument("realize_unary: non-unary generator " + g.name);
      gen_index[g] = static_cast<int>(gens.size());
      gens.push_back(g);
      src_of.push_back(g.profile.inputs[0]);
      dst_of.push_back(g.output());
      from[g.profile.inputs[0]].push_back(static_cast<int>(gens.size() - 1));
    }
  }

  Color chain_dst(const Color& src, const std::vector<int>& chain) const {
    return chain.empty() ? src : dst_of[static_cast<size_t>(chain.back())];
  }
};

struct Chain {
  Color src;
  std::vector<int> word;
  auto operator<=>(const Chain&) const = default;
};

inline Chain chain_of_term(const ChainSpace& space, const TreeTerm& t) {
  Chain c;
  std::vector<int> rev;
  const PlanarTerm* cur = &t.planar;
  while (!cur->is_leaf()) {
    rev.push_back(space.gen_index.at(*cur->gen));
    cur = &cur->children[0];
  }
  c.src = cur->leaf_color;
  c.word.assign(rev.rbegin(), rev.rend());
  return c;
}

}  // namespace detail

// The category whose arrows are the rewrite classes of unary chains of at
// most `bound` generators, accepted only when the class counts agree with
// the ones at bound-1.  `max_terms` caps the enumeration.
inline FiniteCategory realize_unary(const Presentation& pres, int bound,
                                    std::size_t max_terms = 2000000) {
  if (bound < 1) throw InvalidArgument("realize_unary: bound must be positive");
  detail::ChainSpace space(pres.collection);

  // relations as chain pairs
  std::vector<std::pair<detail::Chain, detail::Chain>> rules;
  for (const auto& [l, r] : pres.relations)
    rules.emplace_back(detail::chain_of_term(space, l), detail::chain_of_term(space, r));

  auto compute_classes = [&](int b, bool build_category, FiniteCategory* out) {
    int cap = 2 * b;
    // enumerate chains of length <= cap
    std::map<detail::Chain, int> idx;
    std::vector<detail::Chain> chains;
    for (const Color& c : pres.collection.colors) {
      size_t at = 0;
      std::vector<detail::Chain> local{detail::Chain{c, {}}};
      while (at < local.size()) {
        detail::Chain cur = local[at++];
        if (static_cast<int>(cur.word.size()) == cap) continue;
        Color tip = space.chain_dst(cur.src, cur.word);
        auto it = space.from.find(tip);
        if (it == space.from.end()) continue;
        for (int g : it->second) {
          detail::Chain ext = cur;
          ext.word.push_back(g);
          local.push_back(std::move(ext));
        }
        if (chains.size() + local.size() > max_terms)
          throw Unstable("realize_unary: term enumeration exceeded " + std::to_string(max_terms));
      }
      for (auto& ch : local) {
        idx[ch] = static_cast<int>(chains.size());
        chains.push_back(std::move(ch));
      }
    }

    // union-find over rewrite edges staying within the cap
    std::vector<int> parent(chains.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<size_t>(x)] != x) {
        parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        x = parent[static_cast<size_t>(x)];
      }
      return x;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    };

    for (size_t i = 0; i < chains.size(); ++i) {
      const detail::Chain& t = chains[i];
      for (const auto& [l, r] : rules) {
        for (int dir = 0; dir < 2; ++dir) {
          const detail::Chain& from = dir ? r : l;
          const detail::Chain& to = dir ? l : r;
          size_t fl = from.word.size();
          if (fl > t.word.size()) continue;
          for (size_t pos = 0; pos + fl <= t.word.size(); ++pos) {
            // color at the cut must match the rule's source
            Color at_cut = pos == 0 ? t.src : space.dst_of[static_cast<size_t>(t.word[pos - 1])];
            if (at_cut != from.src) continue;
            bool match = true;
            for (size_t k = 0; k < fl; ++k)
              if (t.word[pos + k] != from.word[k]) {
                match = false;
                break;
              }
            if (!match) continue;
            detail::Chain rewritten;
            rewritten.src = t.src;
            rewritten.word.assign(t.word.begin(), t.word.begin() + static_cast<long>(pos));
            for (int g : to.word) rewritten.word.push_back(g);
            rewritten.word.insert(rewritten.word.end(), t.word.begin() + static_cast<long>(pos + fl),
                                  t.word.end());
            if (static_cast<int>(rewritten.word.size()) > cap) continue;
            auto it = idx.find(rewritten);
            if (it != idx.end()) unite(static_cast<int>(i), it->second);
          }
        }
      }
    }

    // classes with a representative of length <= b, keyed by (src, dst)
    std::map<int, detail::Chain> rep;  // root -> minimal (length, word) chain
    for (size_t i = 0; i < chains.size(); ++i) {
      if (static_cast<int>(chains[i].word.size()) > b) continue;
      int root = find(static_cast<int>(i));
      auto it = rep.find(root);
      if (it == rep.end() ||
          std::make_pair(chains[i].word.size(), chains[i]) <
              std::make_pair(it->second.word.size(), it->second))
        rep[root] = chains[i];
    }
    std::map<std::pair<Color, Color>, int> counts;
    for (const auto& [root, ch] : rep) counts[{ch.src, space.chain_dst(ch.src, ch.word)}]++;

    if (!build_category) return counts;

    FiniteCategory cat;
    cat.objects = pres.collection.colors;
    std::map<int, CatArrow> arrow_of_root;
    std::vector<std::pair<std::pair<Color, Color>, int>> ordered;
    for (const auto& [root, ch] : rep)
      ordered.push_back({{ch.src, space.chain_dst(ch.src, ch.word)}, root});
    std::sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return rep.at(a.second) < rep.at(b.second);
    });
    int counter = 0;
    for (const auto& [key, root] : ordered) {
      CatArrow arr{"w" + std::to_string(counter++), key.first, key.second};
      arrow_of_root[root] = arr;
      cat.homs[{arr.src, arr.dst}].insert(arr.name);
    }
    for (const Color& c : pres.collection.colors) {
      auto it = idx.find(detail::Chain{c, {}});
      cat.identities[c] = arrow_of_root.at(find(it->second)).name;
    }
    for (const auto& [root_f, f] : arrow_of_root) {
      const detail::Chain& cf = rep.at(root_f);
      for (const auto& [root_g, g] : arrow_of_root) {
        const detail::Chain& cg = rep.at(root_g);
        if (g.src != f.dst) continue;
        detail::Chain comp;
        comp.src = cf.src;
        comp.word = cf.word;
        comp.word.insert(comp.word.end(), cg.word.begin(), cg.word.end());
        auto it = idx.find(comp);
        if (it == idx.end()) throw Unstable("realize_unary: composite escapes the enumeration");
        auto ar = arrow_of_root.find(find(it->second));
        if (ar == arrow_of_root.end())
          throw Unstable("realize_unary: composite class has no representative within the bound");
        cat.composition[{g, f}] = ar->second;
      }
    }
    *out = std::move(cat);
    return counts;
  };

  FiniteCategory cat;
  auto counts_prev = compute_classes(bound - 1, false, nullptr);
  auto counts_now = compute_classes(bound, true, &cat);
  if (counts_prev != counts_now)
    throw Unstable("realize_unary: class counts did not stabilize between bounds " +
                   std::to_string(bound - 1) + " and " + std::to_string(bound));
  ValidationReport rep = validate(cat);
  if (!rep.ok())
    throw Unstable("realize_unary: realized data is not a category: " + rep.issues[0].axiom);
  return cat;
}

// ---------------------------------------------------------------------------
// Presentation maps and pushouts.

struct PresentationMap {
  Presentation source;
  Presentation target;
  std::map<Color, Color> color_map;
  std::map<Morphism, TreeTerm> generator_map;

  static PresentationMap make(Presentation source, Presentation target,
                              std::map<Color, Color> color_map,
                              std::map<Morphism, TreeTerm> generator_map) {
    PresentationMap f{std::move(source), std::move(target), std::move(color_map),
                      std::move(generator_map)};
    for (const Color& c : f.source.collection.colors) {
      auto it = f.color_map.find(c);
      if (it == f.color_map.end() || f.target.collection.colors.count(it->second) == 0)
        throw IncompatibleMaps("color map misses " + c);
    }
    for (const auto& g : f.source.collection.generators) {
      auto it = f.generator_map.find(g);
      if (it == f.generator_map.end()) throw IncompatibleMaps("generator map misses " + g.name);
      require_term(f.target.collection, it->second);
      Profile expected;
      expected.output = f.color_map.at(g.output());
      for (const Color& c : g.profile.inputs) expected.inputs.push_back(f.color_map.at(c));
      if (it->second.profile() != expected)
        throw IncompatibleMaps("generator image profile mismatch at " + g.name);
    }
    return f;
  }

  TreeTerm map_term(const TreeTerm& t) const {
    auto walk = [this](auto&& self, const PlanarTerm& p) -> TreeTerm {
      if (p.is_leaf()) return TreeTerm::leaf(color_map.at(p.leaf_color));
      std::vector<TreeTerm> children;
      for (const auto& c : p.children) children.push_back(self(self, c));
      return graft(generator_map.at(*p.gen), children);
    };
    return TreeTerm::permuted(t.root_perm, walk(walk, t.planar));
  }
};

struct PushoutResult {
  Presentation presentation;
  PresentationMap left_injection;   // from the target of f
  PresentationMap right_injection;  // from the target of g
};

// Pushout of presentations along maps out of a common source: colors are
// the exact set pushout, generators the tagged disjoint union, relations
// the images of all three relation sets plus the identifications of the
// source generators' two images.
inline PushoutResult pushout(const PresentationMap& f, const PresentationMap& g) {
  if (!(f.source == g.source)) throw IncompatibleMaps("pushout legs have different sources");
  const Presentation& A = f.target;
  const Presentation& B = g.target;

  std::map<Color, Color> parent;
  auto tag_a = [](const Color& c) { return mangle({"l", c}); };
  auto tag_b = [](const Color& c) { return mangle({"r", c}); };
  for (const Color& c : A.collection.colors) parent[tag_a(c)] = tag_a(c);
  for (const Color& c : B.collection.colors) parent[tag_b(c)] = tag_b(c);
  std::function<Color(Color)> find = [&](Color c) {
    while (parent[c] != c) c = parent[c];
    return c;
  };
  for (const Color& r : f.source.collection.colors) {
    Color a = find(tag_a(f.color_map.at(r)));
    Color b = find(tag_b(g.color_map.at(r)));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  Presentation out;
  for (const auto& [c, p] : parent) out.collection.colors.insert(find(c));

  auto lift_gen = [&](const Morphism& m, bool from_a) {
    Profile prof;
    auto tag = from_a ? tag_a : tag_b;
    prof.output = find(tag(m.output()));
    for (const Color& c : m.profile.inputs) prof.inputs.push_back(find(tag(c)));
    return Morphism{mangle({from_a ? "l" : "r", m.name}), std::move(prof)};
  };
  for (const auto& m : A.collection.generators) out.collection.generators.insert(lift_gen(m, true));
  for (const auto& m : B.collection.generators) out.collection.generators.insert(lift_gen(m, false));

  auto make_injection = [&](const Presentation& side, bool from_a) {
    std::map<Color, Color> cmap;
    auto tag = from_a ? tag_a : tag_b;
    for (const Color& c : side.collection.colors) cmap[c] = find(tag(c));
    std::map<Morphism, TreeTerm> gmap;
    for (const auto& m : side.collection.generators)
      gmap[m] = detail::generator_term(lift_gen(m, from_a));
    return PresentationMap{side, out, std::move(cmap), std::move(gmap)};
  };
  // build injections against the still-relation-free target, then attach
  PresentationMap inj_a = make_injection(A, true);
  PresentationMap inj_b = make_injection(B, false);

  for (const auto& [l, r] : A.relations)
    out.add_relation(inj_a.map_term(l), inj_a.map_term(r));
  for (const auto& [l, r] : B.relations)
    out.add_relation(inj_b.map_term(l), inj_b.map_term(r));
  for (const auto& [l, r] : f.source.relations)
    out.add_relation(inj_a.map_term(f.map_term(l)), inj_a.map_term(f.map_term(r)));
  for (const auto& h : f.source.collection.generators)
    out.add_relation(inj_a.map_term(f.generator_map.at(h)), inj_b.map_term(g.generator_map.at(h)));

  inj_a.target = out;
  inj_b.target = out;
  return PushoutResult{std::move(out), std::move(inj_a), std::move(inj_b)};
}

// The presentation map bv(F, Q) induced on tensor presentations by a functor
// in the left factor.
inline PresentationMap bv_map_left(const OperadFunctor& F, const FiniteOperad& Q) {
  Presentation src = bv_presentation(F.source(), Q);
  Presentation dst = bv_presentation(F.target(), Q);
  std::map<Color, Color> cmap;
  for (const Color& p : F.source().colors)
    for (const Color& q : Q.colors) cmap[bv_color(p, q)] = bv_color(F.map(p), q);
  std::map<Morphism, TreeTerm> gmap;
  for (const auto& psi : F.source().all_morphisms())
    for (const Color& q : Q.colors)
      gmap[bv_left_generator(psi, q)] = detail::generator_term(bv_left_generator(F.map(psi), q));
  for (const Color& p : F.source().colors)
    for (const auto& phi : Q.all_morphisms())
      gmap[bv_right_generator(p, phi)] = detail::generator_term(bv_right_generator(F.map(p), phi));
  return PresentationMap::make(std::move(src), std::move(dst), std::move(cmap), std::move(gmap));
}

inline PresentationMap bv_map_right(const FiniteOperad& P, const OperadFunctor& G) {
  Presentation src = bv_presentation(P, G.source());
  Presentation dst = bv_presentation(P, G.target());
  std::map<Color, Color> cmap;
  for (const Color& p : P.colors)
    for (const Color& q : G.source().colors) cmap[bv_color(p, q)] = bv_color(p, G.map(q));
  std::map<Morphism, TreeTerm> gmap;
  for (const auto& psi : P.all_morphisms())
    for (const Color& q : G.source().colors)
      gmap[bv_left_generator(psi, q)] = detail::generator_term(bv_left_generator(psi, G.map(q)));
  for (const Color& p : P.colors)
    for (const auto& phi : G.source().all_morphisms())
      gmap[bv_right_generator(p, phi)] = detail::generator_term(bv_right_generator(p, G.map(phi)));
  return PresentationMap::make(std::move(src), std::move(dst), std::move(cmap), std::move(gmap));
}

// ---------------------------------------------------------------------------
// The object-level pushout-product corner check.

// Computes the object-set pushout of the tensor square of two cofibrations
// exactly and decides injectivity of the induced corner map into
// ob(Q) x ob(Q').
inline bool corner_map_object_check(const OperadFunctor& F, const OperadFunctor& G) {
  if (!F.source().symmetric || !F.target().symmetric || !G.source().symmetric ||
      !G.target().symmetric)
    throw NotSymmetric("corner_map_object_check expects symmetric operads");
  if (!is_cofibration(F) || !is_cofibration(G))
    throw NotCofibration("corner_map_object_check expects cofibrations");

  using Elem = std::pair<int, std::pair<Color, Color>>;  // side 0: P x Q', side 1: Q x P'
  std::map<Elem, Elem> parent;
  auto add = [&parent](const Elem& e) { parent.emplace(e, e); };
  for (const Color& p : F.source().colors)
    for (const Color& q2 : G.target().colors) add({0, {p, q2}});
  for (const Color& q : F.target().colors)
    for (const Color& p2 : G.source().colors) add({1, {q, p2}});
  std::function<Elem(Elem)> find = [&](Elem e) {
    while (!(parent.at(e) == e)) e = parent.at(e);
    return e;
  };
  auto unite = [&](const Elem& a, const Elem& b) {
    Elem ra = find(a), rb = find(b);
    if (!(ra == rb)) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  for (const Color& p : F.source().colors)
    for (const Color& p2 : G.source().colors)
      unite({0, {p, G.map(p2)}}, {1, {F.map(p), p2}});

  // Both legs agree on identified pairs, so any member of a class computes
  // the same corner image; injectivity is then checked class by class.
  std::map<Elem, std::pair<Color, Color>> corner;
  for (const auto& [e, par] : parent) {
    std::pair<Color, Color> image = e.first == 0
                                        ? std::make_pair(F.map(e.second.first), e.second.second)
                                        : std::make_pair(e.second.first, G.map(e.second.second));
    corner.emplace(find(e), image);
  }
  std::set<std::pair<Color, Color>> seen;
  for (const auto& [root, image] : corner)
    if (!seen.insert(image).second) return false;
  return true;
}

}  // namespace opemodel
