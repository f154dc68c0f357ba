#pragma once

// Rooted-tree words over colored generators: the carrier of free operads and
// of presented operads.  Terms are kept in root-normal form, a permutation
// applied to a strictly planar tree; equality of planar parts is structural
// and all symmetric-group bookkeeping lives in the root permutation.

#include <optional>
#include <vector>

#include "opemodel/core.hpp"
#include "opemodel/perm.hpp"

namespace opemodel {

struct PlanarTerm {
  std::optional<Morphism> gen;           // empty for a leaf
  Color leaf_color;                      // set only for a leaf
  std::vector<PlanarTerm> children;      // one per generator input

  bool is_leaf() const { return !gen.has_value(); }

  const Color& root_color() const { return is_leaf() ? leaf_color : gen->output(); }

  int leaf_count() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
  }

  // number of generator occurrences
  int size() const {
    if (is_leaf()) return 0;
    int n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }

  void leaf_colors_into(std::vector<Color>& out) const {
    if (is_leaf()) {
      out.push_back(leaf_color);
      return;
    }
    for (const auto& c : children) c.leaf_colors_into(out);
  }

  std::vector<Color> leaf_colors() const {
    std::vector<Color> out;
    leaf_colors_into(out);
    return out;
  }

  std::strong_ordering operator<=>(const PlanarTerm& o) const {
    if (auto c = gen.has_value() <=> o.gen.has_value(); c != 0) return c;
    if (gen.has_value()) {
      if (auto c = *gen <=> *o.gen; c != 0) return c;
    } else {
      if (auto c = leaf_color <=> o.leaf_color; c != 0) return c;
    }
    return children <=> o.children;
  }
  bool operator==(const PlanarTerm& o) const { return (*this <=> o) == 0; }
};

struct TreeTerm {
  Perm root_perm;    // size equals the planar leaf count
  PlanarTerm planar;

  static TreeTerm leaf(const Color& c) {
    PlanarTerm p;
    p.leaf_color = c;
    return TreeTerm{identity_perm(1), std::move(p)};
  }

  // gamma(gen; children): inner root permutations are pushed to the root as
  // the block direct sum.
  static TreeTerm node(const Morphism& gen, const std::vector<TreeTerm>& children) {
    if (static_cast<int>(children.size()) != gen.arity())
      throw ColorMismatch("node " + gen.name + ": expected " + std::to_string(gen.arity()) +
                          " children, got " + std::to_string(children.size()));
    PlanarTerm p;
    p.gen = gen;
    Perm direct_sum;
    for (size_t i = 0; i < children.size(); ++i) {
      if (children[i].root_color() != gen.profile.inputs[i])
        throw ColorMismatch("node " + gen.name + ": child " + std::to_string(i + 1) + " has color " +
                            children[i].root_color() + ", expected " + gen.profile.inputs[i]);
      int offset = static_cast<int>(direct_sum.size());
      for (int v : children[i].root_perm) direct_sum.push_back(offset + v);
      p.children.push_back(children[i].planar);
    }
    return TreeTerm{std::move(direct_sum), std::move(p)};
  }

  // sigma^*(t)
  static TreeTerm permuted(const Perm& sigma, const TreeTerm& t) {
    if (sigma.size() != t.root_perm.size() || !is_permutation(sigma))
      throw ProfileMismatch("permuted: not a permutation of the leaf count");
    return TreeTerm{compose_perm(t.root_perm, sigma), t.planar};
  }

  const Color& root_color() const { return planar.root_color(); }

  int leaf_count() const { return static_cast<int>(root_perm.size()); }

  int size() const { return planar.size(); }

  Profile profile() const {
    Profile p;
    p.output = planar.root_color();
    std::vector<Color> leaves = planar.leaf_colors();
    for (int v : root_perm) p.inputs.push_back(leaves[static_cast<size_t>(v)]);
    return p;
  }

  auto operator<=>(const TreeTerm&) const = default;
};

// Tree substitution at the leaves: gamma(outer; inners), with inner i grafted
// onto the leaf the root permutation assigns to input i.
inline TreeTerm graft(const TreeTerm& outer, const std::vector<TreeTerm>& inners) {
  int n = outer.leaf_count();
  if (static_cast<int>(inners.size()) != n)
    throw ColorMismatch("graft: expected " + std::to_string(n) + " inner terms, got " +
                        std::to_string(inners.size()));
  std::vector<Color> leaves = outer.planar.leaf_colors();
  for (int i = 0; i < n; ++i) {
    const Color& expected = leaves[static_cast<size_t>(outer.root_perm[static_cast<size_t>(i)])];
    if (inners[static_cast<size_t>(i)].root_color() != expected)
      throw ColorMismatch("graft: inner " + std::to_string(i + 1) + " has color " +
                          inners[static_cast<size_t>(i)].root_color() + ", expected " + expected);
  }

  Perm inv = inverse_perm(outer.root_perm);
  // per planar leaf slot j, the inner that lands there
  std::vector<const TreeTerm*> at_slot(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    at_slot[static_cast<size_t>(j)] = &inners[static_cast<size_t>(inv[static_cast<size_t>(j)])];

  // planar grafting in leaf order
  size_t cursor = 0;
  auto build = [&](auto&& self, const PlanarTerm& t) -> PlanarTerm {
    if (t.is_leaf()) return at_slot[cursor++]->planar;
    PlanarTerm out;
    out.gen = t.gen;
    for (const auto& c : t.children) out.children.push_back(self(self, c));
    return out;
  };
  PlanarTerm grafted = build(build, outer.planar);

  Perm rho_hat;
  std::vector<int> sizes;
  for (int j = 0; j < n; ++j) {
    const TreeTerm* inner = at_slot[static_cast<size_t>(j)];
    int offset = static_cast<int>(rho_hat.size());
    for (int v : inner->root_perm) rho_hat.push_back(offset + v);
    sizes.push_back(inner->leaf_count());
  }
  Perm tau = block_perm(outer.root_perm, sizes);
  return TreeTerm{compose_perm(rho_hat, tau), std::move(grafted)};
}

}  // namespace opemodel
