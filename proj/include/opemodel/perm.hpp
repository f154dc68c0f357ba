#pragma once

// Finite permutations in one-line notation, 0-based: p[i] is the image of
// position i.  The action convention used throughout the library is
// contravariant on input lists: acting by p on a list xs yields the list
// ys with ys[i] = xs[p[i]], so (p then q) acts as the composite p*q where
// (p*q)[i] = p[q[i]].

#include <algorithm>
#include <numeric>
#include <vector>

#include "opemodel/errors.hpp"

namespace opemodel {

using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = true;
  }
  return true;
}

inline bool is_identity_perm(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

// Swaps positions i and i+1.
inline Perm adjacent_transposition(int n, int i) {
  Perm p = identity_perm(n);
  std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(i) + 1]);
  return p;
}

// (a*b)[i] = a[b[i]].
inline Perm compose_perm(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw InvalidArgument("compose_perm: size mismatch");
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<size_t>(b[i])];
  return c;
}

inline Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return q;
}

template <typename T>
std::vector<T> permute_vector(const std::vector<T>& xs, const Perm& p) {
  if (xs.size() != p.size()) throw InvalidArgument("permute_vector: size mismatch");
  std::vector<T> ys;
  ys.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) ys.push_back(xs[static_cast<size_t>(p[i])]);
  return ys;
}

// A word s_{j1},...,s_{jk} of adjacent transpositions, in application order,
// with target = s_{j1}*...*s_{jk} (left factors applied to lists first).
// Starting from the identity one-line and swapping positions j,j+1 for each
// listed j reproduces `target`.
inline std::vector<int> adjacent_word(const Perm& target) {
  if (!is_permutation(target)) throw InvalidArgument("adjacent_word: not a permutation");
  std::vector<int> word;
  Perm cur = identity_perm(static_cast<int>(target.size()));
  for (size_t pos = 0; pos < target.size(); ++pos) {
    size_t k = pos;
    while (cur[k] != target[pos]) ++k;
    while (k > pos) {
      word.push_back(static_cast<int>(k) - 1);
      std::swap(cur[k - 1], cur[k]);
      --k;
    }
  }
  return word;
}

// The permutation of sum(sizes) letters that lists block sigma[r] in slot r,
// keeping each block's internal order.  Acting with it on the concatenation
// of blocks 0..k-1 yields the concatenation of blocks sigma[0],sigma[1],...
inline Perm block_perm(const Perm& sigma, const std::vector<int>& sizes) {
  if (sigma.size() != sizes.size()) throw InvalidArgument("block_perm: size mismatch");
  std::vector<int> start(sizes.size() + 1, 0);
  for (size_t i = 0; i < sizes.size(); ++i) start[i + 1] = start[i] + sizes[i];
  Perm tau;
  tau.reserve(static_cast<size_t>(start.back()));
  for (size_t r = 0; r < sigma.size(); ++r) {
    int b = sigma[r];
    for (int t = 0; t < sizes[static_cast<size_t>(b)]; ++t)
      tau.push_back(start[static_cast<size_t>(b)] + t);
  }
  return tau;
}

// Permutation of m*n letters with sigma[i*m + t] = t*n + i, i in [0,n),
// t in [0,m).  It turns the column-major reading of an n-by-m grid into the
// row-major one.
inline Perm interchange_perm(int m, int n) {
  Perm sigma(static_cast<size_t>(m) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < m; ++t)
      sigma[static_cast<size_t>(i * m + t)] = t * n + i;
  return sigma;
}

inline std::vector<Perm> all_permutations(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace opemodel
