// Combinatorics for exterior/symmetric algebra bases: strictly increasing
// multi-indices (subsets) in lexicographic order and multisets for symmetric
// tensors, with rank/unrank and merge signs.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace geomlab {

inline std::int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

using Index = std::vector<int>;  // strictly increasing entries in [0, n)

// Lexicographic rank of a k-subset of {0..n-1}.
inline std::int64_t subset_rank(const Index& s, int n) {
  std::int64_t r = 0;
  int prev = -1;
  const int k = static_cast<int>(s.size());
  for (int pos = 0; pos < k; ++pos) {
    for (int v = prev + 1; v < s[pos]; ++v) r += binom(n - 1 - v, k - 1 - pos);
    prev = s[pos];
  }
  return r;
}

inline Index subset_unrank(std::int64_t rank, int n, int k) {
  Index s;
  s.reserve(k);
  int v = 0;
  for (int pos = 0; pos < k; ++pos) {
    while (true) {
      std::int64_t c = binom(n - 1 - v, k - 1 - pos);
      if (rank < c) break;
      rank -= c;
      ++v;
    }
    s.push_back(v++);
  }
  return s;
}

inline std::vector<Index> all_subsets(int n, int k) {
  std::vector<Index> out;
  out.reserve(binom(n, k));
  for (std::int64_t r = 0; r < binom(n, k); ++r) out.push_back(subset_unrank(r, n, k));
  return out;
}

// Sign of sorting the concatenation (a, b) of two disjoint increasing index
// sets; 0 if they intersect.
inline int merge_sign(const Index& a, const Index& b, Index& merged) {
  merged.clear();
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int swaps = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      merged.push_back(a[i++]);
    } else {
      merged.push_back(b[j++]);
      swaps += static_cast<int>(a.size() - i);
    }
  }
  while (i < a.size()) merged.push_back(a[i++]);
  while (j < b.size()) merged.push_back(b[j++]);
  return (swaps % 2 == 0) ? 1 : -1;
}

// Sign of the permutation (s, complement(s)) relative to (0,...,n-1).
inline int complement_sign(const Index& s, int n, Index& comp) {
  comp.clear();
  std::size_t i = 0;
  for (int v = 0; v < n; ++v) {
    if (i < s.size() && s[i] == v) {
      ++i;
    } else {
      comp.push_back(v);
    }
  }
  Index merged;
  return merge_sign(s, comp, merged);
}

// Multisets (weakly increasing index tuples) used by symmetric tensors.
using Multi = std::vector<int>;

inline std::int64_t multiset_count(int n, int k) { return binom(n + k - 1, k); }

inline std::vector<Multi> all_multisets(int n, int k) {
  std::vector<Multi> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  Multi cur(k, 0);
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == n - 1) --pos;
    if (pos < 0) break;
    int v = cur[pos] + 1;
    for (int q = pos; q < k; ++q) cur[q] = v;
  }
  return out;
}

inline std::int64_t multiset_rank(const Multi& m, const std::vector<Multi>& table) {
  auto it = std::lower_bound(table.begin(), table.end(), m);
  return it - table.begin();
}

inline Multi multiset_insert(Multi m, int v) {
  m.insert(std::upper_bound(m.begin(), m.end(), v), v);
  return m;
}

}  // namespace geomlab
