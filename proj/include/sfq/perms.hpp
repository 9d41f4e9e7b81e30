#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace sfq {

/// One-based permutation stored as image list: p[i-1] is the image of i.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

/// Parity sign of p: (-1)^(number of inversions).
inline int perm_sign(const Perm& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

/// (a*b)(i) = a(b(i)).
inline Perm compose_perm(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i] - 1];
  return c;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// (p,q)-shuffles in S_{p+q}: images of 1..p increasing and of p+1..p+q increasing.
inline std::vector<Perm> shuffles(int p, int q) {
  const int n = p + q;
  std::vector<Perm> out;
  std::vector<int> pick(p);
  std::iota(pick.begin(), pick.end(), 1);
  auto emit = [&]() {
    Perm s(n);
    std::vector<bool> used(n + 1, false);
    for (int i = 0; i < p; ++i) {
      s[i] = pick[i];
      used[pick[i]] = true;
    }
    int next = 1;
    for (int i = p; i < n; ++i) {
      while (used[next]) ++next;
      s[i] = next;
      used[next] = true;
    }
    out.push_back(std::move(s));
  };
  if (p == 0 || q == 0) {
    out.push_back(identity_perm(n));
    return out;
  }
  // iterate p-subsets of {1..n} in lexicographic order
  while (true) {
    emit();
    int i = p - 1;
    while (i >= 0 && pick[i] == n - (p - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < p; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

/// The cycle (i, i+1, ..., n) in S_n: j -> j+1 for i <= j < n, and n -> i.
inline Perm cycle_up(int n, int i) {
  Perm p = identity_perm(n);
  for (int j = i; j < n; ++j) p[j - 1] = j + 1;
  p[n - 1] = i;
  return p;
}

/// The cycle (i, i-1, ..., 2, 1) in S_k: 1 -> i and j -> j-1 for 2 <= j <= i.
inline Perm cycle_down(int k, int i) {
  Perm p = identity_perm(k);
  p[0] = i;
  for (int j = 2; j <= i; ++j) p[j - 1] = j - 1;
  return p;
}

}  // namespace sfq
