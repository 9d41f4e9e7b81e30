#pragma once

#include <random>

#include "sfq/linalg.hpp"

namespace th {

using namespace sfq;

inline int B(int i) { return black_vertex(i); }
inline int W(int j) { return white_vertex(j); }

inline Graph mk(int nb, int nw, std::vector<Edge> es) { return Graph{nb, nw, std::move(es)}; }

inline GraphVector single(int nb, int nw, std::vector<Edge> es, Color c = Color::o) {
  return canonicalize(mk(nb, nw, std::move(es)), c);
}

/// Random vector with `terms` random graphs of e edges and small coefficients.
inline GraphVector random_vector(std::mt19937_64& rng, int nb, int nw, int e, int nterms,
                                 Color color = Color::o) {
  std::vector<Edge> pool;
  for (int t = 1; t <= nb; ++t) {
    for (int h = 1; h <= nb; ++h)
      if (h != t) pool.push_back({t, B(h)});
    for (int h = 1; h <= nw; ++h) pool.push_back({t, W(h)});
  }
  GraphVector v = GraphVector::zero(nb, nw, color);
  if (e > static_cast<int>(pool.size())) return v;
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < nterms; ++t) {
    std::vector<Edge> es;
    std::vector<int> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int i = 0; i < e; ++i) es.push_back(pool[idx[i]]);
    int c = coeff(rng);
    if (c == 0) c = 1;
    v.accumulate(mk(nb, nw, std::move(es)), c);
  }
  return v;
}

inline Perm random_perm(std::mt19937_64& rng, int n) {
  Perm p = identity_perm(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// fig-6-style graph: blacks 1,2; whites 1..3; edges b1>w1 b1>b2 b2>w1 b2>w3.
inline Graph fig6() {
  return mk(2, 3, {{1, W(1)}, {1, B(2)}, {2, W(1)}, {2, W(3)}});
}

/// fig-8-style graph: blacks 1..3, whites 1..4, black 1 is the only pike.
inline Graph fig8() {
  return mk(3, 4, {{2, B(1)}, {3, B(2)}, {2, W(1)}, {2, W(2)}, {2, W(3)}, {2, W(4)}});
}

}  // namespace th
