#pragma once

#include "sfq/kgra.hpp"

namespace sfq {

/// Hochschild-type differential built from white-pair insertions,
///   d(g) = ww o_2 g + sum_i (-1)^i g o_i ww + (-1)^(k+1) ww o_1 g.
inline GraphVector hoch_differential(const GraphVector& g) {
  if (g.color != Color::o) throw GraphError("hoch_differential: open color required");
  const int k = g.nw;
  const GraphVector ww = gamma_ww();
  GraphVector out = insert_white(ww, 2, g);
  for (int i = 1; i <= k; ++i) {
    GraphVector t = insert_white(g, i, ww);
    out += i % 2 == 0 ? t : -t;
  }
  GraphVector last = insert_white(ww, 1, g);
  out += k % 2 == 0 ? -last : last;
  return out;
}

/// Alternation over white labels: (1/k!) sum_s sgn(s) (id,s).
inline GraphVector alt_white(const GraphVector& g) {
  if (g.nw == 0) return g;
  GraphVector out = GraphVector::zero(g.nb, g.nw, g.color);
  const Perm id = identity_perm(g.nb);
  for (const Perm& s : all_perms(g.nw)) {
    GraphVector t = act(id, s, g);
    out += perm_sign(s) > 0 ? t : -t;
  }
  out *= Rat(1) / rat_factorial(g.nw);
  return out;
}

/// Retain graphs with all white vertices univalent.
inline GraphVector pi1_projection(const GraphVector& g) {
  GraphVector out = GraphVector::zero(g.nb, g.nw, g.color);
  for (const auto& [gr, c] : g.terms)
    if (all_whites_univalent(gr)) out.terms.emplace(gr, c);
  return out;
}

/// The canonical projection onto univalent-white antisymmetric vectors.
inline GraphVector pi_projection(const GraphVector& g) {
  return alt_white(pi1_projection(g));
}

/// Average over black relabelings.
inline GraphVector symmetrize_blacks(const GraphVector& g) {
  GraphVector out = GraphVector::zero(g.nb, g.nw, g.color);
  for (const Perm& s : all_perms(g.nb)) out += act_black(s, g);
  out *= Rat(1) / rat_factorial(g.nb);
  return out;
}

namespace detail {
inline void require_invariant_vector(const GraphVector& g, const char* who) {
  if (g.color != Color::o) throw GraphError(std::string(who) + ": open color required");
  if (!is_black_invariant(g)) throw GraphError(std::string(who) + ": input not S_n-invariant");
  if (!all_terms_white_univalent(g)) throw GraphError(std::string(who) + ": white valencies must be 1");
  if (!is_white_antisymmetric(g)) throw GraphError(std::string(who) + ": input not white-antisymmetric");
}
}  // namespace detail

/// Pike-creating operator on invariant vectors,
///   d(g) = k sum_{i=1..n+1} (tau_{n+1,i}, id)(g o_{1,o} broom0).
inline GraphVector pike_differential(const GraphVector& g) {
  detail::require_invariant_vector(g, "pike_differential");
  const int n = g.nb, k = g.nw;
  if (k == 0) return GraphVector::zero(n + 1, 0, Color::o);
  const GraphVector ins = insert_white(g, 1, broom(0));
  GraphVector out = GraphVector::zero(n + 1, k - 1, Color::o);
  for (int i = 1; i <= n + 1; ++i) out += act_black(cycle_up(n + 1, i), ins);
  out *= Rat(k);
  return out;
}

/// Partial homotopy inverse of the pike operator: keep graphs where black 1 is
/// a pike, recolor it white, then average over the white cycles,
///   d*(g) = sum_{i=1..k+1} (-1)^(i-1)/(k+1) (id, sigma_{k+1,i})(g'').
inline GraphVector pike_homotopy(const GraphVector& g) {
  detail::require_invariant_vector(g, "pike_homotopy");
  const int n = g.nb, k = g.nw;
  if (n < 1) throw GraphError("pike_homotopy: n >= 1 required");
  GraphVector recolored = GraphVector::zero(n - 1, k + 1, Color::o);
  for (const auto& [gr, c] : g.terms) {
    if (!black_is_pike(gr, 1)) continue;
    Graph out{n - 1, k + 1, {}};
    out.edges.reserve(gr.edges.size());
    for (const Edge& e : gr.edges) {
      auto map_vertex = [&](int v) {
        if (is_white_vertex(v)) return white_vertex(vertex_label(v) + 1);
        if (v == 1) return white_vertex(1);
        return black_vertex(v - 1);
      };
      out.edges.push_back({e.tail == 1 ? 0 : e.tail - 1, map_vertex(e.head)});
    }
    recolored.accumulate(out, c);
  }
  GraphVector out = GraphVector::zero(n - 1, k + 1, Color::o);
  const Perm id = identity_perm(n - 1);
  for (int i = 1; i <= k + 1; ++i) {
    GraphVector t = act(id, cycle_down(k + 1, i), recolored);
    out += i % 2 == 1 ? t : -t;
  }
  out *= Rat(1, k + 1);
  return out;
}

/// Exact check of d d*(g) + d* d(g) == k g + sum_r r g_r.
inline bool homotopy_identity_check(const GraphVector& g) {
  GraphVector lhs = pike_differential(pike_homotopy(g));
  if (g.nw >= 1) lhs += pike_homotopy(pike_differential(g));
  GraphVector rhs = g;
  rhs *= Rat(g.nw);
  for (const auto& [r, part] : split_by_pikes(g)) {
    GraphVector p = part;
    p *= Rat(r);
    rhs += p;
  }
  return lhs == rhs;
}

}  // namespace sfq
