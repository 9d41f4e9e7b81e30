#pragma once

#include <vector>

#include "sfq/graph_vector.hpp"

namespace sfq {

// ---------------------------------------------------------------------------
// Distinguished vectors
// ---------------------------------------------------------------------------

/// One edge between two black vertices, summed over both directions.
inline GraphVector gamma_edge() {
  GraphVector v = GraphVector::zero(2, 0, Color::c);
  v.accumulate(Graph{2, 0, {{1, 2}}}, 1);
  v.accumulate(Graph{2, 0, {{2, 1}}}, 1);
  return v;
}

/// Two black vertices, no edges.
inline GraphVector gamma_bb() {
  GraphVector v = GraphVector::zero(2, 0, Color::c);
  v.accumulate(Graph{2, 0, {}}, 1);
  return v;
}

/// Two white vertices, no edges.
inline GraphVector gamma_ww() {
  GraphVector v = GraphVector::zero(0, 2, Color::o);
  v.accumulate(Graph{0, 2, {}}, 1);
  return v;
}

/// One black vertex with edges to whites 1..k, ordered (1,1o) < (1,2o) < ...
inline GraphVector broom(int k) {
  Graph g{1, k, {}};
  for (int j = 1; j <= k; ++j) g.edges.push_back({1, white_vertex(j)});
  GraphVector v = GraphVector::zero(1, k, Color::o);
  v.accumulate(g, 1);
  return v;
}

// ---------------------------------------------------------------------------
// Operadic insertions
// ---------------------------------------------------------------------------

namespace detail {

// Positions of edge endpoints incident to `vertex`: (edge index, endpoint-is-head).
inline std::vector<std::pair<int, bool>> endpoints_at(const Graph& g, int vertex) {
  std::vector<std::pair<int, bool>> out;
  for (int i = 0; i < g.edge_count(); ++i) {
    if (g.edges[i].tail == vertex) out.push_back({i, false});
    if (g.edges[i].head == vertex) out.push_back({i, true});
  }
  return out;
}

// Sum over all reattachment maps from `slots` to `targets`, applied to `base`,
// with `suffix` edges appended afterwards.
inline void reattach_sum(GraphVector& acc, Graph base,
                         const std::vector<std::pair<int, bool>>& slots,
                         const std::vector<int>& targets,
                         const std::vector<Edge>& suffix, const Rat& coeff) {
  const size_t m = slots.size();
  std::vector<size_t> pick(m, 0);
  while (true) {
    Graph g = base;
    for (size_t i = 0; i < m; ++i) {
      auto [ei, at_head] = slots[i];
      (at_head ? g.edges[ei].head : g.edges[ei].tail) = targets[pick[i]];
    }
    g.edges.insert(g.edges.end(), suffix.begin(), suffix.end());
    acc.accumulate(g, coeff);
    // odometer over assignments
    size_t i = 0;
    for (; i < m; ++i) {
      if (++pick[i] < targets.size()) break;
      pick[i] = 0;
    }
    if (m == 0 || i == m) break;
  }
}

}  // namespace detail

/// Insert a pure-black vector into black slot i: delete black vertex i of the
/// outer graph, splice the inner graph in, and sum over all reattachments of
/// the edge endpoints formerly at vertex i to the inner vertices. Inner blacks
/// take labels i..i+n'-1; outer blacks above i shift up; edge order is outer
/// edges then inner edges.
inline GraphVector insert_black(const GraphVector& outer, int slot, const GraphVector& inner) {
  if (slot < 1 || slot > outer.nb) throw GraphError("insert_black: slot out of range");
  if (inner.nw != 0 || inner.color != Color::c)
    throw GraphError("insert_black: inner vector must be pure black");
  const int np = inner.nb;
  GraphVector out = GraphVector::zero(outer.nb + np - 1, outer.nw, outer.color);
  auto map_outer = [&](int v) {
    if (is_white_vertex(v)) return v;
    if (v < slot) return v;
    if (v > slot) return v + np - 1;
    return 0;  // deleted vertex, patched by reattachment
  };
  for (const auto& [og, oc] : outer.terms) {
    Graph base{out.nb, out.nw, {}};
    base.edges.reserve(og.edges.size());
    for (const Edge& e : og.edges) base.edges.push_back({map_outer(e.tail), map_outer(e.head)});
    auto slots = detail::endpoints_at(og, black_vertex(slot));
    // remap slot indices onto base (same positions)
    for (const auto& [ig, ic] : inner.terms) {
      std::vector<int> targets;
      for (int j = 1; j <= np; ++j) targets.push_back(black_vertex(slot + j - 1));
      std::vector<Edge> suffix;
      suffix.reserve(ig.edges.size());
      for (const Edge& e : ig.edges)
        suffix.push_back({e.tail + slot - 1, e.head + slot - 1});
      detail::reattach_sum(out, base, slots, targets, suffix, oc * ic);
    }
  }
  return out;
}

/// Insert an open vector into white slot i: delete white vertex i of the outer
/// graph and sum over all reattachments of its in-edges to any inner vertex.
/// Inner whites take labels i..i+k'-1, outer whites above i shift, inner
/// blacks take labels n+1..n+n'; edge order is outer edges then inner edges.
inline GraphVector insert_white(const GraphVector& outer, int slot, const GraphVector& inner) {
  if (outer.color != Color::o) throw GraphError("insert_white: outer must have open color");
  if (inner.color != Color::o) throw GraphError("insert_white: inner must have open color");
  if (slot < 1 || slot > outer.nw) throw GraphError("insert_white: slot out of range");
  const int np = inner.nb, kp = inner.nw;
  GraphVector out = GraphVector::zero(outer.nb + np, outer.nw + kp - 1, Color::o);
  auto map_outer = [&](int v) {
    if (!is_white_vertex(v)) return v;
    const int l = vertex_label(v);
    if (l < slot) return v;
    if (l > slot) return white_vertex(l + kp - 1);
    return 0;  // deleted vertex, patched by reattachment
  };
  for (const auto& [og, oc] : outer.terms) {
    Graph base{out.nb, out.nw, {}};
    base.edges.reserve(og.edges.size());
    for (const Edge& e : og.edges) base.edges.push_back({e.tail, map_outer(e.head)});
    auto slots = detail::endpoints_at(og, white_vertex(slot));
    for (const auto& [ig, ic] : inner.terms) {
      std::vector<int> targets;
      for (int j = 1; j <= np; ++j) targets.push_back(black_vertex(outer.nb + j));
      for (int j = 1; j <= kp; ++j) targets.push_back(white_vertex(slot + j - 1));
      std::vector<Edge> suffix;
      suffix.reserve(ig.edges.size());
      for (const Edge& e : ig.edges) {
        auto map_inner = [&](int v) {
          return is_white_vertex(v) ? white_vertex(vertex_label(v) + slot - 1)
                                    : black_vertex(v + outer.nb);
        };
        suffix.push_back({map_inner(e.tail), map_inner(e.head)});
      }
      detail::reattach_sum(out, base, slots, targets, suffix, oc * ic);
    }
  }
  return out;
}

inline GraphVector compose(const GraphVector& outer, int slot, Color color,
                           const GraphVector& inner) {
  return color == Color::c ? insert_black(outer, slot, inner)
                           : insert_white(outer, slot, inner);
}

/// Reinterpret a pure-black vector in the other output color.
inline GraphVector recolor(const GraphVector& v, Color color) {
  if (v.nw != 0) throw GraphError("recolor: only pure-black vectors can change color");
  GraphVector out = v;
  out.color = color;
  return out;
}

// ---------------------------------------------------------------------------
// dfGC differential
// ---------------------------------------------------------------------------

/// Retain only graphs without pikes.
inline GraphVector drop_pike_graphs(const GraphVector& v) {
  GraphVector out = GraphVector::zero(v.nb, v.nw, v.color);
  for (const auto& [g, c] : v.terms)
    if (count_pikes(g) == 0) out.terms.emplace(g, c);
  return out;
}

/// Split by exact pike count; only nonzero parts are present.
inline std::map<int, GraphVector> split_by_pikes(const GraphVector& v) {
  std::map<int, GraphVector> parts;
  for (const auto& [g, c] : v.terms) {
    int r = count_pikes(g);
    auto it = parts.find(r);
    if (it == parts.end()) {
      GraphVector part = GraphVector::zero(v.nb, v.nw, v.color);
      part.terms.emplace(g, c);
      parts.emplace(r, std::move(part));
    } else {
      it->second.terms.emplace(g, c);
    }
  }
  return parts;
}

/// Retain only connected graphs.
inline GraphVector connected_part(const GraphVector& v) {
  GraphVector out = GraphVector::zero(v.nb, v.nw, v.color);
  for (const auto& [g, c] : v.terms)
    if (is_connected(g)) out.terms.emplace(g, c);
  return out;
}

/// Differential of the connected directed graph complex on S_n-invariant
/// pure-black vectors: the bracket with the two-orientation edge,
///   [edge, g] = attach(g) - (-1)^{e(g)} split(g),
/// with disconnected terms dropped. attach inserts g into one vertex of the
/// edge (fresh-vertex attachments, both orientations); split inserts the edge
/// into vertex 1 of g with the Sh(2,n-1) relabelings. On connected pike-free
/// inputs of even degree, -[edge,g] equals the pike-free part of the splitting
/// sum minus the broom attachments, which is how the one-vertex extension
/// identity consumes it.
inline GraphVector dfgc_differential(const GraphVector& g) {
  if (g.nw != 0) throw GraphError("dfgc_differential: input must be pure black");
  if (!is_black_invariant(g)) throw GraphError("dfgc_differential: input not S_n-invariant");
  const int n = g.nb;
  GraphVector out = GraphVector::zero(n + 1, 0, Color::c);
  // split by homogeneous edge count for the degree sign
  std::map<int, GraphVector> parts;
  for (const auto& [gr, c] : g.terms) {
    auto it = parts.find(gr.edge_count());
    if (it == parts.end()) {
      GraphVector p = GraphVector::zero(n, 0, Color::c);
      p.terms.emplace(gr, c);
      parts.emplace(gr.edge_count(), std::move(p));
    } else {
      it->second.terms.emplace(gr, c);
    }
  }
  for (const auto& [e, part] : parts) {
    GraphVector attach = GraphVector::zero(n + 1, 0, Color::c);
    {
      const GraphVector ins = insert_black(gamma_edge(), 1, part);
      for (const Perm& t : shuffles(n, 1)) attach += act_black(t, ins);
    }
    GraphVector split = GraphVector::zero(n + 1, 0, Color::c);
    {
      const GraphVector ins = insert_black(part, 1, gamma_edge());
      for (const Perm& t : shuffles(2, n - 1)) split += act_black(t, ins);
    }
    out += e % 2 == 0 ? attach - split : attach + split;
  }
  return connected_part(out);
}

}  // namespace sfq
