#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfq/perms.hpp"

namespace sfq {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vertex ids: black vertices are 1..nb, white vertices are kWhiteBase+1..kWhiteBase+nw.
// The color order c < o is baked into the numeric order.
constexpr int kWhiteBase = 1 << 20;

inline int black_vertex(int label) { return label; }
inline int white_vertex(int label) { return kWhiteBase + label; }
inline bool is_white_vertex(int v) { return v > kWhiteBase; }
inline int vertex_label(int v) { return is_white_vertex(v) ? v - kWhiteBase : v; }

struct Edge {
  int tail = 0;
  int head = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Directed two-colored labeled multigraph with a totally ordered edge list.
/// Tails are always black and loops are not allowed.
struct Graph {
  int nb = 0;
  int nw = 0;
  std::vector<Edge> edges;

  auto operator<=>(const Graph&) const = default;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree() const { return -edge_count(); }

  void validate() const {
    if (nb < 0 || nw < 0) throw GraphError("negative vertex count");
    for (const Edge& e : edges) {
      if (e.tail == e.head) throw GraphError("loop edge is not allowed");
      if (is_white_vertex(e.tail)) throw GraphError("edge tail must be a black vertex");
      if (e.tail < 1 || e.tail > nb) throw GraphError("black tail label out of range");
      const int hl = vertex_label(e.head);
      if (is_white_vertex(e.head)) {
        if (hl < 1 || hl > nw) throw GraphError("white head label out of range");
      } else {
        if (hl < 1 || hl > nb) throw GraphError("black head label out of range");
      }
    }
  }
};

struct CanonicalGraph {
  Graph graph;   // edges sorted, meaningful only when !zero
  int sign = 1;  // parity of the sorting permutation
  bool zero = false;
};

/// Sort the edge list; the sign is the parity of the sorting permutation.
/// A repeated identical directed edge forces the zero vector.
inline CanonicalGraph canonicalize_graph(const Graph& raw) {
  raw.validate();
  CanonicalGraph out;
  out.graph = raw;
  auto& es = out.graph.edges;
  int sign = 1;
  // insertion sort, counting transpositions
  for (size_t i = 1; i < es.size(); ++i) {
    Edge key = es[i];
    size_t j = i;
    while (j > 0 && key < es[j - 1]) {
      es[j] = es[j - 1];
      sign = -sign;
      --j;
    }
    es[j] = key;
  }
  for (size_t i = 1; i < es.size(); ++i) {
    if (es[i] == es[i - 1]) {
      out.zero = true;
      return out;
    }
  }
  out.sign = sign;
  return out;
}

/// Relabel vertices by (perm_black, perm_white); edge order is preserved.
inline Graph relabel(const Graph& g, const Perm& pb, const Perm& pw) {
  if (static_cast<int>(pb.size()) != g.nb || static_cast<int>(pw.size()) != g.nw)
    throw GraphError("permutation size mismatch");
  Graph out = g;
  auto map_vertex = [&](int v) {
    return is_white_vertex(v) ? white_vertex(pw[vertex_label(v) - 1])
                              : black_vertex(pb[v - 1]);
  };
  for (Edge& e : out.edges) {
    e.tail = map_vertex(e.tail);
    e.head = map_vertex(e.head);
  }
  return out;
}

/// Connectivity of the underlying undirected graph on all nb+nw vertices.
inline bool is_connected(const Graph& g) {
  const int total = g.nb + g.nw;
  if (total <= 1) return true;
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](int v) {
    return is_white_vertex(v) ? g.nb + vertex_label(v) - 1 : v - 1;
  };
  int comps = total;
  for (const Edge& e : g.edges) {
    int a = find(index(e.tail)), b = find(index(e.head));
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

/// A pike is a univalent black vertex whose unique incident edge points into it.
inline int count_pikes(const Graph& g) {
  std::vector<int> in(g.nb + 1, 0), out_deg(g.nb + 1, 0);
  for (const Edge& e : g.edges) {
    out_deg[e.tail]++;
    if (!is_white_vertex(e.head)) in[e.head]++;
  }
  int pikes = 0;
  for (int v = 1; v <= g.nb; ++v)
    if (in[v] == 1 && out_deg[v] == 0) ++pikes;
  return pikes;
}

inline bool black_is_pike(const Graph& g, int label) {
  int in = 0, out = 0;
  for (const Edge& e : g.edges) {
    if (e.tail == label) ++out;
    if (e.head == black_vertex(label)) ++in;
  }
  return in == 1 && out == 0;
}

/// In-degrees of white vertices 1..nw (whites have no outgoing edges).
inline std::vector<int> white_valencies(const Graph& g) {
  std::vector<int> val(g.nw, 0);
  for (const Edge& e : g.edges)
    if (is_white_vertex(e.head)) val[vertex_label(e.head) - 1]++;
  return val;
}

inline bool all_whites_univalent(const Graph& g) {
  for (int v : white_valencies(g))
    if (v != 1) return false;
  return true;
}

inline std::string vertex_str(int v) {
  return (is_white_vertex(v) ? "w" : "b") + std::to_string(vertex_label(v));
}

inline std::string graph_str(const Graph& g) {
  std::string s = "[" + std::to_string(g.nb) + "," + std::to_string(g.nw) + "]";
  for (const Edge& e : g.edges) s += " " + vertex_str(e.tail) + ">" + vertex_str(e.head);
  return s;
}

}  // namespace sfq
