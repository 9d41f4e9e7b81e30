#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "sfq/graph.hpp"
#include "sfq/rational.hpp"

namespace sfq {

/// Output color of a KGra vector: c (closed, pure black) or o (open).
enum class Color { c, o };

inline char color_char(Color c) { return c == Color::c ? 'c' : 'o'; }

/// Finite rational linear combination of canonical graphs of one bi-arity.
struct GraphVector {
  int nb = 0;
  int nw = 0;
  Color color = Color::o;
  std::map<Graph, Rat> terms;  // keys canonical, values nonzero

  static GraphVector zero(int nb, int nw, Color color) {
    GraphVector v;
    v.nb = nb;
    v.nw = nw;
    v.color = color;
    return v;
  }

  bool is_zero() const { return terms.empty(); }
  size_t size() const { return terms.size(); }

  bool arity_matches(const GraphVector& o) const {
    return nb == o.nb && nw == o.nw && color == o.color;
  }

  /// Canonicalize a raw graph and add coeff * (canonical term).
  void accumulate(const Graph& raw, const Rat& coeff) {
    if (coeff == 0) return;
    if (raw.nb != nb || raw.nw != nw) throw GraphError("term bi-arity mismatch");
    if (color == Color::c && nw != 0) throw GraphError("closed-colored vector with white vertices");
    CanonicalGraph c = canonicalize_graph(raw);
    if (c.zero) return;
    auto it = terms.find(c.graph);
    if (it == terms.end()) {
      terms.emplace(std::move(c.graph), c.sign > 0 ? coeff : -coeff);
    } else {
      it->second += c.sign > 0 ? coeff : -coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  GraphVector& operator+=(const GraphVector& o) {
    if (!arity_matches(o)) throw GraphError("vector arity mismatch in +=");
    for (const auto& [g, c] : o.terms) {
      auto it = terms.find(g);
      if (it == terms.end()) {
        terms.emplace(g, c);
      } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
      }
    }
    return *this;
  }

  GraphVector& operator-=(const GraphVector& o) { return *this += -o; }

  GraphVector operator-() const {
    GraphVector v = *this;
    for (auto& [g, c] : v.terms) c = -c;
    return v;
  }

  GraphVector& operator*=(const Rat& s) {
    if (s == 0) {
      terms.clear();
      return *this;
    }
    for (auto& [g, c] : terms) c *= s;
    return *this;
  }

  friend GraphVector operator+(GraphVector a, const GraphVector& b) { return a += b; }
  friend GraphVector operator-(GraphVector a, const GraphVector& b) { return a -= b; }
  friend GraphVector operator*(const Rat& s, GraphVector v) { return v *= s; }

  bool operator==(const GraphVector& o) const {
    return arity_matches(o) && terms == o.terms;
  }

  /// Edge count when homogeneous, nullopt for the zero vector or mixed counts.
  std::optional<int> homogeneous_edges() const {
    std::optional<int> e;
    for (const auto& [g, c] : terms) {
      if (!e) e = g.edge_count();
      else if (*e != g.edge_count()) return std::nullopt;
    }
    return e;
  }
};

/// [graph_core] canonicalize: single-term vector with the parity sign, or zero.
inline GraphVector canonicalize(const Graph& raw, Color color = Color::o) {
  GraphVector v = GraphVector::zero(raw.nb, raw.nw, color);
  v.accumulate(raw, 1);
  return v;
}

/// [graph_core] act: relabel vertices by (perm_black, perm_white).
inline GraphVector act(const Perm& pb, const Perm& pw, const GraphVector& v) {
  if (static_cast<int>(pb.size()) != v.nb || static_cast<int>(pw.size()) != v.nw)
    throw GraphError("act: permutation size mismatch");
  GraphVector out = GraphVector::zero(v.nb, v.nw, v.color);
  for (const auto& [g, c] : v.terms) out.accumulate(relabel(g, pb, pw), c);
  return out;
}

inline GraphVector act_black(const Perm& pb, const GraphVector& v) {
  return act(pb, identity_perm(v.nw), v);
}

inline bool is_black_invariant(const GraphVector& v) {
  for (const Perm& s : all_perms(v.nb))
    if (act_black(s, v) != v) return false;
  return true;
}

/// Property of being antisymmetric under white relabelings: (id,s)v = sgn(s) v.
inline bool is_white_antisymmetric(const GraphVector& v) {
  const Perm id = identity_perm(v.nb);
  for (const Perm& s : all_perms(v.nw)) {
    GraphVector w = act(id, s, v);
    if (perm_sign(s) < 0) w = -w;
    if (w != v) return false;
  }
  return true;
}

inline bool all_terms_white_univalent(const GraphVector& v) {
  for (const auto& [g, c] : v.terms)
    if (!all_whites_univalent(g)) return false;
  return true;
}

inline bool all_terms_connected(const GraphVector& v) {
  for (const auto& [g, c] : v.terms)
    if (!is_connected(g)) return false;
  return true;
}

inline std::string vector_str(const GraphVector& v) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto& [g, c] : v.terms) {
    if (!s.empty()) s += " + ";
    s += rat_str(c) + "*" + graph_str(g);
  }
  return s;
}

}  // namespace sfq
