#pragma once

#include <functional>
#include <optional>
#include <set>

#include "sfq/homology.hpp"

namespace sfq {

struct BasisFilters {
  bool connected_only = false;
  bool no_pikes = false;
  bool white_univalent = false;
};

/// All canonical graphs of bi-arity (nb,nw) with e edges, in deterministic
/// (lexicographic) order. Black tails, no loops, no repeated edges.
inline std::vector<Graph> enumerate_basis(int nb, int nw, int e, BasisFilters f = {}) {
  std::vector<Edge> all;
  for (int t = 1; t <= nb; ++t) {
    for (int h = 1; h <= nb; ++h)
      if (h != t) all.push_back({t, black_vertex(h)});
    for (int h = 1; h <= nw; ++h) all.push_back({t, white_vertex(h)});
  }
  std::sort(all.begin(), all.end());
  std::vector<Graph> out;
  if (e > static_cast<int>(all.size())) return out;
  std::vector<int> pick(e);
  std::iota(pick.begin(), pick.end(), 0);
  const int m = static_cast<int>(all.size());
  while (true) {
    Graph g{nb, nw, {}};
    for (int i : pick) g.edges.push_back(all[i]);
    bool ok = true;
    if (f.connected_only && !is_connected(g)) ok = false;
    if (ok && f.no_pikes && count_pikes(g) != 0) ok = false;
    if (ok && f.white_univalent && !all_whites_univalent(g)) ok = false;
    if (ok) out.push_back(std::move(g));
    if (e == 0) break;
    int i = e - 1;
    while (i >= 0 && pick[i] == m - (e - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < e; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

/// Spanning set of the S_n-invariant (optionally white-antisymmetrized)
/// subspace: orbit sums of canonical graphs, zero orbits dropped.
/// Distinct orbits have disjoint support, so the set is independent.
inline std::vector<GraphVector> invariant_basis(int nb, int nw, int e, BasisFilters f,
                                                bool alternate_whites) {
  std::vector<GraphVector> out;
  std::set<Graph> seen;
  const auto perms_b = all_perms(nb);
  const auto perms_w = alternate_whites ? all_perms(nw) : std::vector<Perm>{identity_perm(nw)};
  for (const Graph& g : enumerate_basis(nb, nw, e, f)) {
    if (seen.count(g)) continue;
    GraphVector orbit = GraphVector::zero(nb, nw, Color::o);
    const GraphVector gen = canonicalize(g);
    for (const Perm& sb : perms_b)
      for (const Perm& sw : perms_w) {
        GraphVector t = act(sb, sw, gen);
        orbit += (alternate_whites && perm_sign(sw) < 0) ? -t : t;
      }
    // mark the whole orbit as visited, including members cancelled in the sum
    for (const Perm& sb : perms_b)
      for (const Perm& sw : perms_w)
        seen.insert(canonicalize_graph(relabel(g, sb, sw)).graph);
    if (!orbit.is_zero()) out.push_back(std::move(orbit));
  }
  return out;
}

/// Exact sparse linear system assembled from operator blocks. Rows are indexed
/// by (block, codomain graph) pairs discovered during assembly; columns are the
/// unknown basis vectors shared across blocks.
class SystemBuilder {
 public:
  explicit SystemBuilder(int ncols) : ncols_(ncols) {}

  using LinearOp = std::function<GraphVector(const GraphVector&)>;

  /// Adds equations  op(x) == rhs  over the current unknowns.
  void add_block(const LinearOp& op, const std::vector<GraphVector>& domain,
                 const GraphVector& rhs) {
    if (static_cast<int>(domain.size()) != ncols_)
      throw std::invalid_argument("SystemBuilder: domain size mismatch");
    std::vector<GraphVector> cols;
    cols.reserve(domain.size());
    for (const GraphVector& d : domain) cols.push_back(op(d));
    add_column_block(cols, rhs);
  }

  /// Adds equations with the operator columns already evaluated.
  void add_column_block(const std::vector<GraphVector>& cols, const GraphVector& rhs) {
    if (static_cast<int>(cols.size()) != ncols_)
      throw std::invalid_argument("SystemBuilder: column count mismatch");
    std::map<Graph, int> rows;  // codomain graph -> row id, this block
    auto row_id = [&](const Graph& g) {
      auto it = rows.find(g);
      if (it != rows.end()) return it->second;
      const int id = static_cast<int>(a_.size());
      rows.emplace(g, id);
      a_.emplace_back();
      b_.emplace_back(0);
      return id;
    };
    for (const auto& [g, c] : rhs.terms) b_[row_id(g)] = c;
    for (int j = 0; j < ncols_; ++j) {
      const GraphVector& y = cols[j];
      if (!y.is_zero() && !(y.nb == rhs.nb && y.nw == rhs.nw))
        throw std::invalid_argument("SystemBuilder: operator output arity mismatch");
      for (const auto& [g, c] : y.terms) a_[row_id(g)][j] = c;
    }
  }

  int rows() const { return static_cast<int>(a_.size()); }
  int cols() const { return ncols_; }

  /// Gaussian elimination with deterministic pivoting (first nonzero column,
  /// smallest row index). Free variables are set to zero. Returns nullopt when
  /// the system is inconsistent.
  std::optional<std::vector<Rat>> solve() const {
    std::vector<std::map<int, Rat>> a = a_;
    std::vector<Rat> b = b_;
    const int nrows = static_cast<int>(a.size());
    std::vector<int> pivot_row_of_col(ncols_, -1);
    std::vector<bool> used(nrows, false);
    for (int j = 0; j < ncols_; ++j) {
      int pr = -1;
      for (int r = 0; r < nrows; ++r) {
        if (used[r]) continue;
        auto it = a[r].find(j);
        if (it != a[r].end() && it->second != 0) {
          pr = r;
          break;
        }
      }
      if (pr < 0) continue;
      used[pr] = true;
      pivot_row_of_col[j] = pr;
      const Rat inv = Rat(1) / a[pr].at(j);
      for (auto& [c, v] : a[pr]) v *= inv;
      b[pr] *= inv;
      for (int r = 0; r < nrows; ++r) {
        if (r == pr) continue;
        auto it = a[r].find(j);
        if (it == a[r].end() || it->second == 0) continue;
        const Rat f = it->second;
        for (const auto& [c, v] : a[pr]) {
          auto jt = a[r].find(c);
          if (jt == a[r].end()) {
            a[r].emplace(c, -f * v);
          } else {
            jt->second -= f * v;
            if (jt->second == 0) a[r].erase(jt);
          }
        }
        b[r] -= f * b[pr];
      }
    }
    for (int r = 0; r < nrows; ++r)
      if (!used[r] && b[r] != 0) return std::nullopt;
    std::vector<Rat> x(ncols_, Rat(0));
    for (int j = 0; j < ncols_; ++j)
      if (pivot_row_of_col[j] >= 0) x[j] = b[pivot_row_of_col[j]];
    return x;
  }

 private:
  int ncols_ = 0;
  std::vector<std::map<int, Rat>> a_;
  std::vector<Rat> b_;
};

/// Combine a solved coefficient vector with its basis.
inline GraphVector combine(const std::vector<GraphVector>& basis, const std::vector<Rat>& x,
                           int nb, int nw, Color color) {
  GraphVector out = GraphVector::zero(nb, nw, color);
  for (size_t j = 0; j < basis.size(); ++j) {
    if (x[j] == 0) continue;
    GraphVector t = basis[j];
    t *= x[j];
    out += t;
  }
  return out;
}

/// Column matrix of a linear operator over explicit bases, as coordinate
/// triplets. Throws if an operator output leaves the codomain span.
struct MatrixEntry {
  int row;
  int col;
  Rat value;
};

inline std::vector<MatrixEntry> assemble(const std::function<GraphVector(const GraphVector&)>& op,
                                         const std::vector<Graph>& domain,
                                         const std::vector<Graph>& codomain) {
  std::map<Graph, int> row_of;
  for (size_t i = 0; i < codomain.size(); ++i) row_of.emplace(codomain[i], static_cast<int>(i));
  std::vector<MatrixEntry> out;
  for (size_t j = 0; j < domain.size(); ++j) {
    const GraphVector y = op(canonicalize(domain[j]));
    for (const auto& [g, c] : y.terms) {
      auto it = row_of.find(g);
      if (it == row_of.end())
        throw GraphError("assemble: operator output escapes the codomain basis: " + graph_str(g));
      out.push_back({it->second, static_cast<int>(j), c});
    }
  }
  return out;
}

}  // namespace sfq
