#pragma once

#include <functional>
#include <sstream>

#include "sfq/linalg.hpp"

namespace sfq {

// ---------------------------------------------------------------------------
// Corollas
// ---------------------------------------------------------------------------

enum class CKind { Closed, Open, Mixed };

/// Generator of OC: t^c_n (n>=2), t^o_k (k>=2), or t^o_{n,k} (n>=1, k>=0).
struct Corolla {
  CKind kind = CKind::Mixed;
  int n = 0;
  int k = 0;

  auto operator<=>(const Corolla&) const = default;

  bool valid() const {
    switch (kind) {
      case CKind::Closed: return n >= 2 && k == 0;
      case CKind::Open: return n == 0 && k >= 2;
      case CKind::Mixed: return n >= 1 && k >= 0;
    }
    return false;
  }

  int degree() const {
    switch (kind) {
      case CKind::Closed: return 3 - 2 * n;
      case CKind::Open: return 2 - k;
      case CKind::Mixed: return 2 - 2 * n - k;
    }
    return 0;
  }

  Color output_color() const { return kind == CKind::Closed ? Color::c : Color::o; }

  std::string str() const {
    std::ostringstream os;
    switch (kind) {
      case CKind::Closed: os << "c:" << n; break;
      case CKind::Open: os << "o:" << k; break;
      case CKind::Mixed: os << "o:" << n << "," << k; break;
    }
    return os.str();
  }
};

inline Corolla closed_corolla(int n) { return {CKind::Closed, n, 0}; }
inline Corolla open_corolla(int k) { return {CKind::Open, 0, k}; }
inline Corolla mixed_corolla(int n, int k) { return {CKind::Mixed, n, k}; }

/// t^o_{0,j} means t^o_j; invalid arities signal term omission.
inline std::optional<Corolla> mixed_or_open(int n, int k) {
  const Corolla c = n == 0 ? open_corolla(k) : mixed_corolla(n, k);
  if (!c.valid()) return std::nullopt;
  return c;
}

// ---------------------------------------------------------------------------
// The differential D as a list of two-level trees
// ---------------------------------------------------------------------------

/// One term of D(t): sign * (black_perm, id)(outer o_{slot,color} inner).
struct DTerm {
  int sign = 1;
  Perm black_perm;  // on the composite's black inputs
  Corolla outer;
  int slot = 1;
  Color color = Color::c;
  Corolla inner;
};

inline std::vector<DTerm> oc_differential(const Corolla& t) {
  if (!t.valid()) throw GraphError("oc_differential: invalid corolla " + t.str());
  std::vector<DTerm> out;
  auto parity = [](int e) { return e % 2 == 0 ? 1 : -1; };
  switch (t.kind) {
    case CKind::Closed: {
      const int n = t.n;
      for (int p = 2; p <= n - 1; ++p) {
        const Corolla outer = closed_corolla(n - p + 1), inner = closed_corolla(p);
        if (!outer.valid() || !inner.valid()) continue;
        for (const Perm& tau : shuffles(p, n - p))
          out.push_back({-1, tau, outer, 1, Color::c, inner});
      }
      break;
    }
    case CKind::Open: {
      const int k = t.k;
      for (int p = 0; p <= k - 2; ++p)
        for (int q = p + 2; q <= k; ++q) {
          const auto outer = mixed_or_open(0, k - q + p + 1);
          const auto inner = mixed_or_open(0, q - p);
          if (!outer || !inner) continue;
          out.push_back({-parity(p + (k - q) * (q - p)), Perm{}, *outer, p + 1, Color::o, *inner});
        }
      break;
    }
    case CKind::Mixed: {
      const int n = t.n, k = t.k;
      for (int p = 2; p <= n; ++p) {
        const auto outer = mixed_or_open(n - p + 1, k);
        const Corolla inner = closed_corolla(p);
        if (!outer || !inner.valid()) continue;
        for (const Perm& tau : shuffles(p, n - p))
          out.push_back({parity(k), tau, *outer, 1, Color::c, inner});
      }
      for (int r = 0; r <= n; ++r)
        for (int p = 0; p <= k; ++p)
          for (int q = p; q <= k; ++q) {
            const auto outer = mixed_or_open(r, k - q + p + 1);
            const auto inner = mixed_or_open(n - r, q - p);
            if (!outer || !inner) continue;
            for (const Perm& s : shuffles(r, n - r))
              out.push_back({-parity(p + (k - q) * (q - p)), s, *outer, p + 1, Color::o, *inner});
          }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// AlphaTable: partial degree-1 element with the boundary conditions baked in
// ---------------------------------------------------------------------------

struct TableMiss : std::runtime_error {
  Corolla missing;
  explicit TableMiss(const Corolla& c)
      : std::runtime_error("missing table entry at " + c.str()), missing(c) {}
};

struct InconsistentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class AlphaTable {
 public:
  AlphaTable() = default;
  AlphaTable(int nmax, int kmax) : nmax_(nmax), kmax_(kmax) {}

  int nmax() const { return nmax_; }
  int kmax() const { return kmax_; }

  const std::map<std::pair<int, int>, GraphVector>& entries() const { return entries_; }

  bool has_entry(int n, int k) const { return entries_.count({n, k}) != 0; }

  const GraphVector& entry(int n, int k) const {
    auto it = entries_.find({n, k});
    if (it == entries_.end()) throw TableMiss(mixed_corolla(n, k));
    return it->second;
  }

  /// Stored values must be connected with exactly 2n+k-2 edges per term.
  /// Row 1 is boundary-fixed; storing it is allowed only so that loaded files
  /// can be checked against the boundary conditions.
  void set_entry(int n, int k, GraphVector v) {
    if (n < 1) throw GraphError("set_entry: mixed corollas have n >= 1");
    if (v.nb != n || v.nw != k || v.color != Color::o)
      throw GraphError("set_entry: arity mismatch at " + mixed_corolla(n, k).str());
    const auto e = v.homogeneous_edges();
    if (e && *e != 2 * n + k - 2)
      throw GraphError("set_entry: wrong edge count at " + mixed_corolla(n, k).str());
    if (!all_terms_connected(v))
      throw GraphError("set_entry: disconnected term at " + mixed_corolla(n, k).str());
    entries_.insert_or_assign({n, k}, std::move(v));
  }

  /// Value on a corolla: boundary conditions for closed, open and (1,k)
  /// generators; stored entries for mixed (n>=2,k); throws TableMiss otherwise.
  GraphVector value(const Corolla& c) const {
    switch (c.kind) {
      case CKind::Closed:
        return c.n == 2 ? gamma_edge() : GraphVector::zero(c.n, 0, Color::c);
      case CKind::Open:
        return c.k == 2 ? gamma_ww() : GraphVector::zero(0, c.k, Color::o);
      case CKind::Mixed: {
        if (c.n == 1 && !has_entry(1, c.k)) {
          GraphVector b = broom(c.k);
          b *= Rat(1) / rat_factorial(c.k);
          return b;
        }
        return entry(c.n, c.k);
      }
    }
    throw GraphError("value: invalid corolla");
  }

 private:
  int nmax_ = 0;
  int kmax_ = 0;
  std::map<std::pair<int, int>, GraphVector> entries_;
};

// ---------------------------------------------------------------------------
// MC evaluation
// ---------------------------------------------------------------------------

inline GraphVector zero_for(const Corolla& t) {
  switch (t.kind) {
    case CKind::Closed: return GraphVector::zero(t.n, 0, Color::c);
    case CKind::Open: return GraphVector::zero(0, t.k, Color::o);
    case CKind::Mixed: return GraphVector::zero(t.n, t.k, Color::o);
  }
  throw GraphError("zero_for: invalid corolla");
}

using SkipPred = std::function<bool(const Corolla&)>;

/// Corollas whose value is fixed to zero by the boundary conditions.
inline bool boundary_zero(const Corolla& c) {
  return (c.kind == CKind::Closed && c.n >= 3) || (c.kind == CKind::Open && c.k >= 3);
}

/// mu o (alpha s^-1 (x) alpha s^-1) o D at the corolla t. Terms for which
/// `skip` holds on either factor are omitted; all other factors must resolve.
inline GraphVector mc_evaluate_partial(const AlphaTable& a, const Corolla& t,
                                       const SkipPred& skip) {
  GraphVector acc = zero_for(t);
  for (const DTerm& d : oc_differential(t)) {
    if (skip && (skip(d.outer) || skip(d.inner))) continue;
    if (boundary_zero(d.outer) || boundary_zero(d.inner)) continue;
    const GraphVector vo = a.value(d.outer);
    if (vo.is_zero()) continue;
    const GraphVector vi = a.value(d.inner);
    if (vi.is_zero()) continue;
    GraphVector term = compose(vo, d.slot, d.color, vi);
    if (!d.black_perm.empty()) term = act_black(d.black_perm, term);
    acc += d.sign > 0 ? term : -term;
  }
  return acc;
}

/// Returns 0 iff the MC equation holds at t (given the table's values).
inline GraphVector mc_evaluate(const AlphaTable& a, const Corolla& t) {
  return mc_evaluate_partial(a, t, nullptr);
}

enum class Verdict { Pass, Fail, Unchecked };

struct VerifyItem {
  Corolla corolla;
  Verdict verdict = Verdict::Unchecked;
  std::string detail;
};

/// Evaluate the MC equation on every corolla in a scan window; corollas whose
/// expansion needs entries beyond the table are reported UNCHECKED.
inline std::vector<VerifyItem> mc_verify(const AlphaTable& a, int nscan = -1, int kscan = -1) {
  if (nscan < 0) {
    nscan = 2;
    for (const auto& [nk, v] : a.entries()) nscan = std::max(nscan, nk.first);
  }
  if (kscan < 0) {
    kscan = 0;
    for (const auto& [nk, v] : a.entries()) kscan = std::max(kscan, nk.second);
  }
  std::vector<VerifyItem> out;
  auto run = [&](const Corolla& t) {
    VerifyItem item{t, Verdict::Unchecked, ""};
    try {
      const GraphVector r = mc_evaluate(a, t);
      item.verdict = r.is_zero() ? Verdict::Pass : Verdict::Fail;
      if (item.verdict == Verdict::Fail)
        item.detail = "nonzero with " + std::to_string(r.size()) + " terms";
    } catch (const TableMiss& miss) {
      item.detail = "needs " + miss.missing.str();
    }
    out.push_back(std::move(item));
  };
  for (int n = 2; n <= nscan + 2; ++n) run(closed_corolla(n));
  for (int k = 2; k <= kscan + 3; ++k) run(open_corolla(k));
  for (int n = 1; n <= nscan + 1; ++n)
    for (int k = 0; k <= kscan + 2; ++k) run(mixed_corolla(n, k));
  return out;
}

// ---------------------------------------------------------------------------
// Gauge vectors and the exponential of the adjoint action
// ---------------------------------------------------------------------------

/// Degree-0 element concentrated on finitely many mixed corollas with n >= 2;
/// vanishing on closed, open and (1,q) corollas preserves the boundary
/// conditions. Terms are connected with 2n+k-1 edges.
class GaugeVector {
 public:
  GaugeVector() = default;

  void set(int n, int k, GraphVector v) {
    if (n < 2) throw GraphError("gauge values on closed/open/(1,q) corollas must vanish");
    if (v.nb != n || v.nw != k || v.color != Color::o)
      throw GraphError("gauge value arity mismatch");
    const auto e = v.homogeneous_edges();
    if (e && *e != 2 * n + k - 1) throw GraphError("gauge value must have degree 0 (2n+k-1 edges)");
    if (!all_terms_connected(v)) throw GraphError("gauge value terms must be connected");
    if (v.is_zero()) return;
    values_.insert_or_assign({n, k}, std::move(v));
  }

  bool empty() const { return values_.empty(); }
  const std::map<std::pair<int, int>, GraphVector>& values() const { return values_; }

  /// Zero on everything except the stored mixed corollas.
  std::optional<GraphVector> value(const Corolla& c) const {
    if (c.kind != CKind::Mixed) return std::nullopt;
    auto it = values_.find({c.n, c.k});
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::pair<int, int>, GraphVector> values_;
};

namespace detail {

/// One adjoint step [xi, Y] evaluated at t, where Y is a corolla-indexed value
/// map. Convention pinned by the hand identities:
///   xi on (m-1,1):  [xi,alpha](t^o_{m,0})  ==  d(xi-value)      (pike step)
///   xi on (m,k-1):  [xi,alpha](t^o_{m,k})  == -dHoch(xi-value)  (column step)
inline GraphVector gauge_bracket(const GaugeVector& xi,
                                 const std::function<GraphVector(const Corolla&)>& y,
                                 const Corolla& t) {
  GraphVector acc = zero_for(t);
  for (const DTerm& d : oc_differential(t)) {
    if (boundary_zero(d.outer) || boundary_zero(d.inner)) continue;
    // xi in the inner slot
    if (auto xv = xi.value(d.inner); xv && !xv->is_zero()) {
      const GraphVector vo = y(d.outer);
      if (!vo.is_zero()) {
        GraphVector term = compose(vo, d.slot, d.color, *xv);
        if (!d.black_perm.empty()) term = act_black(d.black_perm, term);
        acc += d.sign > 0 ? -term : term;
      }
    }
    // xi in the outer slot
    if (auto xv = xi.value(d.outer); xv && !xv->is_zero()) {
      const GraphVector vi = y(d.inner);
      if (!vi.is_zero()) {
        GraphVector term = compose(*xv, d.slot, d.color, vi);
        if (!d.black_perm.empty()) term = act_black(d.black_perm, term);
        acc += d.sign > 0 ? -term : term;
      }
    }
  }
  return acc;
}

}  // namespace detail

/// exp(ad_xi) applied to the table, restricted to the stored entries. Entries
/// whose expansion would need values beyond the cutoff are dropped (reported
/// through `dropped` when provided).
inline AlphaTable gauge_apply(const GaugeVector& xi, const AlphaTable& a,
                              std::vector<Corolla>* dropped = nullptr) {
  AlphaTable out(a.nmax(), a.kmax());
  if (xi.empty()) return a;
  // ad^j values per corolla, computed lazily; level 0 is the table itself
  std::map<std::pair<int, Corolla>, GraphVector> memo;
  std::function<GraphVector(int, const Corolla&)> ad = [&](int level,
                                                           const Corolla& c) -> GraphVector {
    if (level == 0) return a.value(c);
    const auto key = std::make_pair(level, c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    GraphVector v = detail::gauge_bracket(
        xi, [&](const Corolla& cc) { return ad(level - 1, cc); }, c);
    memo.emplace(key, v);
    return v;
  };
  for (const auto& [nk, val] : a.entries()) {
    const Corolla t = mixed_corolla(nk.first, nk.second);
    try {
      GraphVector total = val;
      Rat fact = 1;
      for (int j = 1; j <= nk.first; ++j) {  // ad_xi^j vanishes once j blacks exceed n
        fact *= j;
        GraphVector term = ad(j, t);
        if (term.is_zero()) continue;
        term *= Rat(1) / fact;
        total += term;
      }
      out.set_entry(nk.first, nk.second, std::move(total));
    } catch (const TableMiss&) {
      if (dropped) dropped->push_back(t);
    }
  }
  return out;
}

}  // namespace sfq
