#pragma once

#include "sfq/oc.hpp"

namespace sfq {

/// White-arity budget for row m: building row m at column k consumes lower
/// rows at white arity up to k+2, so lower rows run two columns deeper per
/// level; the joint (m,0)/(m,1) stage additionally reads row m-1 at white
/// arity 3, hence the floor.
inline int row_budget(int nmax, int kmax, int m) {
  int b = kmax;
  for (int row = nmax; row > m; --row) b = std::max(b + 2, 3);
  return b;
}

struct StageState {
  AlphaTable table;
  std::vector<std::string> log;
  int nmax = 2;
  int kmax = 0;

  void note(const std::string& line) { log.push_back(line); }
};

namespace detail {

inline SkipPred skip_entry(int n, int k) {
  return [n, k](const Corolla& c) { return c.kind == CKind::Mixed && c.n == n && c.k == k; };
}

inline SkipPred skip_row_ge(int n) {
  return [n](const Corolla& c) { return c.kind == CKind::Mixed && c.n >= n; };
}

inline std::string dim_str(const SystemBuilder& sys) {
  return std::to_string(sys.rows()) + "x" + std::to_string(sys.cols());
}

/// Linearization of the MC value at `at` in the single entry (n,k):
/// off(x) = mc(entry:=x) - mc(entry:=0), rhs_const = mc(entry:=0); terms on
/// rows >= skip_row are omitted (the projection applied later kills them).
struct McLinearization {
  AlphaTable base;
  Corolla at;
  int n, k;
  SkipPred skip;
  GraphVector constant;

  McLinearization(const AlphaTable& table, const Corolla& at_, int n_, int k_, SkipPred skip_)
      : base(table), at(at_), n(n_), k(k_), skip(std::move(skip_)) {
    base.set_entry(n, k, GraphVector::zero(n, k, Color::o));
    constant = mc_evaluate_partial(base, at, skip);
  }

  GraphVector operator()(const GraphVector& x) const {
    AlphaTable t = base;
    t.set_entry(n, k, x);
    return mc_evaluate_partial(t, at, skip) - constant;
  }
};

}  // namespace detail

/// Solve dHoch(x) = rhs with Pi(x) = 0 over the connected invariant basis of
/// (2,k)-vectors and store the result; one call per column of row 2.
inline void stage_alpha2(StageState& st) {
  const int budget = row_budget(st.nmax, st.kmax, 2);
  for (int k = 1; k <= budget + 1; ++k) {
    const std::string tag = "level-2-k@k=" + std::to_string(k);
    const auto basis = invariant_basis(2, k - 1, k + 1, {.connected_only = true}, false);
    const GraphVector rhs = -mc_evaluate_partial(st.table, mixed_corolla(2, k),
                                                 detail::skip_entry(2, k - 1));
    SystemBuilder sys(static_cast<int>(basis.size()));
    sys.add_block(hoch_differential, basis, rhs);
    sys.add_block(pi_projection, basis, GraphVector::zero(2, k - 1, Color::o));
    const auto x = sys.solve();
    if (!x) throw InconsistentError("INCONSISTENT at " + tag);
    GraphVector beta = combine(basis, *x, 2, k - 1, Color::o);
    const auto e = beta.homogeneous_edges();
    st.note("stage alpha2:k=" + std::to_string(k - 1) + " eq " + tag + " dims " +
            detail::dim_str(sys) + " edges " + (e ? std::to_string(*e) : std::string("-")) +
            " terms " + std::to_string(beta.size()));
    st.table.set_entry(2, k - 1, std::move(beta));
  }
}

/// Gauge away pikes in the (m,0) entry: chi = -sum_r (1/r) d*(alpha^r), applied
/// through exp(ad_xi) with xi concentrated on (m-1,1).
inline void stage_kill_pikes(StageState& st, int m) {
  const std::string tag = "kill-pikes@m=" + std::to_string(m);
  if (!st.table.has_entry(m, 0)) {
    st.note("stage " + tag + " skipped (no (m,0) entry yet)");
    return;
  }
  const GraphVector prior = st.table.entry(m, 0);
  GraphVector chi = GraphVector::zero(m - 1, 1, Color::o);
  bool any = false;
  for (const auto& [r, part] : split_by_pikes(prior)) {
    if (r == 0) continue;
    any = true;
    GraphVector t = pike_homotopy(part);
    t *= Rat(-1, r);
    chi += t;
  }
  if (!any) {
    st.note("stage " + tag + " identity (entry already pike-free, chi = 0)");
    return;
  }
  if (!hoch_differential(chi).is_zero()) throw GraphError(tag + ": dHoch(chi) != 0");
  GaugeVector xi;
  xi.set(m - 1, 1, chi);
  std::vector<Corolla> dropped;
  st.table = gauge_apply(xi, st.table, &dropped);
  const GraphVector now = st.table.entry(m, 0);
  if (!(now == prior + pike_differential(chi)))
    throw GraphError(tag + ": gauge did not add d(chi)");
  if (!(drop_pike_graphs(now) == now)) throw GraphError(tag + ": entry still has pikes");
  std::string line = "stage " + tag + " gauge xi on o:" + std::to_string(m - 1) +
                     ",1 chi_terms " + std::to_string(chi.size());
  for (const Corolla& c : dropped) line += " dropped " + c.str();
  st.note(line);
}

/// Construct the (m,0) entry. The one-vertex extension equation at t^o_{m+1,0}
/// couples (m,0) to (m,1), so both are solved jointly (in the pike-free and
/// plain connected invariant bases); only the (m,0) component is stored here,
/// the k=1 column stage rebuilds its own.
inline void stage_dfgc(StageState& st, int m) {
  const std::string tag = "al-1m-m1-new@m=" + std::to_string(m);
  const auto basis0 =
      invariant_basis(m, 0, 2 * m - 2, {.connected_only = true, .no_pikes = true}, false);
  const auto basis1 = invariant_basis(m, 1, 2 * m - 1, {.connected_only = true}, false);
  const int n0 = static_cast<int>(basis0.size()), n1 = static_cast<int>(basis1.size());

  AlphaTable base = st.table;
  base.set_entry(m, 0, GraphVector::zero(m, 0, Color::o));
  base.set_entry(m, 1, GraphVector::zero(m, 1, Color::o));
  const SkipPred skip_above = detail::skip_row_ge(m + 1);
  const GraphVector const_ext = mc_evaluate_partial(base, mixed_corolla(m + 1, 0), skip_above);
  const GraphVector rhs_h =
      -mc_evaluate_partial(st.table, mixed_corolla(m, 2), detail::skip_entry(m, 1));
  auto ext_of = [&](const GraphVector& v0, const GraphVector& v1) {
    AlphaTable t = base;
    t.set_entry(m, 0, v0);
    t.set_entry(m, 1, v1);
    return mc_evaluate_partial(t, mixed_corolla(m + 1, 0), skip_above) - const_ext;
  };

  std::vector<GraphVector> ext_cols, hoch_cols;
  for (const GraphVector& b : basis0) {
    ext_cols.push_back(ext_of(b, GraphVector::zero(m, 1, Color::o)));
    hoch_cols.push_back(GraphVector::zero(m, 2, Color::o));
  }
  for (const GraphVector& b : basis1) {
    ext_cols.push_back(ext_of(GraphVector::zero(m, 0, Color::o), b));
    hoch_cols.push_back(hoch_differential(b));
  }
  SystemBuilder sys(n0 + n1);
  sys.add_column_block(hoch_cols, rhs_h);   // t^o_{m,2} equation, x1 only
  sys.add_column_block(ext_cols, -const_ext);  // t^o_{m+1,0} equation, both
  const auto x = sys.solve();
  if (!x) throw InconsistentError("INCONSISTENT at " + tag);
  std::vector<Rat> x0(x->begin(), x->begin() + n0);
  GraphVector beta = combine(basis0, x0, m, 0, Color::o);
  if (st.table.has_entry(m, 0)) {
    const GraphVector diff = st.table.entry(m, 0) - beta;
    if (!dfgc_differential(diff).is_zero())
      throw GraphError(tag + ": replaced entry does not differ by a dfGC cocycle");
    st.note("stage dfgc:m=" + std::to_string(m) + " cocycle difference verified, terms " +
            std::to_string(diff.size()));
  }
  st.note("stage dfgc:m=" + std::to_string(m) + " eq " + tag + " dims " + detail::dim_str(sys) +
          " edges " + std::to_string(2 * m - 2) + " terms " + std::to_string(beta.size()));
  st.table.set_entry(m, 0, std::move(beta));
}

/// Build the (m,k) entry against both of its in-cutoff equations: the
/// cohomological system from t^o_{m,k+1} and the Pi-projected system from
/// t^o_{m+1,k-1}. A fresh entry is solved jointly; a seeded entry walks the
/// gauge path (xi step, pike system, kappa and psi step).
inline void stage_rationalize_column(StageState& st, int m, int k) {
  const int e = 2 * m + k - 2;
  const std::string tag_h = "beta-m-k@m=" + std::to_string(m) + ",k=" + std::to_string(k);
  const std::string tag_d = "Pi-iden-ga-m-k@m=" + std::to_string(m) + ",k=" + std::to_string(k);

  const bool seeded = st.table.has_entry(m, k);
  const auto basis = invariant_basis(m, k, e, {.connected_only = true}, false);
  const GraphVector rhs_h =
      -mc_evaluate_partial(st.table, mixed_corolla(m, k + 1), detail::skip_entry(m, k));

  if (!seeded) {
    AlphaTable base = st.table;
    detail::McLinearization ext(base, mixed_corolla(m + 1, k - 1), m, k,
                                detail::skip_row_ge(m + 1));
    SystemBuilder sys(static_cast<int>(basis.size()));
    sys.add_block(hoch_differential, basis, rhs_h);
    sys.add_block([&ext](const GraphVector& v) { return pi_projection(ext(v)); }, basis,
                  -pi_projection(ext.constant));
    const auto x = sys.solve();
    if (!x) throw InconsistentError("INCONSISTENT at " + tag_h + " (joint with " + tag_d + ")");
    GraphVector entry = combine(basis, *x, m, k, Color::o);
    st.note("stage rationalize:m=" + std::to_string(m) + ",k=" + std::to_string(k) + " eq " +
            tag_h + "+" + tag_d + " dims " + detail::dim_str(sys) + " edges " +
            std::to_string(e) + " terms " + std::to_string(entry.size()));
    st.table.set_entry(m, k, std::move(entry));
    return;
  }

  // (ii) a rational solution of the cohomological equation alone
  const GraphVector prior = st.table.entry(m, k);
  SystemBuilder sys_h(static_cast<int>(basis.size()));
  sys_h.add_block(hoch_differential, basis, rhs_h);
  const auto xh = sys_h.solve();
  if (!xh) throw InconsistentError("INCONSISTENT at " + tag_h);
  const GraphVector beta = combine(basis, *xh, m, k, Color::o);
  st.note("stage rationalize:m=" + std::to_string(m) + ",k=" + std::to_string(k) + " eq " +
          tag_h + " dims " + detail::dim_str(sys_h) + " terms " + std::to_string(beta.size()));

  // (iii) gauge by xi_(k) so the entry becomes beta + Pi(prior - beta)
  const GraphVector gamma = pi_projection(prior - beta);
  {
    const GraphVector exact = prior - beta - gamma;
    const auto xi_basis = invariant_basis(m, k - 1, e, {.connected_only = true}, false);
    SystemBuilder sys_xi(static_cast<int>(xi_basis.size()));
    sys_xi.add_block(hoch_differential, xi_basis, exact);
    const auto xx = sys_xi.solve();
    if (!xx)
      throw InconsistentError("INCONSISTENT at xi-m-1k@m=" + std::to_string(m) +
                              ",k=" + std::to_string(k));
    GaugeVector xi;
    xi.set(m, k - 1, combine(xi_basis, *xx, m, k - 1, Color::o));
    std::vector<Corolla> dropped;
    st.table = gauge_apply(xi, st.table, &dropped);
    if (!(st.table.entry(m, k) == beta + gamma))
      throw GraphError(tag_h + ": xi gauge did not reach beta + gamma");
    st.note("stage rationalize:m=" + std::to_string(m) + ",k=" + std::to_string(k) +
            " gauge xi_(k) on o:" + std::to_string(m) + "," + std::to_string(k - 1));
  }

  // (iv) the pike system: d(gamma_t) = Pi(mc at t^o_{m+1,k-1} with entry beta)
  AlphaTable tmp = st.table;
  tmp.set_entry(m, k, beta);
  const GraphVector rhs_d = pi_projection(
      mc_evaluate_partial(tmp, mixed_corolla(m + 1, k - 1), detail::skip_row_ge(m + 1)));
  const auto basis_p =
      invariant_basis(m, k, e, {.connected_only = true, .white_univalent = true}, true);
  SystemBuilder sys_d(static_cast<int>(basis_p.size()));
  sys_d.add_block(pike_differential, basis_p, rhs_d);
  const auto xd = sys_d.solve();
  if (!xd) throw InconsistentError("INCONSISTENT at " + tag_d);
  const GraphVector gamma_t = combine(basis_p, *xd, m, k, Color::o);
  st.note("stage rationalize:m=" + std::to_string(m) + ",k=" + std::to_string(k) + " eq " +
          tag_d + " dims " + detail::dim_str(sys_d) + " terms " + std::to_string(gamma_t.size()));

  // (v) kappa = sum_r d*((gamma_t - gamma)^r)/(k+r), applied through psi_(k)
  const GraphVector diff = gamma_t - gamma;
  if (!pike_differential(diff).is_zero())
    throw GraphError(tag_d + ": gamma_t - gamma is not d-closed");
  GraphVector kappa = GraphVector::zero(m - 1, k + 1, Color::o);
  for (const auto& [r, part] : split_by_pikes(diff)) {
    if (r == 0) throw GraphError(tag_d + ": d-closed difference has a pike-free part");
    GraphVector t = pike_homotopy(part);
    t *= Rat(1, k + r);
    kappa += t;
  }
  if (!(pike_differential(kappa) == diff))
    throw GraphError(tag_d + ": d(kappa) does not reproduce gamma_t - gamma");
  if (!kappa.is_zero()) {
    GaugeVector psi;
    psi.set(m - 1, k + 1, kappa);
    std::vector<Corolla> dropped;
    st.table = gauge_apply(psi, st.table, &dropped);
    st.note("stage rationalize:m=" + std::to_string(m) + ",k=" + std::to_string(k) +
            " gauge psi_(k) on o:" + std::to_string(m - 1) + "," + std::to_string(k + 1));
  }
  if (!(st.table.entry(m, k) == beta + gamma_t))
    throw GraphError(tag_d + ": psi gauge did not reach beta + gamma_t");
}

struct InductionResult {
  AlphaTable table;
  std::vector<std::string> log;
  std::vector<VerifyItem> verify;
};

/// The full induction: row 2 first, then rows 3..nmax with per-row white
/// budgets so every assembled right-hand side stays inside the table.
inline InductionResult run_induction(int nmax, int kmax, const AlphaTable* seed = nullptr) {
  if (nmax < 2) throw GraphError("run_induction: nmax >= 2 required");
  if (kmax < 0) throw GraphError("run_induction: kmax >= 0 required");
  StageState st;
  st.nmax = nmax;
  st.kmax = kmax;
  st.table = AlphaTable(nmax, kmax);
  if (seed)
    for (const auto& [nk, v] : seed->entries()) st.table.set_entry(nk.first, nk.second, v);
  stage_alpha2(st);
  for (int m = 3; m <= nmax; ++m) {
    stage_kill_pikes(st, m);
    stage_dfgc(st, m);
    for (int k = 1; k <= row_budget(nmax, kmax, m); ++k) stage_rationalize_column(st, m, k);
  }
  InductionResult res;
  res.verify = mc_verify(st.table);
  res.table = std::move(st.table);
  res.log = std::move(st.log);
  return res;
}

}  // namespace sfq
