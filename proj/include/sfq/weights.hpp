#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <thread>

#include "sfq/graph.hpp"

namespace sfq {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Point of the gauge-fixed open configuration space. With k >= 2 whites the
/// slice is q_1 = 0, q_k = 1; otherwise p_1 = i. Remaining coordinates are
/// free in the ambient order (x_1, y_1, ..., x_n, y_n, q_1, ..., q_k).
struct ConfigurationSample {
  int nb = 0;
  int nw = 0;
  std::vector<std::complex<double>> p;
  std::vector<double> q;

  bool whites_gauge() const { return nw >= 2; }

  int dimension() const { return 2 * nb + nw - 2; }

  /// Free coordinate slots as (vertex-ish index, kind): 0=x_i, 1=y_i, 2=q_j.
  std::vector<std::pair<int, int>> free_coords() const {
    std::vector<std::pair<int, int>> out;
    const bool wg = whites_gauge();
    for (int i = 0; i < nb; ++i) {
      if (!wg && i == 0) continue;  // p_1 = i fixed
      out.push_back({i, 0});
      out.push_back({i, 1});
    }
    for (int j = 0; j < nw; ++j) {
      if (wg && (j == 0 || j == nw - 1)) continue;  // q_1 = 0, q_k = 1 fixed
      out.push_back({j, 2});
    }
    return out;
  }
};

struct WeightEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  bool exact = false;  // structurally zero or dimension-zero cases
};

namespace detail {

// d Arg(w)/dwx = -wy/|w|^2, d Arg(w)/dwy = wx/|w|^2.
inline void arg_partials(std::complex<double> w, double& ax, double& ay) {
  const double n = std::norm(w);
  ax = -w.imag() / n;
  ay = w.real() / n;
}

}  // namespace detail

/// Rows are the edges of g in order, columns the free slice coordinates;
/// entries are the coefficients of d phi_e in the coordinate basis.
inline std::vector<std::vector<double>> form_matrix(const Graph& g,
                                                    const ConfigurationSample& s) {
  if (g.nb != s.nb || g.nw != s.nw) throw GraphError("form_matrix: arity mismatch");
  const auto coords = s.free_coords();
  std::vector<std::vector<double>> m(g.edge_count(),
                                     std::vector<double>(coords.size(), 0.0));
  for (int e = 0; e < g.edge_count(); ++e) {
    const int t = g.edges[e].tail - 1;
    const std::complex<double> pt = s.p[t];
    std::complex<double> head;
    int head_black = -1, head_white = -1;
    if (is_white_vertex(g.edges[e].head)) {
      head_white = vertex_label(g.edges[e].head) - 1;
      head = {s.q[head_white], 0.0};
    } else {
      head_black = vertex_label(g.edges[e].head) - 1;
      head = s.p[head_black];
    }
    const std::complex<double> w1 = head - pt;
    const std::complex<double> w2 = head - std::conj(pt);
    double a1x, a1y, a2x, a2y;
    detail::arg_partials(w1, a1x, a1y);
    detail::arg_partials(w2, a2x, a2y);
    for (size_t c = 0; c < coords.size(); ++c) {
      const auto [idx, kind] = coords[c];
      double v = 0.0;
      if (kind == 0 && idx == t) v += -a1x - (-a2x);
      if (kind == 1 && idx == t) v += -a1y - (+a2y);
      if (kind == 0 && idx == head_black) v += a1x - a2x;
      if (kind == 1 && idx == head_black) v += a1y - a2y;
      if (kind == 2 && idx == head_white) v += a1x - a2x;
      m[e][c] = v;
    }
  }
  return m;
}

namespace detail {

inline double det_inplace(std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  double det = 1.0;
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    double best = 0.0;
    for (int r = j; r < n; ++r)
      if (std::abs(a[r][j]) > best) {
        best = std::abs(a[r][j]);
        piv = r;
      }
    if (piv < 0 || best == 0.0) return 0.0;
    if (piv != j) {
      std::swap(a[piv], a[j]);
      det = -det;
    }
    det *= a[j][j];
    for (int r = j + 1; r < n; ++r) {
      const double f = a[r][j] / a[j][j];
      if (f == 0.0) continue;
      for (int c = j; c < n; ++c) a[r][c] -= f * a[j][c];
    }
  }
  return det;
}

// Orientation of the slice relative to the ambient order: parity of moving the
// fixed coordinates to the front. (-1)^k for the endpoint gauge, +1 otherwise.
inline double slice_orientation(int nb, int nw) {
  if (nw >= 2) return nw % 2 == 0 ? 1.0 : -1.0;
  return 1.0;
}

struct Proposal {
  // mixture for one free black vertex: polar-global around center plus
  // log-radial components around the real anchors
  std::vector<double> anchors;
  double center_x = 0.5;
  static constexpr double kRMin = 1e-8;
  static constexpr double kRMax = 8.0;

  template <typename Rng>
  std::complex<double> sample(Rng& rng) const {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double pick = uni(rng);
    const double u = uni(rng), v = uni(rng);
    if (anchors.empty() || pick < 0.5) {
      const double r = std::tan(kPi * u / 2.0);
      const double th = kPi * v;
      return {center_x + r * std::cos(th), r * std::sin(th)};
    }
    const size_t a = std::min(anchors.size() - 1,
                              static_cast<size_t>((pick - 0.5) * 2.0 * anchors.size()));
    const double r = kRMin * std::exp(u * std::log(kRMax / kRMin));
    const double th = kPi * v;
    return {anchors[a] + r * std::cos(th), r * std::sin(th)};
  }

  double density(std::complex<double> p) const {
    const double wg = anchors.empty() ? 1.0 : 0.5;
    double g = 0.0;
    {
      const double r = std::abs(p - std::complex<double>(center_x, 0.0));
      if (r > 0.0) g += wg * 2.0 / (kPi * kPi * r * (1.0 + r * r));
    }
    if (!anchors.empty()) {
      const double wa = 0.5 / static_cast<double>(anchors.size());
      const double l = std::log(kRMax / kRMin);
      for (double a : anchors) {
        const double r = std::abs(p - std::complex<double>(a, 0.0));
        if (r >= kRMin && r <= kRMax) g += wa / (kPi * l * r * r);
      }
    }
    return g;
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// MC estimate of the configuration-space weight. Graphs with the wrong edge
/// count, a repeated edge or a disconnected underlying graph are exactly zero.
inline WeightEstimate estimate_weight(const Graph& g, long long samples, std::uint64_t seed,
                                      int threads = 0) {
  g.validate();
  const int d = 2 * g.nb + g.nw - 2;
  WeightEstimate est;
  est.seed = seed;
  if (d < 0) throw GraphError("estimate_weight: 2n+k >= 2 required");
  {
    CanonicalGraph c = canonicalize_graph(g);
    if (c.zero) {
      est.exact = true;
      return est;
    }
  }
  if (g.edge_count() != d || !is_connected(g)) {
    est.exact = true;
    return est;
  }
  if (d == 0) {
    est.mean = 1.0;
    est.exact = true;
    return est;
  }

  const bool wg = g.nw >= 2;
  detail::Proposal prop;
  if (wg) prop.anchors = {0.0, 1.0};
  const int free_mid = wg ? g.nw - 2 : g.nw;  // free white coordinates
  const double orient = detail::slice_orientation(g.nb, g.nw);
  double simplex_fact = 1.0;
  for (int i = 2; i <= free_mid; ++i) simplex_fact *= i;  // sorted-uniform density
  double two_pi_pow = 1.0;
  for (int i = 0; i < d; ++i) two_pi_pow *= 2.0 * kPi;

  const int nblocks = 256;
  if (threads <= 0) {
    if (const char* env = std::getenv("SFQ_THREADS")) threads = std::atoi(env);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, nblocks);

  std::vector<double> bsum(nblocks, 0.0), bsq(nblocks, 0.0);
  std::vector<long long> bcount(nblocks, 0);
  auto run_block = [&](int b) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ (0x5851f42d4c957f2dULL * (b + 1))));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const long long lo = samples * b / nblocks, hi = samples * (b + 1) / nblocks;
    ConfigurationSample s;
    s.nb = g.nb;
    s.nw = g.nw;
    s.p.resize(g.nb);
    s.q.resize(g.nw);
    std::vector<double> mid(free_mid);
    double sum = 0.0, sq = 0.0;
    for (long long it = lo; it < hi; ++it) {
      double gdens = simplex_fact;
      bool ok = true;
      if (wg) {
        s.q[0] = 0.0;
        s.q[g.nw - 1] = 1.0;
        for (int j = 0; j < free_mid; ++j) mid[j] = uni(rng);
        std::sort(mid.begin(), mid.end());
        for (int j = 0; j < free_mid; ++j) s.q[j + 1] = mid[j];
      } else {
        s.p[0] = {0.0, 1.0};
        for (int j = 0; j < g.nw; ++j) {
          const double u = uni(rng);
          s.q[j] = std::tan(kPi * (u - 0.5));
          gdens *= 1.0 / (kPi * (1.0 + s.q[j] * s.q[j]));
        }
      }
      for (int i = wg ? 0 : 1; i < g.nb; ++i) {
        s.p[i] = prop.sample(rng);
        if (s.p[i].imag() <= 0.0) {
          ok = false;
          break;
        }
        gdens *= prop.density(s.p[i]);
      }
      double val = 0.0;
      if (ok && gdens > 0.0) {
        auto m = form_matrix(g, s);
        val = orient * detail::det_inplace(m) / (two_pi_pow * gdens);
      }
      sum += val;
      sq += val * val;
    }
    bsum[b] = sum;
    bsq[b] = sq;
    bcount[b] = hi - lo;
  };
  if (threads <= 1) {
    for (int b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        int b;
        while ((b = next.fetch_add(1)) < nblocks) run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  double sum = 0.0, sq = 0.0;
  long long n = 0;
  for (int b = 0; b < nblocks; ++b) {  // fixed reduction order
    sum += bsum[b];
    sq += bsq[b];
    n += bcount[b];
  }
  est.samples = n;
  est.mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sq / static_cast<double>(n) - est.mean * est.mean);
  est.stderr_ = std::sqrt(var / static_cast<double>(n));
  return est;
}

}  // namespace sfq
