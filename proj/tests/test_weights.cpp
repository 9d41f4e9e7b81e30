#include <doctest.h>

#include "helpers.hpp"
#include "sfq/weights.hpp"

using namespace th;

namespace {

Graph broom_graph(int k) { return broom(k).terms.begin()->first; }

double quadrature_broom2() {
  // midpoint rule for (2 pi)^-2 int_H 4y/((x^2+y^2)((1-x)^2+y^2)) dx dy with
  // x = 1/2 + tan(pi(u-1/2)), y = tan(pi v/2); independent of the MC sampler
  const int n = 1500;
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = (i + 0.5) / n, v = (j + 0.5) / n;
      const double x = 0.5 + std::tan(sfq::kPi * (u - 0.5));
      const double y = std::tan(sfq::kPi * v / 2.0);
      const double jac = sfq::kPi * (1.0 + (x - 0.5) * (x - 0.5)) *
                         (sfq::kPi / 2.0) * (1.0 + y * y);
      const double r0 = x * x + y * y, r1 = (1.0 - x) * (1.0 - x) + y * y;
      total += 4.0 * y / (r0 * r1) * jac;
    }
  return total / (n * static_cast<double>(n)) / (4.0 * sfq::kPi * sfq::kPi);
}

}  // namespace

TEST_CASE("gauge slice dimensions") {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 3; ++k) {
      if (2 * n + k < 2) continue;
      ConfigurationSample s;
      s.nb = n;
      s.nw = k;
      CHECK(static_cast<int>(s.free_coords().size()) == 2 * n + k - 2);
    }
}

TEST_CASE("form matrix of a disconnected graph is singular pointwise") {
  // two blacks, two whites, edges b1>w1 b1>w2 b2>w1 b2>w2 is connected;
  // instead take e = 2n+k-2 = 4 with an isolated white: b1>b2 b2>b1 b1>w1 b2>w1
  Graph g = mk(2, 2, {{1, B(2)}, {2, B(1)}, {1, W(1)}, {2, W(1)}});
  REQUIRE_FALSE(is_connected(g));
  REQUIRE(g.edge_count() == 2 * g.nb + g.nw - 2);
  ConfigurationSample s;
  s.nb = 2;
  s.nw = 2;
  s.p = {{0.3, 0.7}, {-0.4, 1.3}};
  s.q = {0.0, 1.0};
  auto m = form_matrix(g, s);
  // eliminate and read the determinant magnitude
  double det = 1.0;
  const int n = static_cast<int>(m.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    double best = 0;
    for (int r = c; r < n; ++r)
      if (std::abs(m[r][c]) > best) best = std::abs(m[r][c]), piv = r;
    if (piv < 0 || best < 1e-14) {
      det = 0;
      break;
    }
    std::swap(m[piv], m[c]);
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int cc = c; cc < n; ++cc) m[r][cc] -= f * m[c][cc];
    }
  }
  CHECK(std::abs(det) < 1e-10);
}

TEST_CASE("broom weights match 1/k!") {
  // k = 0: a point; k = 1: the flat-measure ratio is identically one
  const WeightEstimate w0 = estimate_weight(broom_graph(0), 10, 1);
  CHECK(w0.exact);
  CHECK(w0.mean == 1.0);
  const WeightEstimate w1 = estimate_weight(broom_graph(1), 20000, 7);
  CHECK(std::abs(w1.mean - 1.0) < 1e-9);
  const WeightEstimate w2 = estimate_weight(broom_graph(2), 200000, 11);
  CHECK(std::abs(w2.mean - 0.5) < std::max(3 * w2.stderr_, 0.01));
  const WeightEstimate w3 = estimate_weight(broom_graph(3), 200000, 13);
  CHECK(std::abs(w3.mean - 1.0 / 6.0) < std::max(3 * w3.stderr_, 0.005));
}

TEST_CASE("broom(2) agrees with an independent quadrature") {
  const double q = quadrature_broom2();
  CHECK(std::abs(q - 0.5) < 5e-3);
  const WeightEstimate w = estimate_weight(broom_graph(2), 100000, 17);
  CHECK(std::abs(w.mean - q) < std::max(4 * w.stderr_, 0.02));
}

TEST_CASE("structural zeros are exact") {
  Graph disc = mk(2, 2, {{1, B(2)}, {2, B(1)}, {1, W(1)}, {2, W(1)}});
  const WeightEstimate wd = estimate_weight(disc, 1000, 3);
  CHECK(wd.exact);
  CHECK(wd.mean == 0.0);
  CHECK(wd.stderr_ == 0.0);
  Graph wrong = mk(1, 2, {{1, W(1)}});  // e != 2n+k-2
  const WeightEstimate ww = estimate_weight(wrong, 1000, 3);
  CHECK(ww.exact);
  CHECK(ww.mean == 0.0);
  Graph dup = mk(2, 2, {{1, B(2)}, {1, B(2)}, {1, W(1)}, {2, W(2)}});
  const WeightEstimate wu = estimate_weight(dup, 1000, 3);
  CHECK(wu.exact);
  CHECK(wu.mean == 0.0);
}

TEST_CASE("estimates are reproducible and thread-count independent") {
  const WeightEstimate a = estimate_weight(broom_graph(2), 50000, 23, 1);
  const WeightEstimate b = estimate_weight(broom_graph(2), 50000, 23, 1);
  const WeightEstimate c = estimate_weight(broom_graph(2), 50000, 23, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.mean == c.mean);
  const WeightEstimate d = estimate_weight(broom_graph(2), 50000, 29, 1);
  CHECK(a.mean != d.mean);  // the seed matters
}
