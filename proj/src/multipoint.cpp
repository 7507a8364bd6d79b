#include "qvlab/multipoint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qvlab/error.hpp"

namespace qvlab {

QPoint::QPoint(std::vector<Vec> points) : pts_(std::move(points)) {
  if (pts_.empty()) fail(errc::invalid_parameter, "QPoint needs at least one point");
  const size_t n = pts_.front().size();
  if (n == 0) fail(errc::invalid_parameter, "QPoint needs dimension >= 1");
  for (const auto& p : pts_)
    if (p.size() != n) fail(errc::dimension_mismatch, "QPoint entries differ in dimension");
}

QPoint QPoint::zero(int q, int n) {
  if (q < 1 || n < 1) fail(errc::invalid_parameter, "QPoint::zero needs q >= 1, n >= 1");
  return QPoint(std::vector<Vec>(q, Vec(n, 0.0)));
}

QPoint QPoint::from_complex(const std::vector<std::complex<double>>& values) {
  std::vector<Vec> pts;
  pts.reserve(values.size());
  for (auto w : values) pts.push_back({w.real(), w.imag()});
  return QPoint(std::move(pts));
}

std::string QPoint::to_text() const {
  char buf[32];
  std::string out = "Q=" + std::to_string(q()) + ";n=" + std::to_string(n()) + ";[";
  for (size_t i = 0; i < pts_.size(); ++i) {
    out += i ? ";(" : "(";
    for (size_t d = 0; d < pts_[i].size(); ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", pts_[i][d]);
      if (d) out += ',';
      out += buf;
    }
    out += ')';
  }
  out += ']';
  return out;
}

std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) fail(errc::invalid_parameter, "empty cost matrix");
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n) fail(errc::invalid_parameter, "cost matrix not square");

  const double inf = std::numeric_limits<double>::infinity();
  // Potentials u,v and the column->row matching p, 1-based with a dummy slot 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) match[p[j] - 1] = j - 1;
  return match;
}

namespace {

double sq_dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t d = 0; d < a.size(); ++d) {
    const double e = a[d] - b[d];
    s += e * e;
  }
  return s;
}

}  // namespace

double metric_g(const QPoint& t1, const QPoint& t2) {
  if (t1.q() != t2.q()) fail(errc::dimension_mismatch, "metric_g: multiplicities differ");
  if (t1.n() != t2.n()) fail(errc::dimension_mismatch, "metric_g: ambient dimensions differ");
  const int q = t1.q();
  std::vector<std::vector<double>> cost(q, std::vector<double>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) cost[i][j] = sq_dist(t1.points()[i], t2.points()[j]);
  const auto match = solve_assignment(cost);
  // Accumulate matched costs in sorted order: the sum is then independent of
  // which operand supplied the rows, so the metric is exactly symmetric.
  std::vector<double> matched(q);
  for (int i = 0; i < q; ++i) matched[i] = cost[i][match[i]];
  std::sort(matched.begin(), matched.end());
  double total = 0.0;
  for (double c : matched) total += c;
  return std::sqrt(total);
}

double norm(const QPoint& t) {
  // Same sorted accumulation as metric_g so norm(T) == metric_g(T, 0) bitwise.
  std::vector<double> sq;
  sq.reserve(t.points().size());
  for (const auto& p : t.points()) {
    double s = 0.0;
    for (double x : p) s += x * x;
    sq.push_back(s);
  }
  std::sort(sq.begin(), sq.end());
  double total = 0.0;
  for (double c : sq) total += c;
  return std::sqrt(total);
}

Vec center_of_mass(const QPoint& t) {
  Vec c(t.n(), 0.0);
  for (const auto& p : t.points())
    for (int d = 0; d < t.n(); ++d) c[d] += p[d];
  for (double& x : c) x /= t.q();
  return c;
}

}  // namespace qvlab
