#ifndef QVLAB_MULTIPOINT_HPP
#define QVLAB_MULTIPOINT_HPP

#include <complex>
#include <string>
#include <vector>

namespace qvlab {

using Vec = std::vector<double>;

/// Unordered multiset of Q points in R^n (a point of the metric space A_Q(R^n)).
/// Storage order is an implementation detail; all semantics are permutation
/// invariant.
class QPoint {
 public:
  explicit QPoint(std::vector<Vec> points);

  /// Q copies of the origin of R^n.
  static QPoint zero(int q, int n);

  /// Build from complex values (n = 2), one point per entry.
  static QPoint from_complex(const std::vector<std::complex<double>>& values);

  int q() const { return static_cast<int>(pts_.size()); }
  int n() const { return static_cast<int>(pts_.front().size()); }
  const std::vector<Vec>& points() const { return pts_; }

  /// Canonical text rendering "Q=k;n=d;[(x,...);(x,...)]".
  std::string to_text() const;

 private:
  std::vector<Vec> pts_;
};

/// Exact min-cost assignment on a square cost matrix (O(n^3) augmenting paths
/// with potentials). Returns the column matched to each row.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

/// The metric G(T1,T2) = min over pairings of sqrt(sum |P_i - S_sigma(i)|^2).
double metric_g(const QPoint& t1, const QPoint& t2);

/// Distance to Q[[0]]: sqrt(sum |P_i|^2). Shares the summation path with
/// metric_g so the two agree bitwise.
double norm(const QPoint& t);

/// The average eta(T) = (1/Q) sum P_i.
Vec center_of_mass(const QPoint& t);

inline bool operator==(const QPoint& a, const QPoint& b) {
  return a.q() == b.q() && a.n() == b.n() && metric_g(a, b) == 0.0;
}

}  // namespace qvlab

#endif
