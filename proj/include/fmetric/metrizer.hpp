#pragma once

// The induced metric d(x,y) = inf over chains of the summed D, computed as a
// shortest-path closure, plus the certificates tying d back to D.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmetric/fclass.hpp"
#include "fmetric/matrix.hpp"
#include "fmetric/space.hpp"

namespace fmetric {

class InducedMetric {
 public:
  /// pred(i, j) is the point preceding j on a minimal chain from i.
  InducedMetric(DistanceTable dmat, SquareMatrix<std::size_t> pred);
  /// Table with one-step chains as witnesses (pred(i, j) = i).
  explicit InducedMetric(DistanceTable dmat);

  std::size_t size() const noexcept { return dmat_.size(); }
  const DistanceTable& dmat() const noexcept { return dmat_; }
  const SquareMatrix<std::size_t>& pred() const noexcept { return pred_; }
  double operator()(std::size_t i, std::size_t j) const { return dmat_(i, j); }

  /// Minimal chain from i to j rebuilt from pred; (i, i) for i == j.
  /// Throws std::logic_error if pred does not describe a simple path.
  Chain witness_chain(std::size_t i, std::size_t j) const;

 private:
  DistanceTable dmat_;
  SquareMatrix<std::size_t> pred_;
};

/// All-pairs shortest-path closure of D (Floyd-Warshall).
/// Throws std::invalid_argument if the space fails verify_d1_d2.
InducedMetric induced_metric(const FiniteSpace& space);

struct MetricVerdict {
  bool pass = true;
  std::string axiom;  // "zero-diagonal", "positivity", "symmetry", "triangle", "domination"
  std::string reason;
  std::vector<std::size_t> indices;
};

MetricVerdict verify_metric(const InducedMetric& metric, double tol = kDefaultTol);
/// Also checks d <= D entrywise.
MetricVerdict verify_metric(const InducedMetric& metric, const FiniteSpace& space,
                            double tol = kDefaultTol);

inline const std::vector<double> kDefaultEpsGrid{1e-6, 1e-3, 1e-1, 1.0};

struct SandwichVerdict {
  bool pass = true;
  std::string reason;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::optional<double> eps;
  /// Pairs where the eps-free bound f(D) <= f(d) + alpha was also asserted.
  std::size_t continuity_certified = 0;
};

/// For all x != y: d <= D, f(d) <= f(D), f(D) <= f(d + eps) + alpha for each
/// eps, and f(D) <= f(d) + alpha when no breakpoint of f lies in (d, d + min eps].
SandwichVerdict sandwich_check(const FiniteSpace& space, const FParams& params,
                               const InducedMetric& metric, std::span<const double> eps_grid,
                               double tol = kDefaultTol);

struct BallWitness {
  std::size_t center = 0;
  double r = 0.0;
  double delta = 0.0;         // delta_for_radius(params, r); +inf when unbounded
  double small_radius = 0.0;  // delta / 2, the operative d-radius
  std::vector<std::size_t> ball_D;        // D(x, y) < r
  std::vector<std::size_t> ball_d_small;  // d(x, y) < delta / 2
  std::vector<std::size_t> ball_d_same;   // d(x, y) < r
  bool contain_D_in_d = false;            // ball_D within ball_d_same
  bool contain_d_in_D = false;            // ball_d_small within ball_D
};

/// Throws std::domain_error for r <= 0, std::out_of_range for a bad center.
BallWitness ball_witness(const FiniteSpace& space, const FParams& params,
                         const InducedMetric& metric, std::size_t center, double r);

}  // namespace fmetric
