#pragma once

// Sequence and self-map certificates: Cauchy/convergence transfer between D
// and the induced metric d, contraction transfer, and Picard iteration.

#include <cstddef>
#include <optional>
#include <vector>

#include "fmetric/fclass.hpp"
#include "fmetric/matrix.hpp"
#include "fmetric/metrizer.hpp"
#include "fmetric/space.hpp"

namespace fmetric {

/// Finite prefix x_1..x_M of a sequence of points.
class PointSequence {
 public:
  /// Throws std::invalid_argument when empty or when an index is >= n.
  PointSequence(std::vector<std::size_t> entries, std::size_t n);

  const std::vector<std::size_t>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::size_t> entries_;
};

/// Total map g : X -> X given by its image table.
class SelfMap {
 public:
  /// Throws std::invalid_argument when the table length is not n or an image is >= n.
  SelfMap(std::vector<std::size_t> table, std::size_t n);

  std::size_t operator()(std::size_t x) const { return table_.at(x); }
  const std::vector<std::size_t>& table() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::vector<std::size_t> table_;
};

// Window starts are 1-based, as in "for all n, m >= K".

/// True iff table(x_n, x_m) < eps for all n, m >= k_start.
/// Throws std::out_of_range if k_start is not in 1..size.
bool is_cauchy_window(const DistanceTable& table, const PointSequence& seq, double eps,
                      std::size_t k_start);
bool is_cauchy_window(const FiniteSpace& space, const PointSequence& seq, double eps,
                      std::size_t k_start);
bool is_cauchy_window(const InducedMetric& metric, const PointSequence& seq, double eps,
                      std::size_t k_start);

/// True iff table(x_n, limit) < eps for all n >= k_start.
bool is_convergent_window(const DistanceTable& table, const PointSequence& seq,
                          std::size_t limit, double eps, std::size_t k_start);

/// Least window start with at least two entries passing the test, if any.
std::optional<std::size_t> least_cauchy_start(const DistanceTable& table, const PointSequence& seq,
                                              double eps);
std::optional<std::size_t> least_convergent_start(const DistanceTable& table,
                                                  const PointSequence& seq, std::size_t limit,
                                                  double eps);

/// 1-based index from which the prefix is constant.
std::size_t stabilization_index(const PointSequence& seq);

struct TransferCertificate {
  double eps = 0.0;
  double delta = 0.0;  // delta_for_radius(params, eps)
  std::optional<std::size_t> k_D;  // least start of a D-window below eps
  std::optional<std::size_t> k_d;  // least start of a d-window below delta / 2
  bool forward_ok = true;  // D-window(eps, k_D) => d-window(eps, k_D)
  bool reverse_ok = true;  // d-window(delta/2, k_d) => D-window(eps, k_d)
  bool pass() const { return forward_ok && reverse_ok; }
};

/// Cauchy transfer between D and d on one prefix. A window needs at least two
/// entries, so a prefix that never settles reports no K in either metric.
TransferCertificate cauchy_transfer_certificate(const FiniteSpace& space, const FParams& params,
                                                const InducedMetric& metric,
                                                const PointSequence& seq, double eps);

/// Same construction with windows measured against a fixed limit point.
TransferCertificate convergence_transfer_certificate(const FiniteSpace& space,
                                                     const FParams& params,
                                                     const InducedMetric& metric,
                                                     const PointSequence& seq, std::size_t limit,
                                                     double eps);

struct ContractionReport {
  double best_K_D = 0.0;
  double best_K_d = 0.0;
  bool is_D_contraction = false;  // best_K_D < 1
  bool is_d_contraction = false;  // best_K_d < 1
  bool transfer_holds = true;     // best_K_d <= best_K_D + tol
  std::vector<std::size_t> fixed_points;
};

ContractionReport contraction_report(const FiniteSpace& space, const InducedMetric& metric,
                                     const SelfMap& g, double tol = kDefaultTol);

struct PicardTrace {
  std::vector<std::size_t> orbit;  // x0, g(x0), ...
  bool reached_fixed_point = false;
  std::size_t steps = 0;  // applications of g performed
};

/// Iterates g from x0 until g(x) == x or max_iter applications.
PicardTrace picard_iterate(const FiniteSpace& space, const SelfMap& g, std::size_t x0,
                           std::size_t max_iter);

}  // namespace fmetric
