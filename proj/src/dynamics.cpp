#include "fmetric/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace fmetric {

PointSequence::PointSequence(std::vector<std::size_t> entries, std::size_t n)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("sequence prefix must be nonempty");
  for (std::size_t e : entries_) {
    if (e >= n) throw std::invalid_argument("sequence entry " + std::to_string(e) + " out of range");
  }
}

SelfMap::SelfMap(std::vector<std::size_t> table, std::size_t n) : table_(std::move(table)) {
  if (table_.size() != n) {
    throw std::invalid_argument("self-map has " + std::to_string(table_.size()) +
                                " images for " + std::to_string(n) + " points");
  }
  for (std::size_t e : table_) {
    if (e >= n) throw std::invalid_argument("self-map image " + std::to_string(e) + " out of range");
  }
}

namespace {

void check_start(const PointSequence& seq, std::size_t k_start) {
  if (k_start < 1 || k_start > seq.size()) {
    throw std::out_of_range("window start " + std::to_string(k_start) + " outside 1.." +
                            std::to_string(seq.size()));
  }
}

}  // namespace

bool is_cauchy_window(const DistanceTable& table, const PointSequence& seq, double eps,
                      std::size_t k_start) {
  check_start(seq, k_start);
  const auto& x = seq.entries();
  for (std::size_t a = k_start - 1; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if (!(table.at(x[a], x[b]) < eps)) return false;
    }
  }
  return true;
}

bool is_cauchy_window(const FiniteSpace& space, const PointSequence& seq, double eps,
                      std::size_t k_start) {
  return is_cauchy_window(space.dist(), seq, eps, k_start);
}

bool is_cauchy_window(const InducedMetric& metric, const PointSequence& seq, double eps,
                      std::size_t k_start) {
  return is_cauchy_window(metric.dmat(), seq, eps, k_start);
}

bool is_convergent_window(const DistanceTable& table, const PointSequence& seq,
                          std::size_t limit, double eps, std::size_t k_start) {
  check_start(seq, k_start);
  const auto& x = seq.entries();
  for (std::size_t a = k_start - 1; a < x.size(); ++a) {
    if (!(table.at(x[a], limit) < eps)) return false;
  }
  return true;
}

std::optional<std::size_t> least_cauchy_start(const DistanceTable& table, const PointSequence& seq,
                                              double eps) {
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (is_cauchy_window(table, seq, eps, k)) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> least_convergent_start(const DistanceTable& table,
                                                  const PointSequence& seq, std::size_t limit,
                                                  double eps) {
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (is_convergent_window(table, seq, limit, eps, k)) return k;
  }
  return std::nullopt;
}

std::size_t stabilization_index(const PointSequence& seq) {
  const auto& x = seq.entries();
  std::size_t k = x.size();
  while (k > 1 && x[k - 2] == x.back()) --k;
  return k;
}

TransferCertificate cauchy_transfer_certificate(const FiniteSpace& space, const FParams& params,
                                                const InducedMetric& metric,
                                                const PointSequence& seq, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  TransferCertificate c;
  c.eps = eps;
  c.delta = delta_for_radius(params, eps);
  c.k_D = least_cauchy_start(space.dist(), seq, eps);
  if (c.k_D) c.forward_ok = is_cauchy_window(metric, seq, eps, *c.k_D);
  c.k_d = least_cauchy_start(metric.dmat(), seq, c.delta / 2.0);
  if (c.k_d) c.reverse_ok = is_cauchy_window(space, seq, eps, *c.k_d);
  return c;
}

TransferCertificate convergence_transfer_certificate(const FiniteSpace& space,
                                                     const FParams& params,
                                                     const InducedMetric& metric,
                                                     const PointSequence& seq, std::size_t limit,
                                                     double eps) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  if (limit >= space.size()) throw std::out_of_range("limit point out of range");
  TransferCertificate c;
  c.eps = eps;
  c.delta = delta_for_radius(params, eps);
  c.k_D = least_convergent_start(space.dist(), seq, limit, eps);
  if (c.k_D) c.forward_ok = is_convergent_window(metric.dmat(), seq, limit, eps, *c.k_D);
  c.k_d = least_convergent_start(metric.dmat(), seq, limit, c.delta / 2.0);
  if (c.k_d) c.reverse_ok = is_convergent_window(space.dist(), seq, limit, eps, *c.k_d);
  return c;
}

ContractionReport contraction_report(const FiniteSpace& space, const InducedMetric& metric,
                                     const SelfMap& g, double tol) {
  const std::size_t n = space.size();
  if (metric.size() != n || g.size() != n) {
    throw std::invalid_argument("space, metric and map sizes differ");
  }
  ContractionReport rep;
  for (std::size_t x = 0; x < n; ++x) {
    if (g(x) == x) rep.fixed_points.push_back(x);
    for (std::size_t y = x + 1; y < n; ++y) {
      if (g(x) == g(y)) continue;
      rep.best_K_D = std::max(rep.best_K_D, space(g(x), g(y)) / space(x, y));
      rep.best_K_d = std::max(rep.best_K_d, metric(g(x), g(y)) / metric(x, y));
    }
  }
  rep.is_D_contraction = rep.best_K_D < 1.0;
  rep.is_d_contraction = rep.best_K_d < 1.0;
  rep.transfer_holds = rep.best_K_d <= rep.best_K_D + tol;
  return rep;
}

PicardTrace picard_iterate(const FiniteSpace& space, const SelfMap& g, std::size_t x0,
                           std::size_t max_iter) {
  if (g.size() != space.size()) throw std::invalid_argument("map and space sizes differ");
  if (x0 >= space.size()) throw std::out_of_range("start point out of range");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  PicardTrace trace;
  trace.orbit.push_back(x0);
  std::size_t x = x0;
  while (true) {
    if (g(x) == x) {
      trace.reached_fixed_point = true;
      break;
    }
    if (trace.steps == max_iter) break;
    x = g(x);
    trace.orbit.push_back(x);
    ++trace.steps;
  }
  return trace;
}

}  // namespace fmetric
