#include "fmetric/metrizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fmetric {

InducedMetric::InducedMetric(DistanceTable dmat, SquareMatrix<std::size_t> pred)
    : dmat_(std::move(dmat)), pred_(std::move(pred)) {
  if (pred_.size() != dmat_.size()) {
    throw std::invalid_argument("predecessor table size does not match the metric");
  }
}

InducedMetric::InducedMetric(DistanceTable dmat) : dmat_(std::move(dmat)), pred_(dmat_.size()) {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) pred_(i, j) = i;
  }
}

Chain InducedMetric::witness_chain(std::size_t i, std::size_t j) const {
  const std::size_t n = size();
  if (i >= n || j >= n) throw std::out_of_range("witness chain endpoint out of range");
  if (i == j) return Chain({i, i});
  std::vector<std::size_t> rev{j};
  std::size_t cur = j;
  while (cur != i) {
    cur = pred_(i, cur);
    if (cur >= n || rev.size() > n) {
      throw std::logic_error("predecessor table does not encode a simple path");
    }
    rev.push_back(cur);
  }
  std::reverse(rev.begin(), rev.end());
  return Chain(std::move(rev));
}

InducedMetric induced_metric(const FiniteSpace& space) {
  if (const auto v = verify_d1_d2(space); !v.pass) {
    throw std::invalid_argument("cannot metrize: (" + v.axiom + ") fails: " + v.reason);
  }
  const std::size_t n = space.size();
  DistanceTable d = space.dist();
  SquareMatrix<std::size_t> pred(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pred(i, j) = i;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d(k, j);
        if (via < d(i, j)) {
          d(i, j) = via;
          pred(i, j) = pred(k, j);
        }
      }
    }
  }
  return InducedMetric(std::move(d), std::move(pred));
}

namespace {

MetricVerdict metric_fail(std::string axiom, std::string reason, std::vector<std::size_t> idx) {
  MetricVerdict v;
  v.pass = false;
  v.axiom = std::move(axiom);
  v.reason = std::move(reason);
  v.indices = std::move(idx);
  return v;
}

}  // namespace

MetricVerdict verify_metric(const InducedMetric& metric, double tol) {
  const std::size_t n = metric.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (metric(i, i) != 0.0) {
      return metric_fail("zero-diagonal", "d(" + std::to_string(i) + "," + std::to_string(i) +
                                              ") != 0", {i, i});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(metric(i, j) > 0.0)) {
        return metric_fail("positivity", "d(" + std::to_string(i) + "," + std::to_string(j) +
                                             ") is not positive", {i, j});
      }
      if (std::abs(metric(i, j) - metric(j, i)) > tol) {
        return metric_fail("symmetry", "d(" + std::to_string(i) + "," + std::to_string(j) +
                                           ") != d(" + std::to_string(j) + "," +
                                           std::to_string(i) + ")", {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (metric(i, k) > metric(i, j) + metric(j, k) + tol) {
          std::ostringstream msg;
          msg << "d(" << i << "," << k << ") = " << metric(i, k) << " > d(" << i << "," << j
              << ") + d(" << j << "," << k << ") = " << metric(i, j) + metric(j, k);
          return metric_fail("triangle", msg.str(), {i, j, k});
        }
      }
    }
  }
  return {};
}

MetricVerdict verify_metric(const InducedMetric& metric, const FiniteSpace& space, double tol) {
  if (metric.size() != space.size()) {
    return metric_fail("domination", "metric and space sizes differ", {});
  }
  if (auto v = verify_metric(metric, tol); !v.pass) return v;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    for (std::size_t j = 0; j < metric.size(); ++j) {
      if (metric(i, j) > space(i, j) + tol) {
        return metric_fail("domination", "d(" + std::to_string(i) + "," + std::to_string(j) +
                                             ") > D", {i, j});
      }
    }
  }
  return {};
}

SandwichVerdict sandwich_check(const FiniteSpace& space, const FParams& params,
                               const InducedMetric& metric, std::span<const double> eps_grid,
                               double tol) {
  if (eps_grid.empty()) throw std::invalid_argument("eps grid must be nonempty");
  for (double e : eps_grid) {
    if (!(e > 0.0)) throw std::invalid_argument("eps grid entries must be positive");
  }
  if (metric.size() != space.size()) {
    throw std::invalid_argument("metric and space sizes differ");
  }
  const ControlFunction& f = params.f();
  const double alpha = params.alpha();
  const double min_eps = *std::min_element(eps_grid.begin(), eps_grid.end());
  const auto breaks = f.breakpoints();

  SandwichVerdict v;
  auto fail = [&](std::size_t i, std::size_t j, std::optional<double> eps, std::string why) {
    v.pass = false;
    v.pair = std::make_pair(i, j);
    v.eps = eps;
    std::ostringstream msg;
    msg << "pair (" << space.labels()[i] << "," << space.labels()[j] << "): " << why;
    if (eps) msg << " at eps = " << *eps;
    v.reason = msg.str();
    return v;
  };

  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double big = space(i, j);
      const double small = metric(i, j);
      if (small > big + tol) return fail(i, j, std::nullopt, "d > D");
      const double f_big = evaluate(f, big);
      const double f_small = evaluate(f, small);
      if (f_small > f_big + tol) return fail(i, j, std::nullopt, "f(d) > f(D)");
      for (double eps : eps_grid) {
        if (f_big > evaluate(f, small + eps) + alpha + tol) {
          return fail(i, j, eps, "f(D) > f(d + eps) + alpha");
        }
      }
      const bool jump_free = std::none_of(breaks.begin(), breaks.end(), [&](double u) {
        return u > small && u <= small + min_eps;
      });
      if (jump_free) {
        ++v.continuity_certified;
        if (f_big > f_small + alpha + tol) return fail(i, j, std::nullopt, "f(D) > f(d) + alpha");
      }
    }
  }
  return v;
}

BallWitness ball_witness(const FiniteSpace& space, const FParams& params,
                         const InducedMetric& metric, std::size_t center, double r) {
  if (!(r > 0.0)) throw std::domain_error("ball radius must be positive");
  const std::size_t n = space.size();
  if (center >= n) throw std::out_of_range("ball center out of range");
  if (metric.size() != n) throw std::invalid_argument("metric and space sizes differ");

  BallWitness w;
  w.center = center;
  w.r = r;
  w.delta = delta_for_radius(params, r);
  w.small_radius = w.delta / 2.0;
  for (std::size_t y = 0; y < n; ++y) {
    if (space(center, y) < r) w.ball_D.push_back(y);
    if (metric(center, y) < w.small_radius) w.ball_d_small.push_back(y);
    if (metric(center, y) < r) w.ball_d_same.push_back(y);
  }
  w.contain_D_in_d = std::includes(w.ball_d_same.begin(), w.ball_d_same.end(), w.ball_D.begin(),
                                   w.ball_D.end());
  w.contain_d_in_D = std::includes(w.ball_D.begin(), w.ball_D.end(), w.ball_d_small.begin(),
                                   w.ball_d_small.end());
  return w;
}

}  // namespace fmetric
