#include "fmetric/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "fmetric/metrizer.hpp"

namespace fmetric {

FiniteSpace::FiniteSpace(std::vector<std::string> labels, DistanceTable dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  if (labels_.empty()) throw std::invalid_argument("a space needs at least one point");
  if (dist_.size() != labels_.size()) {
    throw std::invalid_argument("distance table is " + std::to_string(dist_.size()) + "x" +
                                std::to_string(dist_.size()) + " but there are " +
                                std::to_string(labels_.size()) + " labels");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate label '" + l + "'");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (!std::isfinite(dist_(i, j))) {
        throw std::invalid_argument("non-finite distance at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
}

std::optional<std::size_t> FiniteSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

FiniteSpace FiniteSpace::subspace(std::span<const std::size_t> indices) const {
  std::vector<std::string> labels;
  DistanceTable sub(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    labels.push_back(labels_.at(indices[a]));
    for (std::size_t b = 0; b < indices.size(); ++b) sub(a, b) = dist_.at(indices[a], indices[b]);
  }
  return FiniteSpace(std::move(labels), std::move(sub));
}

Chain::Chain(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  if (indices_.size() < 2) throw std::invalid_argument("a chain needs at least two points");
}

double chain_sum(const FiniteSpace& space, const Chain& chain) {
  const auto& idx = chain.indices();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) total += space.dist().at(idx[i], idx[i + 1]);
  return total;
}

AxiomVerdict verify_d1_d2(const FiniteSpace& space, double tol) {
  const std::size_t n = space.size();
  auto fail = [](std::string axiom, std::string reason, std::size_t i, std::size_t j) {
    AxiomVerdict v;
    v.pass = false;
    v.axiom = std::move(axiom);
    v.reason = std::move(reason);
    v.entry = std::make_pair(i, j);
    return v;
  };
  auto at = [&](std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "D(" << space.labels()[i] << "," << space.labels()[j] << ") = " << space(i, j);
    return os.str();
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = space(i, j);
      if (i == j && dij != 0.0) return fail("D1", at(i, j) + " on the diagonal", i, j);
      if (i != j && !(dij > 0.0)) return fail("D1", at(i, j) + " for distinct points", i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(space(i, j) - space(j, i)) > tol) {
        return fail("D2", at(i, j) + " but " + at(j, i), i, j);
      }
    }
  }
  return {};
}

std::uint64_t chains_per_pair(std::size_t n, std::size_t max_len) {
  // Interior lengths 0..max_len-2, each slot free over n points.
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max() / 2;
  for (std::size_t k = 0; k + 2 <= max_len; ++k) {
    total += layer;
    if (total > cap) return cap;
    if (k + 3 <= max_len) {
      if (layer > cap / std::max<std::size_t>(n, 1)) return cap;
      layer *= n;
    }
  }
  return total;
}

namespace {

// Worst pair: lexicographically first ordered pair whose gap is within tol of the max.
std::optional<std::pair<std::size_t, std::size_t>> first_maximizer(const DistanceTable& gap,
                                                                   double max_gap, double tol) {
  const std::size_t n = gap.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && gap(i, j) >= max_gap - tol) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

class ChainEnumerator {
 public:
  ChainEnumerator(const FiniteSpace& space, const FParams& params, std::size_t max_len,
                  double tol)
      : space_(space), params_(params), max_len_(max_len), tol_(tol) {}

  struct PairResult {
    double min_sum = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> min_chain;
    std::optional<std::vector<std::size_t>> first_violation;
  };

  PairResult run(std::size_t x, std::size_t y) {
    result_ = PairResult{};
    target_ = y;
    bound_ = evaluate(params_.f(), space_(x, y)) - params_.alpha() - tol_;
    path_.assign(1, x);
    extend(0.0);
    return std::move(result_);
  }

 private:
  void extend(double partial) {
    const std::size_t last = path_.back();
    const double closed = partial + space_(last, target_);
    path_.push_back(target_);
    if (closed < result_.min_sum) {
      result_.min_sum = closed;
      result_.min_chain = path_;
    }
    // (D3): f(D(x,y)) <= f(sum) + alpha, with D(x,y) > 0 guaranteed by x != y.
    if (!result_.first_violation && evaluate(params_.f(), closed) < bound_) {
      result_.first_violation = path_;
    }
    path_.pop_back();
    if (path_.size() + 1 >= max_len_) return;
    for (std::size_t u = 0; u < space_.size(); ++u) {
      path_.push_back(u);
      extend(partial + space_(last, u));
      path_.pop_back();
    }
  }

  const FiniteSpace& space_;
  const FParams& params_;
  std::size_t max_len_;
  double tol_;
  std::size_t target_ = 0;
  double bound_ = 0.0;
  std::vector<std::size_t> path_;
  PairResult result_;
};

}  // namespace

D3Report verify_d3_bruteforce(const FiniteSpace& space, const FParams& params,
                              std::size_t max_len, double tol, std::uint64_t budget) {
  if (max_len < 2) throw std::invalid_argument("max_len must be at least 2");
  const std::size_t n = space.size();
  const std::uint64_t per_pair = chains_per_pair(n, max_len);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1);
  if (pairs > 0 && per_pair > budget / pairs) {
    std::ostringstream msg;
    msg << "chain enumeration over " << n << " points up to length " << max_len
        << " exceeds the budget of " << budget << " chains";
    throw ResourceError(msg.str());
  }

  D3Report report;
  if (n < 2) return report;

  const ControlFunction& f = params.f();
  ChainEnumerator enumerator(space, params, max_len, tol);
  DistanceTable gap(n, 0.0);
  std::vector<std::vector<std::size_t>> best_chain(n * n);
  double max_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      auto res = enumerator.run(x, y);
      gap(x, y) = evaluate(f, space(x, y)) - evaluate(f, res.min_sum);
      max_gap = std::max(max_gap, gap(x, y));
      best_chain[x * n + y] = std::move(res.min_chain);
      if (res.first_violation && !report.violating_chain) {
        report.violating_chain = Chain(std::move(*res.first_violation));
        report.violating_pair = std::make_pair(x, y);
      }
    }
  }
  report.alpha_min = std::max(0.0, max_gap);
  report.worst_pair = first_maximizer(gap, max_gap, tol);
  const auto [wi, wj] = *report.worst_pair;
  report.witness_chain = Chain(best_chain[wi * n + wj]);
  report.pass = !report.violating_chain.has_value();
  return report;
}

D3Report verify_d3_fast(const FiniteSpace& space, const FParams& params,
                        const InducedMetric& metric, double tol) {
  const std::size_t n = space.size();
  if (metric.size() != n) {
    throw std::invalid_argument("induced metric has " + std::to_string(metric.size()) +
                                " points, space has " + std::to_string(n));
  }
  D3Report report;
  if (n < 2) return report;

  const ControlFunction& f = params.f();
  DistanceTable gap(n, 0.0);
  double max_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      gap(i, j) = evaluate(f, space(i, j)) - evaluate(f, metric(i, j));
      max_gap = std::max(max_gap, gap(i, j));
      if (!report.violating_pair && gap(i, j) > params.alpha() + tol) {
        report.violating_pair = std::make_pair(i, j);
        report.violating_chain = metric.witness_chain(i, j);
      }
    }
  }
  report.alpha_min = std::max(0.0, max_gap);
  report.worst_pair = first_maximizer(gap, max_gap, tol);
  report.witness_chain = metric.witness_chain(report.worst_pair->first, report.worst_pair->second);
  report.pass = report.alpha_min <= params.alpha() + tol;
  return report;
}

}  // namespace fmetric
