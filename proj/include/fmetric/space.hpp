#pragma once

// Finite candidate F-metric spaces and the (D1)-(D3) axiom checks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fmetric/fclass.hpp"
#include "fmetric/matrix.hpp"

namespace fmetric {

class InducedMetric;

/// Point labels plus the full distance table D. The constructor checks shape
/// only (n >= 1, square, finite entries, unique labels); the axioms are
/// verified by verify_d1_d2 so that broken tables can still be reported on.
class FiniteSpace {
 public:
  FiniteSpace(std::vector<std::string> labels, DistanceTable dist);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const DistanceTable& dist() const noexcept { return dist_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }

  std::optional<std::size_t> index_of(std::string_view label) const;
  /// Restriction of D to the given points, in the given order.
  FiniteSpace subspace(std::span<const std::size_t> indices) const;

 private:
  std::vector<std::string> labels_;
  DistanceTable dist_;
};

/// A finite chain u_1..u_N (N >= 2, repeats allowed).
class Chain {
 public:
  explicit Chain(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::size_t front() const { return indices_.front(); }
  std::size_t back() const { return indices_.back(); }

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Sum of D over consecutive chain links. Throws std::out_of_range on a bad index.
double chain_sum(const FiniteSpace& space, const Chain& chain);

struct AxiomVerdict {
  bool pass = true;
  std::string axiom;  // "D1" or "D2" on failure
  std::string reason;
  std::optional<std::pair<std::size_t, std::size_t>> entry;
};

AxiomVerdict verify_d1_d2(const FiniteSpace& space, double tol = kDefaultTol);

struct D3Report {
  bool pass = true;
  /// Lexicographically first pair maximizing f(D(x,y)) - f(d(x,y)); empty for n = 1.
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  /// Minimal-sum chain for worst_pair.
  std::optional<Chain> witness_chain;
  double alpha_min = 0.0;
  /// First chain breaking the (D3) inequality at the given alpha.
  std::optional<Chain> violating_chain;
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
};

/// Thrown when an exhaustive enumeration would exceed its chain budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of chains of length <= max_len between one fixed ordered pair.
std::uint64_t chains_per_pair(std::size_t n, std::size_t max_len);

inline constexpr std::uint64_t kDefaultChainBudget = 50'000'000;

/// Checks (D3) on every chain of length <= max_len for every ordered pair
/// x != y, repeats included. Intended as an oracle on small spaces.
D3Report verify_d3_bruteforce(const FiniteSpace& space, const FParams& params,
                              std::size_t max_len, double tol = kDefaultTol,
                              std::uint64_t budget = kDefaultChainBudget);

/// Checks f(D(x,y)) <= f(d(x,y)) + alpha for every pair x != y, which is (D3)
/// over all chains because f is nondecreasing and d is attained.
/// Throws std::invalid_argument when the metric does not match the space size.
D3Report verify_d3_fast(const FiniteSpace& space, const FParams& params,
                        const InducedMetric& metric, double tol = kDefaultTol);

}  // namespace fmetric
