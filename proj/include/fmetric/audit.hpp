#pragma once

// Seeded self-test over a random corpus: oracle equivalence for (D3) plus the
// metric, sandwich, ball, transfer and contraction invariants on every space.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fmetric/gallery.hpp"

namespace fmetric {

/// splitmix64 of (root, index); per-instance seeds independent of schedule.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

struct AuditConfig {
  std::size_t max_n = 5;
  std::size_t count = 1000;
  std::uint64_t seed = 42;
  RandomProfile profile{RandomProfile::Kind::mixed};
  std::size_t sequences_per_space = 20;
  double tol = kDefaultTol;
};

struct AuditSummary {
  std::size_t spaces = 0;
  std::size_t verified_at_catalog_alpha = 0;
  std::size_t d3_disagreements = 0;
  std::size_t metric_failures = 0;
  std::size_t sandwich_failures = 0;
  std::size_t ball_checks = 0;
  std::size_t ball_failures = 0;
  std::size_t sequences = 0;
  std::size_t cauchy_failures = 0;
  std::size_t convergence_failures = 0;
  std::size_t completeness_failures = 0;
  std::size_t contractions = 0;
  std::size_t contraction_failures = 0;
  std::vector<std::string> first_failures;  // capped

  std::size_t violations() const {
    return d3_disagreements + metric_failures + sandwich_failures + ball_failures +
           cauchy_failures + convergence_failures + completeness_failures + contraction_failures;
  }
};

/// Space i of the corpus: size 1 + (i mod max_n), drawn with derive_seed(seed, i).
FiniteSpace corpus_space(const AuditConfig& config, std::size_t i);
/// Random sequence prefix over n points; about half settle on a constant tail.
PointSequence random_prefix(std::size_t n, std::uint64_t seed);

AuditSummary run_audit(const AuditConfig& config);

}  // namespace fmetric
