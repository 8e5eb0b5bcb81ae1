#include "fmetric/audit.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace fmetric {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

FiniteSpace corpus_space(const AuditConfig& config, std::size_t i) {
  const std::size_t n = 1 + i % std::max<std::size_t>(config.max_n, 1);
  return random_space(n, derive_seed(config.seed, i), config.profile);
}

PointSequence random_prefix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t len = 1 + rng() % 12;
  std::vector<std::size_t> entries(len);
  for (auto& e : entries) e = rng() % n;
  if (rng() % 2 == 0) {
    const std::size_t from = rng() % len;
    std::fill(entries.begin() + static_cast<std::ptrdiff_t>(from), entries.end(), entries[from]);
  }
  return PointSequence(std::move(entries), n);
}

namespace {

class Recorder {
 public:
  explicit Recorder(AuditSummary& s) : s_(s) {}
  void fail(std::size_t& counter, std::size_t space_index, const std::string& what) {
    ++counter;
    if (s_.first_failures.size() < 20) {
      s_.first_failures.push_back("space " + std::to_string(space_index) + ": " + what);
    }
  }

 private:
  AuditSummary& s_;
};

double pick_eps(const FiniteSpace& space, std::mt19937_64& rng) {
  const std::size_t n = space.size();
  if (n < 2) return 1.0;
  const std::size_t i = rng() % n;
  std::size_t j = rng() % (n - 1);
  if (j >= i) ++j;
  constexpr double kFactors[] = {0.5, 1.0, 1.01, 2.0};
  return space(i, j) * kFactors[rng() % 4];
}

}  // namespace

AuditSummary run_audit(const AuditConfig& config) {
  AuditSummary sum;
  Recorder rec(sum);
  const auto catalog = standard_params_catalog();

  for (std::size_t idx = 0; idx < config.count; ++idx) {
    const FiniteSpace space = corpus_space(config, idx);
    const std::size_t n = space.size();
    const FParams& drawn = catalog[idx % catalog.size()];
    ++sum.spaces;

    if (auto v = verify_d1_d2(space, config.tol); !v.pass) {
      rec.fail(sum.metric_failures, idx, "generator produced a table failing " + v.axiom);
      continue;
    }
    const InducedMetric metric = induced_metric(space);
    if (auto v = verify_metric(metric, space, config.tol); !v.pass) {
      rec.fail(sum.metric_failures, idx, "induced metric fails " + v.axiom + ": " + v.reason);
    }

    const D3Report fast = verify_d3_fast(space, drawn, metric, config.tol);
    const D3Report brute = verify_d3_bruteforce(space, drawn, n + 2, config.tol);
    if (fast.pass != brute.pass || fast.violating_pair.has_value() != brute.violating_pair.has_value()) {
      rec.fail(sum.d3_disagreements, idx, "fast and brute-force (D3) verdicts differ");
    }

    // Transfer checks need (D3); relax alpha to alpha_min when the drawn one fails.
    const FParams params = fast.pass ? drawn : FParams(drawn.f(), fast.alpha_min);
    if (fast.pass) ++sum.verified_at_catalog_alpha;

    if (auto v = sandwich_check(space, params, metric, kDefaultEpsGrid, config.tol); !v.pass) {
      rec.fail(sum.sandwich_failures, idx, v.reason);
    }

    for (std::size_t x = 0; x < n; ++x) {
      double lo = kInfinity, hi = 0.0, total = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x) continue;
        lo = std::min(lo, space(x, y));
        hi = std::max(hi, space(x, y));
        total += space(x, y);
      }
      const std::vector<double> radii =
          n < 2 ? std::vector<double>{1.0}
                : std::vector<double>{0.5 * lo, total / static_cast<double>(n - 1), 2.0 * hi};
      for (double r : radii) {
        ++sum.ball_checks;
        const BallWitness w = ball_witness(space, params, metric, x, r);
        if (!w.contain_D_in_d || !w.contain_d_in_D) {
          std::ostringstream msg;
          msg << "ball containment fails at center " << x << ", r = " << r;
          rec.fail(sum.ball_failures, idx, msg.str());
        }
      }
    }

    double min_d = kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) min_d = std::min(min_d, metric(i, j));
    }

    std::mt19937_64 rng(derive_seed(config.seed ^ 0xC0FFEEULL, idx));
    for (std::size_t s = 0; s < config.sequences_per_space; ++s) {
      ++sum.sequences;
      const PointSequence seq = random_prefix(n, rng());
      const double eps = pick_eps(space, rng);
      if (!cauchy_transfer_certificate(space, params, metric, seq, eps).pass()) {
        rec.fail(sum.cauchy_failures, idx, "Cauchy transfer fails");
      }
      const std::size_t limit = seq.entries().back();
      if (!convergence_transfer_certificate(space, params, metric, seq, limit, eps).pass()) {
        rec.fail(sum.convergence_failures, idx, "convergence transfer fails");
      }
      if (n >= 2) {
        // d-Cauchy below the smallest positive d forces a constant tail, which D-converges.
        std::optional<std::size_t> k_all = 1;
        for (double e : {0.5 * min_d, 0.25 * min_d, 0.1 * min_d}) {
          const auto k = least_cauchy_start(metric.dmat(), seq, e);
          k_all = (k && k_all) ? std::optional(std::max(*k, *k_all)) : std::nullopt;
        }
        if (k_all) {
          const bool constant = *k_all >= stabilization_index(seq);
          const bool converges = is_convergent_window(space.dist(), seq, limit, 0.1 * min_d, *k_all);
          if (!constant || !converges) {
            rec.fail(sum.completeness_failures, idx, "d-Cauchy prefix is not eventually constant");
          }
        }
      }
    }

    const SelfMap g = random_contraction(space, derive_seed(config.seed ^ 0xBA5EULL, idx));
    const ContractionReport rep = contraction_report(space, metric, g, config.tol);
    if (!rep.transfer_holds) rec.fail(sum.contraction_failures, idx, "best_K_d > best_K_D");
    if (rep.is_D_contraction) {
      ++sum.contractions;
      if (rep.fixed_points.size() != 1) {
        rec.fail(sum.contraction_failures, idx, "contraction without a unique fixed point");
      } else {
        for (std::size_t x0 = 0; x0 < n; ++x0) {
          const PicardTrace t = picard_iterate(space, g, x0, n);
          if (!t.reached_fixed_point || t.orbit.back() != rep.fixed_points.front()) {
            rec.fail(sum.contraction_failures, idx, "Picard orbit misses the fixed point");
          }
        }
      }
    }
  }
  return sum;
}

}  // namespace fmetric
