#pragma once

// Example spaces and seeded generators for the property suites.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fmetric/dynamics.hpp"
#include "fmetric/fclass.hpp"
#include "fmetric/metrizer.hpp"
#include "fmetric/space.hpp"

namespace fmetric {

struct ExampleBundle {
  FiniteSpace space;
  FParams params;
  std::string provenance;
};

/// f(t) = -1/t on (0, 1], t on (1, inf). Jumps from -1 to 1 at t = 1.
ControlFunction paper_control_function();

/// X = {0} u {1/n : n = 1..100}; D(0, 1/n) = n, D(1/m, 1/m') = 2|m - m'| + 100;
/// f as in paper_control_function(), alpha = 300. Index 0 is "0", index n is "1/n".
ExampleBundle build_paper_example();

/// D(x, y) = (x - y)^2 on the given reals, f = ln, alpha = ln 3.
/// Throws std::invalid_argument on an empty or duplicated point list.
ExampleBundle build_js1_square_example(const std::vector<double>& points);

struct RandomProfile {
  enum class Kind { uniform, near_metric, mixed };
  Kind kind = Kind::uniform;
  double low = 1.0;    // uniform bounds
  double high = 10.0;
  double gamma = 2.0;  // near-metric multiplicative stretch, >= 1

  /// "uniform", "uniform:LOW:HIGH", "near-metric", "near-metric:GAMMA", "mixed".
  /// Throws std::invalid_argument on anything else.
  static RandomProfile parse(std::string_view text);
  std::string to_string() const;
};

/// Deterministic in (n, seed, profile). Uniform draws every off-diagonal entry
/// from [low, high]. Near-metric takes a planar Euclidean metric shifted by a
/// constant and stretches each entry by a factor in [1, gamma].
/// Throws std::invalid_argument for n == 0 or a malformed profile.
FiniteSpace random_space(std::size_t n, std::uint64_t seed, const RandomProfile& profile);

/// alpha_min of (D3) for f on the space.
double find_min_alpha(const FiniteSpace& space, const ControlFunction& f);

/// {ln, -1/t, piecewise example f} x alpha in {0, 0.5, ln 3, 5}.
std::vector<FParams> standard_params_catalog();

/// Random valid member of the class: 1-4 pieces, first piece log or negrecip,
/// nondecreasing joins with optional upward jumps.
ControlFunction random_control_function(std::uint64_t seed);

/// D-contraction with best_K_D < 1, found by rejection sampling over maps that
/// pull points toward a random sink. Falls back to the constant map at the sink.
SelfMap random_contraction(const FiniteSpace& space, std::uint64_t seed, int max_tries = 200);

struct PairClassRow {
  std::string name;
  std::size_t pairs = 0;
  double max_gap = 0.0;  // max of f(D) - f(d) over the class
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

/// Per-class maxima of f(D) - f(d) for the 101-point example: 0 vs 1/1,
/// 0 vs 1/n (n >= 2), and 1/m vs 1/m'.
std::vector<PairClassRow> paper_example_pair_classes(const ExampleBundle& bundle,
                                                     const InducedMetric& metric);

}  // namespace fmetric
