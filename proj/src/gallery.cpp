#include "fmetric/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fmetric {

ControlFunction paper_control_function() {
  return ControlFunction({Piece{PieceForm::negrecip, 1.0, 0.0, 1.0, 1.0},
                          Piece{PieceForm::affine, 1.0, 0.0, 1.0, kInfinity}});
}

ExampleBundle build_paper_example() {
  constexpr std::size_t kCount = 100;
  std::vector<std::string> labels{"0"};
  for (std::size_t k = 1; k <= kCount; ++k) labels.push_back("1/" + std::to_string(k));

  DistanceTable dist(kCount + 1, 0.0);
  for (std::size_t m = 1; m <= kCount; ++m) {
    dist(0, m) = dist(m, 0) = static_cast<double>(m);
    for (std::size_t k = 1; k <= kCount; ++k) {
      if (k == m) continue;
      const double gap = m > k ? static_cast<double>(m - k) : static_cast<double>(k - m);
      dist(m, k) = 2.0 * gap + 100.0;
    }
  }
  return ExampleBundle{FiniteSpace(std::move(labels), std::move(dist)),
                       FParams(paper_control_function(), 300.0),
                       "101-point space with right-discontinuous f, alpha = 300"};
}

ExampleBundle build_js1_square_example(const std::vector<double>& points) {
  if (points.empty()) throw std::invalid_argument("need at least one point");
  if (std::set<double>(points.begin(), points.end()).size() != points.size()) {
    throw std::invalid_argument("duplicate points");
  }
  std::vector<std::string> labels;
  for (double x : points) {
    std::ostringstream os;
    os << std::setprecision(15) << x;
    labels.push_back(os.str());
  }
  DistanceTable dist(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      const double diff = points[i] - points[j];
      dist(i, j) = diff * diff;
    }
  }
  return ExampleBundle{FiniteSpace(std::move(labels), std::move(dist)),
                       FParams(ControlFunction::log(), std::log(3.0)),
                       "squared differences on reals, f = ln, alpha = ln 3"};
}

RandomProfile RandomProfile::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);

  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("malformed number '" + s + "' in profile");
    }
    return v;
  };

  RandomProfile p;
  if (parts[0] == "uniform" && (parts.size() == 1 || parts.size() == 3)) {
    p.kind = Kind::uniform;
    if (parts.size() == 3) {
      p.low = number(parts[1]);
      p.high = number(parts[2]);
    }
  } else if (parts[0] == "near-metric" && parts.size() <= 2) {
    p.kind = Kind::near_metric;
    if (parts.size() == 2) p.gamma = number(parts[1]);
  } else if (parts[0] == "mixed" && parts.size() == 1) {
    p.kind = Kind::mixed;
  } else {
    throw std::invalid_argument("unknown profile '" + std::string(text) + "'");
  }
  if (!(p.low > 0.0) || !(p.high >= p.low)) {
    throw std::invalid_argument("uniform profile needs 0 < low <= high");
  }
  if (!(p.gamma >= 1.0)) throw std::invalid_argument("near-metric profile needs gamma >= 1");
  return p;
}

std::string RandomProfile::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::uniform: os << "uniform:" << low << ":" << high; break;
    case Kind::near_metric: os << "near-metric:" << gamma; break;
    case Kind::mixed: os << "mixed"; break;
  }
  return os.str();
}

FiniteSpace random_space(std::size_t n, std::uint64_t seed, const RandomProfile& profile) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (!(profile.low > 0.0) || !(profile.high >= profile.low) || !(profile.gamma >= 1.0)) {
    throw std::invalid_argument("malformed profile " + profile.to_string());
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  RandomProfile::Kind kind = profile.kind;
  if (kind == RandomProfile::Kind::mixed) {
    kind = unit(rng) < 0.5 ? RandomProfile::Kind::uniform : RandomProfile::Kind::near_metric;
  }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  DistanceTable dist(n, 0.0);

  if (kind == RandomProfile::Kind::uniform) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        dist(i, j) = dist(j, i) = profile.low + (profile.high - profile.low) * unit(rng);
      }
    }
  } else {
    // A metric plus a constant is still a metric, and the shift keeps entries away from 0.
    constexpr double kShift = 0.1;
    std::vector<std::pair<double, double>> pts(n);
    for (auto& [x, y] : pts) {
      x = 10.0 * unit(rng);
      y = 10.0 * unit(rng);
    }
    const double log_gamma = std::log(profile.gamma);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double base = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
        const double stretch = std::exp(log_gamma * unit(rng));
        dist(i, j) = dist(j, i) = (base + kShift) * stretch;
      }
    }
  }
  return FiniteSpace(std::move(labels), std::move(dist));
}

double find_min_alpha(const FiniteSpace& space, const ControlFunction& f) {
  const FParams params(f, 0.0);
  return verify_d3_fast(space, params, induced_metric(space)).alpha_min;
}

std::vector<FParams> standard_params_catalog() {
  const std::vector<ControlFunction> fs{ControlFunction::log(), ControlFunction::negrecip(),
                                        paper_control_function()};
  const std::vector<double> alphas{0.0, 0.5, std::log(3.0), 5.0};
  std::vector<FParams> out;
  for (const auto& f : fs) {
    for (double a : alphas) out.emplace_back(f, a);
  }
  return out;
}

ControlFunction random_control_function(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const std::size_t count = 1 + static_cast<std::size_t>(rng() % 4);
  std::set<double> cuts;
  while (cuts.size() + 1 < count) cuts.insert(std::exp(uniform(std::log(0.05), std::log(20.0))));
  std::vector<double> uppers(cuts.begin(), cuts.end());
  uppers.push_back(kInfinity);

  std::vector<Piece> pieces;
  Piece first;
  first.form = unit(rng) < 0.5 ? PieceForm::log : PieceForm::negrecip;
  first.a = uniform(0.5, 3.0);
  first.b = uniform(-2.0, 2.0);
  first.upper = uppers[0];
  pieces.push_back(first);

  constexpr PieceForm kForms[] = {PieceForm::affine, PieceForm::log, PieceForm::negrecip,
                                  PieceForm::power};
  for (std::size_t i = 1; i < count; ++i) {
    const double u = uppers[i - 1];
    const double left = pieces.back().value(u);
    Piece pc;
    pc.form = kForms[rng() % 4];
    pc.a = (pc.form == PieceForm::affine && unit(rng) < 0.2) ? 0.0 : uniform(0.1, 3.0);
    pc.p = uniform(0.5, 3.0);
    pc.b = 0.0;
    pc.upper = uppers[i];
    const double jump = unit(rng) < 0.5 ? 0.0 : uniform(0.0, 5.0);
    pc.b = left + jump - pc.value(u);
    pieces.push_back(pc);
  }
  return ControlFunction(std::move(pieces));
}

namespace {

double d_ratio_max(const FiniteSpace& space, const std::vector<std::size_t>& g) {
  double best = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      if (g[x] == g[y]) continue;
      best = std::max(best, space(g[x], g[y]) / space(x, y));
    }
  }
  return best;
}

}  // namespace

SelfMap random_contraction(const FiniteSpace& space, std::uint64_t seed, int max_tries) {
  const std::size_t n = space.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t sink = static_cast<std::size_t>(rng() % n);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const double pull = unit(rng);
    std::vector<std::size_t> g(n);
    for (std::size_t x = 0; x < n; ++x) {
      g[x] = (x == sink || unit(rng) < pull) ? sink : static_cast<std::size_t>(rng() % n);
    }
    if (d_ratio_max(space, g) < 1.0) return SelfMap(std::move(g), n);
  }
  return SelfMap(std::vector<std::size_t>(n, sink), n);
}

std::vector<PairClassRow> paper_example_pair_classes(const ExampleBundle& bundle,
                                                     const InducedMetric& metric) {
  const FiniteSpace& s = bundle.space;
  const ControlFunction& f = bundle.params.f();
  std::vector<PairClassRow> rows{{"0 vs 1/1 (D = 1)", 0, -kInfinity, 0, 0},
                                 {"0 vs 1/n, n >= 2 (D > 1)", 0, -kInfinity, 0, 0},
                                 {"1/m vs 1/m', m != m'", 0, -kInfinity, 0, 0}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      PairClassRow& row = i != 0 ? rows[2] : (j == 1 ? rows[0] : rows[1]);
      const double gap = evaluate(f, s(i, j)) - evaluate(f, metric(i, j));
      ++row.pairs;
      if (gap > row.max_gap) {
        row.max_gap = gap;
        row.worst_i = i;
        row.worst_j = j;
      }
    }
  }
  return rows;
}

}  // namespace fmetric
