#include <doctest.h>

#include <random>

#include "fmetric/audit.hpp"
#include "fmetric/dynamics.hpp"
#include "fmetric/gallery.hpp"

using namespace fmetric;

namespace {

std::vector<std::size_t> fixed_points_by_scan(const SelfMap& g) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < g.size(); ++x)
    if (g(x) == x) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("sequence and map validation") {
  CHECK_THROWS_AS(PointSequence({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(PointSequence({0, 3}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SelfMap({0, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SelfMap({0, 1, 5}, 3), std::invalid_argument);
}

TEST_CASE("is_cauchy_window") {
  const ExampleBundle ex = build_paper_example();
  const InducedMetric d = induced_metric(ex.space);

  const PointSequence constant({4, 4, 4, 4}, 101);
  CHECK(is_cauchy_window(ex.space, constant, 1e-12, 1));

  // (1/2, 1/3, 1/3, 1/3)
  const PointSequence seq({2, 3, 3, 3}, 101);
  CHECK(is_cauchy_window(ex.space, seq, 1.0, 2));
  CHECK_FALSE(is_cauchy_window(ex.space, seq, 1.0, 1));
  CHECK(is_cauchy_window(d, seq, 6.0, 1));
  CHECK_FALSE(is_cauchy_window(d, seq, 5.0, 1));

  CHECK_THROWS_AS(is_cauchy_window(ex.space, seq, 1.0, 0), std::out_of_range);
  CHECK_THROWS_AS(is_cauchy_window(ex.space, seq, 1.0, 5), std::out_of_range);
}

TEST_CASE("cauchy_transfer_certificate examples") {
  const ExampleBundle ex = build_paper_example();
  const InducedMetric d = induced_metric(ex.space);

  SUBCASE("eventually constant") {
    const PointSequence seq({7, 3, 9, 9, 9, 9}, 101);
    const auto c = cauchy_transfer_certificate(ex.space, ex.params, d, seq, 0.5);
    CHECK(c.pass());
    CHECK(c.k_D == std::optional<std::size_t>(3));
    CHECK(c.k_d == std::optional<std::size_t>(3));
    CHECK(stabilization_index(seq) == 3);
  }
  SUBCASE("(1, 1/2, 1/2, 1/2) at eps = 0.5") {
    const PointSequence seq({1, 2, 2, 2}, 101);
    CHECK(ex.space(1, 2) == 102.0);
    const auto c = cauchy_transfer_certificate(ex.space, ex.params, d, seq, 0.5);
    // f(0.5) - 300 = -302 and -1/t < -302 iff t < 1/302.
    CHECK(c.delta == doctest::Approx(1.0 / 302.0).epsilon(1e-12));
    CHECK(c.k_D == std::optional<std::size_t>(2));
    CHECK(c.k_d == std::optional<std::size_t>(2));
    CHECK(c.forward_ok);
    CHECK(c.reverse_ok);
  }
  SUBCASE("alternating prefix has no K") {
    const PointSequence seq({4, 8, 4, 8, 4, 8}, 101);
    const auto c = cauchy_transfer_certificate(ex.space, ex.params, d, seq, 1.0);
    CHECK_FALSE(c.k_D.has_value());
    CHECK_FALSE(c.k_d.has_value());
    CHECK(c.pass());
  }
}

TEST_CASE("contraction_report examples") {
  const ExampleBundle ex = build_paper_example();
  const InducedMetric d = induced_metric(ex.space);
  const std::size_t n = ex.space.size();

  const SelfMap constant(std::vector<std::size_t>(n, 17), n);
  const ContractionReport c = contraction_report(ex.space, d, constant);
  CHECK(c.best_K_D == 0.0);
  CHECK(c.best_K_d == 0.0);
  CHECK(c.is_D_contraction);
  CHECK(c.fixed_points == std::vector<std::size_t>{17});

  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  const ContractionReport ident = contraction_report(ex.space, d, SelfMap(id, n));
  CHECK(ident.best_K_D == 1.0);
  CHECK(ident.best_K_d == 1.0);
  CHECK_FALSE(ident.is_D_contraction);
  CHECK(ident.fixed_points.size() == n);

  const SelfMap to_zero(std::vector<std::size_t>(n, 0), n);
  const ContractionReport z = contraction_report(ex.space, d, to_zero);
  CHECK(z.best_K_D == 0.0);
  CHECK(z.fixed_points == std::vector<std::size_t>{0});
}

TEST_CASE("picard_iterate") {
  const FiniteSpace s = random_space(6, 4, RandomProfile::parse("uniform"));
  const SelfMap constant(std::vector<std::size_t>(6, 2), 6);
  for (std::size_t x0 = 0; x0 < 6; ++x0) {
    const PicardTrace t = picard_iterate(s, constant, x0, 10);
    CHECK(t.reached_fixed_point);
    CHECK(t.steps <= 1);
    CHECK(t.orbit.back() == 2);
  }
  const SelfMap ident({0, 1, 2, 3, 4, 5}, 6);
  const PicardTrace t = picard_iterate(s, ident, 3, 10);
  CHECK(t.steps == 0);
  CHECK(t.orbit == std::vector<std::size_t>{3});

  const SelfMap cycle({1, 0, 2, 3, 4, 5}, 6);
  const PicardTrace c = picard_iterate(s, cycle, 0, 7);
  CHECK_FALSE(c.reached_fixed_point);
  CHECK(c.steps == 7);
  CHECK(c.orbit.size() == 8);

  CHECK_THROWS_AS(picard_iterate(s, ident, 0, 0), std::invalid_argument);
}

TEST_CASE("transfer properties over the random corpus") {
  AuditConfig cfg;
  cfg.seed = 2024;
  const auto catalog = standard_params_catalog();
  std::mt19937_64 rng(1);
  std::size_t contractions = 0;
  std::size_t nonconstant = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const FiniteSpace s = corpus_space(cfg, i);
    const std::size_t n = s.size();
    const InducedMetric d = induced_metric(s);
    const ControlFunction& f = catalog[i % catalog.size()].f();
    const FParams p(f, verify_d3_fast(s, FParams(f, 0.0), d).alpha_min);

    for (int k = 0; k < 10; ++k) {
      const PointSequence seq = random_prefix(n, rng());
      const double eps = std::uniform_real_distribution<double>(0.1, 12.0)(rng);
      const auto c = cauchy_transfer_certificate(s, p, d, seq, eps);
      CHECK(c.forward_ok);
      CHECK(c.reverse_ok);
      // Literal forward implication at every window start.
      for (std::size_t K = 1; K <= seq.size(); ++K) {
        if (is_cauchy_window(s, seq, eps, K)) CHECK(is_cauchy_window(d, seq, eps, K));
        if (is_cauchy_window(d, seq, c.delta / 2, K)) CHECK(is_cauchy_window(s, seq, eps, K));
      }
      const auto conv = convergence_transfer_certificate(s, p, d, seq, seq.entries().back(), eps);
      CHECK(conv.pass());
    }

    const SelfMap g = random_contraction(s, rng());
    const ContractionReport rep = contraction_report(s, d, g);
    CHECK(rep.best_K_d <= rep.best_K_D + kDefaultTol);
    CHECK(rep.fixed_points == fixed_points_by_scan(g));
    if (rep.is_D_contraction) {
      ++contractions;
      if (rep.best_K_D > 0.0) ++nonconstant;
      REQUIRE(rep.fixed_points.size() == 1);
      for (std::size_t x0 = 0; x0 < n; ++x0) {
        const PicardTrace t = picard_iterate(s, g, x0, n);
        CHECK(t.reached_fixed_point);
        CHECK(t.orbit.back() == rep.fixed_points.front());
      }
    }
  }
  CHECK(contractions == 300);
  CHECK(nonconstant > 0);
}
