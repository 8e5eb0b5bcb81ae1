#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fmetric/audit.hpp"
#include "fmetric/gallery.hpp"

using namespace fmetric;

TEST_CASE("101-point example bundle") {
  const ExampleBundle b = build_paper_example();
  const FiniteSpace& s = b.space;
  REQUIRE(s.size() == 101);
  CHECK(s.labels().front() == "0");
  CHECK(s.labels()[5] == "1/5");
  CHECK(s.labels().back() == "1/100");
  CHECK(s(0, 5) == 5.0);
  CHECK(s(2, 7) == 110.0);
  CHECK(b.params.alpha() == 300.0);

  const ControlFunction& f = b.params.f();
  CHECK(evaluate(f, 1.0) == -1.0);
  CHECK(f.pieces()[1].limit_from_right(1.0) == 1.0);  // jump at t = 1
  CHECK(check_f1(f).pass);
  CHECK(check_f2(f).pass);

  const InducedMetric d = induced_metric(s);
  CHECK(verify_d3_fast(s, b.params, d).pass);
}

TEST_CASE("squared-difference example") {
  const ExampleBundle b = build_js1_square_example({0.0, 1.0, 2.0});
  CHECK(b.space(0, 2) == 4.0);
  const InducedMetric d = induced_metric(b.space);
  CHECK(d(0, 2) == 2.0);
  const D3Report r = verify_d3_fast(b.space, b.params, d);
  CHECK(r.pass);
  CHECK(r.alpha_min == doctest::Approx(std::log(2.0)));
  // Brute force over all chains of length <= 5 agrees.
  CHECK(verify_d3_bruteforce(b.space, b.params, 5).pass);
  CHECK(verify_d3_bruteforce(b.space, b.params, 5).alpha_min == doctest::Approx(std::log(2.0)));

  CHECK(find_min_alpha(build_js1_square_example({0.0, 1.0}).space, ControlFunction::log()) == 0.0);
  const ExampleBundle one = build_js1_square_example({0.0});
  CHECK(verify_d3_fast(one.space, one.params, induced_metric(one.space)).pass);

  CHECK_THROWS_AS(build_js1_square_example({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_js1_square_example({}), std::invalid_argument);
}

TEST_CASE("random_space") {
  const FiniteSpace one = random_space(1, 9, RandomProfile{});
  CHECK(one.size() == 1);
  CHECK(one(0, 0) == 0.0);

  for (const char* prof : {"uniform", "uniform:2:3", "near-metric:1.5", "mixed"}) {
    const RandomProfile p = RandomProfile::parse(prof);
    CHECK(random_space(6, 77, p).dist() == random_space(6, 77, p).dist());
    CHECK(verify_d1_d2(random_space(6, 77, p)).pass);
  }
  const FiniteSpace u = random_space(5, 1, RandomProfile::parse("uniform:2:3"));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) CHECK((u(i, j) >= 2.0 && u(i, j) <= 3.0));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FiniteSpace m = random_space(7, seed, RandomProfile::parse("near-metric:1"));
    const InducedMetric d = induced_metric(m);
    CHECK(d.dmat() == m.dist());
    CHECK(verify_d3_fast(m, FParams(ControlFunction::log(), 0.0), d).pass);
  }

  CHECK_THROWS_AS(random_space(0, 1, RandomProfile{}), std::invalid_argument);
  for (const char* bad : {"gaussian", "uniform:0:1", "uniform:3:2", "uniform:1", "near-metric:0.5",
                          "near-metric:x", "mixed:1"}) {
    CHECK_THROWS_AS(RandomProfile::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("find_min_alpha") {
  const ExampleBundle b = build_paper_example();
  const double a = find_min_alpha(b.space, b.params.f());
  CHECK(a <= 300.0);
  CHECK(a == 197.0);

  // 6-point subspace {0, 1/1, ..., 1/5}: brute force over chains with repeats.
  std::vector<std::size_t> idx(6);
  std::iota(idx.begin(), idx.end(), 0);
  const FiniteSpace sub = b.space.subspace(idx);
  const D3Report brute = verify_d3_bruteforce(sub, b.params, 8);
  CHECK(brute.alpha_min == 102.0);
  CHECK(std::abs(find_min_alpha(sub, b.params.f()) - brute.alpha_min) <= 1e-9);

  CHECK(find_min_alpha(random_space(5, 3, RandomProfile::parse("near-metric:1")),
                       ControlFunction::log()) == 0.0);

  DistanceTable t(3, 0.0);
  t(0, 1) = t(1, 0) = 1.0;
  t(0, 2) = t(2, 0) = 1.0;
  t(1, 2) = t(2, 1) = 10.0;
  CHECK(find_min_alpha(FiniteSpace({"a", "b", "c"}, t), ControlFunction::log()) ==
        doctest::Approx(std::log(5.0)));

  CHECK_THROWS_AS(find_min_alpha(b.space, ControlFunction::affine()), std::invalid_argument);
}

TEST_CASE("subspace monotonicity of alpha_min") {
  AuditConfig cfg;
  cfg.max_n = 7;
  cfg.seed = 8;
  std::mt19937_64 rng(3);
  for (std::size_t i = 0; i < 150; ++i) {
    const FiniteSpace s = corpus_space(cfg, i);
    const ControlFunction f = random_control_function(i + 1000);
    const double full = find_min_alpha(s, f);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (rng() % 3 != 0) keep.push_back(k);
    if (keep.empty()) keep.push_back(0);
    CHECK(find_min_alpha(s.subspace(keep), f) <= full + 1e-9);
  }
}

TEST_CASE("standard catalog and corpus determinism") {
  const auto cat = standard_params_catalog();
  CHECK(cat.size() == 12);
  AuditConfig cfg;
  for (std::size_t i = 0; i < 20; ++i) CHECK(corpus_space(cfg, i).dist() == corpus_space(cfg, i).dist());
  CHECK(random_control_function(5) == random_control_function(5));
}

TEST_CASE("101-point example pair classes") {
  const ExampleBundle b = build_paper_example();
  const auto rows = paper_example_pair_classes(b, induced_metric(b.space));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].pairs == 1);
  CHECK(rows[1].pairs == 99);
  CHECK(rows[2].pairs == 4950);
  // d(0, 1/n) = n = D(0, 1/n): no gain through other points.
  CHECK(rows[0].max_gap == 0.0);
  CHECK(rows[1].max_gap == 0.0);
  CHECK(rows[2].max_gap == 197.0);
  CHECK(rows[2].worst_i == 1);
  CHECK(rows[2].worst_j == 100);
}
