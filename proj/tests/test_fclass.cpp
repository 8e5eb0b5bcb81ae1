#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fmetric/fclass.hpp"
#include "fmetric/gallery.hpp"
#include "oracles.hpp"

using namespace fmetric;

namespace {

ControlFunction jump_down() {
  return ControlFunction({Piece{PieceForm::affine, 1.0, 5.0, 1.0, 1.0},
                          Piece{PieceForm::affine, 1.0, 0.0, 1.0, kInfinity}});
}

std::vector<double> sample_grid(const ControlFunction& f) {
  std::vector<double> ts;
  for (int k = -120; k <= 60; ++k) ts.push_back(std::pow(10.0, k / 10.0));
  for (double u : f.breakpoints()) {
    for (double h : {1e-9, 1e-6, 1e-3}) {
      ts.push_back(u - h * u);
      ts.push_back(u + h * u);
    }
    ts.push_back(u);
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

}  // namespace

TEST_CASE("evaluate picks the piece owning t") {
  const ControlFunction f = paper_control_function();
  CHECK(evaluate(f, 1.0) == -1.0);
  CHECK(evaluate(f, 2.0) == 2.0);
  CHECK(evaluate(f, 0.5) == -2.0);
  CHECK(evaluate(ControlFunction::log(), 1.0) == 0.0);
  CHECK_THROWS_AS(evaluate(f, 0.0), std::domain_error);
  CHECK_THROWS_AS(evaluate(f, -1.0), std::domain_error);
  CHECK_THROWS_AS(evaluate(f, std::nan("")), std::domain_error);
}

TEST_CASE("control function structure is validated") {
  CHECK_THROWS_AS(ControlFunction({}), std::invalid_argument);
  // last piece must reach +inf
  CHECK_THROWS_AS(ControlFunction({Piece{PieceForm::log, 1, 0, 1, 5.0}}), std::invalid_argument);
  // uppers increasing
  CHECK_THROWS_AS(ControlFunction({Piece{PieceForm::log, 1, 0, 1, 2.0},
                                   Piece{PieceForm::affine, 1, 0, 1, 1.0},
                                   Piece{PieceForm::affine, 1, 0, 1, kInfinity}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ControlFunction({Piece{PieceForm::power, 1, 0, 0.0, kInfinity}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ControlFunction({Piece{PieceForm::log, 0, 0, 1, kInfinity}}),
                  std::invalid_argument);
}

TEST_CASE("check_f1") {
  CHECK(check_f1(paper_control_function()).pass);
  CHECK(check_f1(ControlFunction::affine()).pass);

  SUBCASE("downward jump is caught with a straddling witness") {
    const ControlFunction f = jump_down();
    // Grid oracle: left piece at 1 is 6, right piece just above 1 is about 1.
    CHECK(evaluate(f, 1.0) == 6.0);
    CHECK(evaluate(f, 1.0 + 1e-9) == doctest::Approx(1.0));
    const F1Verdict v = check_f1(f);
    REQUIRE_FALSE(v.pass);
    REQUIRE(v.breakpoint.has_value());
    CHECK(*v.breakpoint == 0);
    REQUIRE(v.witness.has_value());
    const auto [s, t] = *v.witness;
    CHECK(s < t);
    CHECK(s <= 1.0);
    CHECK(t > 1.0);
    CHECK(evaluate(f, s) > evaluate(f, t));
  }

  SUBCASE("decreasing piece") {
    const F1Verdict v = check_f1(ControlFunction::affine(-1.0, 0.0));
    REQUIRE_FALSE(v.pass);
    CHECK(v.piece == std::optional<std::size_t>(0));
    const auto [s, t] = *v.witness;
    CHECK(evaluate(ControlFunction::affine(-1.0, 0.0), s) >
          evaluate(ControlFunction::affine(-1.0, 0.0), t));
  }
}

TEST_CASE("check_f2") {
  CHECK(check_f2(paper_control_function()).pass);

  const F2Verdict affine = check_f2(ControlFunction::affine());
  CHECK_FALSE(affine.pass);
  CHECK(affine.first_form == PieceForm::affine);
  CHECK(affine.reason.find("affine") != std::string::npos);

  const F2Verdict lg = check_f2(ControlFunction::log());
  CHECK(lg.pass);
  REQUIRE(lg.probe.size() == 12);
  for (int k = 1; k <= 12; ++k) {
    CHECK(lg.probe[k - 1] == doctest::Approx(-k * std::log(10.0)).epsilon(1e-12));
  }

  CHECK_FALSE(check_f2(jump_down()).pass);  // needs (F1) first
}

TEST_CASE("FParams rejects invalid members") {
  CHECK_THROWS_AS(FParams(ControlFunction::affine(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FParams(ControlFunction::log(), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(FParams(ControlFunction::log(), kInfinity), std::invalid_argument);
  CHECK_NOTHROW(FParams(ControlFunction::log(), 0.0));
}

TEST_CASE("delta_for_radius examples") {
  CHECK(delta_for_radius(FParams(ControlFunction::log(), 0.0), 0.5) == doctest::Approx(0.5));

  const FParams ln3(ControlFunction::log(), std::log(3.0));
  const double d1 = delta_for_radius(ln3, 0.6);
  CHECK(d1 == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(d1 == doctest::Approx(oracle::bisect_delta(ln3, 0.6)).epsilon(1e-9));

  const FParams ex(paper_control_function(), 300.0);
  const double d2 = delta_for_radius(ex, 50.0);
  CHECK(d2 == doctest::Approx(1.0 / 250.0).epsilon(1e-12));
  // Dense grid on (0, 2 delta): below delta strictly under target, above not.
  const double target = evaluate(ex.f(), 50.0) - 300.0;
  for (int k = 1; k < 2000; ++k) {
    const double t = 2.0 * d2 * k / 2000.0;
    if (t < d2 * (1 - 1e-12)) CHECK(evaluate(ex.f(), t) < target);
    if (t > d2 * (1 + 1e-12)) CHECK(evaluate(ex.f(), t) >= target);
  }

  CHECK_THROWS_AS(delta_for_radius(ex, 0.0), std::domain_error);
  CHECK_THROWS_AS(delta_for_radius(ex, -2.0), std::domain_error);
}

TEST_CASE("delta lands on a jump breakpoint") {
  // f = -1/t on (0,1], t on (1,inf). r = 2, alpha = 2.5: target -0.5, and f
  // stays at or below -1 up to t = 1, then jumps to ~1 >= -0.5.
  const FParams p(paper_control_function(), 2.5);
  CHECK(delta_for_radius(p, 2.0) == 1.0);
  CHECK(oracle::bisect_delta(p, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("properties over random control functions") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ControlFunction f = random_control_function(seed);
    REQUIRE(check_f1(f).pass);
    REQUIRE(check_f2(f).pass);

    const auto ts = sample_grid(f);
    for (std::size_t i = 1; i < ts.size(); ++i) {
      CHECK(evaluate(f, ts[i - 1]) <= evaluate(f, ts[i]) + kDefaultTol);
    }

    const FParams p(f, 5.0 * unit(rng));
    const double r = std::exp(std::log(0.01) + unit(rng) * (std::log(100.0) - std::log(0.01)));
    const double delta = delta_for_radius(p, r);
    const double target = evaluate(f, r) - p.alpha();
    REQUIRE(delta > 0.0);
    CHECK(delta <= r);  // f(r) >= target, so the modulus never exceeds r
    CHECK(delta == doctest::Approx(oracle::bisect_delta(p, r)).epsilon(1e-9));
    for (int k = 0; k <= 200; ++k) {
      const double t = delta * (1 - 1e-12) * std::pow(10.0, -k * 0.05);
      CHECK(evaluate(f, t) < target);
    }
    // Maximality: just above delta the target is reached.
    const double above = delta * (1 + 5e-7);
    CHECK(evaluate(f, above) >= target);
  }
}
