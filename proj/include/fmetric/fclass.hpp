#pragma once

// Control functions f : (0, inf) -> R of the class used by F-metrics.
//
// A control function is a finite list of closed-form pieces over left-open,
// right-closed intervals (u_{i-1}, u_i], u_0 = 0 and the last u = +inf. The
// left piece owns each breakpoint, so upward jumps there make f
// right-discontinuous. Every form is analytically invertible on its interval,
// which makes limits, jumps and the delta-modulus exact instead of sampled.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fmetric/matrix.hpp"

namespace fmetric {

enum class PieceForm { affine, log, negrecip, power };

std::string_view to_string(PieceForm form);
std::optional<PieceForm> parse_piece_form(std::string_view name);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One closed form on (lower, upper]:
///   affine    a*t + b
///   log       a*ln(t) + b
///   negrecip  -a/t + b
///   power     a*t^p + b
struct Piece {
  PieceForm form = PieceForm::affine;
  double a = 1.0;
  double b = 0.0;
  double p = 1.0;  // exponent, power form only
  double upper = kInfinity;

  double value(double t) const;
  /// Inverse of value() on the real line. Callers clamp to the piece interval.
  double inverse(double y) const;
  /// lim value(t) as t -> lower from above.
  double limit_from_right(double lower) const;
  /// value(upper), or the supremum as t -> inf for the last piece.
  double value_at_upper() const;
  bool is_nondecreasing() const;

  friend bool operator==(const Piece&, const Piece&) = default;
};

class ControlFunction {
 public:
  /// Validates structure only: nonempty, finite parameters, strictly
  /// increasing finite uppers with the last one +inf, p > 0 for power and
  /// a != 0 for log/negrecip/power. Monotonicity is check_f1's job.
  /// Throws std::invalid_argument on malformed input.
  explicit ControlFunction(std::vector<Piece> pieces);

  static ControlFunction log(double a = 1.0, double b = 0.0);
  static ControlFunction negrecip(double a = 1.0, double b = 0.0);
  static ControlFunction affine(double a = 1.0, double b = 0.0);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  double lower_of(std::size_t piece) const { return piece == 0 ? 0.0 : pieces_[piece - 1].upper; }
  std::size_t piece_index(double t) const;
  /// Interior breakpoints u_1 < ... < u_{k-1}.
  std::vector<double> breakpoints() const;

  friend bool operator==(const ControlFunction&, const ControlFunction&) = default;

 private:
  std::vector<Piece> pieces_;
};

/// Value of f at t. Throws std::domain_error for t <= 0 or NaN.
double evaluate(const ControlFunction& f, double t);

struct F1Verdict {
  bool pass = true;
  std::string reason;
  std::optional<std::size_t> piece;       // offending piece
  std::optional<std::size_t> breakpoint;  // offending join, indexes breakpoints()
  std::optional<std::pair<double, double>> witness;  // s < t with f(s) > f(t)
};

struct F2Verdict {
  bool pass = true;
  std::string reason;
  PieceForm first_form = PieceForm::log;
  std::vector<double> probe;  // f(10^-k) for k = 1..12
};

F1Verdict check_f1(const ControlFunction& f, double tol = kDefaultTol);
F2Verdict check_f2(const ControlFunction& f, double tol = kDefaultTol);

/// A control function that passed (F1) and (F2), with its relaxation constant.
class FParams {
 public:
  /// Throws std::invalid_argument when f fails check_f1/check_f2 or alpha is
  /// negative or not finite.
  FParams(ControlFunction f, double alpha);

  const ControlFunction& f() const noexcept { return f_; }
  double alpha() const noexcept { return alpha_; }

 private:
  ControlFunction f_;
  double alpha_;
};

/// sup{ s > 0 : f(t) < f(r) - alpha for all t in (0, s) }, by exact
/// piecewise inversion. Returns +inf when f never reaches f(r) - alpha.
/// Throws std::domain_error for r <= 0.
double delta_for_radius(const FParams& params, double r);

inline bool is_unbounded(double delta) { return delta == kInfinity; }

}  // namespace fmetric
