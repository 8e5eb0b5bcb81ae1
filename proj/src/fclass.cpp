#include "fmetric/fclass.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fmetric {

std::string_view to_string(PieceForm form) {
  switch (form) {
    case PieceForm::affine: return "affine";
    case PieceForm::log: return "log";
    case PieceForm::negrecip: return "negrecip";
    case PieceForm::power: return "power";
  }
  return "?";
}

std::optional<PieceForm> parse_piece_form(std::string_view name) {
  if (name == "affine") return PieceForm::affine;
  if (name == "log") return PieceForm::log;
  if (name == "negrecip") return PieceForm::negrecip;
  if (name == "power") return PieceForm::power;
  return std::nullopt;
}

double Piece::value(double t) const {
  switch (form) {
    case PieceForm::affine: return a * t + b;
    case PieceForm::log: return a * std::log(t) + b;
    case PieceForm::negrecip: return -a / t + b;
    case PieceForm::power: return a * std::pow(t, p) + b;
  }
  return std::nan("");
}

double Piece::inverse(double y) const {
  switch (form) {
    case PieceForm::affine: return (y - b) / a;
    case PieceForm::log: return std::exp((y - b) / a);
    case PieceForm::negrecip: return a / (b - y);
    case PieceForm::power: {
      const double base = (y - b) / a;
      return base <= 0.0 ? 0.0 : std::pow(base, 1.0 / p);
    }
  }
  return std::nan("");
}

double Piece::limit_from_right(double lower) const {
  if (lower > 0.0) return value(lower);
  switch (form) {
    case PieceForm::affine:
    case PieceForm::power: return b;
    case PieceForm::log:
    case PieceForm::negrecip: return a > 0.0 ? -kInfinity : kInfinity;
  }
  return std::nan("");
}

double Piece::value_at_upper() const {
  if (std::isfinite(upper)) return value(upper);
  switch (form) {
    case PieceForm::affine:
      if (a == 0.0) return b;
      return a > 0.0 ? kInfinity : -kInfinity;
    case PieceForm::log:
    case PieceForm::power: return a > 0.0 ? kInfinity : -kInfinity;
    case PieceForm::negrecip: return b;
  }
  return std::nan("");
}

bool Piece::is_nondecreasing() const {
  return form == PieceForm::affine ? a >= 0.0 : a > 0.0;
}

ControlFunction::ControlFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("control function needs at least one piece");
  double lower = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& pc = pieces_[i];
    const bool last = i + 1 == pieces_.size();
    std::ostringstream where;
    where << "piece " << i << ": ";
    if (!std::isfinite(pc.a) || !std::isfinite(pc.b) || !std::isfinite(pc.p)) {
      throw std::invalid_argument(where.str() + "parameters must be finite");
    }
    if (pc.form == PieceForm::power && pc.p <= 0.0) {
      throw std::invalid_argument(where.str() + "power form needs p > 0");
    }
    if (pc.form != PieceForm::affine && pc.a == 0.0) {
      throw std::invalid_argument(where.str() + std::string(to_string(pc.form)) +
                                  " form needs a != 0");
    }
    if (last) {
      if (pc.upper != kInfinity) {
        throw std::invalid_argument(where.str() + "last piece must extend to +inf");
      }
    } else {
      if (!std::isfinite(pc.upper) || pc.upper <= lower) {
        throw std::invalid_argument(where.str() + "uppers must be finite and strictly increasing");
      }
      lower = pc.upper;
    }
  }
}

ControlFunction ControlFunction::log(double a, double b) {
  return ControlFunction({Piece{PieceForm::log, a, b, 1.0, kInfinity}});
}

ControlFunction ControlFunction::negrecip(double a, double b) {
  return ControlFunction({Piece{PieceForm::negrecip, a, b, 1.0, kInfinity}});
}

ControlFunction ControlFunction::affine(double a, double b) {
  return ControlFunction({Piece{PieceForm::affine, a, b, 1.0, kInfinity}});
}

std::size_t ControlFunction::piece_index(double t) const {
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                             [](const Piece& pc, double v) { return pc.upper < v; });
  return static_cast<std::size_t>(it - pieces_.begin());
}

std::vector<double> ControlFunction::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].upper);
  return out;
}

double evaluate(const ControlFunction& f, double t) {
  if (!(t > 0.0)) throw std::domain_error("f is defined on (0, inf) only");
  return f.pieces()[f.piece_index(t)].value(t);
}

F1Verdict check_f1(const ControlFunction& f, double tol) {
  const auto& pieces = f.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& pc = pieces[i];
    if (pc.is_nondecreasing()) continue;
    const double lo = f.lower_of(i);
    const double width = std::isfinite(pc.upper) ? pc.upper - lo : 3.0;
    const double s = lo + width / 3.0;
    const double t = lo + 2.0 * width / 3.0;
    F1Verdict v;
    v.pass = false;
    v.piece = i;
    v.witness = std::make_pair(s, t);
    v.reason = "piece " + std::to_string(i) + " (" + std::string(to_string(pc.form)) +
               ") is decreasing";
    return v;
  }
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const double u = pieces[i].upper;
    const double left = pieces[i].value(u);
    const Piece& right = pieces[i + 1];
    if (left <= right.limit_from_right(u) + tol) continue;
    // Right piece is continuous at u, so some t just above u lies below left.
    const double room = std::isfinite(right.upper) ? (right.upper - u) / 2.0 : 1.0;
    double h = std::min(1.0, room);
    for (int k = 0; k < 200 && right.value(u + h) >= left; ++k) h /= 2.0;
    F1Verdict v;
    v.pass = false;
    v.breakpoint = i;
    v.witness = std::make_pair(u, u + h);
    std::ostringstream msg;
    msg << "downward jump at breakpoint " << u << ": left value " << left
        << " > right limit " << right.limit_from_right(u);
    v.reason = msg.str();
    return v;
  }
  return {};
}

F2Verdict check_f2(const ControlFunction& f, double tol) {
  F2Verdict v;
  v.first_form = f.pieces().front().form;
  for (int k = 1; k <= 12; ++k) v.probe.push_back(evaluate(f, std::pow(10.0, -k)));

  if (const auto f1 = check_f1(f, tol); !f1.pass) {
    v.pass = false;
    v.reason = "(F1) does not hold: " + f1.reason;
    return v;
  }
  if (v.first_form != PieceForm::log && v.first_form != PieceForm::negrecip) {
    v.pass = false;
    v.reason = "first piece is " + std::string(to_string(v.first_form)) +
               ", bounded below near 0";
    return v;
  }
  // Inside the first piece the probe must strictly decrease; beyond it (F1)
  // only gives non-increase.
  const double first_upper = f.pieces().front().upper;
  for (std::size_t k = 1; k < v.probe.size(); ++k) {
    const double t_prev = std::pow(10.0, -static_cast<double>(k));
    const bool strict = t_prev <= first_upper;
    const bool ok = strict ? v.probe[k] < v.probe[k - 1] : v.probe[k] <= v.probe[k - 1] + tol;
    if (!ok) {
      v.pass = false;
      v.reason = "probe f(10^-k) not decreasing at k = " + std::to_string(k + 1);
      return v;
    }
  }
  return v;
}

FParams::FParams(ControlFunction f, double alpha) : f_(std::move(f)), alpha_(alpha) {
  if (!std::isfinite(alpha_) || alpha_ < 0.0) {
    throw std::invalid_argument("alpha must be a finite nonnegative number");
  }
  if (const auto v1 = check_f1(f_); !v1.pass) {
    throw std::invalid_argument("control function fails (F1): " + v1.reason);
  }
  if (const auto v2 = check_f2(f_); !v2.pass) {
    throw std::invalid_argument("control function fails (F2): " + v2.reason);
  }
}

double delta_for_radius(const FParams& params, double r) {
  if (!(r > 0.0)) throw std::domain_error("radius must be positive");
  const ControlFunction& f = params.f();
  const double target = evaluate(f, r) - params.alpha();
  const auto& pieces = f.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& pc = pieces[i];
    const double lo = f.lower_of(i);
    if (pc.limit_from_right(lo) >= target) return lo;
    if (pc.value_at_upper() < target) continue;
    // limit < target <= sup, and the piece is strictly increasing here.
    double t = pc.inverse(target);
    if (std::isnan(t)) t = pc.upper;
    t = std::min(t, pc.upper);
    if (t <= lo) t = std::nextafter(lo, kInfinity);
    return t;
  }
  return kInfinity;
}

}  // namespace fmetric
