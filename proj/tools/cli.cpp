#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "fmetric/audit.hpp"
#include "fmetric/document.hpp"
#include "fmetric/dynamics.hpp"
#include "fmetric/gallery.hpp"
#include "fmetric/metrizer.hpp"
#include "fmetric/space.hpp"

namespace fmetric::cli {

namespace {

struct Options {
  bool json = false;
  double tol = kDefaultTol;
  std::string space, f, seq, map, out, center, x0;
  double r = 0.0;
  double eps = 0.0;
  std::size_t max_iter = 0;
  bool verify = false;
  bool emit = false;
  std::size_t n = 0;
  std::size_t count = 0;
  std::optional<std::uint64_t> seed;
  std::string profile = "mixed";
  std::size_t sequences = 20;
};

std::string fmt(double x) {
  if (x == kInfinity) return "inf";
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string pass_word(bool ok) { return ok ? "PASS" : "FAIL"; }

std::size_t label_index(const FiniteSpace& space, const std::string& label) {
  if (auto i = space.index_of(label)) return *i;
  throw DocumentError("unknown point label '" + label + "'");
}

std::string label_set(const FiniteSpace& space, const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ", ";
    s += space.labels()[idx[k]];
  }
  return s + "}";
}

std::string label_chain(const FiniteSpace& space, const Chain& c) {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) s += " -> ";
    s += space.labels()[c.indices()[k]];
  }
  return s;
}

double alpha_from(const json& doc) {
  auto it = doc.find("alpha");
  if (it == doc.end()) throw DocumentError("/alpha: missing \"alpha\"");
  if (!it->is_number()) throw DocumentError("/alpha: expected a number");
  const double a = it->get<double>();
  if (!std::isfinite(a) || a < 0.0) throw DocumentError("/alpha: must be finite and nonnegative");
  return a;
}

FParams load_fparams(const std::string& path) {
  const json doc = load_document(path);
  try {
    return fparams_from_json(doc);
  } catch (const DocumentError& e) {
    throw DocumentError(path + ": " + e.what());
  }
}

FiniteSpace load_space(const std::string& path) {
  try {
    return space_from_json(load_document(path));
  } catch (const DocumentError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw DocumentError(path + ": " + what);
  }
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

/// Loads a space and a parameter document and requires (D1)-(D3).
struct VerifiedSpace {
  FiniteSpace space;
  FParams params;
  InducedMetric metric;
};

std::optional<VerifiedSpace> load_verified(const Options& o, std::ostream& err) {
  FiniteSpace space = load_space(o.space);
  FParams params = load_fparams(o.f);
  if (auto v = verify_d1_d2(space, o.tol); !v.pass) {
    err << "not an F-metric space: (" << v.axiom << ") fails: " << v.reason << "\n";
    return std::nullopt;
  }
  InducedMetric metric = induced_metric(space);
  if (auto d3 = verify_d3_fast(space, params, metric, o.tol); !d3.pass) {
    err << "not an F-metric space: (D3) fails at alpha = " << fmt(params.alpha())
        << " (alpha_min = " << fmt(d3.alpha_min) << ")\n";
    return std::nullopt;
  }
  return VerifiedSpace{std::move(space), std::move(params), std::move(metric)};
}

int cmd_verify(const Options& o, std::ostream& out) {
  const FiniteSpace space = load_space(o.space);
  const json fdoc = load_document(o.f);
  ControlFunction f = [&] {
    try {
      return control_function_from_json(fdoc);
    } catch (const DocumentError& e) {
      throw DocumentError(o.f + ": " + e.what());
    }
  }();
  double alpha = 0.0;
  try {
    alpha = alpha_from(fdoc);
  } catch (const DocumentError& e) {
    throw DocumentError(o.f + ": " + e.what());
  }

  const AxiomVerdict d12 = verify_d1_d2(space, o.tol);
  const F1Verdict f1 = check_f1(f, o.tol);
  const F2Verdict f2 = check_f2(f, o.tol);
  const bool d1_ok = d12.pass || d12.axiom != "D1";
  const bool d2_checked = d12.pass || d12.axiom == "D2";
  std::optional<D3Report> d3;
  if (d12.pass && f1.pass && f2.pass) {
    const FParams params(f, alpha);
    d3 = verify_d3_fast(space, params, induced_metric(space), o.tol);
  }
  const bool ok = d12.pass && f1.pass && f2.pass && d3 && d3->pass;

  if (o.json) {
    json doc{{"points", space.size()},
             {"alpha", alpha},
             {"D1", {{"pass", d1_ok}, {"reason", d1_ok ? "" : d12.reason}}},
             {"D2", d2_checked ? json{{"pass", d12.pass}, {"reason", d12.reason}} : json(nullptr)},
             {"F1", {{"pass", f1.pass}, {"reason", f1.reason}}},
             {"F2", {{"pass", f2.pass}, {"reason", f2.reason}}},
             {"D3", d3 ? to_json(*d3) : json(nullptr)},
             {"pass", ok}};
    emit(out, doc);
  } else {
    out << "points: " << space.size() << "\n";
    out << "D1: " << pass_word(d1_ok) << (d1_ok ? "" : " (" + d12.reason + ")") << "\n";
    if (d2_checked) {
      out << "D2: " << pass_word(d12.pass) << (d12.pass ? "" : " (" + d12.reason + ")") << "\n";
    } else {
      out << "D2: not checked\n";
    }
    out << "F1: " << pass_word(f1.pass) << (f1.pass ? "" : " (" + f1.reason + ")") << "\n";
    out << "F2: " << pass_word(f2.pass) << (f2.pass ? "" : " (" + f2.reason + ")") << "\n";
    if (d3) {
      out << "D3: " << pass_word(d3->pass) << " (alpha = " << fmt(alpha)
          << ", alpha_min = " << fmt(d3->alpha_min) << ")\n";
      if (!d3->pass && d3->violating_chain) {
        out << "    violating chain: " << label_chain(space, *d3->violating_chain) << "\n";
      }
    } else {
      out << "D3: not checked\n";
    }
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_metrize(const Options& o, std::ostream& out, std::ostream& err) {
  const FiniteSpace space = load_space(o.space);
  if (auto v = verify_d1_d2(space, o.tol); !v.pass) {
    err << "cannot metrize: (" << v.axiom << ") fails: " << v.reason << "\n";
    return kExitFail;
  }
  const InducedMetric metric = induced_metric(space);
  const json doc = to_json(metric, space);
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) throw DocumentError(o.out + ": cannot write");
    file << doc.dump(2) << "\n";
  }
  if (o.json) {
    if (o.out.empty()) emit(out, doc);
    return kExitPass;
  }
  std::size_t shortened = 0;
  std::ostringstream lines;
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      if (metric(i, j) < space(i, j)) {
        ++shortened;
        lines << "d(" << space.labels()[i] << "," << space.labels()[j] << ") = "
              << fmt(metric(i, j)) << " via " << label_chain(space, metric.witness_chain(i, j))
              << " (D = " << fmt(space(i, j)) << ")\n";
      }
    }
  }
  const std::size_t pairs = space.size() * (space.size() - 1) / 2;
  out << "induced metric on " << space.size() << " points; " << shortened << " of " << pairs
      << " pairs shortened\n"
      << lines.str();
  return kExitPass;
}

int cmd_witness(const Options& o, std::ostream& out, std::ostream& err) {
  auto vs = load_verified(o, err);
  if (!vs) return kExitFail;
  const std::size_t center = label_index(vs->space, o.center);
  const BallWitness w = ball_witness(vs->space, vs->params, vs->metric, center, o.r);
  const bool ok = w.contain_D_in_d && w.contain_d_in_D;
  if (o.json) {
    emit(out, to_json(w));
  } else {
    const FiniteSpace& s = vs->space;
    out << "center " << o.center << ", r = " << fmt(w.r) << ", delta = " << fmt(w.delta)
        << ", delta/2 = " << fmt(w.small_radius) << "\n"
        << "B_D(x, r)       = " << label_set(s, w.ball_D) << "\n"
        << "B_d(x, r)       = " << label_set(s, w.ball_d_same) << "\n"
        << "B_d(x, delta/2) = " << label_set(s, w.ball_d_small) << "\n"
        << "B_D(x, r) in B_d(x, r): " << std::boolalpha << w.contain_D_in_d << "\n"
        << "B_d(x, delta/2) in B_D(x, r): " << w.contain_d_in_D << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_cauchy(const Options& o, std::ostream& out, std::ostream& err) {
  auto vs = load_verified(o, err);
  if (!vs) return kExitFail;
  const PointSequence seq = [&] {
    try {
      return sequence_from_json(load_document(o.seq), vs->space.size());
    } catch (const DocumentError& e) {
      throw DocumentError(o.seq + ": " + e.what());
    }
  }();
  const TransferCertificate c = cauchy_transfer_certificate(vs->space, vs->params, vs->metric, seq, o.eps);
  if (o.json) {
    emit(out, to_json(c));
  } else {
    auto k = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("none in this prefix"); };
    out << "eps = " << fmt(c.eps) << ", delta = " << fmt(c.delta) << "\n"
        << "least K with D-window < eps:       " << k(c.k_D) << "\n"
        << "least K with d-window < delta/2:   " << k(c.k_d) << "\n"
        << "D-Cauchy window => d-Cauchy window: " << pass_word(c.forward_ok) << "\n"
        << "d-Cauchy window => D-Cauchy window: " << pass_word(c.reverse_ok) << "\n";
  }
  return c.pass() ? kExitPass : kExitFail;
}

int cmd_contract(const Options& o, std::ostream& out, std::ostream& err) {
  auto vs = load_verified(o, err);
  if (!vs) return kExitFail;
  const FiniteSpace& s = vs->space;
  const SelfMap g = [&] {
    try {
      return self_map_from_json(load_document(o.map), s.size());
    } catch (const DocumentError& e) {
      throw DocumentError(o.map + ": " + e.what());
    }
  }();
  const std::size_t x0 = o.x0.empty() ? 0 : label_index(s, o.x0);
  const std::size_t max_iter = o.max_iter > 0 ? o.max_iter : std::max<std::size_t>(s.size(), 1);
  const ContractionReport rep = contraction_report(s, vs->metric, g, o.tol);
  const PicardTrace trace = picard_iterate(s, g, x0, max_iter);

  bool ok = rep.transfer_holds;
  if (rep.is_D_contraction) {
    ok = ok && rep.fixed_points.size() == 1 && trace.reached_fixed_point &&
         trace.orbit.back() == rep.fixed_points.front();
  }
  if (o.json) {
    json doc = to_json(rep);
    doc["picard"] = to_json(trace);
    emit(out, doc);
  } else {
    std::vector<std::size_t> orbit = trace.orbit;
    out << "best K under D: " << fmt(rep.best_K_D)
        << (rep.is_D_contraction ? " (contraction)" : " (not a contraction)") << "\n"
        << "best K under d: " << fmt(rep.best_K_d)
        << (rep.is_d_contraction ? " (contraction)" : " (not a contraction)") << "\n"
        << "K_d <= K_D: " << pass_word(rep.transfer_holds) << "\n"
        << "fixed points: " << label_set(s, rep.fixed_points) << "\n"
        << "orbit from " << s.labels()[x0] << ":";
    for (std::size_t x : orbit) out << " " << s.labels()[x];
    out << (trace.reached_fixed_point ? " (fixed point after " + std::to_string(trace.steps) + " steps)"
                                      : " (no fixed point within " + std::to_string(max_iter) + " steps)")
        << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_paper_example(const Options& o, std::ostream& out) {
  const ExampleBundle bundle = build_paper_example();
  if (o.emit) {
    emit(out, to_json(bundle));
    return kExitPass;
  }
  const FiniteSpace& s = bundle.space;
  const FParams& params = bundle.params;
  const AxiomVerdict d12 = verify_d1_d2(s, o.tol);
  const F1Verdict f1 = check_f1(params.f(), o.tol);
  const F2Verdict f2 = check_f2(params.f(), o.tol);
  const InducedMetric metric = induced_metric(s);
  const D3Report d3 = verify_d3_fast(s, params, metric, o.tol);
  const auto classes = paper_example_pair_classes(bundle, metric);

  std::vector<std::size_t> sub_idx(6);
  std::iota(sub_idx.begin(), sub_idx.end(), 0);
  const FiniteSpace sub = s.subspace(sub_idx);
  const D3Report sub_brute = verify_d3_bruteforce(sub, params, sub.size() + 2, o.tol);
  const D3Report sub_fast = verify_d3_fast(sub, params, induced_metric(sub), o.tol);
  const bool sub_agree = std::abs(sub_brute.alpha_min - sub_fast.alpha_min) <= o.tol &&
                         sub_brute.pass == sub_fast.pass;
  const bool bound_ok = d3.alpha_min > 0.0 && d3.alpha_min <= params.alpha() + o.tol;
  const bool ok = d12.pass && f1.pass && f2.pass && d3.pass && bound_ok && sub_agree;

  if (o.json) {
    json rows = json::array();
    for (const auto& r : classes) {
      rows.push_back({{"class", r.name},
                      {"pairs", r.pairs},
                      {"max_gap", r.max_gap},
                      {"at", json::array({s.labels()[r.worst_i], s.labels()[r.worst_j]})}});
    }
    emit(out, json{{"points", s.size()},
                   {"alpha", params.alpha()},
                   {"D1_D2", d12.pass},
                   {"F1", f1.pass},
                   {"F2", f2.pass},
                   {"D3", to_json(d3)},
                   {"pair_classes", std::move(rows)},
                   {"subspace", {{"points", sub.labels()},
                                 {"alpha_min_bruteforce", sub_brute.alpha_min},
                                 {"alpha_min_fast", sub_fast.alpha_min},
                                 {"agree", sub_agree}}},
                   {"pass", ok}});
    return ok ? kExitPass : kExitFail;
  }

  out << bundle.provenance << "\n"
      << "points: " << s.size() << "\n"
      << "D1, D2: " << pass_word(d12.pass) << "\n"
      << "F1: " << pass_word(f1.pass) << "\n"
      << "F2: " << pass_word(f2.pass) << "\n"
      << "D3: " << pass_word(d3.pass) << " (alpha = " << fmt(params.alpha())
      << ", alpha_min = " << fmt(d3.alpha_min) << ")\n";
  if (d3.worst_pair) {
    const auto [i, j] = *d3.worst_pair;
    out << "worst pair: (" << s.labels()[i] << ", " << s.labels()[j] << "), D = " << fmt(s(i, j))
        << ", d = " << fmt(metric(i, j)) << " via " << label_chain(s, *d3.witness_chain) << "\n";
  }
  out << "\n" << std::left << std::setw(28) << "pair class" << std::setw(8) << "pairs"
      << std::setw(16) << "max f(D)-f(d)" << "at\n";
  for (const auto& r : classes) {
    out << std::setw(28) << r.name << std::setw(8) << r.pairs << std::setw(16) << fmt(r.max_gap)
        << "(" << s.labels()[r.worst_i] << ", " << s.labels()[r.worst_j] << ")\n";
  }
  out << "\nsubspace " << label_set(s, sub_idx) << ": alpha_min brute-force = "
      << fmt(sub_brute.alpha_min) << ", fast = " << fmt(sub_fast.alpha_min)
      << (sub_agree ? " (agree)" : " (DISAGREE)") << "\n";
  return ok ? kExitPass : kExitFail;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
  AuditConfig cfg;
  cfg.max_n = o.n;
  cfg.count = o.count;
  cfg.tol = o.tol;
  cfg.sequences_per_space = o.sequences;
  try {
    cfg.profile = RandomProfile::parse(o.profile);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(std::string("--profile: ") + e.what());
  }
  if (o.seed) {
    cfg.seed = *o.seed;
  } else if (const char* env = std::getenv("FMETRIC_SEED")) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw DocumentError("FMETRIC_SEED: not an unsigned integer");
    }
  } else {
    cfg.seed = 0;
  }

  const AuditSummary sum = run_audit(cfg);
  if (o.json) {
    emit(out, json{{"spaces", sum.spaces},
                   {"seed", cfg.seed},
                   {"profile", cfg.profile.to_string()},
                   {"verified_at_catalog_alpha", sum.verified_at_catalog_alpha},
                   {"d3_disagreements", sum.d3_disagreements},
                   {"metric_failures", sum.metric_failures},
                   {"sandwich_failures", sum.sandwich_failures},
                   {"ball_checks", sum.ball_checks},
                   {"ball_failures", sum.ball_failures},
                   {"sequences", sum.sequences},
                   {"cauchy_failures", sum.cauchy_failures},
                   {"convergence_failures", sum.convergence_failures},
                   {"completeness_failures", sum.completeness_failures},
                   {"contractions", sum.contractions},
                   {"contraction_failures", sum.contraction_failures},
                   {"failures", sum.first_failures}});
  } else {
    out << "spaces: " << sum.spaces << " (n <= " << cfg.max_n << ", profile "
        << cfg.profile.to_string() << ", seed " << cfg.seed << ")\n"
        << "verified at catalog alpha: " << sum.verified_at_catalog_alpha << "\n"
        << sum.d3_disagreements << " disagreements between brute-force and fast (D3)\n"
        << "metric axiom failures: " << sum.metric_failures << "\n"
        << "sandwich failures: " << sum.sandwich_failures << "\n"
        << "ball witness failures: " << sum.ball_failures << " of " << sum.ball_checks << "\n"
        << "Cauchy / convergence / completeness failures: " << sum.cauchy_failures << " / "
        << sum.convergence_failures << " / " << sum.completeness_failures << " over "
        << sum.sequences << " prefixes\n"
        << "contraction failures: " << sum.contraction_failures << " over " << sum.contractions
        << " D-contractions\n";
    for (const auto& msg : sum.first_failures) out << "  " << msg << "\n";
  }
  return sum.violations() == 0 ? kExitPass : kExitFail;
}

int cmd_min_alpha(const Options& o, std::ostream& out, std::ostream& err) {
  const FiniteSpace space = load_space(o.space);
  const json fdoc = load_document(o.f);
  ControlFunction f = [&] {
    try {
      return control_function_from_json(fdoc);
    } catch (const DocumentError& e) {
      throw DocumentError(o.f + ": " + e.what());
    }
  }();
  if (auto v = verify_d1_d2(space, o.tol); !v.pass) {
    err << "(" << v.axiom << ") fails: " << v.reason << "\n";
    return kExitFail;
  }
  if (auto v1 = check_f1(f, o.tol); !v1.pass) {
    err << "(F1) fails: " << v1.reason << "\n";
    return kExitFail;
  }
  if (auto v2 = check_f2(f, o.tol); !v2.pass) {
    err << "(F2) fails: " << v2.reason << "\n";
    return kExitFail;
  }
  const double a = find_min_alpha(space, f);
  if (o.json) {
    emit(out, json{{"alpha_min", a}});
  } else {
    out << fmt(a) << "\n";
  }
  return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite F-metric spaces: axioms, induced metric and transfer certificates"};
  app.name(args.empty() ? "fmetric" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Structured (JSON) output");
  app.add_option("--tol", o.tol, "Absolute comparison tolerance")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check (D1)-(D3), (F1), (F2) and report alpha_min");
  verify->add_option("--space", o.space, "Space document")->required();
  verify->add_option("--f", o.f, "Control function document with alpha")->required();

  auto* metrize = app.add_subcommand("metrize", "Induced metric with witness chains");
  metrize->add_option("--space", o.space, "Space document")->required();
  metrize->add_option("--out", o.out, "Write the metric document here");

  auto* witness = app.add_subcommand("witness", "Ball containment certificate");
  witness->add_option("--space", o.space)->required();
  witness->add_option("--f", o.f)->required();
  witness->add_option("--center", o.center, "Center label")->required();
  witness->add_option("--r", o.r, "Radius")->required()->check(CLI::PositiveNumber);

  auto* cauchy = app.add_subcommand("cauchy", "Cauchy transfer certificate for a sequence prefix");
  cauchy->add_option("--space", o.space)->required();
  cauchy->add_option("--f", o.f)->required();
  cauchy->add_option("--seq", o.seq, "Sequence document")->required();
  cauchy->add_option("--eps", o.eps)->required()->check(CLI::PositiveNumber);

  auto* contract = app.add_subcommand("contract", "Contraction transfer and Picard iteration");
  contract->add_option("--space", o.space)->required();
  contract->add_option("--f", o.f)->required();
  contract->add_option("--map", o.map, "Self-map document")->required();
  contract->add_option("--x0", o.x0, "Start label (default: first point)");
  contract->add_option("--max-iter", o.max_iter, "Iteration cap (default: n)")->check(CLI::PositiveNumber);

  auto* paper = app.add_subcommand("paper-example", "The 101-point example space");
  auto* pv = paper->add_flag("--verify", o.verify, "Verify the example (default)");
  auto* pe = paper->add_flag("--emit", o.emit, "Print the example bundle document");
  pv->excludes(pe);

  auto* fuzz = app.add_subcommand("fuzz", "Seeded self-test over random spaces");
  fuzz->add_option("--n", o.n, "Largest space size")->required()->check(CLI::PositiveNumber);
  fuzz->add_option("--count", o.count, "Number of spaces")->required();
  fuzz->add_option("--seed", o.seed, "Root seed (fallback: FMETRIC_SEED, then 0)");
  fuzz->add_option("--profile", o.profile, "uniform[:lo:hi] | near-metric[:gamma] | mixed");
  fuzz->add_option("--sequences", o.sequences, "Sequence prefixes per space");

  auto* min_alpha = app.add_subcommand("min-alpha", "Least alpha making (D3) hold");
  min_alpha->add_option("--space", o.space)->required();
  min_alpha->add_option("--f", o.f, "Control function document (alpha ignored)")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*metrize) return cmd_metrize(o, out, err);
    if (*witness) return cmd_witness(o, out, err);
    if (*cauchy) return cmd_cauchy(o, out, err);
    if (*contract) return cmd_contract(o, out, err);
    if (*paper) return cmd_paper_example(o, out);
    if (*fuzz) return cmd_fuzz(o, out);
    if (*min_alpha) return cmd_min_alpha(o, out, err);
  } catch (const DocumentError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace fmetric::cli
