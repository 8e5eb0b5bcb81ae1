#include "fmetric/document.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fmetric {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw DocumentError(where.empty() ? what : where + ": " + what);
}

const json& member(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) bad(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(where, "number is not finite");
  return x;
}

std::size_t index(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected a point index");
  const auto i = v.get<std::int64_t>();
  if (i < 0 || static_cast<std::uint64_t>(i) >= n) {
    bad(where, "index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
  }
  return static_cast<std::size_t>(i);
}

std::vector<std::size_t> index_list(const json& doc, const char* key, std::size_t n) {
  const std::string where = std::string("/") + key;
  const json& arr = member(doc, key, "");
  if (!arr.is_array()) bad(where, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(index(arr[i], n, where + "/" + std::to_string(i)));
  }
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json pair_json(const std::optional<std::pair<std::size_t, std::size_t>>& p) {
  return p ? json::array({p->first, p->second}) : json(nullptr);
}

json chain_json(const std::optional<Chain>& c) {
  return c ? json(c->indices()) : json(nullptr);
}

json optional_index(const std::optional<std::size_t>& k) { return k ? json(*k) : json(nullptr); }

}  // namespace

json parse_document(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(origin + ": parse error at byte " + std::to_string(e.byte));
  }
}

json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.string());
}

FiniteSpace space_from_json(const json& doc) {
  const json& points = member(doc, "points", "");
  if (!points.is_array() || points.empty()) bad("/points", "expected a nonempty array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_string()) bad("/points/" + std::to_string(i), "expected a string label");
    labels.push_back(points[i].get<std::string>());
  }
  const std::size_t n = labels.size();
  const json& rows = member(doc, "D", "");
  if (!rows.is_array() || rows.size() != n) {
    bad("/D", "expected " + std::to_string(n) + " rows");
  }
  DistanceTable dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_at = "/D/" + std::to_string(i);
    if (!rows[i].is_array() || rows[i].size() != n) {
      bad(row_at, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) dist(i, j) = number(rows[i][j], row_at + "/" + std::to_string(j));
  }
  try {
    return FiniteSpace(std::move(labels), std::move(dist));
  } catch (const std::invalid_argument& e) {
    bad("", e.what());
  }
}

json to_json(const FiniteSpace& space) {
  json rows = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < space.size(); ++j) row.push_back(space(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"points", space.labels()}, {"D", std::move(rows)}};
}

ControlFunction control_function_from_json(const json& doc) {
  const json& arr = member(doc, "pieces", "");
  if (!arr.is_array() || arr.empty()) bad("/pieces", "expected a nonempty array");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = "/pieces/" + std::to_string(i);
    const json& item = arr[i];
    const json& form = member(item, "form", at);
    if (!form.is_string()) bad(at + "/form", "expected a string");
    const auto parsed = parse_piece_form(form.get<std::string>());
    if (!parsed) bad(at + "/form", "unknown form '" + form.get<std::string>() + "'");
    Piece pc;
    pc.form = *parsed;
    pc.a = number(member(item, "a", at), at + "/a");
    pc.b = number(member(item, "b", at), at + "/b");
    if (pc.form == PieceForm::power) pc.p = number(member(item, "p", at), at + "/p");
    const json& upper = member(item, "upper", at);
    pc.upper = upper.is_null() ? kInfinity : number(upper, at + "/upper");
    pieces.push_back(pc);
  }
  try {
    return ControlFunction(std::move(pieces));
  } catch (const std::invalid_argument& e) {
    bad("/pieces", e.what());
  }
}

FParams fparams_from_json(const json& doc) {
  ControlFunction f = control_function_from_json(doc);
  const double alpha = number(member(doc, "alpha", ""), "/alpha");
  try {
    return FParams(std::move(f), alpha);
  } catch (const std::invalid_argument& e) {
    bad("", e.what());
  }
}

json to_json(const ControlFunction& f) {
  json pieces = json::array();
  for (const Piece& pc : f.pieces()) {
    json item{{"form", std::string(to_string(pc.form))},
              {"a", pc.a},
              {"b", pc.b},
              {"upper", finite_or_null(pc.upper)}};
    if (pc.form == PieceForm::power) item["p"] = pc.p;
    pieces.push_back(std::move(item));
  }
  return json{{"pieces", std::move(pieces)}};
}

json to_json(const FParams& params) {
  json doc = to_json(params.f());
  doc["alpha"] = params.alpha();
  return doc;
}

PointSequence sequence_from_json(const json& doc, std::size_t n) {
  auto entries = index_list(doc, "seq", n);
  if (entries.empty()) bad("/seq", "sequence prefix must be nonempty");
  return PointSequence(std::move(entries), n);
}

SelfMap self_map_from_json(const json& doc, std::size_t n) {
  auto table = index_list(doc, "map", n);
  if (table.size() != n) {
    bad("/map", "expected " + std::to_string(n) + " images, got " + std::to_string(table.size()));
  }
  return SelfMap(std::move(table), n);
}

json to_json(const InducedMetric& metric, const FiniteSpace& space) {
  json rows = json::array();
  json chains = json::object();
  for (std::size_t i = 0; i < metric.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < metric.size(); ++j) {
      row.push_back(metric(i, j));
      if (i < j) {
        chains[std::to_string(i) + "," + std::to_string(j)] = metric.witness_chain(i, j).indices();
      }
    }
    rows.push_back(std::move(row));
  }
  return json{{"points", space.labels()}, {"D", std::move(rows)}, {"witness_chains", std::move(chains)}};
}

json to_json(const BallWitness& w) {
  return json{{"center", w.center},
              {"r", w.r},
              {"delta", finite_or_null(w.delta)},
              {"radius_small", finite_or_null(w.small_radius)},
              {"ball_D", w.ball_D},
              {"ball_d_small", w.ball_d_small},
              {"ball_d_same", w.ball_d_same},
              {"contain_D_in_d", w.contain_D_in_d},
              {"contain_d_in_D", w.contain_d_in_D}};
}

json to_json(const D3Report& report) {
  return json{{"pass", report.pass},
              {"alpha_min", report.alpha_min},
              {"worst_pair", pair_json(report.worst_pair)},
              {"witness_chain", chain_json(report.witness_chain)},
              {"violating_pair", pair_json(report.violating_pair)},
              {"violating_chain", chain_json(report.violating_chain)}};
}

json to_json(const TransferCertificate& cert) {
  return json{{"eps", cert.eps},
              {"delta", finite_or_null(cert.delta)},
              {"k_D", optional_index(cert.k_D)},
              {"k_d", optional_index(cert.k_d)},
              {"forward_ok", cert.forward_ok},
              {"reverse_ok", cert.reverse_ok},
              {"pass", cert.pass()}};
}

json to_json(const ContractionReport& report) {
  return json{{"best_K_D", report.best_K_D},
              {"best_K_d", report.best_K_d},
              {"is_D_contraction", report.is_D_contraction},
              {"is_d_contraction", report.is_d_contraction},
              {"transfer_holds", report.transfer_holds},
              {"fixed_points", report.fixed_points}};
}

json to_json(const PicardTrace& trace) {
  return json{{"orbit", trace.orbit},
              {"reached_fixed_point", trace.reached_fixed_point},
              {"steps", trace.steps}};
}

json to_json(const ExampleBundle& bundle) {
  return json{{"space", to_json(bundle.space)},
              {"f", to_json(bundle.params)},
              {"alpha", bundle.params.alpha()},
              {"provenance", bundle.provenance}};
}

}  // namespace fmetric
