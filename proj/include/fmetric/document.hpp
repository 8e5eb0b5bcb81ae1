#pragma once

// JSON documents for spaces, control functions, maps, sequences and reports.

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fmetric/dynamics.hpp"
#include "fmetric/fclass.hpp"
#include "fmetric/gallery.hpp"
#include "fmetric/metrizer.hpp"
#include "fmetric/space.hpp"

namespace fmetric {

using json = nlohmann::json;

/// Malformed or unreadable input. what() names the location (file and JSON path).
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json load_document(const std::filesystem::path& path);
json parse_document(const std::string& text, const std::string& origin = "<string>");

// {"points": [labels], "D": [[...], ...]}
FiniteSpace space_from_json(const json& doc);
json to_json(const FiniteSpace& space);

// {"alpha": a?, "pieces": [{"form", "a", "b", "p"?, "upper": number|null}]}
ControlFunction control_function_from_json(const json& doc);
/// Same document; "alpha" is required and the pair must be a valid class member.
FParams fparams_from_json(const json& doc);
json to_json(const ControlFunction& f);
json to_json(const FParams& params);

// {"seq": [indices]} and {"map": [indices]}
PointSequence sequence_from_json(const json& doc, std::size_t n);
SelfMap self_map_from_json(const json& doc, std::size_t n);

/// Space document plus "witness_chains": {"i,j": [indices]} for i < j.
json to_json(const InducedMetric& metric, const FiniteSpace& space);
json to_json(const BallWitness& w);
json to_json(const D3Report& report);
json to_json(const TransferCertificate& cert);
json to_json(const ContractionReport& report);
json to_json(const PicardTrace& trace);
json to_json(const ExampleBundle& bundle);

}  // namespace fmetric
