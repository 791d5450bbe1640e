#pragma once

// JSON forms of the quantum objects. Complex entries are [re, im] pairs and a
// matrix is an array of rows:
//
//   matrix       [[[re, im], ...], ...]
//   observable   {"dim": d, "branches": [{"label": x, "projector": matrix}, ...]}
//                or {"matrix": hermitian matrix} (spectrally decomposed on load)
//   povm         {"dim": d, "elements": [matrix, ...]}
//   channel      {"dim_in": a, "dim_out": b, "kraus": [matrix, ...]}
//   instrument   {"dim_in": a, "dim_out": b, "branches": [{"label": s, "kraus": [matrix, ...]}]}
//   instance     {"X": observable, "Z": observable, "M": instrument}
//
// Doubles are written with round-trip precision. Malformed input raises ValidationError.

#include <string>

#include <nlohmann/json.hpp>

#include "etoff/quantum.hpp"

namespace etoff {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const ProjectiveObservable& obs);
Json to_json(const Povm& povm);
Json to_json(const Channel& channel);
Json to_json(const QuantumInstrument& inst);

ProjectiveObservable observable_from_json(const Json& j);
Povm povm_from_json(const Json& j);
Channel channel_from_json(const Json& j);
QuantumInstrument instrument_from_json(const Json& j);

/// Observables X, Z and the instrument M of one trade-off problem.
struct TradeoffInstance {
  ProjectiveObservable x;
  ProjectiveObservable z;
  QuantumInstrument m;
};

Json to_json(const TradeoffInstance& instance);
TradeoffInstance instance_from_json(const Json& j);
/// Reads and parses a file; I/O and parse failures raise ValidationError.
Json read_json_file(const std::string& path);

}  // namespace etoff
