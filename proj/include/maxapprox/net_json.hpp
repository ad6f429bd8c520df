#pragma once

#include <string>

#include "maxapprox/networks.hpp"

namespace maxapprox {

/// Canonical network serialization. Weights and biases are exact "p/q"
/// strings; a parallel "weights_f64" field carries advisory doubles and is
/// ignored on import. Serialization is deterministic, so
/// export(import(export(net))) is byte-identical to export(net).
std::string export_network_json(const ReluNetwork& net);

/// Throws std::invalid_argument with the byte offset on malformed JSON and
/// on schema violations (non-composing layer shapes, bad activation names,
/// unparsable rationals).
ReluNetwork import_network_json(const std::string& text);

}  // namespace maxapprox
