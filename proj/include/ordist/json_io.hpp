#ifndef ORDIST_JSON_IO_HPP
#define ORDIST_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "ordist/constructions.hpp"
#include "ordist/counterexamples.hpp"
#include "ordist/order_model.hpp"
#include "ordist/schoenberg.hpp"
#include "ordist/verifier.hpp"

namespace ordist::io {

using json = nlohmann::ordered_json;

/// Compact JSON text. Floats are written with 17 significant digits and
/// always carry a '.' or exponent; non-finite floats become null.
std::string dump(const json& value);

/// Parsing throws Error(ParseError) on malformed documents. Order specs are
/// returned canonicalized but not validated.
OrderSpec order_spec_from_json(const json& doc);
OrderSpec parse_order_spec(const std::string& text);
json to_json(const OrderSpec& spec);

PointConfig point_config_from_json(const json& doc);
PointConfig parse_point_config(const std::string& text);
json to_json(const PointConfig& config);

json to_json(const VerifyReport& report);
json to_json(const RealizationReport& report);
json to_json(const FalsifierReport& report);

/// One point per row, header "x1,...,xd"; in bipartite mode Q rows follow P.
std::string to_csv(const PointConfig& config);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace ordist::io

#endif  // ORDIST_JSON_IO_HPP
