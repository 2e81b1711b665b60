#pragma once

#include <nestord/family.hpp>
#include <nestord/index.hpp>
#include <nestord/linear_order.hpp>
#include <nestord/nested_orders.hpp>
#include <nestord/representability.hpp>
#include <nestord/structure.hpp>

#include <json.hpp>

#include <string>

namespace nestord {

using Json = nlohmann::ordered_json;

/// Element list, ascending.
auto set_json(Mask a) -> Json;

/// {"m": m, "text": format_family(f), "sets": [[...], ...]}
auto to_json(const Family & f) -> Json;

/// Digit string when m ≤ 9, integer array otherwise.
auto to_json(const LinearOrder & o) -> Json;

/// {"m": m, "n": n or null, "seqs": [[t1, ...], ...]} sorted lexicographically.
auto to_json(const NestedOrders & s) -> Json;

auto to_json(const ValidationReport & r) -> Json;
auto to_json(const IndexCertificate & c) -> Json;
auto to_json(const UpperCertificate & c) -> Json;
auto to_json(const NestboundReport & r) -> Json;
auto to_json(const CycleWitness & w) -> Json;

auto to_string(Class4Label label) -> std::string;
auto to_string(IndexMethod method) -> std::string;

/// Inverse of to_json(NestedOrders).
auto nested_from_json(const Json & j) -> NestedOrders;

} // namespace nestord
