#pragma once

#include "entcap/network.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace entcap {

using Json = nlohmann::ordered_json;

/// Parses the interchange format. Unknown fields and wrong types throw
/// InvalidInput; semantic checks are left to validate().
Network network_from_json(const Json& j);
Network parse_network(std::string_view text);
Network load_network(const std::string& path);

Json network_to_json(const Network& net);

/// Canonical text: two-space indent, fixed key order, trailing newline.
std::string dump_network(const Network& net);

}  // namespace entcap
