#pragma once

#include <string>

#include "json.hpp"
#include "whilep/live.hpp"
#include "whilep/pts.hpp"

namespace whilep {

using Json = nlohmann::json;

// {"x": ["addr(1,1,1)"], "addr(1,1,1)": []}; lists sorted by address order.
Json pts_to_json(const PtsType& p);
// Sorted list: variables first, then addresses.
Json live_to_json(const LiveSet& live);
Json state_to_json(const RegularState& st);

// Throw std::invalid_argument with a short message when malformed.
PtsType pts_from_json(const Json& j);
LiveSet live_from_json(const Json& j);
Key key_from_string(const std::string& s);

}  // namespace whilep
