#pragma once

#include <string>

#include <json.hpp>

#include "flexauction/gmwd.hpp"
#include "flexauction/types.hpp"

namespace flexauction {

// On-disk market format, field names mirroring the in-memory types:
//   {"sem": {"rho": [...]},
//    "ask": {"supply": [...], "reserve": r},
//    "bids": [{"buyer_id": "...", "base_demand": [...],
//              "adjust_range": [...], "price": p}, ...]}
// adjust_range may be omitted per bid and defaults to all zeros.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json outcome_to_json(const AuctionOutcome& outcome);

// File helpers. Parse and validation problems surface as ValidationError
// with the path and the offending field in the message.
Instance read_instance_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Shortest-exact decimal form used everywhere numbers reach text output,
// so equal doubles always print identically.
std::string format_double(double value);

}  // namespace flexauction
