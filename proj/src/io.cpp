#include "flexauction/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace flexauction {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* name, const std::string& where) {
  const auto it = j.find(name);
  if (it == j.end()) {
    throw ValidationError(where + ": missing field '" + name + "'");
  }
  return *it;
}

std::vector<int> int_vector(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw ValidationError(where + ": expected an array of integers");
  }
  std::vector<int> values;
  values.reserve(j.size());
  for (const auto& element : j) {
    if (!element.is_number_integer() && !element.is_number_unsigned()) {
      throw ValidationError(where + ": expected integer entries");
    }
    values.push_back(element.get<int>());
  }
  return values;
}

std::vector<double> double_vector(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw ValidationError(where + ": expected an array of numbers");
  }
  std::vector<double> values;
  values.reserve(j.size());
  for (const auto& element : j) {
    if (!element.is_number()) {
      throw ValidationError(where + ": expected numeric entries");
    }
    values.push_back(element.get<double>());
  }
  return values;
}

}  // namespace

nlohmann::json instance_to_json(const Instance& instance) {
  json j;
  j["sem"]["rho"] = instance.sem.rho;
  j["ask"]["supply"] = instance.ask.supply;
  j["ask"]["reserve"] = instance.ask.reserve;
  j["bids"] = json::array();
  for (const Bid& bid : instance.bids) {
    json b;
    b["buyer_id"] = bid.buyer_id;
    b["base_demand"] = bid.base_demand;
    b["adjust_range"] = bid.adjust_range;
    b["price"] = bid.price;
    j["bids"].push_back(std::move(b));
  }
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance instance;
  instance.sem.rho =
      double_vector(require_field(require_field(j, "sem", "instance"), "rho", "sem"), "sem.rho");
  const json& ask = require_field(j, "ask", "instance");
  instance.ask.supply = int_vector(require_field(ask, "supply", "ask"), "ask.supply");
  const json& reserve = require_field(ask, "reserve", "ask");
  if (!reserve.is_number()) throw ValidationError("ask.reserve: expected a number");
  instance.ask.reserve = reserve.get<double>();

  const json& bids = require_field(j, "bids", "instance");
  if (!bids.is_array()) throw ValidationError("bids: expected an array");
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const json& b = bids[i];
    const std::string where = "bids[" + std::to_string(i) + "]";
    Bid bid;
    const json& id = require_field(b, "buyer_id", where);
    if (!id.is_string()) throw ValidationError(where + ".buyer_id: expected a string");
    bid.buyer_id = id.get<std::string>();
    bid.base_demand =
        int_vector(require_field(b, "base_demand", where), where + ".base_demand");
    if (b.contains("adjust_range")) {
      bid.adjust_range = int_vector(b["adjust_range"], where + ".adjust_range");
    } else {
      bid.adjust_range.assign(bid.base_demand.size(), 0);
    }
    const json& price = require_field(b, "price", where);
    if (!price.is_number()) throw ValidationError(where + ".price: expected a number");
    bid.price = price.get<double>();
    instance.bids.push_back(std::move(bid));
  }
  validate_instance(instance);
  return instance;
}

nlohmann::json outcome_to_json(const AuctionOutcome& outcome) {
  json j;
  j["winners"] = outcome.winners;
  j["payments"] = json::object();
  for (const auto& [buyer_id, payment] : outcome.payments) {
    j["payments"][buyer_id] = payment;
  }
  j["allocation"] = json::object();
  for (const auto& [buyer_id, grant] : outcome.allocation) {
    j["allocation"][buyer_id] = grant;
  }
  j["seller_revenue"] = outcome.seller_revenue;
  j["social_welfare"] = outcome.social_welfare;
  return j;
}

Instance read_instance_file(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return instance_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path + "'");
  }
  out << text;
  if (!out) {
    throw ValidationError("failed while writing '" + path + "'");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_double(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  // Trim to the shortest representation that round-trips.
  for (int precision = 1; precision < 17; ++precision) {
    char candidate[48];
    std::snprintf(candidate, sizeof(candidate), "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(candidate, "%lf", &parsed);
    if (parsed == value) {
      return candidate;
    }
  }
  return buffer;
}

}  // namespace flexauction
