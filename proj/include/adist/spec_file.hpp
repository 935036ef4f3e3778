#pragma once

#include "adist/arith_fn.hpp"
#include "adist/error.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>

namespace adist {

/// Value used for prime powers missing from a spec-file table.
struct tail_rule {
  enum class form { zero, constant, over_p } shape = form::zero;
  double coefficient = 0.0;

  [[nodiscard]] double operator()(std::uint64_t p) const {
    switch (shape) {
      case form::zero: return 0.0;
      case form::constant: return coefficient;
      case form::over_p: return coefficient / double(p);
    }
    return 0.0;
  }
};

/// "zero", "constant:<c>" or "over_p:<c>".
[[nodiscard]] inline tail_rule parse_tail_rule(const std::string &s) {
  if (s == "zero") {
    return {};
  }
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw spec_parse_error("tail must be zero, constant:<c> or over_p:<c>, got '" + s + "'");
  }
  const auto head = s.substr(0, colon);
  const auto num = s.substr(colon + 1);
  double c = 0.0;
  try {
    std::size_t used = 0;
    c = std::stod(num, &used);
    if (used != num.size()) {
      throw std::invalid_argument(num);
    }
  } catch (const std::exception &) {
    throw spec_parse_error("tail coefficient is not a number: '" + num + "'");
  }
  if (head == "constant") {
    return {tail_rule::form::constant, c};
  }
  if (head == "over_p") {
    return {tail_rule::form::over_p, c};
  }
  throw spec_parse_error("unknown tail rule '" + head + "'");
}

namespace detail {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace detail

/// Parses a function spec document:
///
///     {"name": "f", "kind": "additive",
///      "table": [[2, 1, 0.5], [3, 2, -1.0]], "tail": "over_p:1"}
///
/// kind is one of additive, strongly-additive, multiplicative,
/// strongly-multiplicative. table lists [p, alpha, value] triples (p prime
/// below 2^32, alpha >= 1; strong kinds only alpha = 1); tail gives the value
/// at every other prime power. Unknown fields are rejected.
[[nodiscard]] inline function_spec parse_function_spec(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw spec_parse_error(std::string("function spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw spec_parse_error("function spec must be a JSON object");
  }
  for (const auto &[key, _] : doc.items()) {
    if (key != "name" && key != "kind" && key != "table" && key != "tail") {
      throw spec_parse_error("unknown field '" + key + "' in function spec");
    }
  }
  if (!doc.contains("name") || !doc["name"].is_string() || doc["name"].get<std::string>().empty()) {
    throw spec_parse_error("function spec needs a non-empty string field 'name'");
  }
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw spec_parse_error("function spec needs a string field 'kind'");
  }
  const auto name = doc["name"].get<std::string>();
  const auto kind = parse_function_kind(doc["kind"].get<std::string>());
  if (!kind) {
    throw spec_parse_error("unknown kind '" + doc["kind"].get<std::string>() + "'");
  }
  tail_rule tail;
  if (doc.contains("tail")) {
    if (!doc["tail"].is_string()) {
      throw spec_parse_error("'tail' must be a string");
    }
    tail = parse_tail_rule(doc["tail"].get<std::string>());
  }
  auto table = std::make_shared<std::map<std::pair<std::uint64_t, unsigned>, double>>();
  if (doc.contains("table")) {
    if (!doc["table"].is_array()) {
      throw spec_parse_error("'table' must be a list of [p, alpha, value] triples");
    }
    for (const auto &row : doc["table"]) {
      if (!row.is_array() || row.size() != 3 || !row[0].is_number_unsigned() || !row[1].is_number_unsigned() ||
          !row[2].is_number()) {
        throw spec_parse_error("table rows must be [p, alpha, value] with non-negative integer p, alpha: " +
                               row.dump());
      }
      const auto p = row[0].get<std::uint64_t>();
      const auto alpha = row[1].get<std::uint64_t>();
      if (p >= (std::uint64_t{1} << 32) || !detail::is_prime_trial(p)) {
        throw spec_parse_error("table entry " + row.dump() + ": p must be a prime below 2^32");
      }
      if (alpha < 1 || alpha > 64) {
        throw spec_parse_error("table entry " + row.dump() + ": alpha must be in [1, 64]");
      }
      if (is_strong(*kind) && alpha != 1) {
        throw spec_parse_error("table entry " + row.dump() + ": strong kinds are defined by alpha = 1 only");
      }
      if (!table->emplace(std::pair{p, unsigned(alpha)}, row[2].get<double>()).second) {
        throw spec_parse_error("duplicate table entry for " + row.dump());
      }
    }
  }
  auto lookup = [table, tail](std::uint64_t p, unsigned a) {
    const auto it = table->find({p, a});
    return it != table->end() ? it->second : tail(p);
  };
  if (is_additive(*kind)) {
    return function_spec::additive(name, is_strong(*kind), lookup);
  }
  return function_spec::multiplicative(name, is_strong(*kind),
                                       [lookup](std::uint64_t p, unsigned a) { return complex{lookup(p, a), 0.0}; });
}

[[nodiscard]] inline function_spec load_function_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw spec_parse_error("cannot open function spec file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_function_spec(ss.str());
}

}  // namespace adist
