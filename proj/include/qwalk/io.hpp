#pragma once

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qwalk/core.hpp"

namespace qwalk {

using json = nlohmann::json;

/// Distributions are emitted with decimal position labels as object keys;
/// bitstring labels are avoided on purpose (endianness trap).
inline json distribution_to_json(const Distribution& dist) {
  json out = json::object();
  for (const auto& [x, p] : dist) out[std::to_string(x)] = p;
  return out;
}

inline Distribution distribution_from_json(const json& j) {
  Distribution dist;
  for (const auto& [key, value] : j.items()) dist[std::stoi(key)] = value.get<double>();
  return dist;
}

inline void write_distribution_csv(std::ostream& out, const Distribution& dist,
                                   const std::map<int, double>* ci = nullptr) {
  out << "state,probability,ci_halfwidth\n";
  out << std::setprecision(17);
  for (const auto& [x, p] : dist) {
    double hw = 0.0;
    if (ci != nullptr) {
      const auto it = ci->find(x);
      if (it != ci->end()) hw = it->second;
    }
    out << x << ',' << p << ',' << hw << '\n';
  }
}

inline Distribution read_distribution_csv(std::istream& in,
                                          std::map<int, double>* ci_out = nullptr) {
  Distribution dist;
  std::string line;
  if (!std::getline(in, line) || line.rfind("state,probability", 0) != 0)
    throw std::invalid_argument("distribution csv: missing header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string state, prob, hw;
    if (!std::getline(row, state, ',') || !std::getline(row, prob, ','))
      throw std::invalid_argument("distribution csv: malformed row: " + line);
    std::getline(row, hw, ',');
    const int x = std::stoi(state);
    dist[x] = std::stod(prob);
    if (ci_out != nullptr && !hw.empty()) (*ci_out)[x] = std::stod(hw);
  }
  return dist;
}

}  // namespace qwalk
