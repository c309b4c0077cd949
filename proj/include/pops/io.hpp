#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pops/model.hpp"
#include "pops/router.hpp"
#include "pops/simulator.hpp"

namespace pops {

/// Parses a permutation image from text: either whitespace-separated
/// decimal integers, a JSON array, or a JSON object carrying a "perm" array.
inline std::vector<int> parse_permutation_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos &&
      (text[first] == '[' || text[first] == '{')) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.is_object()) {
      if (!j.contains("perm"))
        throw Error("permutation JSON object has no \"perm\" field");
      j = j["perm"];
    }
    if (!j.is_array()) throw Error("permutation JSON is not an array");
    std::vector<int> image;
    for (const auto& v : j) {
      if (!v.is_number_integer())
        throw Error("permutation JSON holds a non-integer entry");
      image.push_back(v.get<int>());
    }
    return image;
  }
  std::istringstream in(text);
  std::vector<int> image;
  int v;
  while (in >> v) image.push_back(v);
  if (!in.eof()) throw Error("permutation file holds a non-integer token");
  return image;
}

inline std::vector<int> read_permutation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open permutation file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_permutation_text(buf.str());
}

inline void write_permutation_text(std::ostream& out, const Permutation& pi) {
  for (int i = 0; i < pi.n(); ++i) out << (i ? " " : "") << pi(i);
  out << "\n";
}

inline nlohmann::json schedule_to_json(const Schedule& schedule) {
  nlohmann::json j;
  j["d"] = schedule.config.d;
  j["g"] = schedule.config.g;
  j["rounds"] = schedule.rounds;
  j["slots"] = nlohmann::json::array();
  for (const auto& slot : schedule.slots) {
    nlohmann::json js;
    js["tx"] = nlohmann::json::array();
    for (const auto& tx : slot.transmissions)
      js["tx"].push_back({{"src", tx.src},
                          {"dst_group", tx.coupler.dst_group},
                          {"src_group", tx.coupler.src_group},
                          {"packet", tx.packet}});
    js["rx"] = nlohmann::json::array();
    for (const auto& rx : slot.receptions)
      js["rx"].push_back({{"dst", rx.dst},
                          {"dst_group", rx.coupler.dst_group},
                          {"src_group", rx.coupler.src_group}});
    j["slots"].push_back(std::move(js));
  }
  return j;
}

inline Schedule schedule_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("g") ||
      !j.contains("slots"))
    throw Error("schedule JSON misses d/g/slots");
  Schedule schedule{NetworkConfig(j.at("d").get<int>(), j.at("g").get<int>()),
                    {},
                    j.value("rounds", 1)};
  for (const auto& js : j.at("slots")) {
    Slot slot;
    for (const auto& jt : js.value("tx", nlohmann::json::array()))
      slot.transmissions.push_back(
          {jt.at("src").get<int>(),
           {jt.at("dst_group").get<int>(), jt.at("src_group").get<int>()},
           jt.at("packet").get<int>()});
    for (const auto& jr : js.value("rx", nlohmann::json::array()))
      slot.receptions.push_back(
          {jr.at("dst").get<int>(),
           {jr.at("dst_group").get<int>(), jr.at("src_group").get<int>()}});
    schedule.slots.push_back(std::move(slot));
  }
  return schedule;
}

inline nlohmann::json verdict_to_json(const SimResult& result) {
  nlohmann::json j;
  j["delivered"] = result.delivered;
  j["slots_used"] = result.slots_used;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : result.violations)
    j["violations"].push_back({{"slot", v.slot},
                               {"rule", std::string(1, v.rule)},
                               {"detail", v.detail}});
  return j;
}

}  // namespace pops
