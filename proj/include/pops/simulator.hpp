#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pops/model.hpp"
#include "pops/router.hpp"

namespace pops {

/// Packet placement during execution; packets are identified by their
/// origin index.
struct SimState {
  std::vector<std::vector<int>> holding;  // processor -> packets held
  int slot_cursor = 0;

  static SimState initial(const NetworkConfig& cfg) {
    SimState st;
    st.holding.resize(cfg.n());
    for (int i = 0; i < cfg.n(); ++i) st.holding[i] = {i};
    return st;
  }

  bool holds(int processor, int packet) const {
    const auto& h = holding[processor];
    return std::find(h.begin(), h.end(), packet) != h.end();
  }
};

struct Violation {
  int slot = -1;
  char rule = '?';  // a..f per validate_slot, 'F' for mid-route fairness
  std::string detail;
};

/// Checks one slot against the hardware constraints:
///   (a) every transmitter holds the packet it sends
///   (b) a processor sends at most one distinct packet
///   (c) coupler wiring: tx src_group = group(src), rx dst_group = group(dst)
///   (d) at most one transmission per coupler
///   (e) at most one reception per processor
///   (f) every reception's coupler is driven
inline std::optional<Violation> validate_slot(const NetworkConfig& cfg,
                                              const SimState& state,
                                              const Slot& slot,
                                              int slot_index = -1) {
  std::map<int, int> packet_of_src;
  std::map<CouplerId, int> coupler_tx;
  for (const auto& tx : slot.transmissions) {
    check_processor_index(cfg, tx.src);
    if (!state.holds(tx.src, tx.packet))
      return Violation{slot_index, 'a',
                       "processor " + std::to_string(tx.src) +
                           " does not hold packet " + std::to_string(tx.packet)};
    auto [it, inserted] = packet_of_src.emplace(tx.src, tx.packet);
    if (!inserted && it->second != tx.packet)
      return Violation{slot_index, 'b',
                       "processor " + std::to_string(tx.src) +
                           " sends two distinct packets"};
    if (tx.coupler.src_group != group_of(cfg, tx.src) ||
        tx.coupler.dst_group < 0 || tx.coupler.dst_group >= cfg.g)
      return Violation{slot_index, 'c',
                       "transmission from " + std::to_string(tx.src) +
                           " uses coupler c(" +
                           std::to_string(tx.coupler.dst_group) + "," +
                           std::to_string(tx.coupler.src_group) +
                           ") outside its source group"};
    auto [cit, cinserted] = coupler_tx.emplace(tx.coupler, tx.src);
    if (!cinserted)
      return Violation{slot_index, 'd',
                       "coupler c(" + std::to_string(tx.coupler.dst_group) +
                           "," + std::to_string(tx.coupler.src_group) +
                           ") driven by processors " +
                           std::to_string(cit->second) + " and " +
                           std::to_string(tx.src)};
  }
  std::map<int, CouplerId> rx_of_dst;
  for (const auto& rx : slot.receptions) {
    check_processor_index(cfg, rx.dst);
    if (rx.coupler.dst_group != group_of(cfg, rx.dst) ||
        rx.coupler.src_group < 0 || rx.coupler.src_group >= cfg.g)
      return Violation{slot_index, 'c',
                       "reception at " + std::to_string(rx.dst) +
                           " listens on coupler c(" +
                           std::to_string(rx.coupler.dst_group) + "," +
                           std::to_string(rx.coupler.src_group) +
                           ") outside its group"};
    if (!rx_of_dst.emplace(rx.dst, rx.coupler).second)
      return Violation{slot_index, 'e',
                       "processor " + std::to_string(rx.dst) +
                           " has two receptions"};
    if (!coupler_tx.count(rx.coupler))
      return Violation{slot_index, 'f',
                       "reception at " + std::to_string(rx.dst) +
                           " reads undriven coupler c(" +
                           std::to_string(rx.coupler.dst_group) + "," +
                           std::to_string(rx.coupler.src_group) + ")"};
  }
  return std::nullopt;
}

/// Fair-distribution predicate over a mid-route placement: packets sit on
/// pairwise distinct processors and no two packets with the same destination
/// group share a group.
inline bool one_slot_fair_check(const NetworkConfig& cfg,
                                const std::map<int, int>& placement,
                                const std::map<int, int>& destinations) {
  std::vector<char> processor_used(cfg.n(), 0);
  std::map<std::pair<int, int>, int> group_destgroup_seen;
  for (const auto& [packet, processor] : placement) {
    if (processor_used[processor]) return false;
    processor_used[processor] = 1;
    const int dest = destinations.at(packet);
    const auto key = std::make_pair(group_of(cfg, processor),
                                    group_of(cfg, dest));
    if (!group_destgroup_seen.emplace(key, packet).second) return false;
  }
  return true;
}

struct SimResult {
  SimState state;
  bool delivered = false;
  int slots_used = 0;
  std::vector<Violation> violations;
};

/// Runs a schedule slot by slot, validating each before applying it. A
/// packet moves from its sender to every receiver listening on the coupler;
/// an unread transmission leaves the packet in place. After the first slot
/// of each round (d > 1) the just-moved packets must be fairly distributed.
inline SimResult execute(const NetworkConfig& cfg, const Permutation& pi,
                         const Schedule& schedule,
                         bool check_fairness = true) {
  SimResult result{SimState::initial(cfg), false, 0, {}};
  if (pi.n() != cfg.n()) throw Error("execute: permutation size mismatch");

  for (int s = 0; s < static_cast<int>(schedule.slots.size()); ++s) {
    const Slot& slot = schedule.slots[s];
    if (auto v = validate_slot(cfg, result.state, slot, s)) {
      result.violations.push_back(*v);
      return result;
    }
    std::map<CouplerId, const Transmission*> on_coupler;
    for (const auto& tx : slot.transmissions) on_coupler[tx.coupler] = &tx;
    std::map<CouplerId, int> readers;
    for (const auto& rx : slot.receptions) ++readers[rx.coupler];

    std::map<int, int> moved;  // packet -> new processor, this slot
    for (const auto& [coupler, count] : readers) {
      const Transmission* tx = on_coupler.at(coupler);
      auto& h = result.state.holding[tx->src];
      auto it = std::find(h.begin(), h.end(), tx->packet);
      if (it != h.end()) h.erase(it);
    }
    for (const auto& rx : slot.receptions) {
      const Transmission* tx = on_coupler.at(rx.coupler);
      result.state.holding[rx.dst].push_back(tx->packet);
      moved[tx->packet] = rx.dst;
    }
    result.state.slot_cursor = s + 1;
    ++result.slots_used;

    // two-phase rounds only; a single-slot schedule delivers directly
    const bool first_of_round =
        cfg.d > 1 && schedule.slots.size() > 1 && s % 2 == 0;
    if (check_fairness && first_of_round && !moved.empty()) {
      std::map<int, int> destinations;
      for (const auto& [packet, where] : moved) destinations[packet] = pi(packet);
      if (!one_slot_fair_check(cfg, moved, destinations)) {
        result.violations.push_back(
            {s, 'F', "moved packets are not fairly distributed after slot " +
                         std::to_string(s)});
        return result;
      }
    }
  }

  result.delivered = true;
  for (int i = 0; i < cfg.n(); ++i) {
    const auto& h = result.state.holding[pi(i)];
    if (h.size() != 1 || h[0] != i) {
      result.delivered = false;
      break;
    }
  }
  return result;
}

}  // namespace pops
