#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "pops/fairdist.hpp"
#include "pops/model.hpp"

namespace pops {

/// Processor src puts `packet` on one of its own-group couplers.
struct Transmission {
  int src;
  CouplerId coupler;
  int packet;  // origin processor index

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

/// Processor dst reads whatever its group-side coupler carries this slot.
struct Reception {
  int dst;
  CouplerId coupler;

  friend bool operator==(const Reception&, const Reception&) = default;
};

struct Slot {
  std::vector<Transmission> transmissions;
  std::vector<Reception> receptions;
};

struct Schedule {
  NetworkConfig config;
  std::vector<Slot> slots;
  int rounds = 1;
};

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// Slot count guaranteed for any permutation: 1 when d=1, 2*ceil(d/g) else.
inline int theorem_slots(const NetworkConfig& cfg) {
  return cfg.d == 1 ? 1 : 2 * ceil_div(cfg.d, cfg.g);
}

/// List system of the routing problem: source groups list the destination
/// groups of their packets in local-index order. S = N_g; T = N_g when
/// d <= g, N_d when d > g; delta1 = d. Proper for every permutation.
inline ListSystem build_list_system(const NetworkConfig& cfg,
                                    const Permutation& pi) {
  if (cfg.d == 1)
    throw Error("build_list_system: d=1 routes directly, no list system");
  if (pi.n() != cfg.n()) throw Error("build_list_system: size mismatch");
  ListSystem ls;
  ls.n1 = cfg.g;
  ls.n2 = cfg.d <= cfg.g ? cfg.g : cfg.d;
  ls.delta1 = cfg.d;
  ls.lists.assign(cfg.g, std::vector<int>(cfg.d, 0));
  for (int h = 0; h < cfg.g; ++h)
    for (int i = 0; i < cfg.d; ++i)
      ls.lists[h][i] = group_of(cfg, pi(i + h * cfg.d));
  return ls;
}

namespace detail {

// Second slot of a round: every holder forwards to the final destination
// through c(group(pi(p)), group(holder)). Fairness of the holding pattern
// keeps the couplers conflict-free.
inline Slot delivery_slot(const NetworkConfig& cfg, const Permutation& pi,
                          const std::vector<std::pair<int, int>>& held) {
  Slot slot;
  for (const auto& [packet, holder] : held) {
    const int dest = pi(packet);
    const CouplerId coupler{group_of(cfg, dest), group_of(cfg, holder)};
    slot.transmissions.push_back({holder, coupler, packet});
    slot.receptions.push_back({dest, coupler});
  }
  return slot;
}

}  // namespace detail

/// Compiles a permutation into 1 slot (d=1) or 2*ceil(d/g) slots (d>1).
inline Schedule route(const NetworkConfig& cfg, const Permutation& pi) {
  if (pi.n() != cfg.n()) throw Error("route: permutation size mismatch");
  Schedule schedule{cfg, {}, ceil_div(cfg.d, cfg.g)};

  if (cfg.d == 1) {
    // Clique: one slot through c(pi(i), i).
    Slot slot;
    for (int i = 0; i < cfg.n(); ++i)
      slot.transmissions.push_back({i, {pi(i), i}, i});
    for (int j = 0; j < cfg.n(); ++j)
      slot.receptions.push_back({j, {j, pi.inverse(j)}});
    schedule.slots.push_back(std::move(slot));
    return schedule;
  }

  const auto fd = find_fair_distribution(build_list_system(cfg, pi));
  const auto& f = fd.f;  // f[h][i] in N_g (d<=g) or N_d (d>g)

  if (cfg.d <= cfg.g) {
    // One round. Slot 1: packet of processor i+hd rides c(f(h,i), h); each
    // group receives d packets from d distinct source groups and parks them
    // on local processors 0..d-1 in source-group order.
    Slot first;
    std::vector<std::vector<std::pair<int, int>>> incoming(cfg.g);
    for (int h = 0; h < cfg.g; ++h)
      for (int i = 0; i < cfg.d; ++i) {
        const int src = i + h * cfg.d;
        first.transmissions.push_back({src, {f[h][i], h}, src});
        incoming[f[h][i]].push_back({h, src});  // h ascending by loop order
      }
    std::vector<std::pair<int, int>> held;  // (packet, holder)
    for (int j = 0; j < cfg.g; ++j)
      for (std::size_t rank = 0; rank < incoming[j].size(); ++rank) {
        const auto [h, packet] = incoming[j][rank];
        const int holder = j * cfg.d + static_cast<int>(rank);
        first.receptions.push_back({holder, {j, h}});
        held.push_back({packet, holder});
      }
    std::sort(held.begin(), held.end());
    schedule.slots.push_back(std::move(first));
    schedule.slots.push_back(detail::delivery_slot(cfg, pi, held));
    return schedule;
  }

  // d > g: ceil(d/g) rounds of two slots. Round k moves the packets whose
  // f-value falls in the window [kg, min((k+1)g, d)); the packet with
  // f(h,i) = kg + j goes to local processor h of intermediate group j.
  for (int k = 0; k < schedule.rounds; ++k) {
    const int lo = k * cfg.g;
    const int hi = std::min((k + 1) * cfg.g, cfg.d);
    Slot first;
    std::vector<std::pair<int, int>> held;
    for (int h = 0; h < cfg.g; ++h)
      for (int i = 0; i < cfg.d; ++i) {
        if (f[h][i] < lo || f[h][i] >= hi) continue;
        const int j = f[h][i] - lo;
        const int src = i + h * cfg.d;
        const int holder = j * cfg.d + h;
        first.transmissions.push_back({src, {j, h}, src});
        first.receptions.push_back({holder, {j, h}});
        held.push_back({src, holder});
      }
    std::sort(held.begin(), held.end());
    schedule.slots.push_back(std::move(first));
    schedule.slots.push_back(detail::delivery_slot(cfg, pi, held));
  }
  return schedule;
}

/// Greedy single-slot baseline: succeeds exactly when no two packets share
/// both source group and destination group.
inline std::optional<Schedule> single_slot_route_if_possible(
    const NetworkConfig& cfg, const Permutation& pi) {
  if (pi.n() != cfg.n()) throw Error("single_slot_route: size mismatch");
  std::vector<int> coupler_load(cfg.g * cfg.g, 0);
  for (int i = 0; i < cfg.n(); ++i) {
    const int a = group_of(cfg, i), b = group_of(cfg, pi(i));
    if (++coupler_load[b * cfg.g + a] > 1) return std::nullopt;
  }
  Schedule schedule{cfg, {}, 1};
  Slot slot;
  for (int i = 0; i < cfg.n(); ++i) {
    const CouplerId coupler{group_of(cfg, pi(i)), group_of(cfg, i)};
    slot.transmissions.push_back({i, coupler, i});
  }
  for (int j = 0; j < cfg.n(); ++j) {
    const int i = pi.inverse(j);
    slot.receptions.push_back({j, {group_of(cfg, j), group_of(cfg, i)}});
  }
  schedule.slots.push_back(std::move(slot));
  return schedule;
}

}  // namespace pops
