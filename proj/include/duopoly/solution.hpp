#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duopoly/model.hpp"

namespace duopoly {

/// Equilibrium regime.
///   B: the leader invests at the floor and the follower leases everything.
///   A: the leader invests above it and leases only part.
///   NoCooperation: no equilibrium path with a lease (outside-option case).
enum class Outcome { A, B, NoCooperation };

std::string to_string(Outcome outcome);

/// Follower's Stage-2 regime in the outside-option game.
enum class Stage2Label { Interior, FullLease, NoCooperation };

std::string to_string(Stage2Label label);

/// Strategies and results along the equilibrium path.
struct EquilibriumPath {
  Investments inv;
  Prices prices;
  MarketSplit split;
  Payoffs payoffs;
};

struct SpneSolution {
  ModelCase model_case = ModelCase::Hotelling;
  Outcome outcome = Outcome::NoCooperation;
  /// Absent only when outcome is NoCooperation.
  std::optional<EquilibriumPath> path;
  /// sqrt(2 / (9 s)); hotelling market only.
  std::optional<double> i_l_floor;
  /// Follower regime at the chosen investment; outside-option market only.
  std::optional<Stage2Label> stage2;
  /// Diagnostics (boundary hits, demand totals outside [0, 1], ...).
  std::vector<std::string> notes;
};

}  // namespace duopoly
