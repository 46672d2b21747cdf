#pragma once

#include <stdexcept>
#include <string>

namespace duopoly {

/// A parameter or strategy violates a model invariant. The message names the
/// invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function was evaluated outside the region where its closed form holds
/// (below the Stage-1 floor, beyond the interiority limit, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The per-resource transfer price divides by the leased amount, which is zero.
class DegenerateTransferError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The game has no equilibrium path for these parameters.
class NoEquilibriumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace duopoly
