#include "duopoly/solution.hpp"

namespace duopoly {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::A:
      return "A";
    case Outcome::B:
      return "B";
    case Outcome::NoCooperation:
      return "NoCooperation";
  }
  return "unknown";
}

std::string to_string(Stage2Label label) {
  switch (label) {
    case Stage2Label::Interior:
      return "Interior";
    case Stage2Label::FullLease:
      return "FullLease";
    case Stage2Label::NoCooperation:
      return "NoCooperation";
  }
  return "unknown";
}

}  // namespace duopoly
