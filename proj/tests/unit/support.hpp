#pragma once

#include <doctest.h>

#include <cmath>
#include <random>

#include "duopoly/model.hpp"

#define CHECK_CLOSE(actual, expected, tol)                                         \
  do {                                                                             \
    const double a_ = (actual);                                                    \
    const double e_ = (expected);                                                  \
    INFO("actual = " << a_ << ", expected = " << e_ << ", tol = " << (tol));      \
    CHECK(std::abs(a_ - e_) <= (tol));                                             \
  } while (0)

namespace test {

// Fixed seeds keep every randomized property test reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

 private:
  std::mt19937_64 gen_;
};

inline duopoly::MarketParams hotelling(double c, double s, double gamma) {
  duopoly::MarketParams p;
  p.model_case = duopoly::ModelCase::Hotelling;
  p.c = c;
  p.s = s;
  p.gamma = gamma;
  return p;
}

inline duopoly::MarketParams outside(double c, double s, double gamma, double k, double b) {
  duopoly::MarketParams p;
  p.model_case = duopoly::ModelCase::OutsideOption;
  p.c = c;
  p.s = s;
  p.gamma = gamma;
  p.k = k;
  p.b = b;
  return p;
}

}  // namespace test
