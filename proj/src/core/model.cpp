#include "duopoly/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "duopoly/errors.hpp"

namespace duopoly {

namespace {

void require(bool condition, const std::string& invariant) {
  if (!condition) throw ValidationError(invariant);
}

std::string describe(const char* name, double value) {
  std::ostringstream os;
  os << name << " = " << value;
  return os.str();
}

}  // namespace

std::string to_string(ModelCase model_case) {
  switch (model_case) {
    case ModelCase::Hotelling:
      return "hotelling";
    case ModelCase::OutsideOption:
      return "outside-option";
  }
  return "unknown";
}

std::vector<std::string> validate(const MarketParams& params) {
  std::vector<std::string> warnings;
  for (auto [name, value] : {std::pair{"c", params.c}, std::pair{"s", params.s},
                             std::pair{"gamma", params.gamma}, std::pair{"k", params.k},
                             std::pair{"b", params.b}, std::pair{"w", params.w},
                             std::pair{"i_min_l", params.i_min_l}}) {
    require(std::isfinite(value), std::string("parameter must be finite: ") + name);
  }
  require(params.gamma > 0.0, "gamma > 0 (" + describe("gamma", params.gamma) + ")");
  require(params.c >= 0.0, "c >= 0 (" + describe("c", params.c) + ")");
  require(params.s >= 0.0, "s >= 0 (" + describe("s", params.s) + ")");
  require(params.w >= 0.0 && params.w <= 1.0,
          "0 <= w <= 1 (" + describe("w", params.w) + ")");
  require(params.i_min_l >= 0.0, "i_min_l >= 0 (" + describe("i_min_l", params.i_min_l) + ")");

  switch (params.model_case) {
    case ModelCase::Hotelling:
      require(params.s >= params.gamma, "s >= gamma (" + describe("s", params.s) + ", " +
                                            describe("gamma", params.gamma) + ")");
      break;
    case ModelCase::OutsideOption:
      require(params.b > 0.0, "b > 0 (" + describe("b", params.b) + ")");
      if (params.s < params.gamma) {
        warnings.push_back("s < gamma: leasing is unprofitable for the leader; expect "
                           "near-zero investment");
      }
      break;
  }
  return warnings;
}

Investments::Investments(double i_l, double i_f) : i_l_(i_l), i_f_(i_f) {
  if (!(std::isfinite(i_l) && std::isfinite(i_f))) {
    throw ValidationError("investments must be finite");
  }
  if (!(i_l > 0.0)) throw ValidationError("i_l > 0 (" + describe("i_l", i_l) + ")");
  if (!(i_f >= 0.0 && i_f <= i_l)) {
    throw ValidationError("0 <= i_f <= i_l (" + describe("i_l", i_l) + ", " +
                          describe("i_f", i_f) + ")");
  }
}

double eu_utility(double v_star, double t, double distance, double price) {
  return v_star - t * distance - price;
}

PreferenceWeights preference_weights(const Investments& inv) {
  const double t_l = inv.lease_ratio();
  return {t_l, 1.0 - t_l};
}

double indifferent_eu(const Investments& inv, const Prices& prices) {
  return (inv.i_l() - inv.i_f()) / inv.i_l() + prices.p_f - prices.p_l;
}

MarketSplit hotelling_split(const Investments& inv, const Prices& prices) {
  const double x_n = indifferent_eu(inv, prices);
  MarketSplit split;
  split.n_l = x_n < 0.0 ? 0.0 : (x_n > 1.0 ? 1.0 : x_n);
  split.n_f = 1.0 - split.n_l;
  split.n_l_total = split.n_l;
  split.n_f_total = split.n_f;
  return split;
}

std::pair<double, double> demand_phi(const MarketParams& params, const Investments& inv,
                                     const Prices& prices) {
  const double phi_l = params.k - prices.p_l + params.b * (inv.i_l() - inv.i_f());
  const double phi_f = params.k - prices.p_f + params.b * inv.i_f();
  return {phi_l, phi_f};
}

MarketSplit outside_option_split(const MarketParams& params, const Investments& inv,
                                 const Prices& prices) {
  MarketSplit split = hotelling_split(inv, prices);
  std::tie(split.phi_l, split.phi_f) = demand_phi(params, inv, prices);
  split.n_l_total = split.n_l + split.phi_l;
  split.n_f_total = split.n_f + split.phi_f;
  return split;
}

MarketSplit market_split(const MarketParams& params, const Investments& inv,
                         const Prices& prices) {
  return params.model_case == ModelCase::OutsideOption
             ? outside_option_split(params, inv, prices)
             : hotelling_split(inv, prices);
}

Payoffs payoffs(const MarketParams& params, const Investments& inv, const Prices& prices,
                const MarketSplit& split) {
  const double lease_fee = params.s * inv.i_f() * inv.i_f();
  Payoffs out;
  out.pi_f = split.n_f_total * (prices.p_f - params.c) - lease_fee;
  out.pi_l = split.n_l_total * (prices.p_l - params.c) + lease_fee -
             params.gamma * inv.i_l() * inv.i_l();
  return out;
}

Payoffs stage_payoffs(const MarketParams& params, const Investments& inv,
                      const Prices& prices) {
  return payoffs(params, inv, prices, market_split(params, inv, prices));
}

}  // namespace duopoly
