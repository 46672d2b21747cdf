#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "duopoly/bargaining.hpp"
#include "duopoly/cli/app.hpp"
#include "duopoly/cli/threshold.hpp"
#include "duopoly/errors.hpp"
#include "duopoly/hotelling_spne.hpp"
#include "duopoly/model.hpp"
#include "duopoly/numopt.hpp"
#include "duopoly/outside_option_spne.hpp"

namespace py = pybind11;
using namespace duopoly;

namespace {

SpneSolution solve_spne(const MarketParams& params) {
  return params.model_case == ModelCase::OutsideOption ? outside_option::solve_spne(params)
                                                       : hotelling::solve_spne(params);
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"duopoly"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equilibria and bargaining solutions for a two-provider spectrum market";

  auto validation_error = py::register_exception<ValidationError>(m, "ValidationError",
                                                                  PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DegenerateTransferError>(m, "DegenerateTransferError",
                                                  PyExc_ArithmeticError);
  py::register_exception<NoEquilibriumError>(m, "NoEquilibriumError", PyExc_RuntimeError);
  (void)validation_error;

  py::enum_<ModelCase>(m, "ModelCase")
      .value("Hotelling", ModelCase::Hotelling)
      .value("OutsideOption", ModelCase::OutsideOption);
  py::enum_<Outcome>(m, "Outcome")
      .value("A", Outcome::A)
      .value("B", Outcome::B)
      .value("NoCooperation", Outcome::NoCooperation);
  py::enum_<Stage2Label>(m, "Stage2Label")
      .value("Interior", Stage2Label::Interior)
      .value("FullLease", Stage2Label::FullLease)
      .value("NoCooperation", Stage2Label::NoCooperation);

  py::class_<MarketParams>(m, "MarketParams")
      .def(py::init([](ModelCase model_case, double c, double s, double gamma, double k, double b,
                       double w, double i_min_l, bool outside_option_floor) {
             return MarketParams{model_case, c, s, gamma, k, b, w, i_min_l, outside_option_floor};
           }),
           py::arg("model_case") = ModelCase::Hotelling, py::arg("c") = 0.0, py::arg("s") = 1.0,
           py::arg("gamma") = 0.1, py::arg("k") = 0.0, py::arg("b") = 0.0, py::arg("w") = 0.5,
           py::arg("i_min_l") = 0.0, py::arg("outside_option_floor") = false)
      .def_readwrite("model_case", &MarketParams::model_case)
      .def_readwrite("c", &MarketParams::c)
      .def_readwrite("s", &MarketParams::s)
      .def_readwrite("gamma", &MarketParams::gamma)
      .def_readwrite("k", &MarketParams::k)
      .def_readwrite("b", &MarketParams::b)
      .def_readwrite("w", &MarketParams::w)
      .def_readwrite("i_min_l", &MarketParams::i_min_l)
      .def_readwrite("outside_option_floor", &MarketParams::outside_option_floor);
  m.def("validate", &validate, py::arg("params"),
        "Raises ValidationError on bad parameters; returns warnings.");

  py::class_<Investments>(m, "Investments")
      .def(py::init<double, double>(), py::arg("i_l"), py::arg("i_f"))
      .def_property_readonly("i_l", &Investments::i_l)
      .def_property_readonly("i_f", &Investments::i_f)
      .def_property_readonly("lease_ratio", &Investments::lease_ratio)
      .def("__repr__", [](const Investments& inv) {
        return "Investments(i_l=" + std::to_string(inv.i_l()) +
               ", i_f=" + std::to_string(inv.i_f()) + ")";
      });
  py::class_<Prices>(m, "Prices")
      .def(py::init([](double p_l, double p_f) { return Prices{p_l, p_f}; }), py::arg("p_l"),
           py::arg("p_f"))
      .def_readwrite("p_l", &Prices::p_l)
      .def_readwrite("p_f", &Prices::p_f);
  py::class_<MarketSplit>(m, "MarketSplit")
      .def_readonly("n_l", &MarketSplit::n_l)
      .def_readonly("n_f", &MarketSplit::n_f)
      .def_readonly("phi_l", &MarketSplit::phi_l)
      .def_readonly("phi_f", &MarketSplit::phi_f)
      .def_readonly("n_l_total", &MarketSplit::n_l_total)
      .def_readonly("n_f_total", &MarketSplit::n_f_total);
  py::class_<Payoffs>(m, "Payoffs")
      .def_readonly("pi_l", &Payoffs::pi_l)
      .def_readonly("pi_f", &Payoffs::pi_f);
  m.def("market_split", &market_split, py::arg("params"), py::arg("inv"), py::arg("prices"));
  m.def("stage_payoffs", &stage_payoffs, py::arg("params"), py::arg("inv"), py::arg("prices"));

  py::class_<EquilibriumPath>(m, "EquilibriumPath")
      .def_readonly("inv", &EquilibriumPath::inv)
      .def_readonly("prices", &EquilibriumPath::prices)
      .def_readonly("split", &EquilibriumPath::split)
      .def_readonly("payoffs", &EquilibriumPath::payoffs);
  py::class_<SpneSolution>(m, "SpneSolution")
      .def_readonly("model_case", &SpneSolution::model_case)
      .def_readonly("outcome", &SpneSolution::outcome)
      .def_readonly("path", &SpneSolution::path)
      .def_readonly("i_l_floor", &SpneSolution::i_l_floor)
      .def_readonly("stage2", &SpneSolution::stage2)
      .def_readonly("notes", &SpneSolution::notes);
  m.def("solve_spne", &solve_spne, py::arg("params"),
        "Sequential-game equilibrium for params.model_case.");

  m.def("hotelling_stage3_prices", &hotelling::stage3_prices, py::arg("inv"), py::arg("c"));
  m.def("hotelling_stage2_if", &hotelling::stage2_if, py::arg("params"), py::arg("i_l"));
  m.def("hotelling_stage1_objective", &hotelling::stage1_objective, py::arg("params"),
        py::arg("i_l"));
  m.def("full_lease_threshold", &hotelling::full_lease_threshold, py::arg("s"));
  m.def("outside_option_stage3_prices", &outside_option::stage3_prices, py::arg("params"),
        py::arg("inv"));
  m.def(
      "outside_option_stage2_if",
      [](const MarketParams& params, double i_l) {
        const auto r = outside_option::stage2_if(params, i_l);
        return py::make_tuple(r.label, r.i_f);
      },
      py::arg("params"), py::arg("i_l"), "(Stage2Label, i_f)");
  m.def("psi", &outside_option::psi, py::arg("params"), py::arg("i_l"), py::arg("i_f"));

  py::class_<bargaining::DisagreementPoint>(m, "DisagreementPoint")
      .def(py::init([](double d_l, double d_f) { return bargaining::DisagreementPoint{d_l, d_f}; }),
           py::arg("d_l"), py::arg("d_f"))
      .def_readwrite("d_l", &bargaining::DisagreementPoint::d_l)
      .def_readwrite("d_f", &bargaining::DisagreementPoint::d_f);
  py::class_<bargaining::NbsBranch>(m, "NbsBranch")
      .def_readonly("inv", &bargaining::NbsBranch::inv)
      .def_readonly("u_excess", &bargaining::NbsBranch::u_excess);
  py::class_<bargaining::NbsSolution>(m, "NbsSolution")
      .def_readonly("model_case", &bargaining::NbsSolution::model_case)
      .def_readonly("inv", &bargaining::NbsSolution::inv)
      .def_readonly("s_star", &bargaining::NbsSolution::s_star)
      .def_readonly("transfer", &bargaining::NbsSolution::transfer)
      .def_readonly("prices", &bargaining::NbsSolution::prices)
      .def_readonly("split", &bargaining::NbsSolution::split)
      .def_readonly("payoffs", &bargaining::NbsSolution::payoffs)
      .def_readonly("u_excess", &bargaining::NbsSolution::u_excess)
      .def_readonly("d", &bargaining::NbsSolution::d)
      .def_readonly("d_overridden", &bargaining::NbsSolution::d_overridden)
      .def_readonly("feasible", &bargaining::NbsSolution::feasible)
      .def_readonly("branches", &bargaining::NbsSolution::branches)
      .def_readonly("notes", &bargaining::NbsSolution::notes);
  m.def(
      "solve_nbs",
      [](const MarketParams& params, std::optional<bargaining::DisagreementPoint> d) {
        return bargaining::solve_nbs(params, d);
      },
      py::arg("params"), py::arg("d") = py::none());
  m.def("disagreement_from_spne", &bargaining::disagreement_from_spne, py::arg("params"));
  m.def("u_excess", &bargaining::u_excess, py::arg("params"), py::arg("inv"), py::arg("d"));
  m.def("nash_product", &bargaining::nash_product, py::arg("payoffs"), py::arg("d"),
        py::arg("w"));

  py::class_<OptResult>(m, "OptResult")
      .def_property_readonly("ok", &OptResult::ok)
      .def_readonly("argmax", &OptResult::argmax)
      .def_readonly("max_value", &OptResult::max_value)
      .def_readonly("tied_argmaxes", &OptResult::tied_argmaxes)
      .def_readonly("evaluations", &OptResult::evaluations);
  m.def(
      "maximize_scalar",
      [](const Objective& f, double lo, double hi, int grid_points) {
        OptConfig cfg;
        cfg.grid_points = grid_points;
        return maximize_scalar(f, lo, hi, cfg);
      },
      py::arg("objective"), py::arg("lo"), py::arg("hi"), py::arg("grid_points") = 4096,
      "objective returns a float, or None where infeasible. Ties go to the largest x.");

  py::class_<cli::Transition>(m, "Transition")
      .def_readonly("s_dagger", &cli::Transition::s_dagger)
      .def_readonly("label_below", &cli::Transition::label_below)
      .def_readonly("label_above", &cli::Transition::label_above)
      .def_property_readonly("jump_i_l", &cli::Transition::jump_i_l)
      .def_property_readonly("jump_i_f", &cli::Transition::jump_i_f);
  m.def(
      "find_thresholds",
      [](const MarketParams& params, double lo, double hi, int count) {
        return cli::find_thresholds(params, lo, hi, count, false).transitions;
      },
      py::arg("params"), py::arg("lo"), py::arg("hi"), py::arg("count") = 200);

  m.def("run_cli", &run_cli, py::arg("args"), "Runs the command-line tool; (exit_code, stdout, stderr).");
}
