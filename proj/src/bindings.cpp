// python bindings: spectra, cycles, landscape sweeps, work optimization,
// finite-time propagation. Heavy entry points drop the GIL; callbacks passed
// in from python reacquire it per call, so python-side providers work (just
// serialized), while the native providers run free.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "qotto/dynamics.hpp"
#include "qotto/emw.hpp"
#include "qotto/errors.hpp"
#include "qotto/fewbody_ed.hpp"
#include "qotto/spectrum2p.hpp"
#include "qotto/thermo.hpp"
#include "qotto/version.hpp"

namespace py = pybind11;
using namespace qotto;

namespace {

std::vector<int> engine_flags(const std::vector<char>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

PYBIND11_MODULE(_qotto, m) {
  m.doc() = "few-body quantum Otto engine: trap + contact-interaction spectra, "
            "cycle bookkeeping, interaction-landscape sweeps, work optimization, "
            "finite-time strokes";

  m.def("version", &version);

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_OSError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);

  py::enum_<Statistics>(m, "Statistics")
      .value("boson", Statistics::boson)
      .value("dist", Statistics::dist);
  py::enum_<Transport3>(m, "Transport3")
      .value("rank", Transport3::rank)
      .value("sector", Transport3::sector)
      .value("boson", Transport3::boson);
  py::enum_<Polish>(m, "Polish")
      .value("none", Polish::none)
      .value("local3", Polish::local3)
      .value("nm", Polish::nm);
  py::enum_<ProtocolKind>(m, "ProtocolKind")
      .value("optimal", ProtocolKind::optimal)
      .value("scale_invariant", ProtocolKind::scale_invariant)
      .value("noninteracting", ProtocolKind::noninteracting);
  py::enum_<RampKind>(m, "RampKind")
      .value("polynomial", RampKind::polynomial)
      .value("scale_invariant_slave", RampKind::scale_invariant_slave);

  // ---- two-body contact levels ---------------------------------------------

  m.def("busch_epsilon", &busch_epsilon, py::arg("nu"), py::arg("gt"),
        "shift in [0,1) of even relative level nu at coupling gt");
  m.def("busch_gt_of_epsilon", &busch_gt_of_epsilon, py::arg("nu"), py::arg("eps"),
        "coupling that produces shift eps on even relative level nu");
  m.def("busch_gt_of_energy", &busch_gt_of_energy, py::arg("e_rel"));
  m.def("busch_energy", &busch_energy, py::arg("nu"), py::arg("gt"));
  m.def("lambda_ratio", &lambda_ratio, py::arg("n"), py::arg("nu"), py::arg("kappa"),
        py::arg("eps_i"), py::arg("eps_f"),
        "kappa times the level's compression energy ratio");

  py::class_<Level2P>(m, "Level2P")
      .def_readonly("n", &Level2P::n)
      .def_readonly("r", &Level2P::r)
      .def_readonly("e", &Level2P::e);
  m.def("levels2p", &levels2p, py::arg("stat"), py::arg("gt"), py::arg("omega"),
        py::arg("max_quanta"), py::call_guard<py::gil_scoped_release>());

  // ---- spectra, thermal states, cycles -------------------------------------

  py::class_<LabeledSpectrum>(m, "LabeledSpectrum")
      .def(py::init<>())
      .def_readwrite("e", &LabeledSpectrum::e)
      .def_readwrite("w", &LabeledSpectrum::w)
      .def_readwrite("label", &LabeledSpectrum::label)
      .def_readwrite("omega", &LabeledSpectrum::omega)
      .def("__len__", &LabeledSpectrum::size);

  py::class_<ThermalState>(m, "ThermalState")
      .def_readonly("beta", &ThermalState::beta)
      .def_readonly("z", &ThermalState::z)
      .def_readonly("tail", &ThermalState::tail)
      .def_readonly("p", &ThermalState::p);
  m.def("thermal_state", &thermal_state, py::arg("spectrum"), py::arg("beta"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<CycleResult>(m, "CycleResult")
      .def_readonly("wc", &CycleResult::wc)
      .def_readonly("we", &CycleResult::we)
      .def_readonly("w", &CycleResult::w)
      .def_readonly("qh", &CycleResult::qh)
      .def_readonly("qc", &CycleResult::qc)
      .def_readonly("eta", &CycleResult::eta)
      .def_readonly("first_law_rel", &CycleResult::first_law_rel)
      .def_readonly("form_gap", &CycleResult::form_gap)
      .def_readonly("engine", &CycleResult::engine)
      .def("__repr__", [](const CycleResult& c) {
        return "CycleResult(w=" + std::to_string(c.w) + ", qh=" + std::to_string(c.qh) +
               ", eta=" + std::to_string(c.eta) + ", engine=" + (c.engine ? "True" : "False") +
               ")";
      });
  m.def("run_cycle", &run_cycle, py::arg("si"), py::arg("sf"), py::arg("beta_c"),
        py::arg("beta_h"), py::call_guard<py::gil_scoped_release>(),
        "four-stroke cycle between label-matched endpoint spectra");

  m.def("curzon_ahlborn", &curzon_ahlborn, py::arg("beta_h"), py::arg("beta_c"));
  m.def("otto_eta", &otto_eta, py::arg("kappa"));

  m.def("spectrum_n2", &spectrum_n2, py::arg("stat"), py::arg("gt"), py::arg("omega"),
        py::arg("beta_min"), py::call_guard<py::gil_scoped_release>(),
        "adaptive analytic two-particle spectrum");
  m.def("spectrum_noninteracting", &spectrum_noninteracting, py::arg("n"), py::arg("stat"),
        py::arg("omega"), py::arg("beta_min"), py::call_guard<py::gil_scoped_release>());
  m.def("noninteracting_work_vs_N", &noninteracting_work_vs_N, py::arg("ns"), py::arg("stat"),
        py::arg("kappa"), py::arg("beta_c"), py::arg("beta_h"),
        py::call_guard<py::gil_scoped_release>());
  m.def("tail_window", &tail_window, py::arg("beta_omega"));

  m.def("provider_n2", &provider_n2, py::arg("stat"), py::arg("beta_min"),
        "callable (eps, omega) -> LabeledSpectrum over the two-body shift axis");

  // ---- interaction-landscape sweeps ----------------------------------------

  py::class_<MapSpec>(m, "MapSpec")
      .def(py::init<>())
      .def_readwrite("nx", &MapSpec::nx)
      .def_readwrite("ny", &MapSpec::ny)
      .def_readwrite("eps_i_max", &MapSpec::eps_i_max)
      .def_readwrite("eps_f_max", &MapSpec::eps_f_max)
      .def_readwrite("kappa", &MapSpec::kappa)
      .def_readwrite("beta_c", &MapSpec::beta_c)
      .def_readwrite("beta_h", &MapSpec::beta_h)
      .def_readwrite("polish", &MapSpec::polish);

  py::class_<MapPoint>(m, "MapPoint")
      .def_readonly("eps_i", &MapPoint::eps_i)
      .def_readonly("eps_f", &MapPoint::eps_f)
      .def_readonly("value", &MapPoint::value);

  py::class_<MapResult>(m, "MapResult")
      .def_readonly("eps_i", &MapResult::eps_i)
      .def_readonly("eps_f", &MapResult::eps_f)
      .def_readonly("eta_ratio", &MapResult::eta_ratio)
      .def_readonly("w_ratio", &MapResult::w_ratio)
      .def_property_readonly("engine",
                             [](const MapResult& r) { return engine_flags(r.engine); })
      .def_readonly("w_otto", &MapResult::w_otto)
      .def_readonly("max_eta", &MapResult::max_eta)
      .def_readonly("max_w", &MapResult::max_w)
      .def_readonly("dissipator_cells", &MapResult::dissipator_cells);

  m.def("heatmap", &heatmap, py::arg("spec"), py::arg("provider"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "eta/Otto and W/W_Otto over the (eps_i, eps_f) grid; row-major [i*ny+j]");

  // ---- truncated-basis diagonalization -------------------------------------

  py::class_<BasisSpec>(m, "BasisSpec")
      .def(py::init<>())
      .def_readwrite("n", &BasisSpec::n)
      .def_readwrite("e_cut", &BasisSpec::e_cut)
      .def_readwrite("stat", &BasisSpec::stat);
  m.def("basis_dimension", &basis_dimension, py::arg("spec"));

  py::class_<EdSpectrum>(m, "EdSpectrum")
      .def_readonly("spec", &EdSpectrum::spec)
      .def_readonly("gt", &EdSpectrum::gt)
      .def_readonly("e", &EdSpectrum::e)
      .def_readonly("conv", &EdSpectrum::conv)
      .def_readonly("dim", &EdSpectrum::dim);
  m.def("diagonalize", &diagonalize, py::arg("spec"), py::arg("gt"),
        py::arg("estimate") = false, py::call_guard<py::gil_scoped_release>(),
        "energy-truncated oscillator-basis spectrum; estimate reruns at e_cut + 4");

  m.def("anti3_levels", &anti3_levels, py::arg("e_cut"));
  m.def("epsilon_3p", &epsilon_3p, py::arg("e_cut"), py::arg("gt"),
        py::call_guard<py::gil_scoped_release>(),
        "three-boson ground-state interaction shift in trap units");
  m.def("gt_of_eps3p", &gt_of_eps3p, py::arg("e_cut"), py::arg("eps"),
        py::call_guard<py::gil_scoped_release>());
  m.def("eps3p_max", &eps3p_max, py::arg("e_cut"), py::call_guard<py::gil_scoped_release>());

  m.def("ed_spectrum_rank", &ed_spectrum_rank, py::arg("e_cut"), py::arg("gt"),
        py::arg("omega"), py::arg("window") = 16, py::call_guard<py::gil_scoped_release>());
  m.def("ed_spectrum_sector", &ed_spectrum_sector, py::arg("e_cut"), py::arg("gt"),
        py::arg("omega"), py::arg("window") = 16, py::call_guard<py::gil_scoped_release>());
  m.def("ed_spectrum_boson3", &ed_spectrum_boson3, py::arg("e_cut"), py::arg("gt"),
        py::arg("omega"), py::arg("window") = 16, py::call_guard<py::gil_scoped_release>());
  m.def("provider_ed3", &provider_ed3, py::arg("mode"), py::arg("e_cut"),
        py::arg("window") = 16,
        "three-body provider over the ground-shift axis; e_cut = 0 adapts (boson only)");

  // ---- work maximization -----------------------------------------------------

  py::class_<EmwSpec>(m, "EmwSpec")
      .def(py::init<>())
      .def_readwrite("provider", &EmwSpec::provider)
      .def_readwrite("gt_of_eps", &EmwSpec::gt_of_eps)
      .def_readwrite("beta_c", &EmwSpec::beta_c)
      .def_readwrite("ratio", &EmwSpec::ratio)
      .def_readwrite("kappa_lo", &EmwSpec::kappa_lo)
      .def_readwrite("kappa_hi", &EmwSpec::kappa_hi)
      .def_readwrite("eps_hi", &EmwSpec::eps_hi)
      .def_readwrite("starts", &EmwSpec::starts)
      .def_readwrite("maxfev", &EmwSpec::maxfev)
      .def_readwrite("seed", &EmwSpec::seed);

  py::class_<EmwStart>(m, "EmwStart")
      .def_readonly("x0", &EmwStart::x0)
      .def_readonly("w", &EmwStart::w);

  py::class_<EmwPoint>(m, "EmwPoint")
      .def_readonly("ratio", &EmwPoint::ratio)
      .def_readonly("beta_h", &EmwPoint::beta_h)
      .def_readonly("kappa", &EmwPoint::kappa)
      .def_readonly("eps_i", &EmwPoint::eps_i)
      .def_readonly("eps_f", &EmwPoint::eps_f)
      .def_readonly("gt_i", &EmwPoint::gt_i)
      .def_readonly("gt_f", &EmwPoint::gt_f)
      .def_readonly("w", &EmwPoint::w)
      .def_readonly("eta", &EmwPoint::eta)
      .def_readonly("eta_otto", &EmwPoint::eta_otto)
      .def_readonly("eta_ca", &EmwPoint::eta_ca)
      .def_readonly("eta_carnot", &EmwPoint::eta_carnot)
      .def_readonly("quality", &EmwPoint::quality)
      .def_readonly("evals", &EmwPoint::evals)
      .def_readonly("record", &EmwPoint::record)
      .def("__repr__", [](const EmwPoint& p) {
        return "EmwPoint(ratio=" + std::to_string(p.ratio) + ", eta=" + std::to_string(p.eta) +
               ", w=" + std::to_string(p.w) + ", quality=" + (p.quality ? "True" : "False") + ")";
      });

  m.def(
      "maximize_work",
      [](const EmwSpec& es, std::optional<std::vector<double>> warm) {
        py::gil_scoped_release drop;
        return maximize_work(es, warm ? &*warm : nullptr);
      },
      py::arg("spec"), py::arg("warm") = py::none(),
      "multistart work maximum over (kappa, eps_i, eps_f) at one bath ratio");
  m.def("emw_curve", &emw_curve, py::arg("spec"), py::arg("ratios"),
        py::call_guard<py::gil_scoped_release>(),
        "efficiency at maximum work across bath ratios, warm-started in order");

  // ---- finite-time strokes ---------------------------------------------------

  py::class_<RampProtocol>(m, "RampProtocol")
      .def(py::init<>())
      .def_readwrite("f0", &RampProtocol::f0)
      .def_readwrite("f_tau", &RampProtocol::f_tau)
      .def_readwrite("tau", &RampProtocol::tau)
      .def_readwrite("kind", &RampProtocol::kind)
      .def_readwrite("host0", &RampProtocol::host0)
      .def_readwrite("host_tau", &RampProtocol::host_tau);
  m.def("make_ramp", &make_ramp, py::arg("f0"), py::arg("f_tau"), py::arg("tau"));
  m.def("make_slave_ramp", &make_slave_ramp, py::arg("f0"), py::arg("host0"),
        py::arg("host_tau"), py::arg("tau"));
  m.def("ramp_value", &ramp_value, py::arg("protocol"), py::arg("t"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("half_width", &GridSpec::half_width)
      .def_readwrite("points", &GridSpec::points)
      .def_readwrite("dt", &GridSpec::dt);

  py::class_<GridLevels>(m, "GridLevels")
      .def_readonly("e", &GridLevels::e)
      .def_readonly("e_rich", &GridLevels::e_rich);
  m.def("grid_levels", &grid_levels, py::arg("grid"), py::arg("omega"), py::arg("coef"),
        py::arg("k"), py::call_guard<py::gil_scoped_release>(),
        "lowest k levels of the boxed trap + delta Hamiltonian, with doubled-grid values");

  py::class_<ThermalSet>(m, "ThermalSet")
      .def_readonly("p", &ThermalSet::p)
      .def_readonly("energy", &ThermalSet::energy);
  m.def("grid_thermal", &grid_thermal, py::arg("grid"), py::arg("omega"), py::arg("coef"),
        py::arg("beta"), py::arg("floor") = 1e-6, py::call_guard<py::gil_scoped_release>());

  py::class_<StrokeResult>(m, "StrokeResult")
      .def_readonly("e_end", &StrokeResult::e_end)
      .def_readonly("e_end_proj", &StrokeResult::e_end_proj)
      .def_readonly("norm_drift", &StrokeResult::norm_drift)
      .def_readonly("leakage", &StrokeResult::leakage)
      .def_readonly("modes", &StrokeResult::modes)
      .def_readonly("p_end", &StrokeResult::p_end);
  m.def("propagate_stroke", &propagate_stroke, py::arg("grid"), py::arg("omega_ramp"),
        py::arg("coef_ramp"), py::arg("p0"), py::call_guard<py::gil_scoped_release>(),
        "Crank-Nicolson evolution of the lowest eigenstates under joint ramps");

  py::class_<FtConfig>(m, "FtConfig")
      .def(py::init<>())
      .def_readwrite("kappa", &FtConfig::kappa)
      .def_readwrite("beta_c", &FtConfig::beta_c)
      .def_readwrite("beta_h", &FtConfig::beta_h)
      .def_readwrite("gt_i", &FtConfig::gt_i)
      .def_readwrite("gt_f", &FtConfig::gt_f)
      .def_readwrite("grid", &FtConfig::grid)
      .def_readwrite("weight_floor", &FtConfig::weight_floor);

  py::class_<PropagationResult>(m, "PropagationResult")
      .def_readonly("tau", &PropagationResult::tau)
      .def_readonly("kind", &PropagationResult::kind)
      .def_readonly("e1", &PropagationResult::e1)
      .def_readonly("e2", &PropagationResult::e2)
      .def_readonly("e3", &PropagationResult::e3)
      .def_readonly("e4", &PropagationResult::e4)
      .def_readonly("w_tau", &PropagationResult::w_tau)
      .def_readonly("w_ad", &PropagationResult::w_ad)
      .def_readonly("w_irr", &PropagationResult::w_irr)
      .def_readonly("qh", &PropagationResult::qh)
      .def_readonly("qc", &PropagationResult::qc)
      .def_readonly("eta_tau", &PropagationResult::eta_tau)
      .def_readonly("eta_ad", &PropagationResult::eta_ad)
      .def_readonly("p_eff", &PropagationResult::p_eff)
      .def_readonly("norm_drift", &PropagationResult::norm_drift)
      .def_readonly("leakage", &PropagationResult::leakage)
      .def_readonly("modes_cold", &PropagationResult::modes_cold)
      .def_readonly("modes_hot", &PropagationResult::modes_hot)
      .def_readonly("engine", &PropagationResult::engine)
      .def("__repr__", [](const PropagationResult& r) {
        return "PropagationResult(tau=" + std::to_string(r.tau) + ", kind=" + to_string(r.kind) +
               ", w_tau=" + std::to_string(r.w_tau) + ", eta_tau=" + std::to_string(r.eta_tau) +
               ")";
      });

  m.def("finite_time_cycle", &finite_time_cycle, py::arg("config"), py::arg("tau"),
        py::arg("kind"), py::call_guard<py::gil_scoped_release>(),
        "one compression + hot bath + expansion pass at stroke time tau");
  m.def("tau_sweep", &tau_sweep, py::arg("config"), py::arg("taus"), py::arg("kinds"),
        py::call_guard<py::gil_scoped_release>(),
        "tau-major sweep sharing the protocol-independent CM strokes per tau");
}
