#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rabsim/dynamics.hpp"
#include "rabsim/hamiltonian.hpp"
#include "rabsim/metrics.hpp"
#include "rabsim/result_table.hpp"
#include "rabsim/runners.hpp"
#include "rabsim/scenario.hpp"
#include "rabsim/selfcheck.hpp"
#include "rabsim/version.hpp"

#include <sstream>

namespace py = pybind11;
using namespace rabsim;

namespace {

py::array_t<Complex> states_array(const std::vector<Vec>& states) {
  if (states.empty())
    return py::array_t<Complex>(std::vector<py::ssize_t>{0, 0});
  const py::ssize_t n = static_cast<py::ssize_t>(states.size());
  const py::ssize_t dim = states.front().size();
  py::array_t<Complex> out({n, dim});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < dim; ++j) view(i, j) = states[i](j);
  return out;
}

py::array_t<Complex> density_array(const std::vector<Mat>& densities) {
  if (densities.empty())
    return py::array_t<Complex>(std::vector<py::ssize_t>{0, 0, 0});
  const py::ssize_t n = static_cast<py::ssize_t>(densities.size());
  const py::ssize_t dim = densities.front().rows();
  py::array_t<Complex> out({n, dim, dim});
  auto view = out.mutable_unchecked<3>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t r = 0; r < dim; ++r)
      for (py::ssize_t c = 0; c < dim; ++c) view(i, r, c) = densities[i](r, c);
  return out;
}

py::array_t<Complex> overlaps_array(const std::vector<Mat4>& overlaps) {
  const py::ssize_t n = static_cast<py::ssize_t>(overlaps.size());
  py::array_t<Complex> out({n, py::ssize_t(4), py::ssize_t(4)});
  auto view = out.mutable_unchecked<3>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t r = 0; r < 4; ++r)
      for (py::ssize_t c = 0; c < 4; ++c) view(i, r, c) = overlaps[i](r, c);
  return out;
}

py::dict table_dict(const ResultTable& t) {
  py::list columns;
  for (const auto& c : t.columns) columns.append(c.name + "[" + c.unit + "]");
  const py::ssize_t nrows = static_cast<py::ssize_t>(t.rows.size());
  const py::ssize_t ncols = static_cast<py::ssize_t>(t.columns.size());
  py::array_t<double> data({nrows, ncols});
  auto view = data.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < nrows; ++i)
    for (py::ssize_t j = 0; j < ncols; ++j) view(i, j) = t.rows[i][j];
  py::dict summary;
  for (const auto& [k, v] : t.summary) summary[py::str(k)] = v;
  py::dict out;
  out["columns"] = columns;
  out["data"] = data;
  out["summary"] = summary;
  out["provenance"] = t.provenance;
  out["csv"] = format_csv(t);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-atom Rydberg gate simulator (amplitude-modulated drive)";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<IntegratorError>(m, "IntegratorError");

  py::enum_<PulseShape>(m, "PulseShape")
      .value("ConstantAmplitude", PulseShape::ConstantAmplitude)
      .value("CosineEnvelope", PulseShape::CosineEnvelope);

  py::enum_<Frame>(m, "Frame")
      .value("Lab", Frame::Lab)
      .value("Rotated", Frame::Rotated)
      .value("Effective", Frame::Effective)
      .value("FinalEffective", Frame::FinalEffective);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("omega0_max", &SystemParams::omega0_max)
      .def_readwrite("mod_freq", &SystemParams::mod_freq)
      .def_readwrite("delta", &SystemParams::delta)
      .def_readwrite("c6", &SystemParams::c6)
      .def_readwrite("distance", &SystemParams::distance)
      .def_readwrite("vdw_override", &SystemParams::vdw_override)
      .def_readwrite("tau", &SystemParams::tau)
      .def_readwrite("pulse_shape", &SystemParams::pulse_shape)
      .def_readwrite("gate_duration", &SystemParams::gate_duration);

  m.def("default_params", &default_params);
  m.def("angular_from_mhz", &angular_from_mhz, py::arg("f_mhz"));
  m.def("validate", [](const SystemParams& p) {
    const ParamFlags f = validate(p);
    py::dict d;
    d["effective_model_ok"] = f.effective_model_ok;
    d["stark_model_ok"] = f.stark_model_ok;
    d["warnings"] = f.warnings;
    return d;
  });

  m.def("pulse_amplitude", &pulse_amplitude, py::arg("t"), py::arg("params"));
  m.def("drive_field", &drive_field, py::arg("t"), py::arg("params"));
  m.def("vdw_strength", &vdw_strength);
  m.def("antiblockade_vdw_target", &antiblockade_vdw_target);
  m.def("broken_vdw_target", &broken_vdw_target);
  m.def("rab_distance", &rab_distance);
  m.def("broken_distance", &broken_distance);
  m.def("effective_rabi", &effective_rabi, py::arg("t"), py::arg("params"));
  m.def("effective_detuning", &effective_detuning, py::arg("t"), py::arg("params"));
  m.def("rabi_period", &rabi_period);
  m.def("accumulated_stark_phase", &accumulated_stark_phase, py::arg("t"),
        py::arg("params"));
  m.def("gate_duration_for_phase", &gate_duration_for_phase, py::arg("phi"),
        py::arg("params"));

  py::class_<TimeOperator>(m, "TimeOperator")
      .def_property_readonly("dim", &TimeOperator::dim)
      .def_property_readonly("frame", &TimeOperator::frame)
      .def("at", &TimeOperator::at, py::arg("t"));

  m.def("full_hamiltonian", &full_hamiltonian);
  m.def("sector_hamiltonian", &sector_hamiltonian);
  m.def("effective_hamiltonian", &effective_hamiltonian);
  m.def("final_effective_hamiltonian", &final_effective_hamiltonian);
  m.def("single_atom_hamiltonian", &single_atom_hamiltonian);

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init<>())
      .def_readwrite("step", &IntegratorConfig::step)
      .def_readwrite("snapshot_count", &IntegratorConfig::snapshot_count);

  m.def("base_step", &base_step);
  m.def("default_pure_config", &default_pure_config, py::arg("params"),
        py::arg("total_time"));
  m.def("default_lindblad_config", &default_lindblad_config, py::arg("params"),
        py::arg("total_time"));

  py::class_<JumpOperators>(m, "JumpOperators")
      .def_static("decay_channels", &JumpOperators::decay_channels,
                  py::arg("gamma"))
      .def_readonly("gamma", &JumpOperators::gamma)
      .def_property_readonly("ops", [](const JumpOperators& j) {
        py::list out;
        for (const auto& l : j.ops) out.append(Mat(l));
        return out;
      });

  m.def(
      "propagate_pure",
      [](const TimeOperator& h, const Vec& psi0, const IntegratorConfig& cfg,
         double total_time) {
        const Trajectory traj = propagate_pure(h, psi0, cfg, total_time);
        py::dict d;
        d["times"] = traj.times;
        d["states"] = states_array(traj.states);
        d["max_norm_drift"] = traj.max_norm_drift;
        return d;
      },
      py::arg("hamiltonian"), py::arg("psi0"), py::arg("config"),
      py::arg("total_time"));

  m.def(
      "propagate_lindblad",
      [](const TimeOperator& h, const Mat& rho0, const JumpOperators& jumps,
         const IntegratorConfig& cfg, double total_time) {
        const Trajectory traj = propagate_lindblad(h, rho0, jumps, cfg, total_time);
        py::dict d;
        d["times"] = traj.times;
        d["densities"] = density_array(traj.densities);
        d["max_trace_drift"] = traj.max_trace_drift;
        d["min_eigenvalue"] = traj.min_eigenvalue;
        return d;
      },
      py::arg("hamiltonian"), py::arg("rho0"), py::arg("jumps"), py::arg("config"),
      py::arg("total_time"));

  m.def(
      "propagate_basis",
      [](const TimeOperator& h, const IntegratorConfig& cfg, double total_time) {
        const BasisEvolution ev = propagate_basis(h, cfg, total_time);
        py::dict d;
        d["times"] = ev.times;
        d["overlaps"] = overlaps_array(ev.overlaps);
        d["max_norm_drift"] = ev.max_norm_drift;
        return d;
      },
      py::arg("hamiltonian"), py::arg("config"), py::arg("total_time"));

  py::class_<GateTarget>(m, "GateTarget")
      .def_static("cz", &GateTarget::cz)
      .def_static("phase_gate", &GateTarget::phase_gate, py::arg("phi"))
      .def_readwrite("phases", &GateTarget::phases);

  m.def("product_state", [](double alpha1, double alpha2) {
    return Vec9(product_state({alpha1, alpha2}));
  });
  m.def("reference_state", []() { return Vec9(reference_state()); });
  m.def(
      "average_fidelity",
      [](const Mat4& overlaps, const GateTarget& t, int nodes) {
        return average_fidelity(overlaps, t, nodes);
      },
      py::arg("overlaps"), py::arg("target"), py::arg("nodes_per_axis") = 16);
  m.def("state_fidelity_pure",
        [](const Vec9& psi, const Vec9& psi0, const GateTarget& t) {
          return state_fidelity_pure(psi, psi0, t);
        });
  m.def("state_fidelity_mixed",
        [](const Mat& rho, const Vec9& psi0, const GateTarget& t) {
          return state_fidelity_mixed(rho, psi0, t);
        });
  m.def(
      "unwrap_phase",
      [](const std::vector<Complex>& amps, double min_abs) {
        const PhaseSeries ps = unwrap_phase(amps, min_abs);
        py::dict d;
        d["phase"] = ps.phase;
        d["defined"] = ps.defined;
        return d;
      },
      py::arg("amplitudes"), py::arg("min_abs") = 1e-3);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("output_path", &Scenario::output_path)
      .def_readonly("sweep_values", &Scenario::sweep_values)
      .def_readonly("params", &Scenario::params)
      .def_property_readonly("hash", &scenario_hash);

  m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
  m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
  m.def("builtin_scenario_names", &builtin_scenario_names);
  m.def("builtin_scenario_json", &builtin_scenario_json, py::arg("name"));
  m.def(
      "run_scenario",
      [](const Scenario& s, int threads) {
        ResultTable table;
        {
          py::gil_scoped_release release;
          table = run_scenario(s, threads);
        }
        return table_dict(table);
      },
      py::arg("scenario"), py::arg("threads") = 0);

  m.def("self_check", []() {
    std::ostringstream out;
    const bool ok = run_self_check(out);
    return py::make_tuple(ok, out.str());
  });
}
