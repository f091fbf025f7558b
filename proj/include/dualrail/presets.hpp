// presets.hpp -- named device parameter bundles used by the CLI and tests.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrail/device_params.hpp"

namespace dualrail {

struct Preset {
  std::string name;
  dynamics::DeviceParams params;
  double p_leak = 0.01;  // prior weight of undetected leakage in readout reports
  double t_us = 1.0;     // default idle window for budget reports
};

// table1: idle-budget rates. Asymmetric cavity lifetimes, thermal population
// on every element, transmon numbers standing in for the ancilla.
inline Preset preset_table1() {
  Preset ps;
  ps.name = "table1";
  auto& p = ps.params;
  p.kappa_a = 1.0 / 1500.0;
  p.kappa_b = 1.0 / 500.0;
  p.gamma_phi_a = 1.0 / 20000.0;
  p.gamma_phi_b = 1.0 / 20000.0;
  p.n_th = 0.01;
  p.n_th_A = 0.01;
  p.Gamma_down_ge = 1.0 / 100.0;
  return ps;
}

// table2: gate-budget rates. Heating dropped, all transmon coherences at
// 100 us, the two measurement confusion rates split.
inline Preset preset_table2() {
  Preset ps;
  ps.name = "table2";
  auto& p = ps.params;
  p.kappa_a = 1.0 / 500.0;
  p.kappa_b = 1.0 / 1000.0;
  p.gamma_phi_a = 1.0 / 20000.0;
  p.gamma_phi_b = 1.0 / 20000.0;
  p.n_th = 0.0;
  p.n_th_A = 0.0;
  p.Gamma_down_ge = 1.0 / 100.0;
  p.Gamma_down_ef = 1.0 / 100.0;
  p.Gamma_up_ge = 0.0;
  p.Gamma_up_ef = 0.0;
  p.Gamma_phi_ff = 1.0 / 100.0;
  p.eta_ge = 1.0e-2;
  p.eta_gf = 1.0e-4;
  p.T_gate = 1.0;
  return ps;
}

// fig2: readout-comparison rates. Symmetric cavities, no cavity dephasing,
// transmon g-e numbers and the classical readout error pair.
inline Preset preset_fig2() {
  Preset ps;
  ps.name = "fig2";
  ps.p_leak = 0.01;
  auto& p = ps.params;
  p.kappa_a = 1.0e-3;
  p.kappa_b = 1.0e-3;
  p.n_th = 0.01;
  p.gamma_phi_a = 0.0;
  p.gamma_phi_b = 0.0;
  p.Gamma_down_ge = 1.0e-2;
  p.Gamma_up_ge = 1.0e-4;
  p.Gamma_phi_ee = 1.0e-2;
  p.chi_ge = -4.0 * M_PI;  // chi/2pi = -2 MHz
  p.P_d = 1.0e-2;
  p.P_o = 1.0e-4;
  p.readout_idle = 1.0;
  return ps;
}

// fig5: the gate-budget rates viewed through the hierarchy aggregation.
inline Preset preset_fig5() {
  Preset ps = preset_table2();
  ps.name = "fig5";
  return ps;
}

inline Preset builtin_preset(const std::string& name) {
  if (name == "table1") return preset_table1();
  if (name == "table2") return preset_table2();
  if (name == "fig2") return preset_fig2();
  if (name == "fig5") return preset_fig5();
  throw std::invalid_argument("unknown preset: " + name);
}

inline std::vector<std::string> builtin_preset_names() {
  return {"table1", "table2", "fig2", "fig5"};
}

}  // namespace dualrail
