// device_params.hpp -- physical rates and model knobs for the cavity pair + transmon.
//
// Units: time in microseconds, rates in 1/us, angular frequencies in rad/us.
#pragma once

#include <cmath>
#include <stdexcept>

namespace dualrail::dynamics {

struct DeviceParams {
  // Cavity decay and thermal occupation.
  double kappa_a = 2.0e-3;   // 1/(0.5 ms)
  double kappa_b = 1.0e-3;   // 1/(1 ms)
  double n_th = 0.01;        // cavity thermal population
  double n_th_A = 0.01;      // transmon thermal population

  // Cavity pure dephasing.
  double gamma_phi_a = 5.0e-5;  // 1/(20 ms)
  double gamma_phi_b = 5.0e-5;

  // Transmon decay / heating / dephasing.
  double Gamma_down_ge = 1.0e-2;  // 1/(100 us)
  double Gamma_up_ge = 1.0e-4;
  double Gamma_down_ef = 1.0e-2;
  double Gamma_up_ef = 1.0e-4;
  double Gamma_phi_ff = 1.0e-2;   // g-f manifold dephasing
  double Gamma_phi_ee = 1.0e-2;   // g-e manifold dephasing (readout sims)

  // Couplings.
  double chi_gf = -4.0 * M_PI;             // dispersive shift of |f>, chi/2pi = -2 MHz
  double chi_ge = -4.0 * M_PI;             // dispersive shift of |e>, used by parity readout
  double g_bs = std::sqrt(3.0) / 2.0 * 4.0 * M_PI;  // beamsplitter rate at the JP operating point

  // Measurement model.
  double eta_ge = 1.0e-2;       // g/e assignment confusion
  double eta_gf = 1.0e-4;       // g/f assignment confusion
  double P_d = 1.0e-2;          // transmon decay during readout
  double P_o = 1.0e-4;          // readout overlap error
  double readout_idle = 1.0;    // cavity idle time per readout, us

  double T_gate = 1.0;          // budget-table gate duration, us

  // Joint-parity operating point derived from chi_gf.
  double jp_gate_time() const { return 2.0 * M_PI / std::abs(chi_gf); }
  double jp_delta() const { return -0.5 * chi_gf; }

  // Pin g_bs to the conditional-pi operating point for the current chi_gf.
  void set_jp_operating_point() { g_bs = std::sqrt(3.0) / 2.0 * std::abs(chi_gf); }

  void validate() const {
    auto nonneg = [](double v, const char* what) {
      if (!(v >= 0.0)) throw std::invalid_argument(std::string("DeviceParams: negative ") + what);
    };
    nonneg(kappa_a, "kappa_a");
    nonneg(kappa_b, "kappa_b");
    nonneg(gamma_phi_a, "gamma_phi_a");
    nonneg(gamma_phi_b, "gamma_phi_b");
    nonneg(Gamma_down_ge, "Gamma_down_ge");
    nonneg(Gamma_up_ge, "Gamma_up_ge");
    nonneg(Gamma_down_ef, "Gamma_down_ef");
    nonneg(Gamma_up_ef, "Gamma_up_ef");
    nonneg(Gamma_phi_ff, "Gamma_phi_ff");
    nonneg(Gamma_phi_ee, "Gamma_phi_ee");
    nonneg(g_bs, "g_bs");
    nonneg(readout_idle, "readout_idle");
    nonneg(T_gate, "T_gate");
    if (!(n_th >= 0.0 && n_th < 1.0)) throw std::invalid_argument("DeviceParams: n_th outside [0,1)");
    if (!(n_th_A >= 0.0 && n_th_A < 1.0)) throw std::invalid_argument("DeviceParams: n_th_A outside [0,1)");
    auto prob = [](double v, const char* what) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string("DeviceParams: ") + what + " outside [0,1]");
    };
    prob(eta_ge, "eta_ge");
    prob(eta_gf, "eta_gf");
    prob(P_d, "P_d");
    prob(P_o, "P_o");
    if (chi_gf == 0.0) throw std::invalid_argument("DeviceParams: chi_gf must be nonzero");
    if (chi_ge == 0.0) throw std::invalid_argument("DeviceParams: chi_ge must be nonzero");
  }
};

}  // namespace dualrail::dynamics
