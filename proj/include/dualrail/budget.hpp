// budget.hpp -- closed-form error budgets for idling and gate windows.
//
// Each budget row is a physical process with its leading-order probability
// formula, evaluated at the device rates. The rows carry a classification
// (which logical error the process causes, and which check detects it), the
// noise bias relative to single-photon loss, and an effective lifetime.
//
// Lifetime convention: first-order processes use t / P(t); processes whose
// probability is quadratic in time use t / sqrt(P(t)), which is the time at
// which the accumulated probability reaches one. Rows with zero probability
// report bias and lifetime as 0, meaning undefined.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrail/device_params.hpp"

namespace dualrail::budget {

using dynamics::DeviceParams;

enum class ErrorType { erasure, phase_flip, bit_flip, leakage, pauli };
enum class Detection { jp, m, jsp, none };

inline const char* to_string(ErrorType t) {
  switch (t) {
    case ErrorType::erasure: return "erasure";
    case ErrorType::phase_flip: return "phase_flip";
    case ErrorType::bit_flip: return "bit_flip";
    case ErrorType::leakage: return "leakage";
    case ErrorType::pauli: return "pauli";
  }
  return "?";
}

inline const char* to_string(Detection d) {
  switch (d) {
    case Detection::jp: return "JP";
    case Detection::m: return "M";
    case Detection::jsp: return "JSP";
    case Detection::none: return "none";
  }
  return "?";
}

struct BudgetEntry {
  std::string process;
  std::string scaling;  // formula identifier, matches what probability evaluates
  double probability = 0.0;
  double noise_bias = 0.0;          // P(photon loss) / P(process)
  double effective_lifetime = 0.0;  // us
  ErrorType error_type = ErrorType::erasure;
  Detection detection = Detection::none;
};

// Nearest power of ten, for comparing against order-of-magnitude columns.
inline double round_pow10(double p) {
  if (p <= 0.0) return 0.0;
  return std::pow(10.0, std::round(std::log10(p)));
}

namespace detail {

inline void finish_entry(BudgetEntry& e, double p_loss, int time_order, double t) {
  if (e.probability > 0.0) {
    e.noise_bias = p_loss / e.probability;
    e.effective_lifetime =
        time_order >= 2 ? t / std::sqrt(e.probability) : t / e.probability;
  }
}

}  // namespace detail

// Error budget of an idling dual-rail qubit over a window of t microseconds.
inline std::vector<BudgetEntry> idle_budget(const DeviceParams& p, double t) {
  if (t <= 0.0) throw std::invalid_argument("idle_budget: need t > 0");
  const double kbar = 0.5 * (p.kappa_a + p.kappa_b);
  const double dkappa = p.kappa_b - p.kappa_a;
  const double gphi = p.gamma_phi_a + p.gamma_phi_b;
  const double p_loss = kbar * t;

  std::vector<BudgetEntry> rows;
  rows.push_back({"cavity photon loss", "kbar*t", p_loss, 0, 0, ErrorType::erasure,
                  Detection::jp});
  rows.push_back({"cavity heating", "nth*kbar*t", p.n_th * kbar * t, 0, 0, ErrorType::erasure,
                  Detection::jp});
  rows.push_back({"cavity dephasing", "gphi*t", gphi * t, 0, 0, ErrorType::phase_flip,
                  Detection::none});
  rows.push_back({"ancilla heating", "nthA*Gamma1A*t", p.n_th_A * p.Gamma_down_ge * t, 0, 0,
                  ErrorType::phase_flip, Detection::m});
  // The second-order backaction of undetected no-jump evolution. Evaluated as
  // (dkappa*t)^2, which is what the surrounding bias and lifetime columns and
  // the order-of-magnitude checks are consistent with.
  rows.push_back({"no-jump backaction", "(dkappa*t)^2", dkappa * dkappa * t * t, 0, 0,
                  ErrorType::phase_flip, Detection::none});
  rows.push_back({"cavity photon loss + heating", "nth*(kbar*t)^2",
                  p.n_th * kbar * t * kbar * t, 0, 0, ErrorType::bit_flip, Detection::none});
  rows.push_back({"cavity heating x2", "3*(nth*kbar*t)^2",
                  3.0 * p.n_th * kbar * t * p.n_th * kbar * t, 0, 0, ErrorType::leakage,
                  Detection::jsp});

  const int orders[] = {1, 1, 1, 1, 2, 2, 2};
  for (size_t i = 0; i < rows.size(); ++i) detail::finish_entry(rows[i], p_loss, orders[i], t);
  return rows;
}

// Error budget of one transmon-mediated gate window, split into the branch
// that becomes a flagged erasure and the branch that slips through as a
// Pauli error. Rows sharing a process name describe the same physical event.
inline std::vector<BudgetEntry> gate_budget(const DeviceParams& p) {
  if (p.T_gate <= 0.0) throw std::invalid_argument("gate_budget: need T_gate > 0");
  const double T = p.T_gate;
  const double kbar = 0.5 * (p.kappa_a + p.kappa_b);
  const double dkappa = p.kappa_b - p.kappa_a;
  const double gphi = p.gamma_phi_a + p.gamma_phi_b;
  const double g1ef = p.Gamma_down_ef;
  const double g1ge = p.Gamma_down_ge;
  const double gphi_gf = p.Gamma_phi_ff;
  const double p_loss = kbar * T;

  struct Cell {
    const char* process;
    const char* scaling;
    double probability;
    ErrorType type;
    Detection detection;
    int time_order;
  };
  const Cell cells[] = {
      {"single-photon loss", "kbar*T", kbar * T, ErrorType::erasure, Detection::jp, 1},
      {"no-jump backaction", "(dkappa*T)^2", dkappa * dkappa * T * T, ErrorType::pauli,
       Detection::none, 2},
      {"cavity dephasing", "gphi*T", gphi * T, ErrorType::pauli, Detection::none, 1},
      {"ancilla decay", "G1ef*T", g1ef * T, ErrorType::erasure, Detection::m, 1},
      {"ancilla decay", "G1ef*G1ge*T^2", g1ef * g1ge * T * T, ErrorType::pauli, Detection::none,
       2},
      {"undetected ancilla decay", "eta_ge*G1ef*T", p.eta_ge * g1ef * T, ErrorType::pauli,
       Detection::none, 1},
      {"ancilla dephasing", "Gphigf*T", gphi_gf * T, ErrorType::erasure, Detection::m, 1},
      {"ancilla dephasing", "(Gphigf*T)^2", gphi_gf * T * gphi_gf * T, ErrorType::pauli,
       Detection::none, 2},
      {"photon loss + ancilla dephasing", "kbar*Gphigf*T^2", kbar * gphi_gf * T * T,
       ErrorType::pauli, Detection::none, 2},
      {"undetected ancilla dephasing", "eta_gf*Gphigf*T", p.eta_gf * gphi_gf * T,
       ErrorType::pauli, Detection::none, 1},
      {"measurement infidelity", "eta_gf", p.eta_gf, ErrorType::erasure, Detection::m, 1},
      {"photon loss + meas. infid.", "eta_gf*kbar*T", p.eta_gf * kbar * T, ErrorType::pauli,
       Detection::none, 1},
  };

  std::vector<BudgetEntry> rows;
  for (const Cell& c : cells) {
    BudgetEntry e{c.process, c.scaling, c.probability, 0, 0, c.type, c.detection};
    detail::finish_entry(e, p_loss, c.time_order, T);
    rows.push_back(std::move(e));
  }
  return rows;
}

// Display-shaped view of the gate budget: one row per process with the
// erasure and Pauli contributions side by side.
struct GateBudgetRow {
  std::string process;
  std::string erasure_scaling;  // empty when the process has no such branch
  double erasure_probability = 0.0;
  std::string pauli_scaling;
  double pauli_probability = 0.0;
};

inline std::vector<GateBudgetRow> gate_budget_rows(const DeviceParams& p) {
  std::vector<GateBudgetRow> rows;
  for (const auto& e : gate_budget(p)) {
    if (rows.empty() || rows.back().process != e.process) rows.push_back({e.process, "", 0, "", 0});
    auto& row = rows.back();
    if (e.error_type == ErrorType::erasure) {
      row.erasure_scaling = e.scaling;
      row.erasure_probability = e.probability;
    } else {
      row.pauli_scaling = e.scaling;
      row.pauli_probability = e.probability;
    }
  }
  return rows;
}

// ---- aggregated hierarchy ----
//
// Groups the per-gate budget into the three tiers the encoding is built
// around: detectable erasures, residual Pauli errors, and undetectable
// leakage. Single-photon loss converts to erasure with finite efficiency;
// the missed fraction lands in the Pauli tier. The leakage tier comes from
// the double-heating process, the one entry the gate table has no row for.
struct HierarchyReport {
  double erasure = 0.0;
  double pauli = 0.0;
  double leakage = 0.0;
  double residual_pauli_from_loss = 0.0;  // included in the pauli tier
  double conversion_efficiency = 0.99;
  double erasure_threshold = 0.05;
  double pauli_threshold = 0.01;
  bool erasure_within_threshold = false;
  bool pauli_within_threshold = false;
};

inline HierarchyReport hierarchy_report(const DeviceParams& p, double t,
                                        double conversion_efficiency = 0.99) {
  if (conversion_efficiency < 0.0 || conversion_efficiency > 1.0)
    throw std::invalid_argument("hierarchy_report: conversion efficiency outside [0, 1]");
  HierarchyReport report;
  report.conversion_efficiency = conversion_efficiency;

  double p_loss = 0.0;
  for (const auto& e : gate_budget(p)) {
    if (e.process == "single-photon loss") p_loss = e.probability;
    if (e.error_type == ErrorType::erasure)
      report.erasure += e.probability;
    else
      report.pauli += e.probability;
  }
  report.residual_pauli_from_loss = (1.0 - conversion_efficiency) * p_loss;
  report.pauli += report.residual_pauli_from_loss;

  const double kbar = 0.5 * (p.kappa_a + p.kappa_b);
  report.leakage = 3.0 * p.n_th * kbar * t * p.n_th * kbar * t;

  report.erasure_within_threshold = report.erasure < report.erasure_threshold;
  report.pauli_within_threshold = report.pauli < report.pauli_threshold;
  return report;
}

}  // namespace dualrail::budget
