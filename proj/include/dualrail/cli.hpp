// cli.hpp -- command-line front end.
//
// Four experiments (budget, readout, gate, nojump) share one plumbing layer:
// parameters come from a named preset or a flat key-value JSON config,
// results go out as fixed-column CSV or JSON tables. Everything is
// deterministic, so identical invocations produce byte-identical files.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dualrail/budget.hpp"
#include "dualrail/joint_parity.hpp"
#include "dualrail/nojump.hpp"
#include "dualrail/parity_readout.hpp"
#include "dualrail/presets.hpp"
#include "dualrail/report.hpp"
#include "dualrail/zz_gate.hpp"

namespace dualrail::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A result that missed a requested tolerance. Distinct from bad input so the
// two nonzero exit codes stay honest.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- flat key-value configs ----

inline const std::map<std::string, double dynamics::DeviceParams::*>& device_keys() {
  using P = dynamics::DeviceParams;
  static const std::map<std::string, double P::*> keys = {
      {"kappa_a", &P::kappa_a},
      {"kappa_b", &P::kappa_b},
      {"n_th", &P::n_th},
      {"n_th_A", &P::n_th_A},
      {"gamma_phi_a", &P::gamma_phi_a},
      {"gamma_phi_b", &P::gamma_phi_b},
      {"Gamma_down_ge", &P::Gamma_down_ge},
      {"Gamma_up_ge", &P::Gamma_up_ge},
      {"Gamma_down_ef", &P::Gamma_down_ef},
      {"Gamma_up_ef", &P::Gamma_up_ef},
      {"Gamma_phi_ff", &P::Gamma_phi_ff},
      {"Gamma_phi_ee", &P::Gamma_phi_ee},
      {"chi_gf", &P::chi_gf},
      {"chi_ge", &P::chi_ge},
      {"g_bs", &P::g_bs},
      {"eta_ge", &P::eta_ge},
      {"eta_gf", &P::eta_gf},
      {"P_d", &P::P_d},
      {"P_o", &P::P_o},
      {"readout_idle", &P::readout_idle},
      {"T_gate", &P::T_gate},
  };
  return keys;
}

// Applies one flat JSON object onto a preset. The reserved key "preset" names
// the parent and is handled by the caller; every other key must be a known
// parameter with a numeric value.
inline void apply_flat_config(Preset& ps, const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "preset") continue;
    if (key == "p_leak" || key == "t_us") {
      if (!value.is_number()) throw ConfigError(where + ": key '" + key + "' must be a number");
      (key == "p_leak" ? ps.p_leak : ps.t_us) = value.get<double>();
      continue;
    }
    const auto it = device_keys().find(key);
    if (it == device_keys().end()) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!value.is_number()) throw ConfigError(where + ": key '" + key + "' must be a number");
    ps.params.*(it->second) = value.get<double>();
  }
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// Preset lookup. DUALRAIL_PRESET_DIR, when set, is searched first for
// <name>.json files; these may chain to a parent via the "preset" key.
// Builtins (table1, table2, fig2, fig5) are the fallback.
inline Preset resolve_preset(const std::string& name, int depth = 0) {
  if (depth > 8) throw ConfigError("preset inheritance deeper than 8 levels at '" + name + "'");
  if (const char* dir = std::getenv("DUALRAIL_PRESET_DIR"); dir && *dir) {
    const std::string path = std::string(dir) + "/" + name + ".json";
    if (std::ifstream probe(path); probe) {
      const nlohmann::json j = load_json_file(path);
      Preset ps;
      if (j.is_object() && j.contains("preset")) {
        if (!j.at("preset").is_string())
          throw ConfigError(path + ": key 'preset' must name a parent preset");
        ps = resolve_preset(j.at("preset").get<std::string>(), depth + 1);
      }
      apply_flat_config(ps, j, path);
      ps.name = name;
      return ps;
    }
  }
  try {
    return builtin_preset(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// Combines the --preset and --config flags into one parameter set. A config
// file alone starts from library defaults (a full parameter set in file form);
// with neither flag the command cannot run.
inline Preset resolve_parameters(const std::string& preset_name, const std::string& config_path,
                                 const std::string& command) {
  Preset ps;
  bool have_base = false;
  if (!preset_name.empty()) {
    ps = resolve_preset(preset_name);
    have_base = true;
  }
  if (!config_path.empty()) {
    const nlohmann::json j = load_json_file(config_path);
    if (!have_base && j.is_object() && j.contains("preset")) {
      if (!j.at("preset").is_string())
        throw ConfigError(config_path + ": key 'preset' must name a parent preset");
      ps = resolve_preset(j.at("preset").get<std::string>());
    } else if (!have_base) {
      ps.name = "custom";
    }
    apply_flat_config(ps, j, config_path);
    have_base = true;
  }
  if (!have_base)
    throw ConfigError(command + ": missing required key 'preset' (pass --preset or --config)");
  try {
    ps.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return ps;
}

struct RunConfig {
  std::string experiment;
  Preset preset;
  std::string out_path;        // empty writes to stdout
  std::string format = "csv";
  unsigned seed = 12345;       // reserved; all enumeration is deterministic
};

inline void emit(const report::Table& t, const RunConfig& cfg) {
  const std::string text = report::serialize(t, cfg.format);
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + cfg.out_path + "'");
  out << text;
  if (!out.good()) throw ConfigError("failed writing '" + cfg.out_path + "'");
}

// ---- budget tables ----

inline report::Table budget_idle_table(const dynamics::DeviceParams& p, double t_us) {
  report::Table t;
  t.experiment = "budget_idle";
  t.columns = {"row",        "process",     "scaling",    "probability", "rounded",
               "noise_bias", "lifetime_us", "error_type", "detection"};
  const auto rows = budget::idle_budget(p, t_us);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    t.add_row({report::row_key(static_cast<int>(i)), r.process, r.scaling,
               report::format_value(r.probability),
               report::format_value(budget::round_pow10(r.probability), 0),
               report::format_value(r.noise_bias), report::format_value(r.effective_lifetime),
               budget::to_string(r.error_type), budget::to_string(r.detection)});
  }
  t.sort_rows();
  return t;
}

inline report::Table budget_gate_table(const dynamics::DeviceParams& p) {
  report::Table t;
  t.experiment = "budget_gate";
  t.columns = {"row",           "process",           "erasure_scaling",
               "erasure_probability", "erasure_rounded",   "pauli_scaling",
               "pauli_probability",   "pauli_rounded"};
  const auto rows = budget::gate_budget_rows(p);
  auto cell = [](const std::string& scaling, double prob, std::vector<std::string>& out) {
    if (scaling.empty()) {
      out.insert(out.end(), {"", "", ""});
    } else {
      out.push_back(scaling);
      out.push_back(report::format_value(prob));
      out.push_back(report::format_value(budget::round_pow10(prob), 0));
    }
  };
  for (size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> cells = {report::row_key(static_cast<int>(i)), rows[i].process};
    cell(rows[i].erasure_scaling, rows[i].erasure_probability, cells);
    cell(rows[i].pauli_scaling, rows[i].pauli_probability, cells);
    t.add_row(std::move(cells));
  }
  t.sort_rows();
  return t;
}

inline report::Table budget_hierarchy_table(const dynamics::DeviceParams& p, double t_us) {
  const auto rep = budget::hierarchy_report(p, t_us);
  report::Table t;
  t.experiment = "budget_hierarchy";
  t.columns = {"row", "tier", "probability", "threshold", "within_threshold"};
  int n = 0;
  auto add = [&](const std::string& tier, double prob, double threshold, int within) {
    t.add_row({report::row_key(n++), tier, report::format_value(prob),
               threshold >= 0.0 ? report::format_value(threshold) : "",
               within < 0 ? "" : (within ? "true" : "false")});
  };
  add("erasure", rep.erasure, rep.erasure_threshold, rep.erasure_within_threshold ? 1 : 0);
  add("pauli", rep.pauli, rep.pauli_threshold, rep.pauli_within_threshold ? 1 : 0);
  add("leakage", rep.leakage, -1.0, -1);
  add("residual_pauli_from_loss", rep.residual_pauli_from_loss, -1.0, -1);
  add("conversion_efficiency", rep.conversion_efficiency, -1.0, -1);
  t.sort_rows();
  return t;
}

// ---- readout table ----

inline report::Table readout_table(const std::string& strategy_name,
                                   const dynamics::DeviceParams& p, double p_leak,
                                   protocols::GateMode mode) {
  const auto strategy = protocols::make_strategy(strategy_name);
  dynamics::ChannelCache cache;
  const auto rep = protocols::logical_readout(strategy, p, p_leak, mode, cache);
  report::Table t;
  t.experiment = "readout";
  t.columns = {"row",     "strategy",      "kind",          "input", "declare_zero",
               "declare_one", "erasure", "misassignment", "added_erasure"};
  int n = 0;
  for (const auto& r : rep.rows)
    t.add_row({report::row_key(n++), rep.strategy, "input", r.input,
               report::format_value(r.declare_zero), report::format_value(r.declare_one),
               report::format_value(r.erasure), "", ""});
  t.add_row({report::row_key(n++), rep.strategy, "aggregate", "", "", "", "",
             report::format_value(rep.misassignment), report::format_value(rep.added_erasure)});
  t.sort_rows();
  return t;
}

// ---- gate table ----

namespace detail {

inline std::pair<int, int> parse_rail_input(const std::string& input, int max_digit,
                                            const std::string& gate) {
  if (input.size() != 2 || input[0] < '0' || input[0] > '0' + max_digit || input[1] < '0' ||
      input[1] > '0' + max_digit)
    throw ConfigError("gate '" + gate + "': bad --input '" + input +
                      "' (want two occupation digits or ++)");
  return {input[0] - '0', input[1] - '0'};
}

// Uniform superposition over the four interacting-rail basis states, or a
// single |n_a n_b> picked by a two-digit string. Transmon starts in g.
inline Ket zz_input_ket(const HilbertLayout& lay, const std::string& input,
                        const std::string& gate) {
  Vector v = Vector::Zero(lay.dim());
  if (input == "++") {
    for (int na : {0, 1})
      for (int nb : {0, 1}) v(lay.index({na, nb, 0})) = 0.5;
  } else {
    const auto [na, nb] = parse_rail_input(input, 1, gate);
    v(lay.index({na, nb, 0})) = 1.0;
  }
  return Ket(lay, v);
}

// Same for the five-mode checked layout; bit b means b photons in the r rail
// and 1-b in the s rail.
inline Ket checked_input_ket(const HilbertLayout& lay, const std::string& input) {
  Vector v = Vector::Zero(lay.dim());
  if (input == "++") {
    for (int b1 : {0, 1})
      for (int b2 : {0, 1}) v(lay.index({b1, b2, 0, 1 - b1, 1 - b2})) = 0.5;
  } else {
    const auto [b1, b2] = parse_rail_input(input, 1, "zz_checked");
    v(lay.index({b1, b2, 0, 1 - b1, 1 - b2})) = 1.0;
  }
  return Ket(lay, v);
}

// Applies a 4x4 diagonal target to the codespace amplitudes of a (3,3,q) ket.
inline Ket apply_code_diagonal(const Ket& psi, const Eigen::Matrix4cd& target) {
  Ket out = psi;
  int k = 0;
  for (int na : {0, 1})
    for (int nb : {0, 1}) {
      const int idx = psi.layout.index({na, nb, 0});
      out.vec(idx) = target(k, k) * psi.vec(idx);
      ++k;
    }
  return out;
}

inline const protocols::OutcomeBranch* find_branch(
    const std::vector<protocols::OutcomeBranch>& branches, const std::string& label) {
  for (const auto& b : branches)
    if (b.label == label) return &b;
  return nullptr;
}

}  // namespace detail

// Branch probabilities plus the success-branch fidelity against the ideal
// target state, one row per quantity.
inline report::Table gate_table(const std::string& gate, double theta, protocols::GateMode mode,
                                std::string input, const dynamics::DeviceParams& p) {
  if (!std::isfinite(theta)) throw ConfigError("gate: --theta must be finite");
  dynamics::DeviceParams params = p;
  params.set_jp_operating_point();
  dynamics::ChannelCache cache;

  std::vector<protocols::OutcomeBranch> branches;
  DensityMatrix target;
  bool have_target = false;
  Matrix g_correction;  // unitary applied to the g branch before comparing

  if (gate == "zz" || gate == "cz") {
    if (input.empty()) input = "++";
    const HilbertLayout lay({3, 3, 3});
    const Ket psi = detail::zz_input_ket(lay, input, gate);
    const double angle = (gate == "cz") ? protocols::compile_cz().zz_theta : theta;
    branches = protocols::zz_gate(DensityMatrix::pure(psi), angle, params, mode, cache);
    Eigen::Matrix4cd tgt = protocols::zz_target(angle);
    if (gate == "cz") {
      tgt = protocols::compile_cz().matrix();
      g_correction = frame_rotation(lay, {0, 1}, protocols::compile_cz().local_z).mat;
    }
    target = DensityMatrix::pure(detail::apply_code_diagonal(psi, tgt));
    have_target = true;
    if (gate == "cz") theta = protocols::compile_cz().zz_theta;
  } else if (gate == "zz_checked") {
    if (input.empty()) input = "++";
    const HilbertLayout lay = protocols::zz_checked_layout();
    const Ket psi = detail::checked_input_ket(lay, input);
    branches = protocols::zz_gate_with_check(DensityMatrix::pure(psi), theta, params, mode, cache);
    // swap byproduct flips both logical bits; odd-parity codewords gain the
    // ZZ phase
    Vector v = Vector::Zero(lay.dim());
    for (int b1 : {0, 1})
      for (int b2 : {0, 1}) {
        const Complex a = psi.vec(lay.index({b1, b2, 0, 1 - b1, 1 - b2}));
        if (a == Complex(0.0, 0.0)) continue;
        const Complex ph =
            ((b1 + b2) % 2 == 1) ? std::exp(Complex(0.0, theta)) : Complex(1.0, 0.0);
        v(lay.index({1 - b1, 1 - b2, 0, b1, b2})) = ph * a;
      }
    target = DensityMatrix::pure(Ket(lay, v));
    have_target = true;
  } else if (gate == "erasure_check") {
    if (input.empty()) input = "01";
    const HilbertLayout lay({3, 3, 3});
    const auto [na, nb] = detail::parse_rail_input(input, 2, gate);
    const Ket psi = basis_ket(lay, {na, nb, 0});
    branches = protocols::erasure_check(DensityMatrix::pure(psi), params, mode, cache);
    // odd joint parity should come back untouched, so the input doubles as
    // the success-branch reference
    target = DensityMatrix::pure(psi);
    have_target = true;
    theta = std::numeric_limits<double>::quiet_NaN();  // column left empty
  } else {
    throw ConfigError("gate: unknown gate '" + gate + "'");
  }

  report::Table t;
  t.experiment = "gate";
  t.columns = {"row", "gate", "mode", "theta", "input", "kind", "label", "value"};
  const std::string mode_s = (mode == protocols::GateMode::ideal) ? "ideal" : "physical";
  const std::string theta_s = std::isfinite(theta) ? report::format_value(theta) : "";
  int n = 0;
  auto add = [&](const std::string& kind, const std::string& label, double value) {
    t.add_row({report::row_key(n++), gate, mode_s, theta_s, input, kind, label,
               report::format_value(value)});
  };

  double flagged = 0.0;
  for (const auto& b : branches) {
    add("branch", b.label, b.probability);
    if (b.label != "g") flagged += b.probability;
  }
  if (have_target) {
    const auto* g = detail::find_branch(branches, "g");
    double fid = 0.0;
    if (g && g->probability > 1e-15) {
      DensityMatrix state = g->state;
      if (g_correction.size() > 0)
        state.mat = (g_correction * state.mat * g_correction.adjoint()).eval();
      fid = state_fidelity(state, target);
    }
    add("fidelity", "g_vs_target", fid);
  }
  add("flag_rate", "e_plus_f", flagged);
  t.sort_rows();
  return t;
}

// ---- nojump table ----

// Random idle scenarios comparing the closed-form conditioned state against
// the master equation restricted to the no-loss branch. Loss jumps leave the
// single-photon sector, so that branch is exactly the codespace block.
inline report::Table nojump_table(unsigned seed, int samples, double tol, double* worst_out) {
  if (samples < 1) throw ConfigError("nojump: --samples must be positive");
  if (!(tol > 0.0)) throw ConfigError("nojump: --tol must be positive");

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const HilbertLayout lay({3, 3});
  const Matrix a0 = embed(lay, 0, annihilation(3)).mat;
  const Matrix a1 = embed(lay, 1, annihilation(3)).mat;
  const Matrix n0 = embed(lay, 0, (creation(3) * annihilation(3)).eval()).mat;
  const Matrix n1 = embed(lay, 1, (creation(3) * annihilation(3)).eval()).mat;
  const Operator h(lay, Matrix::Zero(lay.dim(), lay.dim()));
  const auto [i0, i1] = logical::detail::code_indices(lay, 0, 1);

  report::Table t;
  t.experiment = "nojump";
  t.columns = {"row",     "sample",  "u_re",      "u_im", "v_re",     "v_im",
               "kappa_a", "kappa_b", "gamma_phi", "t_us", "quantity", "closed_form",
               "lindblad", "abs_diff"};

  double worst = 0.0;
  int n = 0;
  for (int s = 0; s < samples; ++s) {
    Complex u(gauss(rng), gauss(rng)), v(gauss(rng), gauss(rng));
    const double norm = std::sqrt(std::norm(u) + std::norm(v));
    u /= norm;
    v /= norm;
    const double kappa_a = 5.0e-4 + 2.5e-3 * unif(rng);
    const double kappa_b = 5.0e-4 + 2.5e-3 * unif(rng);
    const double gamma = 1.0e-4 * unif(rng);  // per-rail dephasing rate
    const double t_us = 0.5 + 1.5 * unif(rng);

    const auto closed = logical::analytic_rho(u, v, kappa_a, kappa_b, 2.0 * gamma, t_us);

    Vector psi = Vector::Zero(lay.dim());
    psi(i0) = u;
    psi(i1) = v;
    const std::vector<Matrix> cops = {std::sqrt(kappa_a) * a0, std::sqrt(kappa_b) * a1,
                                      std::sqrt(2.0 * gamma) * n0, std::sqrt(2.0 * gamma) * n1};
    const DensityMatrix evolved = dynamics::evolve_lindblad(
        DensityMatrix(lay, (psi * psi.adjoint()).eval()), h, cops, t_us);

    const double weight = std::real(evolved.mat(i0, i0) + evolved.mat(i1, i1));
    Eigen::Matrix2cd cond;
    cond << evolved.mat(i0, i0) / weight, evolved.mat(i0, i1) / weight,
        evolved.mat(i1, i0) / weight, evolved.mat(i1, i1) / weight;

    const auto pc = logical::pauli_expectations(closed.rho);
    const auto pl = logical::pauli_expectations(cond);
    const double entry_diff = (closed.rho - cond).cwiseAbs().maxCoeff();

    char sample_id[16];
    std::snprintf(sample_id, sizeof(sample_id), "%d", s);
    auto add = [&](const char* quantity, double cf, double me) {
      const double diff = std::abs(cf - me);
      worst = std::max(worst, diff);
      t.add_row({report::row_key(n++), sample_id, report::format_value(u.real()),
                 report::format_value(u.imag()), report::format_value(v.real()),
                 report::format_value(v.imag()), report::format_value(kappa_a),
                 report::format_value(kappa_b), report::format_value(gamma),
                 report::format_value(t_us), quantity, report::format_value(cf),
                 report::format_value(me), report::format_value(diff)});
    };
    add("pauli_x", pc.x, pl.x);
    add("pauli_y", pc.y, pl.y);
    add("pauli_z", pc.z, pl.z);
    add("survival", closed.survival, weight);
    add("max_entry", entry_diff, 0.0);
  }
  t.sort_rows();
  if (worst_out) *worst_out = worst;
  if (worst > tol)
    throw ToleranceError("nojump: closed form and master equation disagree by " +
                         report::format_value(worst) + " (tol " + report::format_value(tol) +
                         ")");
  return t;
}

// ---- driver ----

inline int run_cli(std::vector<std::string> args) {
  CLI::App app{"dual-rail cavity qubit error-budget toolkit"};
  app.require_subcommand(1);

  std::string preset_name, config_path, out_path, format = "csv";
  unsigned seed = 12345;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset_name,
                    "parameter preset: table1, table2, fig2, fig5, or a file in "
                    "DUALRAIL_PRESET_DIR");
    cmd->add_option("--config", config_path, "flat key-value JSON config (may name a preset)");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", seed, "reserved; enumeration is deterministic");
  };

  auto* cmd_budget = app.add_subcommand("budget", "closed-form error budget tables");
  add_common(cmd_budget);
  double t_us = -1.0;
  std::string kind = "auto";
  cmd_budget->add_option("--t-us", t_us, "idle window in microseconds");
  cmd_budget->add_option("--kind", kind, "idle, gate, or hierarchy (default by preset)")
      ->check(CLI::IsMember({"auto", "idle", "gate", "hierarchy"}));

  auto* cmd_readout = app.add_subcommand("readout", "multi-round logical readout enumeration");
  add_common(cmd_readout);
  std::string strategy;
  bool ideal = false;
  double p_leak = -1.0;
  cmd_readout->add_option("--strategy", strategy, "1R, 2R, 2R_strict, or 3R");
  cmd_readout->add_flag("--ideal", ideal, "noiseless rounds with perfect assignment");
  cmd_readout->add_option("--p-leak", p_leak, "prior weight of the leaked input");

  auto* cmd_gate = app.add_subcommand("gate", "gate branch probabilities and fidelity");
  add_common(cmd_gate);
  std::string gate, gate_mode = "ideal", input;
  double theta = M_PI / 2;
  cmd_gate->add_option("--gate", gate, "zz, zz_checked, erasure_check, or cz")
      ->check(CLI::IsMember({"zz", "zz_checked", "erasure_check", "cz"}));
  cmd_gate->add_option("--theta", theta, "ZZ angle in radians");
  cmd_gate->add_option("--mode", gate_mode, "ideal or physical")
      ->check(CLI::IsMember({"ideal", "physical"}));
  cmd_gate->add_option("--input", input, "occupation string (default ++, the uniform code state)");

  auto* cmd_nojump = app.add_subcommand("nojump", "closed form vs master equation comparison");
  add_common(cmd_nojump);
  int samples = 5;
  double tol = 1.0e-6;
  cmd_nojump->add_option("--samples", samples, "number of random idle scenarios");
  cmd_nojump->add_option("--tol", tol, "largest acceptable disagreement");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    RunConfig cfg;
    cfg.out_path = out_path;
    cfg.format = format;
    cfg.seed = seed;

    if (app.got_subcommand(cmd_nojump)) {
      // parameter-free: scenarios are drawn, not configured
      cfg.experiment = "nojump";
      double worst = 0.0;
      try {
        const report::Table t = nojump_table(cfg.seed, samples, tol, &worst);
        emit(t, cfg);
      } catch (const ToleranceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
      }
      return kExitOk;
    }

    cfg.experiment = app.got_subcommand(cmd_budget)    ? "budget"
                     : app.got_subcommand(cmd_readout) ? "readout"
                                                       : "gate";
    cfg.preset = resolve_parameters(preset_name, config_path, cfg.experiment);

    if (cfg.experiment == "budget") {
      if (kind == "auto")
        kind = cfg.preset.name == "table2" ? "gate"
               : cfg.preset.name == "fig5" ? "hierarchy"
                                           : "idle";
      const double window = t_us > 0.0 ? t_us : cfg.preset.t_us;
      if (kind == "idle")
        emit(budget_idle_table(cfg.preset.params, window), cfg);
      else if (kind == "gate")
        emit(budget_gate_table(cfg.preset.params), cfg);
      else
        emit(budget_hierarchy_table(cfg.preset.params, window), cfg);
    } else if (cfg.experiment == "readout") {
      if (strategy.empty())
        throw ConfigError("readout: missing required key 'strategy' (pass --strategy)");
      const double leak = p_leak >= 0.0 ? p_leak : cfg.preset.p_leak;
      const auto mode = ideal ? protocols::GateMode::ideal : protocols::GateMode::physical;
      emit(readout_table(strategy, cfg.preset.params, leak, mode), cfg);
    } else {
      if (gate.empty()) throw ConfigError("gate: missing required key 'gate' (pass --gate)");
      const auto mode =
          gate_mode == "ideal" ? protocols::GateMode::ideal : protocols::GateMode::physical;
      emit(gate_table(gate, theta, mode, input, cfg.preset.params), cfg);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace dualrail::cli
