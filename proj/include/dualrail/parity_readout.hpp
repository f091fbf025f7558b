// parity_readout.hpp -- multi-round logical readout of a dual-rail qubit.
//
// The logical state is read out by Ramsey-mapping single-rail photon parity
// onto a two-level transmon and measuring it, one rail at a time. A round
// interrogates both rails; repeated rounds plus a voting strategy trade
// misassignment against declared erasures.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrail/collapse.hpp"
#include "dualrail/device_params.hpp"
#include "dualrail/evolve.hpp"
#include "dualrail/hamiltonians.hpp"
#include "dualrail/readout.hpp"

namespace dualrail::protocols {

// ---- parity map ----
//
// Ramsey sequence on the transmon g-e pair: pi/2 pulse, dispersive wait of
// pi/|chi_ge| during which each photon in the coupled rail advances the e
// phase by pi, then a pi/2 pulse about the opposite axis. Odd rail parity
// lands the transmon in e, even parity in g.

inline double parity_wait_time(const dynamics::DeviceParams& p) {
  if (p.chi_ge == 0.0) throw std::invalid_argument("parity_wait_time: chi_ge is zero");
  return M_PI / std::abs(p.chi_ge);
}

namespace detail {

inline void conjugate_in_place(DensityMatrix& rho, const Matrix& u) {
  rho.mat = (u * rho.mat * u.adjoint()).eval();
  rho.resymmetrize();
}

// Channel for the dispersive wait. The phase is always imprinted by the
// coupling Hamiltonian; physical mode adds the readout-window noise.
inline const Matrix& parity_wait_channel(const HilbertLayout& lay,
                                         const dynamics::DeviceParams& p, GateMode mode,
                                         dynamics::ChannelCache& cache) {
  const std::string key = mode == GateMode::ideal ? "parity_wait_ideal" : "parity_wait_physical";
  return cache.get(key, [&]() {
    const Operator h = dynamics::build_dispersive(lay, p.chi_ge, 1, 1, 2);
    const double t = parity_wait_time(p);
    if (mode == GateMode::ideal)
      return conjugation_superop(dynamics::propagator(h, t));
    return dynamics::lindblad_channel(h, dynamics::readout_collapse_ops(lay, p), t);
  });
}

// Cavity decay accumulated while the transmon readout chain integrates.
inline const Matrix* measurement_idle_channel(const HilbertLayout& lay,
                                              const dynamics::DeviceParams& p, GateMode mode,
                                              dynamics::ChannelCache& cache) {
  if (mode == GateMode::ideal || p.readout_idle <= 0.0) return nullptr;
  return &cache.get("parity_meas_idle", [&]() {
    return dynamics::lindblad_channel(Operator(lay, Matrix::Zero(lay.dim(), lay.dim())),
                                      dynamics::cavity_idle_ops(lay, p), p.readout_idle);
  });
}

}  // namespace detail

// Maps the parity of the rail at mode 1 onto the transmon at mode 2.
inline DensityMatrix parity_map(const DensityMatrix& rho, const dynamics::DeviceParams& p,
                                GateMode mode, dynamics::ChannelCache& cache) {
  const HilbertLayout& lay = rho.layout;
  if (lay.modes() != 3) throw std::invalid_argument("parity_map: expected rails + transmon");
  const int dq = lay.dim(2);
  const Matrix half_x = embed(lay, 2, subspace_rotation(dq, 0, 1, M_PI / 2, 0.0)).mat;
  const Matrix half_back = embed(lay, 2, subspace_rotation(dq, 0, 1, M_PI / 2, M_PI)).mat;

  DensityMatrix out = rho;
  detail::conjugate_in_place(out, half_x);
  out = apply_superop(out, detail::parity_wait_channel(lay, p, mode, cache));
  detail::conjugate_in_place(out, half_back);
  return out;
}

// ---- one readout round ----
//
// Interrogates rail B, then swaps the rails and interrogates rail A through
// the same coupled mode, then swaps back. Each transmon measurement is
// followed by a conditional reset pulse by default. Returns four branches
// whose two-character labels list the outcomes chronologically.
//
// Channel cache entries are keyed by name only, so a cache instance must not
// be shared across different device parameter sets.
inline std::vector<OutcomeBranch> parity_round(const DensityMatrix& rho,
                                               const dynamics::DeviceParams& p, GateMode mode,
                                               dynamics::ChannelCache& cache,
                                               ResetPolicy policy = ResetPolicy::conditional) {
  const HilbertLayout& lay = rho.layout;
  const Matrix swap_rails = swap_modes(lay, 0, 1).mat;
  const ReadoutModel model =
      mode == GateMode::ideal ? ReadoutModel{0.0, 0.0} : ReadoutModel::from(p);
  const Matrix* idle = detail::measurement_idle_channel(lay, p, mode, cache);

  auto interrogate = [&](const DensityMatrix& in) {
    DensityMatrix mapped = parity_map(in, p, mode, cache);
    auto branches = noisy_measure(mapped, model, 2, idle);
    apply_reset(branches, 2, policy);
    return branches;
  };

  std::vector<OutcomeBranch> out;
  for (auto& first : interrogate(rho)) {
    detail::conjugate_in_place(first.state, swap_rails);
    for (auto& second : interrogate(first.state)) {
      detail::conjugate_in_place(second.state, swap_rails);
      out.push_back({first.label + second.label, first.probability * second.probability,
                     std::move(second.state)});
    }
  }
  return out;
}

// ---- voting strategies ----

enum class Declared { zero, one, erasure };

// A strategy turns the chronological outcome string of `rounds` rounds into a
// logical declaration. Within one round the two characters are the rail B
// and rail A outcomes; a clean |0>_L gives "eg" and a clean |1>_L gives "ge".
struct Strategy {
  enum class Kind { single, adaptive_two, strict_two, majority_three };

  std::string name;
  int rounds = 1;
  Kind kind = Kind::single;

  Declared classify(const std::string& label) const {
    if (static_cast<int>(label.size()) != 2 * rounds)
      throw std::invalid_argument("Strategy::classify: label length does not match rounds");
    auto vote = [](char b, char a) {
      if (b == 'e' && a == 'g') return Declared::zero;
      if (b == 'g' && a == 'e') return Declared::one;
      return Declared::erasure;
    };
    switch (kind) {
      case Kind::single:
        return vote(label[0], label[1]);
      case Kind::adaptive_two: {
        // the first decisive round wins; agreeing-but-ambiguous rounds erase
        const Declared r1 = vote(label[0], label[1]);
        return r1 != Declared::erasure ? r1 : vote(label[2], label[3]);
      }
      case Kind::strict_two: {
        const Declared r1 = vote(label[0], label[1]);
        const Declared r2 = vote(label[2], label[3]);
        return (r1 == r2 && r1 != Declared::erasure) ? r1 : Declared::erasure;
      }
      case Kind::majority_three: {
        auto majority = [](char x, char y, char z) {
          const int e = (x == 'e') + (y == 'e') + (z == 'e');
          return e >= 2 ? 'e' : 'g';
        };
        return vote(majority(label[0], label[2], label[4]),
                    majority(label[1], label[3], label[5]));
      }
    }
    throw std::logic_error("Strategy::classify: unreachable");
  }
};

inline Strategy make_strategy(const std::string& name) {
  if (name == "1R") return {"1R", 1, Strategy::Kind::single};
  if (name == "2R") return {"2R", 2, Strategy::Kind::adaptive_two};
  if (name == "2R_strict") return {"2R_strict", 2, Strategy::Kind::strict_two};
  if (name == "3R") return {"3R", 3, Strategy::Kind::majority_three};
  throw std::invalid_argument("make_strategy: unknown strategy " + name);
}

inline std::vector<Strategy> all_strategies() {
  return {make_strategy("1R"), make_strategy("2R"), make_strategy("2R_strict"),
          make_strategy("3R")};
}

// ---- full logical readout ----

struct ReadoutRow {
  std::string input;  // "01", "10", or "00"
  double declare_zero = 0.0;
  double declare_one = 0.0;
  double erasure = 0.0;
};

struct ReadoutReport {
  std::string strategy;
  double p_leak = 0.0;  // prior weight of the undetected-leakage input |00>
  std::vector<ReadoutRow> rows;
  double misassignment = 0.0;   // wrong logical declaration, weighted by priors
  double added_erasure = 0.0;   // erasure declared on codespace inputs
};

inline HilbertLayout readout_layout() { return HilbertLayout({3, 3, 2}); }

// Exact outcome distribution of `strategy` for the three relevant inputs.
// The branch tree is enumerated fully; nothing is sampled.
inline ReadoutReport logical_readout(const Strategy& strategy, const dynamics::DeviceParams& p,
                                     double p_leak, GateMode mode, dynamics::ChannelCache& cache,
                                     ResetPolicy policy = ResetPolicy::conditional) {
  if (p_leak < 0.0 || p_leak > 1.0)
    throw std::invalid_argument("logical_readout: p_leak outside [0, 1]");
  const HilbertLayout lay = readout_layout();

  ReadoutReport report;
  report.strategy = strategy.name;
  report.p_leak = p_leak;

  for (const std::string& input : {"01", "10", "00"}) {
    const Ket ket = basis_ket(lay, {input[0] - '0', input[1] - '0', 0});
    std::vector<OutcomeBranch> tree = {{"", 1.0, DensityMatrix::pure(ket)}};
    for (int r = 0; r < strategy.rounds; ++r) {
      std::vector<OutcomeBranch> next;
      for (const auto& leaf : tree)
        for (auto& child : parity_round(leaf.state, p, mode, cache, policy))
          next.push_back(
              {leaf.label + child.label, leaf.probability * child.probability,
               std::move(child.state)});
      tree = std::move(next);
    }

    ReadoutRow row;
    row.input = input;
    for (const auto& leaf : tree) {
      switch (strategy.classify(leaf.label)) {
        case Declared::zero: row.declare_zero += leaf.probability; break;
        case Declared::one: row.declare_one += leaf.probability; break;
        case Declared::erasure: row.erasure += leaf.probability; break;
      }
    }
    report.rows.push_back(row);
  }

  const ReadoutRow& r01 = report.rows[0];
  const ReadoutRow& r10 = report.rows[1];
  const ReadoutRow& r00 = report.rows[2];
  const double w_code = 0.5 * (1.0 - p_leak);
  report.misassignment =
      w_code * (r01.declare_one + r10.declare_zero) + p_leak * (r00.declare_zero + r00.declare_one);
  report.added_erasure = w_code * (r01.erasure + r10.erasure);
  return report;
}

}  // namespace dualrail::protocols
