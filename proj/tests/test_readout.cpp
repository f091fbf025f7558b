// test_readout.cpp -- measurement branch channels, the parity Ramsey map, and
// multi-round logical readout against hand-computed outcome trees.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "dualrail/logical.hpp"
#include "dualrail/parity_readout.hpp"
#include "dualrail/readout.hpp"
#include "helpers.hpp"

using namespace dualrail;
using namespace dualrail::protocols;
using dynamics::ChannelCache;
using dynamics::DeviceParams;

namespace {

DensityMatrix transmon_state(const HilbertLayout& lay, int level) {
  return DensityMatrix::pure(basis_ket(lay, {0, 0, level}));
}

double transmon_population(const DensityMatrix& rho, int level) {
  const Matrix p = embed(rho.layout, 2, basis_op(rho.layout.dim(2), level, level)).mat;
  return std::real((p * rho.mat).trace());
}

const OutcomeBranch& branch(const std::vector<OutcomeBranch>& bs, const std::string& label) {
  for (const auto& b : bs)
    if (b.label == label) return b;
  throw std::runtime_error("missing branch " + label);
}

// Device with every rate switched off, so that only the classical readout
// imperfections P_d and P_o act. chi stays finite to keep the map defined.
DeviceParams quiet_device() {
  DeviceParams p;
  p.kappa_a = p.kappa_b = p.n_th = p.n_th_A = 0.0;
  p.gamma_phi_a = p.gamma_phi_b = 0.0;
  p.Gamma_down_ge = p.Gamma_up_ge = 0.0;
  p.Gamma_down_ef = p.Gamma_up_ef = 0.0;
  p.Gamma_phi_ff = p.Gamma_phi_ee = 0.0;
  return p;
}

}  // namespace

TEST_CASE("noisy measure splits pure transmon states correctly", "[readout]") {
  const HilbertLayout lay = readout_layout();
  const ReadoutModel model{0.01, 1.0e-4};

  SECTION("pure excited state") {
    auto bs = noisy_measure(transmon_state(lay, 1), model, 2);
    REQUIRE(bs.size() == 2);
    CHECK(branch(bs, "g").probability == Catch::Approx(0.0051).epsilon(1e-12));
    CHECK(branch(bs, "e").probability == Catch::Approx(1.0 - 0.0051).epsilon(1e-12));
    CHECK(total_probability(bs) == Catch::Approx(1.0).margin(1e-12));

    // inside the g-labeled branch: decayed part in g, misread part still in e
    const auto& g = branch(bs, "g");
    CHECK(transmon_population(g.state, 0) == Catch::Approx(0.005 / 0.0051).epsilon(1e-10));
    CHECK(transmon_population(g.state, 1) == Catch::Approx(1.0e-4 / 0.0051).epsilon(1e-10));
  }

  SECTION("pure ground state") {
    auto bs = noisy_measure(transmon_state(lay, 0), model, 2);
    CHECK(branch(bs, "e").probability == Catch::Approx(1.0e-4).epsilon(1e-12));
    // the misread branch is still physically in g, so a feedback pulse
    // conditioned on this label would corrupt it
    CHECK(transmon_population(branch(bs, "e").state, 0) == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("projective limit") {
    auto bs = noisy_measure(transmon_state(lay, 0), ReadoutModel{0.0, 0.0}, 2);
    CHECK(branch(bs, "g").probability == Catch::Approx(1.0).margin(1e-14));
    CHECK(branch(bs, "e").probability == Catch::Approx(0.0).margin(1e-14));
  }

  SECTION("invalid model rejected") {
    CHECK_THROWS_AS(noisy_measure(transmon_state(lay, 0), ReadoutModel{0.9, 0.2}, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("three outcome measure applies label confusion", "[readout]") {
  const HilbertLayout lay({3, 3, 3});
  Matrix m = Matrix::Zero(lay.dim(), lay.dim());
  m(lay.index({0, 0, 0}), lay.index({0, 0, 0})) = 0.5;
  m(lay.index({0, 0, 1}), lay.index({0, 0, 1})) = 0.3;
  m(lay.index({0, 0, 2}), lay.index({0, 0, 2})) = 0.2;
  const DensityMatrix rho(lay, m);

  const double ge = 0.01, gf = 1.0e-4;
  auto bs = three_outcome_measure(rho, ge, gf, 2);
  CHECK(branch(bs, "g").probability ==
        Catch::Approx(0.5 * (1 - ge - gf) + 0.3 * ge + 0.2 * gf).epsilon(1e-12));
  CHECK(branch(bs, "e").probability == Catch::Approx(0.01 * 0.5 + 0.99 * 0.3).epsilon(1e-12));
  CHECK(branch(bs, "f").probability ==
        Catch::Approx(gf * 0.5 + (1 - gf) * 0.2).epsilon(1e-12));
  CHECK(total_probability(bs) == Catch::Approx(1.0).margin(1e-12));

  // zero confusion reduces to the projective measurement
  auto clean = three_outcome_measure(rho, 0.0, 0.0, 2);
  CHECK(branch(clean, "e").probability == Catch::Approx(0.3).margin(1e-12));
}

TEST_CASE("reset policies act on the labeled branches", "[readout]") {
  const HilbertLayout lay = readout_layout();
  // branch labeled e holding a physical-g state, as after a misread
  std::vector<OutcomeBranch> bs = {{"e", 1.0, transmon_state(lay, 0)}};

  SECTION("conditional reset fires on the label, not the state") {
    apply_reset(bs, 2, ResetPolicy::conditional);
    CHECK(transmon_population(bs[0].state, 1) == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("unconditional reset pumps everything to g") {
    bs[0].state = transmon_state(lay, 1);
    apply_reset(bs, 2, ResetPolicy::unconditional);
    CHECK(transmon_population(bs[0].state, 0) == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("none leaves the branch alone") {
    apply_reset(bs, 2, ResetPolicy::none);
    CHECK(transmon_population(bs[0].state, 0) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("parity map sends odd photon number to e", "[readout]") {
  const HilbertLayout lay = readout_layout();
  const DeviceParams p;
  ChannelCache cache;

  auto mapped_e_population = [&](int n_b) {
    const DensityMatrix in = DensityMatrix::pure(basis_ket(lay, {0, n_b, 0}));
    return transmon_population(parity_map(in, p, GateMode::ideal, cache), 1);
  };
  CHECK(mapped_e_population(0) == Catch::Approx(0.0).margin(1e-10));
  CHECK(mapped_e_population(1) == Catch::Approx(1.0).margin(1e-10));
  CHECK(mapped_e_population(2) == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("ideal parity round reproduces the pinned outcome labels", "[readout]") {
  const HilbertLayout lay = readout_layout();
  const DeviceParams p;
  ChannelCache cache;

  auto run = [&](int n_a, int n_b) {
    const DensityMatrix in = DensityMatrix::pure(basis_ket(lay, {n_a, n_b, 0}));
    return parity_round(in, p, GateMode::ideal, cache);
  };

  // |0>_L has its photon in rail B, which is interrogated first
  auto b01 = run(0, 1);
  CHECK(branch(b01, "eg").probability == Catch::Approx(1.0).margin(1e-10));
  CHECK(state_fidelity(branch(b01, "eg").state,
                       DensityMatrix::pure(basis_ket(lay, {0, 1, 0}))) ==
        Catch::Approx(1.0).margin(1e-10));

  auto b10 = run(1, 0);
  CHECK(branch(b10, "ge").probability == Catch::Approx(1.0).margin(1e-10));

  auto b00 = run(0, 0);
  CHECK(branch(b00, "gg").probability == Catch::Approx(1.0).margin(1e-10));

  // a logical X eigenstate collapses into one rail or the other, evenly
  const Ket plus = logical::encode(lay, 1.0, 1.0);
  auto bplus = parity_round(DensityMatrix::pure(plus), p, GateMode::ideal, cache);
  CHECK(branch(bplus, "eg").probability == Catch::Approx(0.5).margin(1e-10));
  CHECK(branch(bplus, "ge").probability == Catch::Approx(0.5).margin(1e-10));
  CHECK(state_fidelity(branch(bplus, "eg").state,
                       DensityMatrix::pure(basis_ket(lay, {0, 1, 0}))) ==
        Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("noisy parity round matches the exact readout-error tree", "[readout]") {
  // With every Lindblad rate at zero the round is a closed walk over
  // transmon labels, so the four joint probabilities follow from P_d and
  // P_o alone. Input |01>: the first interrogation sees a pure e.
  const DeviceParams p = quiet_device();
  const double pd = p.P_d, po = p.P_o;
  ChannelCache cache;

  const HilbertLayout lay = readout_layout();
  const DensityMatrix in = DensityMatrix::pure(basis_ket(lay, {0, 1, 0}));
  auto bs = parity_round(in, p, GateMode::physical, cache);

  // first readout of a pure e: label g keeps {decayed g: pd/2, misread e: po},
  // label e keeps {true e: 1-po-pd, decayed g: pd/2}; the conditional reset
  // then swaps the transmon content of the e-labeled branch
  const double wg_g = 0.5 * pd, wg_e = po;
  const double we_g = 1.0 - po - pd, we_e = 0.5 * pd;
  // second readout sees even parity, so the map is the identity
  auto second_g = [&](double w_g, double w_e) { return w_g * (1.0 - po) + w_e * (0.5 * pd + po); };
  auto second_e = [&](double w_g, double w_e) {
    return w_g * po + w_e * (1.0 - po - 0.5 * pd);
  };

  CHECK(branch(bs, "gg").probability == Catch::Approx(second_g(wg_g, wg_e)).epsilon(1e-10));
  CHECK(branch(bs, "ge").probability == Catch::Approx(second_e(wg_g, wg_e)).epsilon(1e-10));
  CHECK(branch(bs, "eg").probability == Catch::Approx(second_g(we_g, we_e)).epsilon(1e-10));
  CHECK(branch(bs, "ee").probability == Catch::Approx(second_e(we_g, we_e)).epsilon(1e-10));
  CHECK(total_probability(bs) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("strategy tables", "[readout]") {
  const Strategy s1 = make_strategy("1R");
  const Strategy s2 = make_strategy("2R");
  const Strategy s2s = make_strategy("2R_strict");
  const Strategy s3 = make_strategy("3R");

  SECTION("single round") {
    CHECK(s1.classify("eg") == Declared::zero);
    CHECK(s1.classify("ge") == Declared::one);
    CHECK(s1.classify("gg") == Declared::erasure);
    CHECK(s1.classify("ee") == Declared::erasure);
  }

  SECTION("two rounds, first decisive round wins") {
    for (const char* l : {"egeg", "egge", "eggg", "egee"}) CHECK(s2.classify(l) == Declared::zero);
    for (const char* l : {"geeg", "gege", "gegg", "geee"}) CHECK(s2.classify(l) == Declared::one);
    CHECK(s2.classify("ggeg") == Declared::zero);
    CHECK(s2.classify("eeeg") == Declared::zero);
    CHECK(s2.classify("ggge") == Declared::one);
    CHECK(s2.classify("eege") == Declared::one);
    for (const char* l : {"gggg", "eeee", "ggee", "eegg"})
      CHECK(s2.classify(l) == Declared::erasure);
  }

  SECTION("strict two rounds requires agreement") {
    CHECK(s2s.classify("egeg") == Declared::zero);
    CHECK(s2s.classify("gege") == Declared::one);
    CHECK(s2s.classify("egge") == Declared::erasure);
    CHECK(s2s.classify("eggg") == Declared::erasure);
    CHECK(s2s.classify("ggeg") == Declared::erasure);
  }

  SECTION("three rounds vote per rail slot") {
    CHECK(s3.classify("egegeg") == Declared::zero);
    CHECK(s3.classify("egeggg") == Declared::zero);   // rail B votes e,e,g
    CHECK(s3.classify("gggeeg") == Declared::erasure);
    CHECK(s3.classify("gegege") == Declared::one);
    CHECK(s3.classify("geggge") == Declared::one);
  }

  SECTION("every strategy partitions its outcome strings") {
    for (const auto& s : all_strategies()) {
      int zero = 0, one = 0, erasure = 0;
      const int chars = 2 * s.rounds;
      for (int mask = 0; mask < (1 << chars); ++mask) {
        std::string label;
        for (int c = 0; c < chars; ++c) label += (mask >> c) & 1 ? 'e' : 'g';
        switch (s.classify(label)) {
          case Declared::zero: ++zero; break;
          case Declared::one: ++one; break;
          case Declared::erasure: ++erasure; break;
        }
      }
      CHECK(zero + one + erasure == (1 << chars));
      CHECK(zero == one);  // the rule is symmetric under swapping the rails
      if (s.rounds == 1) CHECK(zero == 1);
      if (s.kind == Strategy::Kind::adaptive_two) CHECK(zero == 6);
      if (s.kind == Strategy::Kind::strict_two) CHECK(zero == 1);
      if (s.kind == Strategy::Kind::majority_three) CHECK(zero == 16);
    }
    CHECK_THROWS_AS(s1.classify("egg"), std::invalid_argument);
    CHECK_THROWS_AS(make_strategy("4R"), std::invalid_argument);
  }
}

TEST_CASE("logical readout report", "[readout]") {
  DeviceParams p;
  ChannelCache cache;

  SECTION("ideal runs declare perfectly") {
    const auto report = logical_readout(make_strategy("1R"), p, 0.01, GateMode::ideal, cache);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].input == "01");
    CHECK(report.rows[0].declare_zero == Catch::Approx(1.0).margin(1e-9));
    CHECK(report.rows[1].declare_one == Catch::Approx(1.0).margin(1e-9));
    CHECK(report.rows[2].erasure == Catch::Approx(1.0).margin(1e-9));
    CHECK(report.misassignment == Catch::Approx(0.0).margin(1e-9));
    CHECK(report.added_erasure == Catch::Approx(0.0).margin(1e-9));
  }

  SECTION("physical rows are normalized and the aggregates follow them") {
    ChannelCache noisy_cache;
    const auto report =
        logical_readout(make_strategy("1R"), p, 0.01, GateMode::physical, noisy_cache);
    for (const auto& row : report.rows)
      CHECK(row.declare_zero + row.declare_one + row.erasure ==
            Catch::Approx(1.0).margin(1e-9));
    CHECK(report.misassignment > 0.0);
    CHECK(report.added_erasure > 0.0);
    const double by_hand = 0.5 * 0.99 *
                               (report.rows[0].declare_one + report.rows[1].declare_zero) +
                           0.01 * (report.rows[2].declare_zero + report.rows[2].declare_one);
    CHECK(report.misassignment == Catch::Approx(by_hand).epsilon(1e-12));
  }

  SECTION("longer measurement idles decay more codespace weight") {
    DeviceParams slow = p;
    slow.readout_idle = 3.0;
    ChannelCache fast_cache, slow_cache;
    const auto fast = logical_readout(make_strategy("1R"), p, 0.0, GateMode::physical, fast_cache);
    const auto lazy =
        logical_readout(make_strategy("1R"), slow, 0.0, GateMode::physical, slow_cache);
    CHECK(lazy.added_erasure > fast.added_erasure);
  }
}
