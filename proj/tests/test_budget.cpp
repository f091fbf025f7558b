// test_budget.cpp -- closed-form error budgets: frozen order-of-magnitude
// columns, bias and lifetime conventions, and a master-equation cross-check
// of the photon-loss row.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dualrail/budget.hpp"
#include "dualrail/collapse.hpp"
#include "dualrail/evolve.hpp"
#include "dualrail/logical.hpp"
#include "dualrail/presets.hpp"

using namespace dualrail;
using namespace dualrail::budget;

TEST_CASE("round_pow10", "[budget]") {
  CHECK(round_pow10(1.33e-3) == Catch::Approx(1e-3));
  CHECK(round_pow10(5.3e-10) == Catch::Approx(1e-9));
  CHECK(round_pow10(7.5e2) == Catch::Approx(1e3));
  CHECK(round_pow10(0.0) == 0.0);
}

TEST_CASE("presets validate and carry their headline rates", "[budget]") {
  for (const auto& name : builtin_preset_names()) {
    const Preset ps = builtin_preset(name);
    CHECK(ps.name == name);
    CHECK_NOTHROW(ps.params.validate());
  }
  CHECK(builtin_preset("table1").params.kappa_b == Catch::Approx(2.0e-3));
  CHECK(builtin_preset("fig2").params.chi_ge == Catch::Approx(-4.0 * M_PI));
  CHECK(builtin_preset("fig2").params.gamma_phi_a == 0.0);
  CHECK_THROWS_AS(builtin_preset("table9"), std::invalid_argument);
}

TEST_CASE("idle budget reproduces the frozen columns", "[budget]") {
  const Preset ps = builtin_preset("table1");
  const auto rows = idle_budget(ps.params, 1.0);
  REQUIRE(rows.size() == 7);

  const double expected_pow10[] = {1e-3, 1e-5, 1e-4, 1e-4, 1e-6, 1e-8, 1e-9};
  const double expected_bias[] = {1.0, 1e2, 1e1, 1e1, 1e3, 1e5, 1e6};
  for (size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].process);
    CHECK(round_pow10(rows[i].probability) == Catch::Approx(expected_pow10[i]));
    CHECK(round_pow10(rows[i].noise_bias) == Catch::Approx(expected_bias[i]));
  }

  // exact values behind the leading rows
  CHECK(rows[0].probability == Catch::Approx(4.0 / 3000.0).epsilon(1e-12));  // kbar*t
  CHECK(rows[0].error_type == ErrorType::erasure);
  CHECK(rows[0].detection == Detection::jp);
  CHECK(rows[2].probability == Catch::Approx(1.0e-4).epsilon(1e-12));
  CHECK(rows[6].error_type == ErrorType::leakage);
  CHECK(rows[6].detection == Detection::jsp);

  // lifetime conventions: t/P first order, t/sqrt(P) quadratic
  for (size_t i = 0; i < 4; ++i)
    CHECK(rows[i].effective_lifetime == Catch::Approx(1.0 / rows[i].probability));
  for (size_t i = 4; i < 7; ++i)
    CHECK(rows[i].effective_lifetime == Catch::Approx(1.0 / std::sqrt(rows[i].probability)));
}

TEST_CASE("idle budget limiting cases", "[budget]") {
  Preset ps = builtin_preset("table1");

  SECTION("symmetric decay rates kill the no-jump row exactly") {
    ps.params.kappa_a = ps.params.kappa_b = 1.0e-3;
    const auto rows = idle_budget(ps.params, 1.0);
    CHECK(rows[4].process == "no-jump backaction");
    CHECK(rows[4].probability == 0.0);
    CHECK(rows[4].noise_bias == 0.0);
    CHECK(rows[4].effective_lifetime == 0.0);
  }

  SECTION("probabilities grow monotonically with the window") {
    auto prev = idle_budget(ps.params, 0.5);
    for (double t : {1.0, 2.0, 4.0}) {
      auto cur = idle_budget(ps.params, t);
      for (size_t i = 0; i < cur.size(); ++i) CHECK(cur[i].probability >= prev[i].probability);
      prev = std::move(cur);
    }
  }

  SECTION("first-order rows grow with each rate") {
    const auto base = idle_budget(ps.params, 1.0);
    auto bump = [&](auto mutate) {
      Preset b = builtin_preset("table1");
      mutate(b.params);
      const auto rows = idle_budget(b.params, 1.0);
      for (size_t i = 0; i < 4; ++i) CHECK(rows[i].probability >= base[i].probability);
    };
    bump([](auto& p) { p.kappa_a *= 1.5; });
    bump([](auto& p) { p.kappa_b *= 1.5; });
    bump([](auto& p) { p.n_th *= 1.5; });
    bump([](auto& p) { p.gamma_phi_a *= 1.5; });
    bump([](auto& p) { p.Gamma_down_ge *= 1.5; });
  }

  SECTION("nonpositive window rejected") {
    CHECK_THROWS_AS(idle_budget(ps.params, 0.0), std::invalid_argument);
  }
}

TEST_CASE("gate budget reproduces the frozen columns", "[budget]") {
  const Preset ps = builtin_preset("table2");
  const auto entries = gate_budget(ps.params);
  REQUIRE(entries.size() == 12);

  struct Expect {
    const char* process;
    ErrorType type;
    double pow10;
  };
  const Expect expect[] = {
      {"single-photon loss", ErrorType::erasure, 1e-3},
      {"no-jump backaction", ErrorType::pauli, 1e-6},
      {"cavity dephasing", ErrorType::pauli, 1e-4},
      {"ancilla decay", ErrorType::erasure, 1e-2},
      {"ancilla decay", ErrorType::pauli, 1e-4},
      {"undetected ancilla decay", ErrorType::pauli, 1e-4},
      {"ancilla dephasing", ErrorType::erasure, 1e-2},
      {"ancilla dephasing", ErrorType::pauli, 1e-4},
      {"photon loss + ancilla dephasing", ErrorType::pauli, 1e-5},
      {"undetected ancilla dephasing", ErrorType::pauli, 1e-6},
      {"measurement infidelity", ErrorType::erasure, 1e-4},
      {"photon loss + meas. infid.", ErrorType::pauli, 1e-7},
  };
  for (size_t i = 0; i < entries.size(); ++i) {
    CAPTURE(i, entries[i].process);
    CHECK(entries[i].process == expect[i].process);
    CHECK(entries[i].error_type == expect[i].type);
    CHECK(round_pow10(entries[i].probability) == Catch::Approx(expect[i].pow10));
  }

  // grouped view folds the split entries back into ten table rows
  const auto rows = gate_budget_rows(ps.params);
  REQUIRE(rows.size() == 10);
  CHECK(rows[3].process == "ancilla decay");
  CHECK(rows[3].erasure_probability == Catch::Approx(1.0e-2).epsilon(1e-12));
  CHECK(rows[3].pauli_probability == Catch::Approx(1.0e-4).epsilon(1e-12));
  CHECK(rows[8].process == "measurement infidelity");
  CHECK(rows[8].erasure_probability == Catch::Approx(1.0e-4).epsilon(1e-12));
  CHECK(rows[8].pauli_scaling.empty());
}

TEST_CASE("gate budget limits", "[budget]") {
  Preset ps = builtin_preset("table2");

  SECTION("vanishing gate time leaves only the measurement floor") {
    ps.params.T_gate = 1.0e-12;
    for (const auto& e : gate_budget(ps.params)) {
      if (e.process == "measurement infidelity")
        CHECK(e.probability == Catch::Approx(1.0e-4).epsilon(1e-12));
      else
        CHECK(e.probability < 1.0e-10);
    }
  }

  SECTION("zero gate time rejected") {
    ps.params.T_gate = 0.0;
    CHECK_THROWS_AS(gate_budget(ps.params), std::invalid_argument);
  }
}

TEST_CASE("hierarchy report aggregates the tiers", "[budget]") {
  const Preset ps = builtin_preset("fig5");
  const auto report = hierarchy_report(ps.params, 1.0);

  // erasures at the percent level, Pauli a couple orders below
  CHECK(report.erasure > 1.0e-2);
  CHECK(report.erasure < 5.0e-2);
  CHECK(report.pauli > 1.0e-4);
  CHECK(report.pauli < 1.0e-3);
  CHECK(report.leakage == 0.0);  // heating switched off in this preset

  CHECK(report.residual_pauli_from_loss == Catch::Approx(0.01 * 1.5e-3).epsilon(1e-9));
  CHECK(report.erasure_threshold == 0.05);
  CHECK(report.pauli_threshold == 0.01);
  CHECK(report.erasure_within_threshold);
  CHECK(report.pauli_within_threshold);

  // perfect conversion removes the residual Pauli contribution
  const auto perfect = hierarchy_report(ps.params, 1.0, 1.0);
  CHECK(perfect.residual_pauli_from_loss == 0.0);
  CHECK(perfect.pauli < report.pauli);

  CHECK_THROWS_AS(hierarchy_report(ps.params, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("photon-loss row agrees with the master equation", "[budget]") {
  const Preset ps = builtin_preset("table1");
  const auto rows = idle_budget(ps.params, 1.0);
  const double budget_loss = rows[0].probability;

  // evolve the maximally mixed codeword under pure loss and measure the
  // weight that left the single-photon sector
  const HilbertLayout lay({3, 3});
  Matrix mixed = Matrix::Zero(lay.dim(), lay.dim());
  mixed(lay.index({0, 1}), lay.index({0, 1})) = 0.5;
  mixed(lay.index({1, 0}), lay.index({1, 0})) = 0.5;
  const std::vector<Matrix> cops = {
      std::sqrt(ps.params.kappa_a) * embed(lay, 0, annihilation(3)).mat,
      std::sqrt(ps.params.kappa_b) * embed(lay, 1, annihilation(3)).mat};
  const Operator h(lay, Matrix::Zero(lay.dim(), lay.dim()));
  const DensityMatrix out =
      dynamics::evolve_lindblad(DensityMatrix(lay, mixed), h, cops, 1.0);

  const double lost = logical::sector_populations(out).vacuum;
  CHECK(std::abs(lost - budget_loss) / budget_loss < 0.05);
}
