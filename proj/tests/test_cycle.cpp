#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ottone/cycle.hpp"

using namespace ottone;
using Catch::Approx;

namespace {

CycleSpec sudden_thermal(double w1, double w2, double beta1, double beta2) {
  auto spec = CycleSpec::adiabatic_thermal(w1, w2, beta1, beta2);
  spec.compression = FrequencyProtocol::sudden(w1, w2);
  spec.expansion = FrequencyProtocol::sudden(w2, w1);
  return spec;
}

}  // namespace

TEST_CASE("corner energies, adiabatic thermal reference cycle") {
  const auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
  const auto e = corner_energies(spec);
  CHECK(e.E_A == Approx(10.00833194477505).epsilon(1e-12));
  CHECK(e.E_B == Approx(20.01666388955010).epsilon(1e-12));
  CHECK(e.E_C == Approx(40.00833298613178).epsilon(1e-12));
  CHECK(e.E_D == Approx(20.00416649306589).epsilon(1e-12));
}

TEST_CASE("corner energies, sudden strokes multiply by Q* = 1.25") {
  const auto e = corner_energies(sudden_thermal(1.0, 2.0, 0.1, 0.025));
  CHECK(e.E_B == Approx(25.02082986193762).epsilon(1e-12));
  CHECK(e.E_D == Approx(25.00520811633236).epsilon(1e-12));
}

TEST_CASE("degenerate cycle has equal corner energies") {
  auto spec = CycleSpec::adiabatic_thermal(2.0, 2.0, 0.1, 0.1);
  const auto e = corner_energies(spec);
  CHECK(e.E_A == e.E_B);
  CHECK(e.E_B == e.E_C);
  CHECK(e.E_C == e.E_D);
}

TEST_CASE("stroke works and heats, reference cycles") {
  const auto adiabatic = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
  {
    const auto [w1, w3] = stroke_works(adiabatic);
    CHECK(w1 == Approx(10.00833194477505).epsilon(1e-12));
    CHECK(w3 == Approx(-20.00416649306589).epsilon(1e-12));
    const auto [q2, q4] = stroke_heats(adiabatic);
    CHECK(q2 == Approx(19.99166909658168).epsilon(1e-12));
    CHECK(q4 == Approx(-9.99583454829084).epsilon(1e-12));
  }
  {
    const auto [w1, w3] = stroke_works(sudden_thermal(1.0, 2.0, 0.1, 0.025));
    CHECK(w1 == Approx(15.01249791716257).epsilon(1e-12));
    CHECK(w3 == Approx(-15.00312486979942).epsilon(1e-12));
    const auto [q2, q4] = stroke_heats(sudden_thermal(1.0, 2.0, 0.1, 0.025));
    CHECK(q2 == Approx(14.98750312419415).epsilon(1e-12));
    CHECK(q4 == Approx(-14.99687617155731).epsilon(1e-12));
  }
  {
    const auto degenerate = CycleSpec::adiabatic_thermal(2.0, 2.0, 0.1, 0.1);
    const auto [w1, w3] = stroke_works(degenerate);
    CHECK(w1 == 0.0);
    CHECK(w3 == 0.0);
  }
}

TEST_CASE("efficiency of any adiabatic engine is 1 - w1/w2") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> uw(0.5, 2.0), ur(1.2, 4.0), ux(0.001, 0.01);
  int engines = 0;
  for (int i = 0; i < 300; ++i) {
    const double w1 = uw(gen), w2 = w1 * ur(gen);
    const double x2 = ux(gen);
    const double beta2 = x2 / w2, beta1 = std::uniform_real_distribution<double>(x2, 0.01)(gen) / w1;
    auto spec = CycleSpec::adiabatic_thermal(w1, w2, beta1, beta2);
    if (i % 3 == 1) spec.hot.deviation = CorrelatedPair{0.05 / beta2, PairMode::OneAtom};
    if (i % 3 == 2) spec.hot.deviation = CorrelatedPair{0.05 / beta2, PairMode::TwoAtom};
    const auto r = evaluate_cycle(spec);
    if (!r.is_engine) continue;
    ++engines;
    CHECK(r.efficiency == Approx(1.0 - w1 / w2).epsilon(1e-12));
  }
  CHECK(engines > 100);
}

TEST_CASE("finite-time efficiency with sudden strokes") {
  const auto r = evaluate_cycle(sudden_thermal(1.0, 2.0, 0.2, 0.02));
  CHECK(r.efficiency == Approx(0.29967992315221).epsilon(1e-10));
  CHECK(r.is_engine);
}

TEST_CASE("sudden losses can destroy engine operation") {
  const auto r = evaluate_cycle(sudden_thermal(1.0, 2.0, 0.1, 0.025));
  CHECK(r.W_total == Approx(-0.00937304736316).epsilon(1e-9));
  CHECK_FALSE(r.is_engine);
  CHECK(r.efficiency < 0.0);  // reported with its sign, not clamped
}

TEST_CASE("first-law closure") {
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> uw(0.5, 3.0), ub(0.01, 0.5), ur(1.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double w1 = uw(gen), w2 = w1 * ur(gen);
    auto spec = CycleSpec::adiabatic_thermal(w1, w2, ub(gen), ub(gen));
    if (i % 2 == 1) {
      spec.compression = FrequencyProtocol::sudden(w1, w2);
      spec.expansion = FrequencyProtocol::sudden(w2, w1);
    }
    CycleResult r;
    try {
      r = evaluate_cycle(spec);
    } catch (const DegenerateCycleError&) {
      continue;
    }
    const double maxE = std::max({r.E_A, r.E_B, r.E_C, r.E_D});
    CHECK(std::abs(r.W1 + r.W3 + r.Q2 + r.Q4) < 1e-12 * maxE);
  }
}

TEST_CASE("work and hot heat are linear and increasing in the hot deviation") {
  double prev_w = -1e300, prev_q = -1e300;
  for (double dn : {-0.2, -0.1, 0.0, 0.1, 0.2, 0.3}) {
    auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
    spec.hot.deviation = CustomPowerLaw{dn * 2.0, 1.0};  // delta_n(omega2) = dn
    const auto r = evaluate_cycle(spec);
    CHECK(r.W_total > prev_w);
    CHECK(r.Q2 > prev_q);
    prev_w = r.W_total;
    prev_q = r.Q2;
  }
}

TEST_CASE("degenerate cycle errors and power") {
  const auto degenerate = CycleSpec::adiabatic_thermal(2.0, 2.0, 0.1, 0.1);
  CHECK_THROWS_AS(evaluate_cycle(degenerate), DegenerateCycleError);
  CHECK(power(degenerate) == 0.0);

  auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
  spec.cycle_time = 10.0;
  CHECK(power(spec) == Approx(0.999583454829).epsilon(1e-10));
  spec.cycle_time = -1.0;
  CHECK_THROWS_AS(power(spec), std::domain_error);
}

TEST_CASE("mismatched protocol endpoints are rejected") {
  auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
  spec.compression = FrequencyProtocol::adiabatic(1.0, 3.0);
  CHECK_THROWS_AS(evaluate_cycle(spec), std::invalid_argument);
}
