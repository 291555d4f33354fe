#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ottone/fock_oracle.hpp"
#include "ottone/second_law.hpp"
#include "ottone/validate.hpp"

using namespace ottone;
using Catch::Approx;

TEST_CASE("mean-force coefficients vanish for the classical thermal state") {
  const Conventions conv;
  const double beta2 = 0.05, omega2 = 4.0;
  GaussianState c{{1.0 / (beta2 * conv.mass * omega2 * omega2), conv.mass / beta2, 0.0}, omega2};
  const auto mfc = mean_force_coefficients(beta2, omega2, c, conv);
  CHECK(mfc.a == Approx(0.0).margin(1e-14));
  CHECK(mfc.b == Approx(0.0).margin(1e-12));
}

TEST_CASE("mean-force coefficient a, reference value") {
  // <p^2>_C = m hbar w2 (n2 + dn) = 20.2
  GaussianState c{{20.2 / 16.0, 20.2, 0.0}, 4.0};
  const auto mfc = mean_force_coefficients(0.05, 4.0, c);
  CHECK(mfc.a == Approx(-0.00990099009901).epsilon(1e-10));
}

TEST_CASE("mean-force a scales as 1/beta2 at fixed quadratures") {
  GaussianState c{{1.2, 20.2, 0.0}, 4.0};
  const Conventions conv;
  const double a1 = mean_force_coefficients(0.05, 4.0, c, conv).a + 1.0 / conv.mass;
  const double a2 = mean_force_coefficients(0.10, 4.0, c, conv).a + 1.0 / conv.mass;
  CHECK(a1 == Approx(2.0 * a2).epsilon(1e-12));
}

TEST_CASE("deviation energies") {
  SECTION("thermal hot reservoir: all four zero") {
    const auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
    const auto d = deviation_energies(spec);
    CHECK(d.dH_A == 0.0);
    CHECK(d.dH_C == 0.0);
    REQUIRE(d.M_B.has_value());
    CHECK(*d.M_B == Approx(0.0).margin(1e-14));
    CHECK(*d.M_C == Approx(0.0).margin(1e-14));
  }
  SECTION("one-atom pair reference values") {
    auto spec = CycleSpec::adiabatic_thermal(1.0, 4.0, 0.1, 0.05);
    spec.hot.deviation = CorrelatedPair{2.0, PairMode::OneAtom};
    const auto d = deviation_energies(spec);
    CHECK(d.dH_C == Approx(0.05).epsilon(1e-12));
    REQUIRE(d.M_C.has_value());
    CHECK(*d.M_C == Approx(-0.05).epsilon(1e-9));
    // M_C = -dH_C identically at high temperature
    CHECK(*d.M_C == Approx(-d.dH_C).epsilon(1e-9));
  }
  SECTION("non-adiabatic strokes: mean-force readings unavailable") {
    auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
    spec.compression = FrequencyProtocol::sudden(1.0, 2.0);
    spec.expansion = FrequencyProtocol::sudden(2.0, 1.0);
    const auto d = deviation_energies(spec);
    CHECK_FALSE(d.M_B.has_value());
    CHECK_FALSE(d.M_C.has_value());
  }
}

TEST_CASE("gaussian relative entropy") {
  const auto th = [](double n) { return GaussianState::thermal_like(n, 1.0); };

  SECTION("identical states give zero") {
    CHECK(relative_entropy_gaussian(th(1.3), th(1.3)) == Approx(0.0).margin(1e-14));
  }
  SECTION("thermal n=1 vs n=2 matches the Fock oracle") {
    const double oracle = fock_oracle_relative_entropy({1.0, 1.0}, {2.0, 1.0}, 256);
    CHECK(oracle == Approx(0.117783036).epsilon(1e-7));  // frozen at build time
    CHECK(relative_entropy_gaussian(th(1.0), th(2.0)) == Approx(oracle).margin(1e-9));
  }
  SECTION("Klein positivity over random valid pairs") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> un(0.01, 8.0), uw(0.5, 2.0), us(0.0, 0.4);
    for (int i = 0; i < 1000; ++i) {
      GaussianState a = GaussianState::thermal_like(un(gen), uw(gen));
      GaussianState b = GaussianState::thermal_like(un(gen), uw(gen));
      // shear a to get an xp correlation while staying physical
      const double sh = us(gen);
      a.cov.xp = sh * std::sqrt(a.cov.xx * a.cov.pp);
      a.cov.xx /= (1.0 - sh * sh);
      CHECK(relative_entropy_gaussian(a, b) >= 0.0);
    }
  }
  SECTION("pure reference state yields the distinguished infinity") {
    const auto pure = GaussianState::thermal_like(0.0, 1.0);
    CHECK(std::isinf(relative_entropy_gaussian(th(1.0), pure)));
    CHECK(relative_entropy_gaussian(pure, pure) == 0.0);
  }
}

TEST_CASE("fock oracle rejects an insufficient cutoff") {
  CHECK_THROWS_AS(fock_oracle_relative_entropy({5.0, 1.0}, {1.0, 1.0}, 8), InsufficientCutoff);
  CHECK(fock_oracle_relative_entropy({1.0, 2.0}, {1.0, 2.0}, 256) == Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(fock_oracle_relative_entropy({1.0, 1.0}, {1.0, 2.0}, 256),
                  std::invalid_argument);
}

TEST_CASE("entropy production") {
  SECTION("reversible point vanishes") {
    // omega2/omega1 = 1 and equal reservoirs: both isochores connect identical states
    const auto spec = CycleSpec::adiabatic_thermal(2.0, 2.0, 0.05, 0.05);
    CHECK(entropy_production(spec) == Approx(0.0).margin(1e-12));
  }
  SECTION("adiabatic thermal cycle matches the heat-based expression") {
    const auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
    const double sigma = entropy_production(spec);
    CHECK(sigma == Approx(0.49979172741454).epsilon(2e-2));
    // thermal reservoirs, adiabatic strokes: the identity is exact
    const auto [q2, q4] = stroke_heats(spec);
    CHECK(sigma == Approx(-0.025 * q2 - 0.1 * q4).epsilon(1e-12));
  }
  SECTION("Klein positivity on assorted specs") {
    for (double beta2 : {0.01, 0.025, 0.2}) {
      auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.3, beta2);
      CHECK(entropy_production(spec) >= -1e-12);
      spec.compression = FrequencyProtocol::sudden(1.0, 2.0);
      spec.expansion = FrequencyProtocol::sudden(2.0, 1.0);
      CHECK(entropy_production(spec) >= -1e-12);
    }
  }
}

TEST_CASE("entropy production identity with mean-force terms, high T") {
  // sigma = -beta2 Q2 - beta1 Q4 + beta2 (M_B - M_C) up to high-T corrections
  auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.008, 0.004);
  spec.hot.deviation = CorrelatedPair{3.0, PairMode::OneAtom};
  const double sigma = entropy_production(spec);
  const auto [q2, q4] = stroke_heats(spec);
  const auto d = deviation_energies(spec);
  const double rhs = -spec.hot.beta * q2 - spec.cold.beta * q4 + spec.hot.beta * (*d.M_B - *d.M_C);
  const double budget = spec.conv.hbar * (spec.hot.beta * spec.omega2 + spec.cold.beta * spec.omega1);
  CHECK(std::abs(sigma - rhs) <= 0.5 * budget);
}

TEST_CASE("second-law margin") {
  const auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
  const auto [q2, q4] = stroke_heats(spec);
  CHECK(second_law_margin(q2, q4, 0.1, 0.025) == Approx(0.49979172741454).epsilon(1e-10));
  CHECK(second_law_margin(0.0, 0.0, 0.1, 0.025) == 0.0);
}

TEST_CASE("maximum efficiency") {
  CHECK(max_efficiency(0.1, 0.05, 0.0, 0.0, 1.0, 2.0).value == Approx(0.5).epsilon(1e-14));
  CHECK(max_efficiency(0.1, 0.05, 0.0, 0.05, 1.0, 2.0).value ==
        Approx(0.50124688279302).epsilon(1e-12));
  // isothermal reservoirs still admit positive maximum efficiency
  CHECK(max_efficiency(0.05, 0.05, 0.0, 0.05, 1.0, 1.0).value ==
        Approx(0.00249376558603).epsilon(1e-10));
  CHECK_THROWS_AS(max_efficiency(0.1, 0.05, 0.0, -25.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("two-reservoir bound agrees with its expansion to second order") {
  const double beta1 = 0.1, beta2 = 0.05;
  // at the reversible frequency ratio w1/w2 = beta2/beta1 the expansion is
  // first-order exact; the gap must shrink quadratically in the deviations
  double prev_gap = 1e300;
  for (double scale : {1.0, 0.5, 0.25}) {
    const double dH_C = 0.4 * scale, dH_A = 0.1 * scale;
    const auto m = max_efficiency(beta1, beta2, dH_A, dH_C, 1.0, 2.0);
    const double gap = std::abs(m.value - m.high_t_expansion);
    CHECK(gap < 0.3 * prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("clausius direction") {
  CHECK(clausius_direction(10.0, 20.05, 5.0, 1.0).ok);
  CHECK_FALSE(clausius_direction(10.0, 8.0, 5.0, 1.0).ok);
  CHECK_FALSE(clausius_direction(10.0, 8.0, 5.0, 1.0).sign_dT == 1);
  // not an engine: statement not applicable
  const auto na = clausius_direction(10.0, 8.0, 5.0, -1.0);
  CHECK_FALSE(na.applicable);

  // W = 0 at equal frequencies: pure effective-temperature-ordered flow
  auto spec = CycleSpec::adiabatic_thermal(2.0, 2.0, 0.05, 0.05);
  spec.hot.deviation = CustomPowerLaw{0.4, 1.0};  // positive deviation, T2_eff > T1
  const auto [q2, q4] = stroke_heats(spec);
  const auto [w1, w3] = stroke_works(spec);
  CHECK(w1 + w3 == 0.0);
  CHECK(q2 > 0.0);
  const auto t1 = effective_temperature(spec.cold, 2.0);
  const auto t2 = effective_temperature(spec.hot, 2.0);
  CHECK(clausius_direction(t1.value, t2.value, q2, 0.0).ok);
}

TEST_CASE("engine window") {
  SECTION("adiabatic thermal reference: both ratios clear Q* = 1") {
    const auto w = engine_window(CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025));
    CHECK(w.ok);
    CHECK(w.ratio_hot == Approx(2.0).epsilon(1e-3));
    CHECK(w.ratio_cold == Approx(0.5).epsilon(1e-3));
  }
  SECTION("sudden non-engine: heat signs stay engine-like, work does not") {
    auto spec = CycleSpec::adiabatic_thermal(1.0, 2.0, 0.1, 0.025);
    spec.compression = FrequencyProtocol::sudden(1.0, 2.0);
    spec.expansion = FrequencyProtocol::sudden(2.0, 1.0);
    const auto w = engine_window(spec);
    CHECK(w.hot_ok);   // 2.0 >= 1.25
    CHECK(w.cold_ok);  // 0.5 <= 1.25, consistent with Q4 < 0
    const auto [q2, q4] = stroke_heats(spec);
    CHECK(q2 > 0.0);
    CHECK(q4 < 0.0);
    // the heat-sign window holds, yet sudden losses make W_total < 0
    CHECK_FALSE(evaluate_cycle(spec).is_engine);
  }
  SECTION("equal reservoirs at Q* = 1 sit on the boundary") {
    const auto w = engine_window(CycleSpec::adiabatic_thermal(2.0, 2.0, 0.05, 0.05));
    CHECK(w.ok);
    CHECK(w.ratio_hot == 1.0);
    CHECK(w.ratio_cold == 1.0);
  }
}

TEST_CASE("window consistency with heat signs over random samples") {
  const CounterRng rng(777);
  for (int k = 0; k < 200; ++k) {
    const auto spec = sample_cycle_spec(rng, k);
    const auto r = evaluate_cycle(spec);
    const auto w = engine_window(spec);
    const double tol = 1e-12 * std::max({r.E_A, r.E_B, r.E_C, r.E_D});
    CHECK(w.ok == (r.Q2 >= -tol && r.Q4 <= tol));
  }
}
