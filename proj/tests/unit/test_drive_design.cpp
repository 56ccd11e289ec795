#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "optoconj/drive_design.hpp"
#include "optoconj/errors.hpp"
#include "support/oracles.hpp"

using namespace optoconj;

namespace {

constexpr cplx I{0.0, 1.0};

double half_ulp(double x) { return 0.5 * (std::nextafter(std::abs(x), INFINITY) - std::abs(x)); }

CouplingInputs fig1_inputs(Branch b) {
  CouplingInputs in;
  const auto [D1, D2] = design_detunings(1.0, 1.5, 0.1, b);
  in.alpha = {cplx(1.0, 0.0), cplx(1.0, 0.0)};
  in.g = {0.01, 0.01};
  in.Delta = {D1, D2};
  in.Omega = {1.0, 1.5};
  in.kappa = 0.1;
  return in;
}

}  // namespace

TEST_CASE("mean field amplitude") {
  CHECK(mean_field_amplitude(0.0, 0.3, 2.0) == cplx(0.0, 0.0));

  const cplx res = mean_field_amplitude(cplx(0.7, 0.0), 0.2, 0.0);
  CHECK(res.real() == 0.0);
  CHECK(res.imag() == doctest::Approx(-2.0 * 0.7 / 0.2).epsilon(1e-15));

  // -i / (0.1 + i) = -i (0.1 - i) / 1.01 = (-1 - 0.1 i) / 1.01
  const cplx a = mean_field_amplitude(1.0, 0.2, 1.0);
  const long double den = 1.01L;
  CHECK(std::abs(a.real() - static_cast<double>(-1.0L / den)) <= 1e-16);
  CHECK(std::abs(a.imag() - static_cast<double>(-0.1L / den)) <= 1e-16);
  CHECK(std::norm(a) == doctest::Approx(1.0 / 1.01).epsilon(1e-15));

  CHECK_THROWS_AS(mean_field_amplitude(1.0, 0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(mean_field_amplitude(1.0, -0.1, 1.0), InvalidParameter);
}

TEST_CASE("mean field time dependence") {
  MeanField mf;
  mf.alpha = {cplx(0.3, 0.1), cplx(-0.2, 0.5)};
  mf.omega_L = {48.0, 51.5};
  const double t = 0.37;
  const cplx expect = mf.alpha[0] * std::exp(-I * 48.0 * t) + mf.alpha[1] * std::exp(-I * 51.5 * t);
  CHECK(std::abs(mf.at(t) - expect) <= 1e-15);
}

TEST_CASE("drive frequencies for pure phase conjugation") {
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto [w1, w2] = select_drive_frequencies(1.0, 1.5, 100.0, 0.1, b);
    CHECK(std::abs((w2 - w1) - 2.5) <= half_ulp(w2));
    const double s = static_cast<double>(static_cast<int>(b));
    const long double sum = 200.0L + s * std::sqrt(0.25L - 0.01L);
    CHECK(std::abs((w1 + w2) - static_cast<double>(sum)) <= 4e-14);
  }
  CHECK_THROWS_AS(select_drive_frequencies(1.0, 1.05, 100.0, 0.1, Branch::Plus),
                  RegimeUnavailable);
  CHECK_THROWS_AS(design_detunings(1.0, 1.05, 0.1, Branch::Minus), RegimeUnavailable);
}

TEST_CASE("detunings agree with the drive frequencies") {
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto [w1, w2] = select_drive_frequencies(1.0, 1.5, 50.0, 0.1, b);
    const auto [D1, D2] = design_detunings(1.0, 1.5, 0.1, b);
    CHECK(std::abs((50.0 - w1) - D1) <= 1e-13);
    CHECK(std::abs((50.0 - w2) - D2) <= 1e-13);
    CHECK(D1 - D2 == doctest::Approx(2.5).epsilon(1e-15));
  }
}

TEST_CASE("beat note equals the mode sum for random designs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double O1 = 0.2 + 3.0 * u(rng);
    const double O2 = O1 + 0.05 + 2.0 * u(rng);
    const double kappa = (O2 - O1) * (0.01 + 0.98 * u(rng));
    const double wc = 10.0 + 1000.0 * u(rng);
    const Branch b = u(rng) < 0.5 ? Branch::Plus : Branch::Minus;
    const auto [w1, w2] = select_drive_frequencies(O1, O2, wc, kappa, b);
    REQUIRE(std::abs((w2 - w1) - (O1 + O2)) <= half_ulp(w2) + half_ulp(O1 + O2));
  }
}

TEST_CASE("coupling constants vanish without coupling or detuning sum") {
  CouplingInputs in = fig1_inputs(Branch::Plus);
  in.g[0] = 0.0;
  auto [c1, c2] = coupling_constants(in);
  CHECK(c1 == cplx(0.0, 0.0));
  CHECK(c2 == cplx(0.0, 0.0));

  in = fig1_inputs(Branch::Plus);
  in.Delta = {0.8, -0.8};
  std::tie(c1, c2) = coupling_constants(in);
  CHECK(std::abs(c1) == 0.0);
  CHECK(std::abs(c2) == 0.0);

  CHECK(coupling_product(0.0, 0.0) == cplx(0.0, 0.0));
}

TEST_CASE("coupling constants against long double evaluation") {
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const CouplingInputs in = fig1_inputs(b);
    const auto [c1, c2] = coupling_constants(in);
    const auto ref = oracle::coupling_ld(in.alpha, in.g, in.Delta, 1.0, 1.5, 0.1);
    const auto err = [](cplx a, oracle::lcplx r) {
      return static_cast<double>(std::abs(oracle::lcplx(a.real(), a.imag()) - r) / std::abs(r));
    };
    CHECK(err(c1, ref.c1) <= 1e-14);
    CHECK(err(c2, ref.c2c) <= 1e-14);
  }
}

TEST_CASE("coupling product is real negative and matches the closed form") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double O1 = 0.3 + 2.0 * u(rng);
    const double O2 = O1 + 0.1 + 2.0 * u(rng);
    const double kappa = (O2 - O1) * (0.02 + 0.96 * u(rng));
    const Branch b = u(rng) < 0.5 ? Branch::Plus : Branch::Minus;
    const auto [D1, D2] = design_detunings(O1, O2, kappa, b);
    CouplingInputs in;
    in.g = {0.001 + 0.05 * u(rng), 0.001 + 0.05 * u(rng)};
    in.Delta = {D1, D2};
    in.Omega = {O1, O2};
    in.kappa = kappa;
    in.alpha = {mean_field_amplitude(cplx(u(rng), u(rng) - 0.5), kappa, D1),
                mean_field_amplitude(cplx(u(rng) - 0.5, u(rng)), kappa, D2)};
    const auto [c1, c2] = coupling_constants(in);
    const cplx p = coupling_product(c1, c2);
    CHECK(p == c1 * c2);
    const double closed = coupling_product_closed_form(in.alpha, in.g, O1, O2, kappa);
    REQUIRE(closed < 0.0);
    CHECK(p.real() < 0.0);
    CHECK(std::abs(p.imag()) <= 1e-12 * std::abs(p));
    CHECK(std::abs(p.real() - closed) <= 1e-12 * std::abs(closed));
    const long double ld = oracle::closed_form_ld(in.alpha, in.g, O1, O2, kappa);
    CHECK(std::abs(static_cast<long double>(closed) - ld) <= 1e-14L * std::abs(ld));
  }
}

TEST_CASE("regime classification") {
  Regime r = classify_regime(-1.0, 1e-9);
  CHECK(r.kind == RegimeKind::PhaseConjugation);
  CHECK(std::abs(r.eigenvalues[0] - I) <= 1e-15);
  CHECK(std::abs(r.eigenvalues[1] + I) <= 1e-15);

  r = classify_regime(1.0, 1e-9);
  CHECK(r.kind == RegimeKind::ParametricAmplification);
  CHECK(std::abs(r.eigenvalues[0] - 1.0) <= 1e-15);
  CHECK(std::abs(r.eigenvalues[1] + 1.0) <= 1e-15);

  CHECK(classify_regime(cplx(-1.0, 0.5), 1e-9).kind == RegimeKind::Mixed);
  CHECK_THROWS_AS(classify_regime(1e-12, 1e-9), DegenerateProduct);
  CHECK_THROWS_AS(classify_regime(0.0, 1e-9), DegenerateProduct);
  CHECK_THROWS_AS(classify_regime(-1.0, 0.0), InvalidParameter);

  CouplingInputs in = fig1_inputs(Branch::Plus);
  const auto [c1, c2] = coupling_constants(in);
  CHECK(classify_regime(coupling_product(c1, c2), 1e-9, std::norm(c1)).kind ==
        RegimeKind::PhaseConjugation);
}

TEST_CASE("sign of a real product decides the regime") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(-8.0, 8.0);
  for (int i = 0; i < 2000; ++i) {
    const double p = std::pow(10.0, lg(rng));
    if (!(p > 1e-9)) continue;
    CHECK(classify_regime(-p, 1e-9).kind == RegimeKind::PhaseConjugation);
    CHECK(classify_regime(p, 1e-9).kind == RegimeKind::ParametricAmplification);
  }
}

TEST_CASE("phase absorption examples") {
  const PhaseAbsorption a =
      absorb_phases(0.025 * std::exp(I * (std::numbers::pi / 3.0)), -0.025 * std::exp(-I * (std::numbers::pi / 3.0)));
  CHECK(a.C == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(a.asymmetry_ratio == doctest::Approx(1.0).epsilon(1e-15));

  const PhaseAbsorption id = absorb_phases(0.3, -0.3);
  CHECK(id.phase_rotations[0] == 0.0);
  CHECK(id.phase_rotations[1] == 0.0);
  CHECK(id.upper == cplx(0.3, 0.0));
  CHECK(id.lower == cplx(-0.3, 0.0));

  CHECK_THROWS_AS(absorb_phases(0.0, -1.0), DegenerateProduct);
}

TEST_CASE("phase absorption reconstructs a real coupling matrix") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double m1 = 0.001 + u(rng);
    const double m2 = u(rng) < 0.3 ? m1 : 0.001 + u(rng);
    const double phi = 2.0 * std::numbers::pi * u(rng);
    const cplx c1 = m1 * std::exp(I * phi);
    // (C2+)^* chosen so the product is real and negative.
    const cplx c2 = -m2 * std::exp(-I * phi);
    const PhaseAbsorption a = absorb_phases(c1, c2);

    // Drift over (b1, b2^dagger) without the explicit exponentials, rotated by
    // U = diag(exp(i theta1), exp(-i theta2)).
    Eigen::Matrix2cd M;
    M << 0.0, c1, c2, 0.0;
    Eigen::Matrix2cd U = Eigen::Matrix2cd::Zero();
    U(0, 0) = std::exp(I * a.phase_rotations[0]);
    U(1, 1) = std::exp(-I * a.phase_rotations[1]);
    const Eigen::Matrix2cd R = U * M * U.inverse();

    CHECK(std::abs(R(0, 1) - cplx(a.C, 0.0)) <= 1e-14);
    CHECK(std::abs(R(1, 0) - cplx(-std::abs(c2), 0.0)) <= 1e-14);
    CHECK(std::abs(R(1, 0) - a.lower) <= 1e-14);
    CHECK(a.C == std::abs(c1));
    CHECK(a.asymmetry_ratio == doctest::Approx(m2 / m1).epsilon(1e-15));
    CHECK(std::abs(R(0, 1) * R(1, 0)) == doctest::Approx(std::abs(c1 * c2)).epsilon(1e-14));
    if (m1 == m2) CHECK(a.C * a.C == doctest::Approx(std::abs(c1 * c2)).epsilon(1e-14));
  }
}

TEST_CASE("design pipeline on the reference set") {
  const ValidatedConfig v = validate_config(reference_config());
  const CouplingDesign d = design_coupling(v);
  CHECK(d.regime.kind == RegimeKind::PhaseConjugation);
  CHECK(d.C == doctest::Approx(0.025).epsilon(1e-12));
  CHECK(d.C == std::abs(d.C1_plus));
  CHECK(d.product == d.C1_plus * d.C2_plus_conj);
  CHECK(std::abs(d.product.imag()) <= 1e-12 * std::abs(d.product));
  CHECK(std::abs((d.omega_L[1] - d.omega_L[0]) - 2.5) <= half_ulp(d.omega_L[1]));
  for (int j = 0; j < 2; ++j) {
    const cplx alpha = mean_field_amplitude(v->drives[j].eta * d.eta_scale, v->cavity.kappa,
                                            d.Delta[j]);
    CHECK(std::abs(alpha - d.alpha[j]) <= 1e-15 * std::abs(alpha));
  }

  const SystemConfig applied = apply_design(v.config(), d);
  CHECK(applied.drives[0].omega_L == d.omega_L[0]);
  CHECK(applied.drives[1].Delta == applied.cavity.omega_c - applied.drives[1].omega_L);
  validate_config(applied);
}

TEST_CASE("self energy without pump is zero") {
  const cplx s = mechanical_self_energy(0.01, {cplx(0.0), cplx(0.0)}, {1.0, -1.5}, 0.1, 1.0);
  CHECK(s == cplx(0.0, 0.0));
}
