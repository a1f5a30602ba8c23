#include <doctest.h>

#include <cmath>

#include "hofj/opinion.hpp"

using namespace hofj;

TEST_CASE("uniform innate opinions stay in [0,1] and are reproducible") {
  GenSpec spec{Distribution::Uniform, 1.0, 2.5, 99, 5000};
  const Vector a = generate_innate(spec);
  const Vector b = generate_innate(spec);
  CHECK(a.minCoeff() >= 0.0);
  CHECK(a.maxCoeff() < 1.0);
  CHECK((a - b).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("normalized distributions have a maximum of exactly one") {
  for (auto dist : {Distribution::Exponential, Distribution::PowerLaw}) {
    GenSpec spec{dist, 1.0, 2.5, 7, 2000};
    const Vector s = generate_innate(spec);
    CHECK(s.maxCoeff() == 1.0);
    CHECK(s.minCoeff() > 0.0);
  }
}

TEST_CASE("exponential raw draws sit on the shifted support with unit mean spacing") {
  GenSpec spec{Distribution::Exponential, 1.5, 2.5, 11, 100000};
  const Vector raw = draw_raw(spec);
  CHECK(raw.minCoeff() >= 1.5);
  // Shifted exponential has mean x_min + 1; standard error ~ 1/sqrt(n).
  CHECK(raw.mean() == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("power-law tail exponent recovered by maximum likelihood") {
  GenSpec spec{Distribution::PowerLaw, 1.0, 2.5, 13, 100000};
  const Vector raw = draw_raw(spec);
  CHECK(raw.minCoeff() >= 1.0);
  double log_sum = 0.0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) log_sum += std::log(raw[i] / spec.x_min);
  const double alpha_hat = 1.0 + static_cast<double>(raw.size()) / log_sum;
  CHECK(std::abs(alpha_hat - 2.5) < 0.15);
}

TEST_CASE("resistances live strictly inside the unit interval") {
  const Vector alpha = generate_resistance(100000, 5);
  CHECK(alpha.minCoeff() > 0.0);
  CHECK(alpha.maxCoeff() < 1.0);
  CHECK(alpha.mean() == doctest::Approx(0.5).epsilon(0.02));
  const Vector again = generate_resistance(100000, 5);
  CHECK((alpha - again).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("generator specs are validated") {
  CHECK_THROWS_AS(generate_innate(GenSpec{Distribution::Uniform, 1.0, 2.5, 1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_innate(GenSpec{Distribution::PowerLaw, 0.0, 2.5, 1, 10}),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_innate(GenSpec{Distribution::PowerLaw, 1.0, 1.0, 1, 10}),
                  std::invalid_argument);
  CHECK_THROWS_AS(distribution_from_name("gaussian"), std::invalid_argument);
}
