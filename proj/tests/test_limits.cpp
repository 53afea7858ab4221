#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/limits.hpp"
#include "doctest.h"

using namespace casimir;

namespace {
constexpr double kD = 1e-6;
const double kPressure = constants::casimir_coefficient / std::pow(kD, 4);
}  // namespace

TEST_CASE("Casimir coefficient at one micrometre") {
  CHECK(-kPressure == doctest::Approx(-1.3001257732443655e-3).epsilon(1e-12));
}

TEST_CASE("generalized Casimir formula") {
  CHECK(casimir_generalized({1, 1}, kD, INFINITY) == doctest::Approx(-kPressure).epsilon(1e-15));
  CHECK(casimir_generalized({2, 1}, kD, kD) == 0.0);
  CHECK(casimir_generalized({2, 1}, kD, INFINITY) / -kPressure ==
        doctest::Approx(0.5892556509887896).epsilon(1e-14));
  CHECK(casimir_generalized({1, 2}, kD, INFINITY) / -kPressure ==
        doctest::Approx(1.1785113019775793).epsilon(1e-14));
  CHECK(casimir_generalized({1, 1}, kD, 2 * kD) ==
        doctest::Approx(kPressure * (1.0 / 16 - 1.0)).epsilon(1e-14));
}

TEST_CASE("Minkowski closed form") {
  CHECK(minkowski_generalized(1.0, kD, INFINITY) == doctest::Approx(-kPressure).epsilon(1e-15));
  CHECK(minkowski_generalized(4.0, kD, INFINITY) == doctest::Approx(-0.5 * kPressure).epsilon(1e-15));
  CHECK(minkowski_generalized(4.0, kD, kD) == 0.0);
  CHECK_THROWS_AS(minkowski_generalized(2.0, kD, INFINITY, 1.5), UnsupportedError);
}

TEST_CASE("force ratio") {
  CHECK(force_ratio(1.0) == 1.0);
  CHECK(force_ratio(4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(force_ratio(1e12) == doctest::Approx(1.5).epsilon(1e-10));
  double previous = 0.0;
  for (double eps = 1.0; eps < 1000.0; eps *= 1.3) {
    const double r = force_ratio(eps);
    CHECK(r >= previous);
    CHECK(r <= 1.5);
    CHECK(std::abs(casimir_generalized({eps, 1}, kD, INFINITY)) <=
          std::abs(minkowski_generalized(eps, kD, INFINITY)));
    previous = r;
  }
}

TEST_CASE("frozen-coefficient approximation") {
  const QuadratureSpec spec;
  const auto mirror = ConstantCoefficients::mirror();
  SUBCASE("mirrors reproduce the closed form") {
    for (double eps : {1.0, 2.0, 7.0}) {
      const StaticMedium m{eps, 1.0};
      const auto r = approx_plate_force(m, mirror, mirror, mirror, kD, 3 * kD, spec);
      CHECK(r.converged);
      CHECK(r.value == doctest::Approx(casimir_generalized(m, kD, 3 * kD)).epsilon(1e-7));
    }
    const StaticMedium magnetic{1.5, 2.0};
    const auto r = approx_plate_force(magnetic, mirror, mirror, mirror, kD, INFINITY, spec);
    CHECK(r.value == doctest::Approx(casimir_generalized(magnetic, kD, INFINITY)).epsilon(1e-7));
  }
  SUBCASE("equal gaps balance") {
    const ConstantCoefficients partial{-0.7, 0.6};
    const auto r = approx_plate_force({3.0, 1.0}, partial, partial, partial, kD, kD, spec);
    CHECK(r.value == 0.0);
  }
  SUBCASE("weaker reflectors give a weaker force") {
    const ConstantCoefficients partial{-0.8, 0.8};
    const auto r = approx_plate_force({2.0, 1.0}, partial, partial, partial, kD, INFINITY, spec);
    CHECK(r.converged);
    CHECK(std::abs(r.value) < std::abs(casimir_generalized({2.0, 1.0}, kD, INFINITY)));
  }
  SUBCASE("invalid coefficients") {
    CHECK_THROWS_AS(approx_plate_force({1, 1}, {0.0, 1.0}, mirror, mirror, kD, kD, spec), DomainError);
    CHECK_THROWS_AS(approx_plate_force({1, 1}, mirror, {-1.2, 1.0}, mirror, kD, kD, spec), DomainError);
  }
}

TEST_CASE("static medium validation") {
  CHECK(StaticMedium{2.0, 1.5}.n() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(StaticMedium({0.5, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(StaticMedium({1.0, 0.0}).validate(), DomainError);
}
