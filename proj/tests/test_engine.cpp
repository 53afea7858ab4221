#include <chrono>
#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/engine.hpp"
#include "casimir/errors.hpp"
#include "casimir/limits.hpp"
#include "doctest.h"
#include "oracles/interspace_g.hpp"

using namespace casimir;

namespace {

const DispersionModel vacuum = DispersionModel::vacuum();
const DispersionModel glass = DispersionModel::constant(2.0);
const DispersionModel gold = DispersionModel::plasma(1.37e16);

double casimir_pressure(double d) { return constants::casimir_coefficient / std::pow(d, 4); }

CavityConfig mirrors(const DispersionModel& medium, double d1, double d3) {
  return {Wall::perfect_mirror(), Gap{medium, d1}, Plate::perfect_mirror(), Gap{medium, d3},
          Wall::perfect_mirror()};
}

}  // namespace

TEST_CASE("g vanishes without reflection") {
  const auto view = InterspaceView::between(Wall::semi_infinite(glass), glass, 1e-6,
                                            Wall::semi_infinite(glass));
  for (Polarization pol : kPolarizations) {
    CHECK(g_fn(view, 0.3e-6, {1e15, 2e6, pol}) == 0.0);
  }
  CHECK(stress_zz(view, 0.5e-6, QuadratureSpec{}).t_zz == 0.0);
  CHECK(minkowski_stress_zz(view, QuadratureSpec{}).t_zz == 0.0);
}

TEST_CASE("g is position independent in an empty interspace") {
  const auto view = InterspaceView::between(Wall::semi_infinite(gold), vacuum, 1e-6,
                                            Wall::stack({Layer{glass, 80e-9}}, gold));
  for (Polarization pol : kPolarizations) {
    const TransverseMode mode{7e14, 3e6, pol};
    const double g_mid = g_fn(view, 0.5e-6, mode);
    for (double z : {0.01e-6, 0.3e-6, 0.99e-6}) {
      CHECK(g_fn(view, z, mode) == doctest::Approx(g_mid).epsilon(1e-13));
    }
  }
}

TEST_CASE("g matches the term-by-term complex evaluation") {
  const DispersionModel fluid = DispersionModel::constant(2.0, 1.3);
  const Wall left = Wall::semi_infinite(gold);
  const Wall right = Wall::stack({Layer{DispersionModel::constant(6.0), 60e-9}}, vacuum);
  const double d = 1e-6;
  const auto view = InterspaceView::between(left, fluid, d, right);
  for (double z : {0.25 * d, 0.75 * d}) {
    for (double q : {1e5, 2e6, 8e6}) {
      const double xi = 4e14;
      TransverseMode s{xi, q, Polarization::s};
      TransverseMode p{xi, q, Polarization::p};
      const auto ref = oracle::interspace_g(
          2.0, 1.3, xi, q, z, d, wall_reflection(right, fluid, s), wall_reflection(left, fluid, s),
          wall_reflection(right, fluid, p), wall_reflection(left, fluid, p));
      CHECK(std::abs(ref.s.imag()) <= 1e-12 * std::abs(ref.s.real()));
      CHECK(g_fn(view, z, s) == doctest::Approx(ref.s.real()).epsilon(1e-10));
      CHECK(g_fn(view, z, p) == doctest::Approx(ref.p.real()).epsilon(1e-10));
    }
  }
  const TransverseMode mode{4e14, 2e6, Polarization::s};
  CHECK(g_fn(view, 0.25 * d, mode) != doctest::Approx(g_fn(view, 0.75 * d, mode)).epsilon(1e-3));
}

TEST_CASE("g domain checks") {
  const auto view = InterspaceView::between(Wall::perfect_mirror(), vacuum, 1e-6, Wall::perfect_mirror());
  CHECK_THROWS_AS(g_fn(view, 0.0, {1e15, 1e6, Polarization::s}), DomainError);
  CHECK_NOTHROW(g_fn_closed(view, 0.0, {1e15, 1e6, Polarization::s}));
  CHECK_THROWS_AS(g_fn_closed(view, 2e-6, {1e15, 1e6, Polarization::s}), DomainError);
}

TEST_CASE("vacuum stress between perfect mirrors") {
  const double d = 1e-6;
  const auto view = InterspaceView::between(Wall::perfect_mirror(), vacuum, d, Wall::perfect_mirror());
  const QuadratureSpec spec;
  const StressValue mid = stress_zz(view, 0.5 * d, spec);
  CHECK(mid.converged);
  // Maxwell-stress sign: the interspace pulls the walls together, F = T_3 - T_1 < 0.
  CHECK(mid.t_zz == doctest::Approx(casimir_pressure(d)).epsilon(1e-7));
  const StressValue near = stress_zz(view, 0.1 * d, spec);
  CHECK(near.t_zz == doctest::Approx(mid.t_zz).epsilon(1e-7));
  CHECK(minkowski_stress_zz(view, spec).t_zz == doctest::Approx(mid.t_zz).epsilon(1e-7));
}

TEST_CASE("Minkowski stress needs a nonmagnetic interspace") {
  const auto view = InterspaceView::between(Wall::perfect_mirror(), DispersionModel::constant(1.0, 2.0),
                                            1e-6, Wall::perfect_mirror());
  CHECK_THROWS_AS(minkowski_stress_zz(view, QuadratureSpec{}), UnsupportedError);
}

TEST_CASE("stress profile grid and per-sample results") {
  const auto grid = interior_grid(1e-6, 4);
  REQUIRE(grid.size() == 4);
  CHECK(grid.front() == doctest::Approx(0.2e-6));
  CHECK(grid.back() == doctest::Approx(0.8e-6));
  CHECK_THROWS_AS(interior_grid(1e-6, 1), DomainError);

  const auto view = InterspaceView::between(Wall::semi_infinite(gold), glass, 1e-6,
                                            Wall::semi_infinite(DispersionModel::constant(5.0)));
  const auto profile = stress_profile(view, grid, QuadratureSpec{});
  CHECK(profile.all_converged());
  CHECK(profile.samples.size() == grid.size());
}

TEST_CASE("plate force: mirrors and static media") {
  const QuadratureSpec spec;
  SUBCASE("symmetric cavity is balanced") {
    const auto f = plate_force(mirrors(glass, 1e-6, 1e-6), spec);
    CHECK(f.converged);
    CHECK(std::abs(f.force_per_area) <= f.error_estimate + 1e-20);
  }
  SUBCASE("finite d3 closed form") {
    const StaticMedium m{2.0, 1.0};
    const auto f = plate_force(mirrors(glass, 1e-6, 1.5e-6), spec);
    CHECK(f.converged);
    CHECK(f.force_per_area == doctest::Approx(casimir_generalized(m, 1e-6, 1.5e-6)).epsilon(1e-7));
    CHECK(f.per_polarization.s + f.per_polarization.p ==
          doctest::Approx(f.force_per_area).epsilon(1e-12));
  }
  SUBCASE("single wall") {
    const auto f = plate_force(mirrors(vacuum, 1e-6, INFINITY), spec);
    CHECK(f.force_per_area == doctest::Approx(-casimir_pressure(1e-6)).epsilon(1e-8));
  }
  SUBCASE("Minkowski counterpart") {
    const auto f = minkowski_plate_force(mirrors(glass, 1e-6, INFINITY), spec);
    CHECK(f.force_per_area == doctest::Approx(minkowski_generalized(2.0, 1e-6, INFINITY)).epsilon(1e-7));
    CHECK_THROWS_AS(minkowski_plate_force(mirrors(DispersionModel::constant(1.0, 2.0), 1e-6, 2e-6), spec),
                    UnsupportedError);
  }
}

TEST_CASE("plate force: finite-contrast structures") {
  const QuadratureSpec spec;
  const DispersionModel water = DispersionModel::drude_lorentz(3e16, 2e16, 1e14);
  const CavityConfig cavity{Wall::stack({Layer{glass, 50e-9}}, gold), Gap{water, 0.4e-6},
                            Plate::slab(Layer{gold, 80e-9}), Gap{water, 0.7e-6},
                            Wall::semi_infinite(DispersionModel::constant(6.0))};
  const auto exact = plate_force(cavity, spec, {}, ForceMethod::exact_difference);
  const auto direct = plate_force(cavity, spec, {}, ForceMethod::direct_difference);
  CHECK(exact.converged);
  CHECK(direct.converged);
  CHECK(std::abs(exact.force_per_area - direct.force_per_area) <=
        exact.error_estimate + direct.error_estimate);
  CHECK(exact.force_per_area < 0.0);  // nearer wall wins
  CHECK_NOTHROW(cross_checked_plate_force(cavity, spec));
}

TEST_CASE("plate denominator identity") {
  const DispersionModel fluid = DispersionModel::constant(1.8);
  const CavityConfig cavity{Wall::semi_infinite(gold), Gap{fluid, 0.5e-6},
                            Plate::slab(Layer{DispersionModel::constant(7.0), 60e-9}),
                            Gap{fluid, 0.9e-6}, Wall::stack({Layer{glass, 30e-9}}, gold)};
  for (Polarization pol : kPolarizations) {
    const TransverseMode mode{3e14, 4e6, pol};
    const auto m = medium_response(fluid, mode);
    const auto pc = plate_coefficients(cavity.plate, fluid, mode);
    const double r1m = wall_reflection(cavity.left_wall, fluid, mode).real();
    const double r3p = wall_reflection(cavity.right_wall, fluid, mode).real();
    const double r1p = wall_reflection(cavity.right_of_gap1(), fluid, mode).real();
    const double r3m = wall_reflection(cavity.left_of_gap3(), fluid, mode).real();
    const double e1 = std::exp(-2 * m.kappa * cavity.gap1.width);
    const double e3 = std::exp(-2 * m.kappa * cavity.gap3.width);
    const double n = plate_denominator(pc, r1m, r3p, e1, e3);
    const double d1 = 1 - r1p * r1m * e1;
    const double d3 = 1 - r3p * r3m * e3;
    const double r = pc.r.real();
    CHECK(n == doctest::Approx(d1 * (1 - r * r3p * e3)).epsilon(1e-10));
    CHECK(n == doctest::Approx(d3 * (1 - r * r1m * e1)).epsilon(1e-10));
  }
  // Opaque plate: N = D_1 D_3.
  const PlateCoefficients opaque{-1.0, 0.0};
  CHECK(plate_denominator(opaque, -0.9, -0.8, 0.3, 0.2) ==
        doctest::Approx((1 - 0.9 * 0.3) * (1 - 0.8 * 0.2)).epsilon(1e-14));
}

TEST_CASE("exact-difference integrand stays finite at large q") {
  const CavityConfig cavity{Wall::semi_infinite(gold), Gap{glass, 1e-6},
                            Plate::slab(Layer{DispersionModel::constant(8.0), 100e-9}), Gap{glass, 1e-6},
                            Wall::semi_infinite(DispersionModel::constant(4.0))};
  // Each gap contributes at most ~ 4 kappa^2 e^{-2 kappa d}; nothing grows with q.
  for (Polarization pol : kPolarizations) {
    for (double q : {1e6, 1e7, 3e7, 1e8, 1e9, 1e10}) {
      const double v = g_difference_exact(cavity, {1e15, q, pol});
      const double kappa = medium_response(glass, {1e15, q, pol}).kappa;
      CHECK(std::isfinite(v));
      CHECK(std::abs(v) <= 16.0 * kappa * kappa * std::exp(-2.0 * kappa * 1e-6));
    }
  }
}

TEST_CASE("thermal path") {
  const QuadratureSpec spec;
  SUBCASE("low temperature approaches zero temperature") {
    const auto zero = plate_force(mirrors(vacuum, 1e-6, INFINITY), spec);
    const auto warm = plate_force(mirrors(vacuum, 1e-6, INFINITY), spec, {1.0, std::nullopt});
    CHECK(warm.converged);
    CHECK(warm.force_per_area == doctest::Approx(zero.force_per_area).epsilon(1e-2));
  }
  SUBCASE("a Drude or plasma pole needs an explicit policy") {
    const CavityConfig cavity{Wall::semi_infinite(gold), Gap{vacuum, 1e-6}, Plate::slab(Layer{gold, 1e-7}),
                              Gap{vacuum, 2e-6}, Wall::semi_infinite(gold)};
    CHECK(has_zero_frequency_pole(cavity));
    CHECK_THROWS_AS(plate_force(cavity, spec, {300.0, std::nullopt}), DomainError);
    CHECK_NOTHROW(plate_force(cavity, spec, {0.0, std::nullopt}));
    const auto dropped = plate_force(cavity, spec, {300.0, ZeroTermPolicy::drop()});
    const auto custom = plate_force(cavity, spec, {300.0, ZeroTermPolicy::custom(-1e-5)});
    CHECK(custom.force_per_area == doctest::Approx(dropped.force_per_area - 1e-5).epsilon(1e-9));
  }
}

TEST_CASE("force method parsing") {
  CHECK(parse_force_method("direct-difference") == ForceMethod::direct_difference);
  CHECK(to_string(ForceMethod::minkowski) == "minkowski");
  CHECK_THROWS_AS(parse_force_method("exact"), DomainError);
}

TEST_CASE("direct difference is clean where the plate is opaque") {
  const CavityConfig cavity{Wall::stack({Layer{DispersionModel::constant(11.7), 40e-9}}, gold),
                            Gap{glass, 0.3e-6}, Plate::slab(Layer{gold, 100e-9}), Gap{glass, 1.5e-6},
                            Wall::semi_infinite(vacuum)};
  for (Polarization pol : kPolarizations) {
    for (double xi : {1e16, 1e17, 1e18}) {
      for (double q : {1e9, 1e12, 1e20, 1e200}) {
        CAPTURE(xi);
        CAPTURE(q);
        CHECK(g_difference_direct(cavity, {xi, q, pol}) == 0.0);
        CHECK(std::isfinite(g_difference_exact(cavity, {xi, q, pol})));
      }
    }
  }
}

TEST_CASE("q cutoff only matters near the walls") {
  const double d = 1e-6;
  const DispersionModel fluid = DispersionModel::constant(3.0);
  const auto view = InterspaceView::between(Wall::semi_infinite(gold), fluid, d,
                                            Wall::semi_infinite(DispersionModel::constant(6.0)));
  QuadratureSpec open;
  QuadratureSpec cut = open;
  cut.q_cutoff = 2e7;  // e^{-2 q d} ~ 4e-18
  const StressValue mid_open = stress_zz(view, 0.5 * d, open);
  const StressValue mid_cut = stress_zz(view, 0.5 * d, cut);
  CHECK(mid_open.converged);
  CHECK(mid_cut.converged);
  CHECK(mid_cut.t_zz == doctest::Approx(mid_open.t_zz).epsilon(1e-7));

  QuadratureSpec wide = open;
  wide.q_cutoff = 1e9;
  const double z = 1e-3 * d;
  const double near_cut = stress_zz(view, z, cut).t_zz;
  const double near_wide = stress_zz(view, z, wide).t_zz;
  CHECK(std::abs(near_wide / near_cut - 1.0) > 1e-3);
}
