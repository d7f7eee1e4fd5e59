#include <catch2/catch_amalgamated.hpp>

#include "infogeo/measure.hpp"
#include "infogeo/random.hpp"

using namespace infogeo;

TEST_CASE("integrate matches hand-computed weighted sums") {
  const MeasureSpace two({0.5, 0.5});
  CHECK(integrate(two, {1.0, 1.0}) == Catch::Approx(1.0).margin(1e-15));
  CHECK(integrate(two, {1.0, -1.0}) == Catch::Approx(0.0).margin(1e-15));

  const MeasureSpace three({0.2, 0.3, 0.5});
  CHECK(integrate(three, {1.0, 2.0, 3.0}) ==
        Catch::Approx(2.3).margin(1e-15));
}

TEST_CASE("integrate rejects bad input") {
  const MeasureSpace two({0.5, 0.5});
  CHECK_THROWS_AS(integrate(two, {1.0}), std::domain_error);
  CHECK_THROWS_AS(integrate(two, {1.0, std::nan("")}), std::domain_error);
  CHECK_THROWS_AS(integrate(two, {1.0, 1.0 / 0.0}), std::domain_error);
}

TEST_CASE("measure space validation") {
  CHECK_THROWS_AS(MeasureSpace({}), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpace({0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpace({0.5, -1.0}), std::invalid_argument);
  CHECK(MeasureSpace({0.2, 0.3, 0.5}).total_mass() ==
        Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("expectation matches hand-computed values") {
  const MeasureSpace two({0.5, 0.5});
  const Density uniform(two, {1.0, 1.0});
  CHECK(expectation(uniform, {1.0, -1.0}) == Catch::Approx(0.0).margin(1e-15));
  CHECK(expectation(uniform, {3.5, 3.5}) == Catch::Approx(3.5).margin(1e-15));

  const Density tilted(two, {1.2, 0.8});
  CHECK(expectation(tilted, {1.0, -1.0}) == Catch::Approx(0.2).margin(1e-15));
  CHECK(expectation(tilted, {7.0, 7.0}) == Catch::Approx(7.0).margin(1e-13));
}

TEST_CASE("density constructor repairs small mass drift and rejects more") {
  const MeasureSpace two({0.5, 0.5});
  // drift 1e-10: repaired
  const Density repaired(two, {1.2, 0.8 + 2e-10});
  CHECK(integrate(two, repaired.vals()) == Catch::Approx(1.0).margin(1e-15));
  // drift 1e-6: rejected
  CHECK_THROWS_AS(Density(two, {1.2, 0.8 + 2e-6}), std::invalid_argument);
  // positivity floor
  CHECK_THROWS_AS(Density(two, {2.0 - 1e-301, 1e-301}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Density(two, {2.5, -0.5}), std::invalid_argument);
}

TEST_CASE("center produces exact tangent vectors") {
  const MeasureSpace two({0.5, 0.5});
  const Density tilted(two, {1.2, 0.8});

  const TangentVector t = center(tilted, {1.0, 0.0});
  CHECK(t[0] == Catch::Approx(0.4).margin(1e-15));
  CHECK(t[1] == Catch::Approx(-0.6).margin(1e-15));

  // constants center to zero
  const TangentVector z = center(tilted, {4.2, 4.2});
  CHECK(linf_norm(z.vals()) < 1e-15);

  // idempotence
  const TangentVector tt = center(tilted, t.vals());
  CHECK(linf_diff(tt.vals(), t.vals()) < 1e-15);
}

TEST_CASE("tangent constructor recentres small drift and rejects more") {
  const MeasureSpace two({0.5, 0.5});
  const Density uniform(two, {1.0, 1.0});
  const TangentVector ok(uniform, {1.0 + 1e-10, -1.0});
  CHECK(std::abs(expectation(uniform, ok.vals())) < 1e-15);
  CHECK_THROWS_AS(TangentVector(uniform, {1.0 + 1e-6, -1.0}),
                  std::invalid_argument);
}

TEST_CASE("properties: linearity, centering, idempotence on random instances") {
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = trial_rng(7, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 24));
    const Density p = random_density(rng, space);
    const Vec f = random_vec(rng, space.atom_count(), -3, 3);
    const Vec g = random_vec(rng, space.atom_count(), -3, 3);
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);

    const Vec combo = vec_add(vec_scale(f, a), vec_scale(g, b));
    CHECK(std::abs(integrate(space, combo) - a * integrate(space, f) -
                   b * integrate(space, g)) < 1e-12);

    const TangentVector t = center(p, f);
    CHECK(std::abs(expectation(p, t.vals())) < 1e-12);
    CHECK(linf_diff(center(p, t.vals()).vals(), t.vals()) < 1e-14);
  }
}
