#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "infogeo/connections.hpp"
#include "infogeo/random.hpp"

using namespace infogeo;

namespace {

const MeasureSpace kTwo({0.5, 0.5});
const Density kUniform2(kTwo, {1.0, 1.0});
const Density kTilted(kTwo, {1.2, 0.8});

}  // namespace

TEST_CASE("richardson central difference is fourth order") {
  const auto f = [](double t) { return Vec{std::sin(t), std::exp(t)}; };
  const Vec d = richardson_central(f, 0.3, 1e-3);
  CHECK(d[0] == Catch::Approx(std::cos(0.3)).margin(1e-12));
  CHECK(d[1] == Catch::Approx(std::exp(0.3)).margin(1e-12));
  CHECK(richardson_central_scalar([](double t) { return t * t * t; }, 2.0,
                                  1e-3) == Catch::Approx(12.0).margin(1e-10));
}

TEST_CASE("fisher pairing: hand values, variance oracle, base checks") {
  const TangentVector u(kUniform2, {1.0, -1.0});
  const TangentVector zero(kUniform2, {0.0, 0.0});
  CHECK(fisher(kUniform2, u, zero) == 0.0);
  CHECK(fisher(kUniform2, u, u) == Catch::Approx(1.0).margin(1e-15));

  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = trial_rng(67, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 32));
    const Density p = random_density(rng, space);
    const Vec raw = random_vec(rng, space.atom_count(), -2, 2);
    const TangentVector t = center(p, raw);
    // two-pass variance of the uncentred values
    const double mean = expectation(p, raw);
    detail::Accumulator var;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      var.add(space.weight(i) * p[i] * (raw[i] - mean) * (raw[i] - mean));
    }
    CHECK(fisher(p, t, t) == Catch::Approx(var.value()).margin(1e-12));
    if (linf_norm(t.vals()) > 0.1) CHECK(fisher(p, t, t) > 0.0);

    const TangentVector s = random_tangent(rng, p);
    CHECK(fisher(p, t, s) == Catch::Approx(fisher(p, s, t)).margin(1e-14));
  }

  const TangentVector wrong_base(kTilted, {1.0, -1.5});
  CHECK_THROWS_AS(fisher(kUniform2, u, wrong_base), std::domain_error);
}

TEST_CASE("fisher pairing is continuous for the chart norms") {
  // |<u,v>_p| <= pairing(|u|,|v|) <= 4 N_Phi1(u) N_Phi3(v); the constant 4
  // comes from routing Phi1 through its equivalence with Phi2.
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = trial_rng(211, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 32));
    const Density p = random_density(rng, space);
    const TangentVector u = random_tangent(rng, p, 2.0);
    const TangentVector v = random_tangent(rng, p, 2.0);
    const double bound =
        4.0 * luxemburg_norm(YoungFunction::phi1(), p, u.vals()) *
        luxemburg_norm(YoungFunction::phi3(), p, v.vals());
    CHECK(std::abs(fisher(p, u, v)) <= bound + 1e-10);
  }
}

TEST_CASE("exponential transport is not an isometry") {
  const TangentVector u(kUniform2, {1.0, -1.0});
  const TangentVector moved = transport_exp(kUniform2, kTilted, u);
  CHECK(std::abs(fisher(kTilted, moved, moved) - fisher(kUniform2, u, u)) >
        1e-3);
}

TEST_CASE("exponential transport: hand value, constant shift, cocycle") {
  const TangentVector u(kUniform2, {1.0, -1.0});
  CHECK(linf_diff(transport_exp(kUniform2, kUniform2, u).vals(), u.vals()) <
        1e-15);

  const TangentVector moved = transport_exp(kUniform2, kTilted, u);
  CHECK(moved[0] == Catch::Approx(0.8).margin(1e-15));
  CHECK(moved[1] == Catch::Approx(-1.2).margin(1e-15));
  // the shift is the same constant on every atom
  CHECK(std::abs((moved[0] - u[0]) - (moved[1] - u[1])) < 1e-15);
  CHECK(std::abs(expectation(kTilted, moved.vals())) < 1e-15);

  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = trial_rng(71, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 32));
    const Density a = random_density(rng, space);
    const Density b = random_density(rng, space);
    const Density c = random_density(rng, space);
    const TangentVector w = random_tangent(rng, a);
    const TangentVector direct = transport_exp(a, c, w);
    const TangentVector chained =
        transport_exp(b, c, transport_exp(a, b, w));
    CHECK(linf_diff(direct.vals(), chained.vals()) < 1e-12);
  }
}

TEST_CASE("mixture transport: hand value, centring, cocycle") {
  const TangentVector u(kUniform2, {1.0, -1.0});
  CHECK(linf_diff(transport_mix(kUniform2, kUniform2, u).vals(), u.vals()) <
        1e-15);

  const TangentVector moved = transport_mix(kUniform2, kTilted, u);
  CHECK(moved[0] == Catch::Approx(1.0 / 1.2).margin(1e-15));
  CHECK(moved[1] == Catch::Approx(-1.25).margin(1e-15));
  CHECK(std::abs(expectation(kTilted, moved.vals())) < 1e-15);

  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = trial_rng(73, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 32));
    const Density a = random_density(rng, space);
    const Density b = random_density(rng, space);
    const Density c = random_density(rng, space);
    const TangentVector w = random_tangent(rng, a);
    const TangentVector direct = transport_mix(a, c, w);
    const TangentVector chained =
        transport_mix(b, c, transport_mix(a, b, w));
    CHECK(linf_diff(direct.vals(), chained.vals()) < 1e-12);
  }
}

TEST_CASE("duality gap: hand instance, identity case, random sweep") {
  const TangentVector u(kUniform2, {1.0, -1.0});
  // <tau_exp u, tau_mix u>_q = 0.5(1.2*0.8*(5/6) + 0.8*1.2*1.25) = 1 = <u,u>_p
  CHECK(std::abs(duality_gap(kUniform2, kTilted, u, u)) < 1e-15);
  CHECK(std::abs(duality_gap(kUniform2, kUniform2, u, u)) < 1e-15);

  for (int trial = 0; trial < 2000; ++trial) {
    Rng rng = trial_rng(79, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 64));
    const Density p = random_density(rng, space);
    const Density q = random_density(rng, space);
    const TangentVector a = random_tangent(rng, p);
    const TangentVector b = random_tangent(rng, p);
    CHECK(std::abs(duality_gap(p, q, a, b)) < 1e-12);
  }
}

TEST_CASE("directional derivative: constants, covariance formula, Eq-log") {
  Rng rng = trial_rng(83, 0);
  const MeasureSpace space = random_space(rng, 5);
  const Density p = random_density(rng, space);
  const TangentVector dir = random_tangent(rng, p, 0.6);
  const Curve c = Curve::exp_segment(p, dir);
  const double t0 = 0.4;
  const Density q0 = c.at(t0);

  SECTION("a field constant along the curve differentiates to zero") {
    const Vec fixed = random_vec(rng, space.atom_count(), -1, 1);
    const CurveField constant{[fixed](double) { return fixed; }, nullptr};
    CHECK(linf_norm(curvefield_derivative(constant, c, t0)) < 1e-9);
  }

  SECTION("exp-parallel fields: derivative is -Cov(m, l') on every atom") {
    const Vec m = random_vec(rng, space.atom_count(), -1, 1);
    const VectorField s = VectorField::exp_parallel(m);
    const Vec analytic = directional_derivative(s, c, t0);
    // independent covariance computation
    const Vec dl = c.dlog(t0);
    const double cov = expectation(q0, vec_mul(m, dl)) -
                       expectation(q0, m) * expectation(q0, dl);
    for (double x : analytic) CHECK(x == Catch::Approx(-cov).margin(1e-12));
    // finite-difference route agrees
    const VectorField fd_only = VectorField::custom(s.eval);
    CHECK(linf_diff(directional_derivative(fd_only, c, t0), analytic) < 1e-8);
  }

  SECTION("analytic dalong of every factory field matches differencing") {
    const Density p0 = random_density(rng, space);
    const std::size_t n = space.atom_count();
    const VectorField fields[] = {
        VectorField::exp_parallel(random_vec(rng, n, -1, 1)),
        VectorField::mix_parallel(p0, random_tangent(rng, p0)),
        VectorField::polynomial(random_vec(rng, n, -1, 1),
                                random_vec(rng, n, -1, 1),
                                random_vec(rng, n, -1, 1))};
    for (const VectorField& s : fields) {
      const VectorField fd_only = VectorField::custom(s.eval);
      CHECK(linf_diff(directional_derivative(s, c, t0),
                      directional_derivative(fd_only, c, t0)) < 1e-8);
    }
  }

  SECTION("integral identity E[d_v s] = -E[s l'] along the curve") {
    for (int trial = 0; trial < 100; ++trial) {
      Rng trng = trial_rng(89, trial);
      const MeasureSpace sp = random_space(trng, trng.uniform_int(2, 12));
      const Density base = random_density(trng, sp);
      const Curve curve =
          Curve::exp_segment(base, random_tangent(trng, base, 0.6));
      const VectorField s = VectorField::custom(
          VectorField::polynomial(random_vec(trng, sp.atom_count(), -1, 1),
                                  random_vec(trng, sp.atom_count(), -1, 1),
                                  random_vec(trng, sp.atom_count(), -1, 1))
              .eval);
      const double at = trng.uniform(0.2, 0.8);
      const Density qq = curve.at(at);
      const double lhs = expectation(qq, directional_derivative(s, curve, at));
      const double rhs =
          -expectation(qq, vec_mul(s.eval(qq).vals(), curve.dlog(at)));
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("covariantly constant fields have vanishing covariant derivative") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = trial_rng(97, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 16));
    const Density p = random_density(rng, space);
    const Curve c = Curve::exp_segment(p, random_tangent(rng, p, 0.7));
    const double t0 = rng.uniform(0.1, 0.9);

    const VectorField epar =
        VectorField::exp_parallel(random_vec(rng, space.atom_count(), -1, 1));
    CHECK(linf_norm(nabla_exp(epar, c, t0).vec.vals()) < 1e-8);

    const Density p0 = random_density(rng, space);
    const VectorField mpar =
        VectorField::mix_parallel(p0, random_tangent(rng, p0));
    CHECK(linf_norm(nabla_mix(mpar, c, t0).vec.vals()) < 1e-8);
  }
}

TEST_CASE("geodesics: curves match their connections") {
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = trial_rng(101, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 16));
    const Density p = random_density(rng, space);
    const TangentVector u = random_tangent(rng, p, 0.7);

    CHECK(geodesic_residual(Curve::exp_segment(p, u), ConnectionKind::Exp,
                            31) < 1e-8);
    // chart lines are exponential segments through a shifted base point
    CHECK(geodesic_residual(
              Curve::chart_line(p, random_tangent(rng, p, 0.3), u),
              ConnectionKind::Exp, 11) < 1e-8);

    const Density q1 = random_density(rng, space);
    const Density q2 = random_density(rng, space);
    CHECK(geodesic_residual(Curve::mix_segment(q1, q2), ConnectionKind::Mix,
                            31) < 1e-8);
  }
}

TEST_CASE("geodesic residual separates mismatched pairs") {
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = trial_rng(103, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 16));
    const Density q1 = random_density(rng, space);
    TangentVector u = random_tangent(rng, q1);
    u = TangentVector(q1, vec_scale(u.vals(), 1.0 / linf_norm(u.vals())));
    const Density q2 = exp_map(q1, u);

    CHECK(geodesic_residual(Curve::mix_segment(q1, q2), ConnectionKind::Exp,
                            21) > 1e-4);
    CHECK(geodesic_residual(Curve::exp_segment(q1, u), ConnectionKind::Mix,
                            21) > 1e-4);
  }
}

TEST_CASE("analytic dlog agrees with differencing for every curve kind") {
  Rng rng = trial_rng(199, 0);
  const MeasureSpace space = random_space(rng, 5);
  const Density p = random_density(rng, space);
  const Curve curves[] = {
      Curve::exp_segment(p, random_tangent(rng, p, 0.6)),
      Curve::mix_segment(random_density(rng, space),
                         random_density(rng, space)),
      Curve::chart_line(p, random_tangent(rng, p, 0.3),
                        random_tangent(rng, p, 0.5))};
  for (const Curve& c : curves) {
    REQUIRE(c.analytic_dlog());
    for (double t : {0.2, 0.5, 0.8}) {
      const auto log_gamma = [&](double s) {
        const Density q = c.at(s);
        Vec out(q.atom_count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(q[i]);
        return out;
      };
      CHECK(linf_diff(c.dlog(t), richardson_central(log_gamma, t, 1e-4)) <
            1e-6);
      CHECK(linf_diff(c.ddlog(t), richardson_second(log_gamma, t, 1e-4)) <
            1e-6);
    }
  }
}

TEST_CASE("custom curves fall back to finite differences") {
  Rng rng = trial_rng(107, 0);
  const MeasureSpace space = random_space(rng, 4);
  const Density p = random_density(rng, space);
  const TangentVector u = random_tangent(rng, p, 0.5);
  const Vec dir = u.vals();

  // the same exponential segment, built without analytic derivatives
  const Curve fd_curve = Curve::custom(
      [p, dir](double t) {
        return exp_map(p, TangentVector(p, vec_scale(dir, t)));
      },
      0.0, 1.0);
  CHECK_FALSE(fd_curve.analytic_dlog());
  const Curve exact = Curve::exp_segment(p, u);
  CHECK(linf_diff(fd_curve.dlog(0.5), exact.dlog(0.5)) < 1e-9);
  CHECK(geodesic_residual(fd_curve, ConnectionKind::Exp, 11) < 1e-5);
  CHECK_THROWS_AS(fd_curve.dlog(0.0), std::domain_error);  // domain edge
}

TEST_CASE("exponential geodesic points: endpoint and closed form") {
  const TangentVector u(kUniform2, {1.0, -1.0});
  CHECK(linf_diff(exp_geodesic(kUniform2, u, 0.0).vals(), kUniform2.vals()) <
        1e-15);

  const Density q = exp_geodesic(kUniform2, u, std::log(2.0));
  CHECK(q[0] == Catch::Approx(1.6).margin(1e-14));
  CHECK(q[1] == Catch::Approx(0.4).margin(1e-14));
}

TEST_CASE("parametric reduction on two-atom families") {
  const MeasureSpace unit(Vec{1.0, 1.0});

  // family (theta, 1-theta): the score field's mixture covariant derivative
  // vanishes (it is a mixture line); the exponential one does not.
  const VectorField score = VectorField::custom([](const Density& q) {
    const double th = q[0];
    return TangentVector(q, {1.0 / th, -1.0 / (1.0 - th)});
  });
  for (int i = 0; i < 20; ++i) {
    const double theta = 0.3 + 0.4 * i / 19.0;
    const Curve family = Curve::custom(
        [unit, theta](double t) {
          return Density(unit, {theta + t, 1.0 - theta - t});
        },
        [theta](double t) {
          return Vec{1.0 / (theta + t), -1.0 / (1.0 - theta - t)};
        },
        -0.2, 0.2);

    const Vec d2{-1.0 / (theta * theta),
                 -1.0 / ((1.0 - theta) * (1.0 - theta))};
    const Density p = family.at(0.0);
    const double mean = expectation(p, d2);
    const Vec sym_exp{d2[0] - mean, d2[1] - mean};

    CHECK(linf_diff(nabla_exp(score, family, 0.0).vec.vals(), sym_exp) < 1e-8);
    CHECK(linf_norm(nabla_mix(score, family, 0.0).vec.vals()) < 1e-8);
    if (std::abs(theta - 0.5) > 0.05) {
      CHECK(linf_norm(sym_exp) > 1e-2);  // non-vacuous comparison
    }
  }

  // warped family (theta^2, 1-theta^2): nondegenerate for both connections.
  const VectorField wscore = VectorField::custom([](const Density& q) {
    const double th = std::sqrt(q[0]);
    return TangentVector(q, {2.0 / th, -2.0 * th / (1.0 - th * th)});
  });
  for (int i = 0; i < 20; ++i) {
    const double theta = 0.35 + 0.4 * i / 19.0;
    const Curve family = Curve::custom(
        [unit, theta](double t) {
          const double th = theta + t;
          return Density(unit, {th * th, 1.0 - th * th});
        },
        [theta](double t) {
          const double th = theta + t;
          return Vec{2.0 / th, -2.0 * th / (1.0 - th * th)};
        },
        -0.1, 0.1);

    const double th2 = theta * theta;
    const Vec d2{-2.0 / th2,
                 -(2.0 + 2.0 * th2) / ((1.0 - th2) * (1.0 - th2))};
    const Vec dl{2.0 / theta, -2.0 * theta / (1.0 - th2)};
    const Density p = family.at(0.0);
    const double mean = expectation(p, d2);
    const Vec sym_exp{d2[0] - mean, d2[1] - mean};
    const Vec sym_mix{d2[0] + dl[0] * dl[0], d2[1] + dl[1] * dl[1]};

    CHECK(linf_diff(nabla_exp(wscore, family, 0.0).vec.vals(), sym_exp) <
          1e-8);
    CHECK(linf_diff(nabla_mix(wscore, family, 0.0).vec.vals(), sym_mix) <
          1e-8);
    CHECK(linf_norm(sym_mix) > 1e-2);
  }
}

TEST_CASE("product rule for the dual pair on random fields") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = trial_rng(109, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 12));
    const Density p = random_density(rng, space);
    const Curve c = Curve::exp_segment(p, random_tangent(rng, p, 0.6));
    const std::size_t n = space.atom_count();
    const VectorField s1 = VectorField::polynomial(
        random_vec(rng, n, -1, 1), random_vec(rng, n, -1, 1),
        random_vec(rng, n, -1, 1));
    const VectorField s2 = VectorField::polynomial(
        random_vec(rng, n, -1, 1), random_vec(rng, n, -1, 1),
        random_vec(rng, n, -1, 1));
    const double t0 = rng.uniform(0.2, 0.8);
    const Density q0 = c.at(t0);
    const auto pairing = [&](double t) {
      const Density q = c.at(t);
      return fisher(q, s1.eval(q), s2.eval(q));
    };
    const double lhs =
        richardson_central_scalar(pairing, t0, c.clamped_step(t0));
    const double rhs = fisher(q0, nabla_exp(s1, c, t0).vec, s2.eval(q0)) +
                       fisher(q0, s1.eval(q0), nabla_mix(s2, c, t0).vec);
    CHECK(std::abs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("covariant derivative outputs are centred at the curve point") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = trial_rng(113, trial);
    const MeasureSpace space = random_space(rng, rng.uniform_int(2, 16));
    const Density p = random_density(rng, space);
    const Curve c = Curve::exp_segment(p, random_tangent(rng, p, 0.6));
    const VectorField s = VectorField::custom(
        VectorField::polynomial(random_vec(rng, space.atom_count(), -1, 1),
                                random_vec(rng, space.atom_count(), -1, 1),
                                random_vec(rng, space.atom_count(), -1, 1))
            .eval);
    const double t0 = rng.uniform(0.2, 0.8);
    CHECK(nabla_exp(s, c, t0).centering_defect < 1e-10);
    CHECK(nabla_mix(s, c, t0).centering_defect < 1e-10);
  }
}
