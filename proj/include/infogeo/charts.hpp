// charts.hpp - exponential charts on the set of strictly positive densities:
// partition function, forward/inverse chart maps on the unit ball, transition
// maps between chart centres, and convex mixtures of densities.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "infogeo/measure.hpp"
#include "infogeo/young.hpp"

namespace infogeo {

// Thrown by chart_forward when the coordinate vector leaves the open unit
// ball of the chart.
struct ChartDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Which norm defines the chart ball. The Orlicz norm is the default; the
// Luxemburg gauge gives an equivalent atlas with smaller balls.
enum class BallNorm { Orlicz, Luxemburg };

// Z_p(u) = \int e^u p dmu. Finite for every u on a finite space, >= 1 for
// centred u by Jensen. Saturates to +inf past the overflow clamp.
inline double partition_function(const Density& p, const Vec& u) {
  detail::require_size(u.size(), p.atom_count(), "partition_function");
  detail::require_finite(u, "partition_function");
  detail::Accumulator acc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > kExpClamp) {
      return std::numeric_limits<double>::infinity();
    }
    acc.add(p.space().weight(i) * p[i] * std::exp(u[i]));
  }
  return acc.value();
}

inline double partition_function(const Density& p, const TangentVector& u) {
  return partition_function(p, u.vals());
}

inline double chart_ball_norm(const Density& p, const Vec& u,
                              BallNorm ball = BallNorm::Orlicz) {
  return ball == BallNorm::Orlicz
             ? orlicz_norm(YoungFunction::phi1(), p, u)
             : luxemburg_norm(YoungFunction::phi1(), p, u);
}

// e^u p / Z_p(u) on all of B_p, with no ball restriction. This realises the
// maximal exponential model reachable from p; geodesics and mixture-closure
// round trips go through here.
inline Density exp_map(const Density& p, const TangentVector& u) {
  if (!(u.base() == p)) {
    throw std::domain_error("exp_map: tangent vector not based at p");
  }
  const double z = partition_function(p, u);
  if (!std::isfinite(z)) {
    throw std::domain_error("exp_map: partition function overflow");
  }
  Vec vals(p.atom_count());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = p[i] * std::exp(u[i]) / z;
  }
  return Density(p.space(), std::move(vals));
}

// A chart point: centre p together with a coordinate vector inside the open
// unit ball of B_p.
struct ChartPoint {
  Density base;
  TangentVector u;
  ChartPoint(Density base_, TangentVector u_, BallNorm ball = BallNorm::Orlicz)
      : base(std::move(base_)), u(std::move(u_)) {
    if (!(u.base() == base)) {
      throw std::domain_error("ChartPoint: tangent vector not based at centre");
    }
    const double nrm = chart_ball_norm(base, u.vals(), ball);
    if (!(nrm < 1.0)) {
      throw ChartDomainError("ChartPoint: ||u|| = " + std::to_string(nrm) +
                             " is outside the open unit ball");
    }
  }
};

// The chart map e_p: u -> e^u p / Z_p(u), restricted to the open unit ball.
inline Density chart_forward(const Density& p, const TangentVector& u,
                             BallNorm ball = BallNorm::Orlicz) {
  return exp_map(ChartPoint(p, u, ball).base, u);
}

struct ChartInverse {
  TangentVector u;
  double ball_norm;  // ||u|| in the chart norm at p
  bool in_ball;      // whether q lies in the chart patch of p
};

// e_p^{-1}: q -> log(q/p) - E_p[log(q/p)]. Defined for every strictly
// positive q on a finite space; ball membership is reported, never enforced.
inline ChartInverse chart_inverse(const Density& p, const Density& q,
                                  BallNorm ball = BallNorm::Orlicz) {
  if (!(p.space() == q.space())) {
    throw std::domain_error("chart_inverse: densities on different spaces");
  }
  Vec logratio(p.atom_count());
  for (std::size_t i = 0; i < logratio.size(); ++i) {
    logratio[i] = std::log(q[i]) - std::log(p[i]);
  }
  TangentVector u = center(p, logratio);
  const double nrm = chart_ball_norm(p, u.vals(), ball);
  return ChartInverse{std::move(u), nrm, nrm < 1.0};
}

// Chart transition u -> u + log(p1/p2) - E_{p2}[u + log(p1/p2)], i.e. the
// coordinate expression of e_{p2}^{-1} o e_{p1}. Agrees with the composed
// chart maps wherever the forward image is defined.
inline TangentVector transition_map(const Density& p1, const Density& p2,
                                    const TangentVector& u) {
  if (!(u.base() == p1)) {
    throw std::domain_error("transition_map: u not based at p1");
  }
  if (!(p1.space() == p2.space())) {
    throw std::domain_error("transition_map: densities on different spaces");
  }
  Vec shifted(p1.atom_count());
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    shifted[i] = u[i] + std::log(p1[i]) - std::log(p2[i]);
  }
  return center(p2, shifted);
}

// Transition data between two chart centres.
struct TransitionMap {
  Density from;
  Density to;
  TangentVector apply(const TangentVector& u) const {
    return transition_map(from, to, u);
  }
};

// q(t) = t q1 + (1-t) q2 for t in [0,1].
inline Density mixture_point(const Density& q1, const Density& q2, double t) {
  if (!(q1.space() == q2.space())) {
    throw std::domain_error("mixture_point: densities on different spaces");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("mixture_point: t must lie in [0,1]");
  }
  Vec vals(q1.atom_count());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = t * q1[i] + (1.0 - t) * q2[i];
  }
  return Density(q1.space(), std::move(vals));
}

}  // namespace infogeo
