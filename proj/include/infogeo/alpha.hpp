// alpha.hpp - Amari alpha-embeddings onto spheres in L^r, the canonical
// projection, and the alpha-connections obtained by pulling the projected
// trivial connection back to the tangent bundle.
//
// With r = 2/(1-alpha):
//   embed:       p -> r p^{1/r}, landing on the radius-r sphere of L^r(mu)
//   pushforward: u -> p^{1/r} u
//   projection:  g -> g - (\int g p^{1-1/r} dmu) p^{1/r}
// Integrals here run against the base measure mu, not p dmu; the sphere lives
// in L^r(mu).

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "infogeo/connections.hpp"
#include "infogeo/measure.hpp"

namespace infogeo {

class AlphaParam {
 public:
  explicit AlphaParam(double alpha, double guard_band = 1e-6) : alpha_(alpha) {
    if (!(std::abs(alpha) <= 1.0 - guard_band)) {
      throw std::domain_error(
          "AlphaParam: alpha must lie in the open interval (-1,1) outside the "
          "guard band");
    }
    r_ = 2.0 / (1.0 - alpha);
  }

  double alpha() const { return alpha_; }
  double r() const { return r_; }
  AlphaParam negated() const { return AlphaParam(-alpha_); }

 private:
  double alpha_;
  double r_;
};

namespace detail {

inline Vec pow_vec(const Vec& v, double e) {
  Vec out(v.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(v[i], e);
  return out;
}

}  // namespace detail

// (\int |f|^r dmu)^{1/r}.
inline double lr_norm(const MeasureSpace& space, const Vec& f, double r) {
  detail::Accumulator acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc.add(space.weight(i) * std::pow(std::abs(f[i]), r));
  }
  return std::pow(acc.value(), 1.0 / r);
}

struct SpherePoint {
  AlphaParam param;
  Vec f;     // ell_alpha(p) = r p^{1/r}
  Vec star;  // f^* = sgn(f) |f|^{r-1} = r^{r-1} p^{1-1/r}
};

// ell_alpha(p) = (2/(1-alpha)) p^{(1-alpha)/2}. The star field overflows for
// alpha very close to +1 (r^{r-1} exceeds double range); the connection
// machinery below never needs it.
inline SpherePoint alpha_embed(const AlphaParam& a, const Density& p) {
  const double r = a.r();
  Vec f(p.atom_count());
  Vec star(p.atom_count());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = r * std::pow(p[i], 1.0 / r);
    star[i] = std::pow(f[i], r - 1.0);
    if (!std::isfinite(f[i]) || !std::isfinite(star[i])) {
      throw std::domain_error("alpha_embed: sphere point overflow");
    }
  }
  return SpherePoint{a, std::move(f), std::move(star)};
}

// (ell_alpha)_*: u -> p^{1/r} u, tangent to the sphere at r p^{1/r}.
inline Vec pushforward(const AlphaParam& a, const Density& p,
                       const TangentVector& u) {
  if (!(u.base() == p)) {
    throw std::domain_error("pushforward: u not based at p");
  }
  Vec out(u.atom_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::pow(p[i], 1.0 / a.r()) * u[i];
  }
  return out;
}

// (ell_alpha)_*^{-1}: divide by p^{1/r}, recentring against roundoff.
inline TangentVector pullback(const AlphaParam& a, const Density& p,
                              const Vec& g) {
  detail::require_size(g.size(), p.atom_count(), "pullback");
  detail::require_finite(g, "pullback");
  Vec out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = g[i] / std::pow(p[i], 1.0 / a.r());
  }
  return center(p, out);
}

// Canonical projection onto the sphere tangent space at f = r p^{1/r}:
// g -> g - (\int g p^{1-1/r} dmu) p^{1/r}.
inline Vec sphere_project(const AlphaParam& a, const Density& p, const Vec& g) {
  detail::require_size(g.size(), p.atom_count(), "sphere_project");
  detail::require_finite(g, "sphere_project");
  const double r = a.r();
  const Vec p_conj = detail::pow_vec(p.vals(), 1.0 - 1.0 / r);
  const double coeff = integrate(p.space(), vec_mul(g, p_conj));
  Vec out(g);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] -= coeff * std::pow(p[i], 1.0 / r);
  }
  return out;
}

// The same projection at a general sphere point, g -> g - (r^{-r} \int g f^*
// dmu) f. Agrees with sphere_project when f = r p^{1/r}.
inline Vec sphere_project_general(const AlphaParam& a,
                                  const MeasureSpace& space, const Vec& f,
                                  const Vec& fstar, const Vec& g) {
  const double coeff =
      std::pow(a.r(), -a.r()) * integrate(space, vec_mul(g, fstar));
  Vec out(g);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] -= coeff * f[i];
  }
  return out;
}

// The alpha covariant derivative: push the field forward along the curve,
// differentiate with the trivial connection on L^r (plain componentwise
// derivative), project onto the sphere tangent space, pull back.
inline DerivResult nabla_alpha(const AlphaParam& a, const CurveField& f,
                               const Curve& c, double t0) {
  const Density p = c.at(t0);
  const double r = a.r();

  Vec pushed_deriv;
  if (f.deriv && c.analytic_dlog()) {
    const Vec sval = f.eval(t0);
    const Vec sdot = f.deriv(t0);
    const Vec dl = c.dlog(t0);
    pushed_deriv.resize(sval.size());
    for (std::size_t i = 0; i < sval.size(); ++i) {
      pushed_deriv[i] = std::pow(p[i], 1.0 / r) *
                        (dl[i] * sval[i] / r + sdot[i]);
    }
  } else {
    const auto pushed = [&](double t) {
      const Density q = c.at(t);
      const Vec sval = f.eval(t);
      Vec out(sval.size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::pow(q[i], 1.0 / r) * sval[i];
      }
      return out;
    };
    pushed_deriv = richardson_central(pushed, t0, c.clamped_step(t0));
  }

  const Vec projected = sphere_project(a, p, pushed_deriv);
  Vec raw(projected.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = projected[i] / std::pow(p[i], 1.0 / r);
  }
  const double defect = std::abs(expectation(p, raw));
  return DerivResult{TangentVector(p, raw), defect};
}

inline DerivResult nabla_alpha(const AlphaParam& a, const VectorField& s,
                               const Curve& c, double t0) {
  return nabla_alpha(a, along_curve(s, c), c, t0);
}

// || nabla^alpha s - [(1+alpha)/2 nabla_exp s + (1-alpha)/2 nabla_mix s] ||_inf
// at gamma(t0); identically zero in exact arithmetic.
inline double convex_combination_gap(const AlphaParam& a, const VectorField& s,
                                     const Curve& c, double t0) {
  const CurveField f = along_curve(s, c);
  const Vec va = nabla_alpha(a, f, c, t0).vec.vals();
  const Vec ve = nabla_exp(f, c, t0).vec.vals();
  const Vec vm = nabla_mix(f, c, t0).vec.vals();
  const double we = 0.5 * (1.0 + a.alpha());
  const double wm = 0.5 * (1.0 - a.alpha());
  double gap = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    gap = std::max(gap, std::abs(va[i] - (we * ve[i] + wm * vm[i])));
  }
  return gap;
}

// Residual of the duality product rule for the pair (nabla^alpha,
// nabla^{-alpha}): d/dt <s1,s2>_{gamma(t)} at t0 minus the two covariant
// derivative pairings. Finite-difference limited.
inline double alpha_duality_gap(const AlphaParam& a, const Curve& c,
                                const VectorField& s1, const VectorField& s2,
                                double t0) {
  const Density p = c.at(t0);
  const auto pairing = [&](double t) {
    const Density q = c.at(t);
    return fisher(q, s1.eval(q), s2.eval(q));
  };
  const double dpair =
      richardson_central_scalar(pairing, t0, c.clamped_step(t0));
  const double lhs1 = fisher(p, nabla_alpha(a, s1, c, t0).vec, s2.eval(p));
  const double lhs2 =
      fisher(p, s1.eval(p), nabla_alpha(a.negated(), s2, c, t0).vec);
  return std::abs(dpair - lhs1 - lhs2);
}

// Geodesic residual under the alpha-connection, mirroring the Exp/Mix form.
inline double geodesic_residual(const Curve& c, const AlphaParam& a,
                                int samples) {
  if (samples < 2) {
    throw std::domain_error("geodesic_residual: samples must be >= 2");
  }
  double margin = 0.0;
  if (!c.analytic_dlog() || !c.analytic_ddlog()) {
    margin =
        2.0 * fd_step2(std::max(std::abs(c.t_min()), std::abs(c.t_max())));
  }
  const double lo = c.t_min() + margin;
  const double hi = c.t_max() - margin;
  const CurveField tf = tangent_field(c);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    const DerivResult r = nabla_alpha(a, tf, c, t);
    worst = std::max(worst, linf_norm(r.vec.vals()) + r.centering_defect);
  }
  return worst;
}

}  // namespace infogeo
