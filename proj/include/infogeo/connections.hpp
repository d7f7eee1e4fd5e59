// connections.hpp - the Fisher scalar product, the two extremal flat
// connections (exponential and mixture), their parallel transports, covariant
// derivatives along curves, and geodesic residual checks.
//
// Transports:
//   exp:  u -> u - E_q[u]            (subtract a constant)
//   mix:  u -> (p/q) u               (multiply by the density ratio)
// Covariant derivatives along a curve gamma with l(t) = log gamma(t):
//   exp:  (d_v s) - E_p[d_v s]
//   mix:  (d_v s) + s(p) l'(0)

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "infogeo/charts.hpp"
#include "infogeo/measure.hpp"

namespace infogeo {

// ---------------------------------------------------------------------------
// Finite differencing: central difference with one Richardson level.

inline double fd_step(double t0) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(1e-5, std::cbrt(eps) * (1.0 + std::abs(t0)));
}

inline Vec richardson_central(const std::function<Vec(double)>& f, double t0,
                              double h) {
  if (!(h > 0.0)) {
    throw std::runtime_error("richardson_central: step underflow");
  }
  const auto diff = [&](double step) {
    const Vec a = f(t0 + step);
    const Vec b = f(t0 - step);
    Vec out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = (a[i] - b[i]) / (2.0 * step);
    }
    return out;
  };
  const Vec d1 = diff(h);
  const Vec d2 = diff(0.5 * h);
  Vec out(d1.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (4.0 * d2[i] - d1[i]) / 3.0;
  }
  return out;
}

inline double richardson_central_scalar(const std::function<double(double)>& f,
                                        double t0, double h) {
  if (!(h > 0.0)) {
    throw std::runtime_error("richardson_central_scalar: step underflow");
  }
  const auto diff = [&](double step) {
    return (f(t0 + step) - f(t0 - step)) / (2.0 * step);
  };
  return (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
}

// Second derivative by the direct three-point stencil with one Richardson
// level. Wider step than the first-derivative one: the h^-2 roundoff
// amplification dominates otherwise.
inline double fd_step2(double t0) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(1e-4, std::sqrt(std::sqrt(eps)) * (1.0 + std::abs(t0)));
}

inline Vec richardson_second(const std::function<Vec(double)>& f, double t0,
                             double h) {
  if (!(h > 0.0)) {
    throw std::runtime_error("richardson_second: step underflow");
  }
  const Vec mid = f(t0);
  const auto stencil = [&](double step) {
    const Vec a = f(t0 + step);
    const Vec b = f(t0 - step);
    Vec out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = (a[i] - 2.0 * mid[i] + b[i]) / (step * step);
    }
    return out;
  };
  const Vec d1 = stencil(h);
  const Vec d2 = stencil(0.5 * h);
  Vec out(d1.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (4.0 * d2[i] - d1[i]) / 3.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curves t -> Density with the derivative of log gamma.

enum class CurveKind { ExpSegment, MixSegment, ChartLine, Custom };

class Curve {
 public:
  // q(t) = e^{t u} p / Z_p(t u), t in [0,1].
  static Curve exp_segment(const Density& p, const TangentVector& u) {
    Curve c(CurveKind::ExpSegment, 0.0, 1.0);
    const Vec dir = u.vals();
    c.gamma_ = [p, dir](double t) {
      return exp_map(p, TangentVector(p, vec_scale(dir, t)));
    };
    c.dlog_ = [p, dir](double t) {
      const Density q = exp_map(p, TangentVector(p, vec_scale(dir, t)));
      const double mean = expectation(q, dir);
      Vec out(dir);
      for (double& x : out) x -= mean;
      return out;
    };
    c.ddlog_ = make_recentred_direction_ddlog(c.gamma_, dir);
    return c;
  }

  // q(t) = t q1 + (1-t) q2, t in [0,1].
  static Curve mix_segment(const Density& q1, const Density& q2) {
    if (!(q1.space() == q2.space())) {
      throw std::domain_error("mix_segment: densities on different spaces");
    }
    Curve c(CurveKind::MixSegment, 0.0, 1.0);
    c.gamma_ = [q1, q2](double t) { return mixture_point(q1, q2, t); };
    c.dlog_ = [q1, q2](double t) {
      const Density q = mixture_point(q1, q2, t);
      Vec out(q.atom_count());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (q1[i] - q2[i]) / q[i];
      }
      return out;
    };
    // l'' = -(l')^2 along a mixture line
    const auto dlog = c.dlog_;
    c.ddlog_ = [dlog](double t) {
      Vec out = dlog(t);
      for (double& x : out) x = -x * x;
      return out;
    };
    return c;
  }

  // u(t) = u0 + t du in the chart at p, t in [0,1].
  static Curve chart_line(const Density& p, const TangentVector& u0,
                          const TangentVector& du) {
    if (!(u0.base() == p) || !(du.base() == p)) {
      throw std::domain_error("chart_line: vectors not based at p");
    }
    Curve c(CurveKind::ChartLine, 0.0, 1.0);
    const Vec base = u0.vals();
    const Vec dir = du.vals();
    c.gamma_ = [p, base, dir](double t) {
      return exp_map(p, TangentVector(p, vec_add(base, vec_scale(dir, t))));
    };
    c.dlog_ = [c_gamma = c.gamma_, dir](double t) {
      const Density q = c_gamma(t);
      const double mean = expectation(q, dir);
      Vec out(dir);
      for (double& x : out) x -= mean;
      return out;
    };
    c.ddlog_ = make_recentred_direction_ddlog(c.gamma_, dir);
    return c;
  }

  static Curve custom(std::function<Density(double)> gamma, double t_min,
                      double t_max) {
    Curve c(CurveKind::Custom, t_min, t_max);
    c.gamma_ = std::move(gamma);
    return c;
  }

  static Curve custom(std::function<Density(double)> gamma,
                      std::function<Vec(double)> dlog, double t_min,
                      double t_max) {
    Curve c(CurveKind::Custom, t_min, t_max);
    c.gamma_ = std::move(gamma);
    c.dlog_ = std::move(dlog);
    return c;
  }

  Density at(double t) const { return gamma_(t); }

  // d/dt log gamma(t); analytic when the curve kind supplies it, otherwise a
  // Richardson central difference of log gamma.
  Vec dlog(double t) const {
    if (dlog_) return dlog_(t);
    const auto log_gamma = [this](double s) {
      const Density q = gamma_(s);
      Vec out(q.atom_count());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(q[i]);
      return out;
    };
    return richardson_central(log_gamma, t, clamped_step(t));
  }

  // d^2/dt^2 log gamma(t), used by tangent fields of geodesic checks. With an
  // analytic dlog one differencing level suffices; otherwise the three-point
  // stencil on log gamma avoids stacking two noisy first differences.
  Vec ddlog(double t) const {
    if (ddlog_) return ddlog_(t);
    if (dlog_) {
      const auto dl = [this](double s) { return dlog(s); };
      return richardson_central(dl, t, clamped_step(t));
    }
    const auto log_gamma = [this](double s) {
      const Density q = gamma_(s);
      Vec out(q.atom_count());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(q[i]);
      return out;
    };
    double h = fd_step2(t);
    const double margin = std::min(t_max_ - t, t - t_min_);
    if (!(margin > 0.0)) {
      throw std::domain_error("Curve: cannot difference at the domain edge");
    }
    h = std::min(h, 0.5 * margin);
    return richardson_second(log_gamma, t, h);
  }

  bool analytic_dlog() const { return static_cast<bool>(dlog_); }
  bool analytic_ddlog() const { return static_cast<bool>(ddlog_); }
  CurveKind kind() const { return kind_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

  // Largest step usable for central differencing at t without leaving the
  // curve domain.
  double clamped_step(double t) const {
    double h = fd_step(t);
    const double margin = std::min(t_max_ - t, t - t_min_);
    if (!(margin > 0.0)) {
      throw std::domain_error("Curve: cannot difference at the domain edge");
    }
    h = std::min(h, 0.5 * margin);
    return h;
  }

 private:
  Curve(CurveKind kind, double t_min, double t_max)
      : kind_(kind), t_min_(t_min), t_max_(t_max) {}

  // l''(t) for curves whose dlog is a fixed direction recentred at gamma(t):
  // d/dt (dir - E_{gamma(t)}[dir]) = -E_{gamma(t)}[dir * l'(t)] * 1.
  static std::function<Vec(double)> make_recentred_direction_ddlog(
      std::function<Density(double)> gamma, Vec dir) {
    return [gamma = std::move(gamma), dir = std::move(dir)](double t) {
      const Density q = gamma(t);
      const double mean = expectation(q, dir);
      Vec centred(dir);
      for (double& x : centred) x -= mean;
      const double c = expectation(q, vec_mul(dir, centred));
      return Vec(dir.size(), -c);
    };
  }

  CurveKind kind_;
  double t_min_;
  double t_max_;
  std::function<Density(double)> gamma_;
  std::function<Vec(double)> dlog_;
  std::function<Vec(double)> ddlog_;
};

// ---------------------------------------------------------------------------
// Vector fields: sections q -> T_q, evaluated pointwise on densities.

struct VectorField {
  std::function<TangentVector(const Density&)> eval;
  // Optional analytic derivative of t -> eval(c.at(t)).vals() along a curve.
  std::function<Vec(const Curve&, double)> dalong;
  std::string descriptor;

  // s(q) = m - E_q[m]: covariantly constant for the exponential connection.
  static VectorField exp_parallel(Vec m) {
    VectorField s;
    s.descriptor = "parallel-exp";
    s.eval = [m](const Density& q) { return center(q, m); };
    s.dalong = [m](const Curve& c, double t) {
      const Density q = c.at(t);
      const Vec dl = c.dlog(t);
      const double cov = expectation(q, vec_mul(m, dl));
      return Vec(m.size(), -cov);
    };
    return s;
  }

  // s(q) = (p0/q) u0: covariantly constant for the mixture connection.
  static VectorField mix_parallel(const Density& p0, const TangentVector& u0) {
    if (!(u0.base() == p0)) {
      throw std::domain_error("mix_parallel: u0 not based at p0");
    }
    VectorField s;
    s.descriptor = "parallel-mix";
    const Vec numer = vec_mul(p0.vals(), u0.vals());  // p0 * u0, fixed
    s.eval = [numer](const Density& q) {
      Vec out(numer);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] /= q[i];
      return TangentVector(q, std::move(out));
    };
    s.dalong = [numer](const Curve& c, double t) {
      const Density q = c.at(t);
      const Vec dl = c.dlog(t);
      Vec out(numer);
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = -(numer[i] / q[i]) * dl[i];
      }
      return out;
    };
    return s;
  }

  // s(q) = center(q, a + b q + c q^2) with per-atom coefficients; a smooth
  // section that is parallel for neither connection.
  static VectorField polynomial(Vec a, Vec b, Vec c) {
    VectorField s;
    s.descriptor = "polynomial";
    const auto raw = [a, b, c](const Density& q) {
      Vec out(a.size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a[i] + b[i] * q[i] + c[i] * q[i] * q[i];
      }
      return out;
    };
    s.eval = [raw](const Density& q) { return center(q, raw(q)); };
    s.dalong = [raw, b, c](const Curve& cv, double t) {
      const Density q = cv.at(t);
      const Vec dl = cv.dlog(t);
      const Vec P = raw(q);
      Vec Pdot(P.size());
      for (std::size_t i = 0; i < P.size(); ++i) {
        Pdot[i] = (b[i] + 2.0 * c[i] * q[i]) * q[i] * dl[i];
      }
      const double drift = expectation(q, vec_add(Pdot, vec_mul(P, dl)));
      Vec out(Pdot);
      for (double& x : out) x -= drift;
      return out;
    };
    return s;
  }

  static VectorField custom(std::function<TangentVector(const Density&)> eval,
                            std::string descriptor = "custom") {
    VectorField s;
    s.eval = std::move(eval);
    s.descriptor = std::move(descriptor);
    return s;
  }
};

// A field restricted to a curve: t -> atom values, with an optional analytic
// t-derivative.
struct CurveField {
  std::function<Vec(double)> eval;
  std::function<Vec(double)> deriv;  // null -> finite differences
};

inline CurveField along_curve(const VectorField& s, const Curve& c) {
  CurveField f;
  f.eval = [s, c](double t) { return s.eval(c.at(t)).vals(); };
  if (s.dalong) {
    f.deriv = [s, c](double t) { return s.dalong(c, t); };
  }
  return f;
}

// The field tangent to the curve itself, s(t) = d/dt log(gamma(t)/p) = l'(t).
inline CurveField tangent_field(const Curve& c) {
  CurveField f;
  f.eval = [c](double t) { return c.dlog(t); };
  f.deriv = [c](double t) { return c.ddlog(t); };
  return f;
}

inline Vec curvefield_derivative(const CurveField& f, const Curve& c,
                                 double t0) {
  if (f.deriv) return f.deriv(t0);
  return richardson_central(f.eval, t0, c.clamped_step(t0));
}

// (d_v s)(gamma(t0)): the plain derivative of the field along the curve.
inline Vec directional_derivative(const VectorField& s, const Curve& c,
                                  double t0) {
  return curvefield_derivative(along_curve(s, c), c, t0);
}

// ---------------------------------------------------------------------------
// Fisher scalar product and the flat transports.

// <u,v>_p = \int u v p dmu.
inline double fisher(const Density& p, const TangentVector& u,
                     const TangentVector& v) {
  if (!(u.base() == p) || !(v.base() == p)) {
    throw std::domain_error("fisher: vectors not based at p");
  }
  detail::Accumulator acc;
  for (std::size_t i = 0; i < p.atom_count(); ++i) {
    acc.add(p.space().weight(i) * p[i] * u[i] * v[i]);
  }
  return acc.value();
}

inline TangentVector transport_exp(const Density& p, const Density& q,
                                   const TangentVector& u) {
  if (!(u.base() == p)) {
    throw std::domain_error("transport_exp: u not based at p");
  }
  if (!(p.space() == q.space())) {
    throw std::domain_error("transport_exp: densities on different spaces");
  }
  const double mean = expectation(q, u.vals());
  Vec out = u.vals();
  for (double& x : out) x -= mean;
  return TangentVector(q, std::move(out));
}

inline TangentVector transport_mix(const Density& p, const Density& q,
                                   const TangentVector& u) {
  if (!(u.base() == p)) {
    throw std::domain_error("transport_mix: u not based at p");
  }
  if (!(p.space() == q.space())) {
    throw std::domain_error("transport_mix: densities on different spaces");
  }
  Vec out(u.atom_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = u[i] * p[i] / q[i];
  }
  return TangentVector(q, std::move(out));
}

// <tau_exp u, tau_mix v>_q - <u,v>_p, identically zero in exact arithmetic:
// the two transports are dual with respect to the Fisher pairing.
inline double duality_gap(const Density& p, const Density& q,
                          const TangentVector& u, const TangentVector& v) {
  return fisher(q, transport_exp(p, q, u), transport_mix(p, q, v)) -
         fisher(p, u, v);
}

// ---------------------------------------------------------------------------
// Covariant derivatives.

struct DerivResult {
  TangentVector vec;        // covariant derivative at gamma(t0)
  double centering_defect;  // |E_q[raw]| before the constructor recentred it
};

inline DerivResult nabla_exp(const CurveField& f, const Curve& c, double t0) {
  const Density q = c.at(t0);
  const Vec d = curvefield_derivative(f, c, t0);
  const double mean = expectation(q, d);
  Vec raw(d);
  for (double& x : raw) x -= mean;
  const double defect = std::abs(expectation(q, raw));
  return DerivResult{TangentVector(q, std::move(raw)), defect};
}

inline DerivResult nabla_exp(const VectorField& s, const Curve& c, double t0) {
  return nabla_exp(along_curve(s, c), c, t0);
}

inline DerivResult nabla_mix(const CurveField& f, const Curve& c, double t0) {
  const Density q = c.at(t0);
  const Vec d = curvefield_derivative(f, c, t0);
  const Vec sval = f.eval(t0);
  const Vec dl = c.dlog(t0);
  Vec raw(d);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] += sval[i] * dl[i];
  }
  const double defect = std::abs(expectation(q, raw));
  return DerivResult{TangentVector(q, raw), defect};
}

inline DerivResult nabla_mix(const VectorField& s, const Curve& c, double t0) {
  return nabla_mix(along_curve(s, c), c, t0);
}

// ---------------------------------------------------------------------------
// Geodesics.

// q(t) = e^{t u} p / Z_p(t u).
inline Density exp_geodesic(const Density& p, const TangentVector& u,
                            double t) {
  if (!(u.base() == p)) {
    throw std::domain_error("exp_geodesic: u not based at p");
  }
  return exp_map(p, TangentVector(p, vec_scale(u.vals(), t)));
}

enum class ConnectionKind { Exp, Mix };

// Covariant derivative of the curve's own tangent field at one parameter
// value; the infinity norm plus any centring defect.
inline double geodesic_residual_at(const Curve& c, ConnectionKind kind,
                                   double t) {
  const CurveField tf = tangent_field(c);
  const DerivResult r = kind == ConnectionKind::Exp ? nabla_exp(tf, c, t)
                                                    : nabla_mix(tf, c, t);
  return linf_norm(r.vec.vals()) + r.centering_defect;
}

// sup over a sample grid of ||nabla_{gamma'} gamma'||_inf. Near zero exactly
// when the curve kind matches the connection.
inline double geodesic_residual(const Curve& c, ConnectionKind kind,
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
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    worst = std::max(worst, geodesic_residual_at(c, kind, t));
  }
  return worst;
}

}  // namespace infogeo
