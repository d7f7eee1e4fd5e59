// young.hpp - the three Young functions of exponential information geometry
// and the norms they induce over a weighted finite space.
//
//   Phi1(x) = cosh(x) - 1
//   Phi2(x) = e^|x| - |x| - 1        (complementary to Phi3)
//   Phi3(x) = (1+|x|)log(1+|x|) - |x|   (the Delta2 one)
//
// All base-point norms integrate against the probability measure p*dmu, the
// same convention the chart machinery uses for its unit balls.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "infogeo/measure.hpp"

namespace infogeo {

// exp/cosh arguments beyond this are treated as overflow; the modular
// saturates to +inf, which only ever tightens norm brackets.
inline constexpr double kExpClamp = 700.0;

enum class YoungId { Phi1, Phi2, Phi3 };

class YoungFunction {
 public:
  static YoungFunction phi1() { return YoungFunction(YoungId::Phi1); }
  static YoungFunction phi2() { return YoungFunction(YoungId::Phi2); }
  static YoungFunction phi3() { return YoungFunction(YoungId::Phi3); }
  static YoungFunction from_id(YoungId id) { return YoungFunction(id); }

  double operator()(double x) const {
    const double a = std::abs(x);
    switch (id_) {
      case YoungId::Phi1: {
        if (a > kExpClamp) return std::numeric_limits<double>::infinity();
        const double s = std::sinh(0.5 * a);
        return 2.0 * s * s;  // cosh(a) - 1, stable near 0
      }
      case YoungId::Phi2:
        if (a > kExpClamp) return std::numeric_limits<double>::infinity();
        return std::expm1(a) - a;
      case YoungId::Phi3:
        return (1.0 + a) * std::log1p(a) - a;
    }
    return 0.0;  // unreachable
  }

  YoungId id() const { return id_; }

  // Phi2 and Phi3 are a complementary pair. Phi1 has no conjugate among the
  // three; it is routed to Phi3 through its equivalence with Phi2, which costs
  // a factor 2 in the Hoelder constant (Phi2(x) <= Phi1(2x)).
  YoungId conjugate_id() const {
    switch (id_) {
      case YoungId::Phi1: return YoungId::Phi3;
      case YoungId::Phi2: return YoungId::Phi3;
      case YoungId::Phi3: return YoungId::Phi2;
    }
    return YoungId::Phi3;  // unreachable
  }

  bool delta2() const { return id_ == YoungId::Phi3; }

 private:
  explicit YoungFunction(YoungId id) : id_(id) {}
  YoungId id_;
};

// \int Phi(scale * f) p dmu. Saturates to +inf past the overflow clamp.
inline double modular(const YoungFunction& phi, const Density& p, const Vec& f,
                      double scale) {
  detail::require_size(f.size(), p.atom_count(), "modular");
  detail::require_finite(f, "modular");
  if (!(scale > 0.0)) {
    throw std::domain_error("modular: scale must be > 0");
  }
  detail::Accumulator acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double term = phi(scale * f[i]);
    if (std::isinf(term)) return term;
    acc.add(p.space().weight(i) * p[i] * term);
  }
  return acc.value();
}

// Luxemburg gauge N_Phi(f) = inf{ k > 0 : \int Phi(f/k) p dmu <= 1 }.
// On a finite space with Phi vanishing only at 0 the modular is continuous
// and strictly decreasing in k, so the gauge is the unique root of
// modular(f/k) = 1. Bracket by doubling/halving, then bisect.
inline double luxemburg_norm(const YoungFunction& phi, const Density& p,
                             const Vec& f) {
  detail::require_size(f.size(), p.atom_count(), "luxemburg_norm");
  detail::require_finite(f, "luxemburg_norm");
  const double fmax = linf_norm(f);
  if (fmax == 0.0) return 0.0;

  const auto m = [&](double k) { return modular(phi, p, f, 1.0 / k); };

  double lo = fmax, hi = fmax;
  if (m(hi) > 1.0) {
    for (int i = 0; i < 200 && m(hi) > 1.0; ++i) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    for (int i = 0; i < 200 && m(lo) <= 1.0; ++i) {
      hi = lo;
      lo *= 0.5;
    }
  }
  // invariant: m(lo) >= 1 >= m(hi)
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (m(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Orlicz norm through the Amemiya representation
//   ||f||_Phi = inf_{k>0} (1 + \int Phi(k f) p dmu) / k.
// The objective is convex in 1/k: scan powers of two for a bracket, then
// golden-section. Always lands in [N_Phi(f), 2 N_Phi(f)].
inline double orlicz_norm(const YoungFunction& phi, const Density& p,
                          const Vec& f) {
  detail::require_size(f.size(), p.atom_count(), "orlicz_norm");
  detail::require_finite(f, "orlicz_norm");
  if (linf_norm(f) == 0.0) return 0.0;

  const auto objective = [&](double k) {
    const double mk = modular(phi, p, f, k);
    return std::isinf(mk) ? mk : (1.0 + mk) / k;
  };

  const double k0 = 1.0 / luxemburg_norm(phi, p, f);
  double best_k = k0;
  double best = objective(k0);
  for (int j = -60; j <= 60; ++j) {
    const double k = std::ldexp(k0, j);
    const double val = objective(k);
    if (val < best) {
      best = val;
      best_k = k;
    }
  }

  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_k * 0.5, b = best_k * 2.0;
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int i = 0; i < 300 && (b - a) > 1e-13 * b; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = objective(x2);
    }
  }
  return std::min(best, objective(0.5 * (a + b)));
}

// \int |f g| p dmu, the left-hand side of the generalised Hoelder inequality.
inline double holder_pairing(const Density& p, const Vec& f, const Vec& g) {
  detail::require_size(f.size(), p.atom_count(), "holder_pairing");
  detail::require_size(g.size(), p.atom_count(), "holder_pairing");
  detail::require_finite(f, "holder_pairing");
  detail::require_finite(g, "holder_pairing");
  detail::Accumulator acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc.add(p.space().weight(i) * p[i] * std::abs(f[i] * g[i]));
  }
  return acc.value();
}

// (N_Phi1(f), N_Phi2(f)). The two gauges are equivalent with
// N_Phi1 <= N_Phi2 <= 2 N_Phi1, from Phi1 <= Phi2 <= Phi1(2x) pointwise.
inline std::pair<double, double> equivalent_norms_check(const Density& p,
                                                        const Vec& f) {
  return {luxemburg_norm(YoungFunction::phi1(), p, f),
          luxemburg_norm(YoungFunction::phi2(), p, f)};
}

}  // namespace infogeo
