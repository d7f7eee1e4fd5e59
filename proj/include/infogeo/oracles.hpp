// oracles.hpp - independent reference computations used only by verification
// code. Nothing here is called by the implementation paths it cross-checks.
//
// The main entry is the Orlicz norm as a literal dual supremum
//   sup { \int |f g| p dmu : \int Psi(g) p dmu <= 1 }
// with Psi the true complementary Young function, maximised by brute force on
// 2- and 3-atom spaces (boundary parametrisation + golden-section ascent; the
// sliced objective is concave).

#pragma once

#include <cmath>
#include <stdexcept>

#include "infogeo/measure.hpp"
#include "infogeo/young.hpp"

namespace infogeo::oracles {

// True complementary Young functions:
//   Phi1 = cosh - 1        -> Psi(y) = y asinh(y) - sqrt(1+y^2) + 1
//   Phi2 = e^|x| - |x| - 1 -> Phi3
//   Phi3                   -> Phi2
inline double conjugate_young(YoungId id, double y) {
  const double a = std::abs(y);
  switch (id) {
    case YoungId::Phi1:
      return a * std::asinh(a) - std::sqrt(1.0 + a * a) + 1.0;
    case YoungId::Phi2:
      return YoungFunction::phi3()(a);
    case YoungId::Phi3:
      return YoungFunction::phi2()(a);
  }
  return 0.0;  // unreachable
}

// Inverse of the conjugate on [0, inf); bracket by doubling, then bisect.
inline double conjugate_young_inverse(YoungId id, double target) {
  if (target <= 0.0) return 0.0;
  double hi = 1.0;
  for (int i = 0; i < 2000 && conjugate_young(id, hi) < target; ++i) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (conjugate_young(id, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail {

template <typename F>
double golden_max(F&& f, double lo, double hi, int iters = 90) {
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::max(f1, f2);
}

}  // namespace detail

// Brute-force Orlicz norm on 2 or 3 atoms. The supremum is attained on the
// modular boundary because the objective is increasing in each g_i, so we
// spend the unit Psi-budget across atoms and ascend.
inline double dual_supremum_norm(YoungId id, const Density& p, const Vec& f) {
  const std::size_t n = p.atom_count();
  if (n != 2 && n != 3) {
    throw std::domain_error("dual_supremum_norm: only 2- or 3-atom spaces");
  }
  if (linf_norm(f) == 0.0) return 0.0;

  Vec mass(n), coeff(n);
  for (std::size_t i = 0; i < n; ++i) {
    mass[i] = p.space().weight(i) * p[i];
    coeff[i] = mass[i] * std::abs(f[i]);
  }

  // Best value for the last atom given the leftover Psi-budget.
  const auto last_atom = [&](std::size_t i, double budget) {
    if (budget <= 0.0) return 0.0;
    return coeff[i] * conjugate_young_inverse(id, budget / mass[i]);
  };

  if (n == 2) {
    const double g1max = conjugate_young_inverse(id, 1.0 / mass[0]);
    return detail::golden_max(
        [&](double g1) {
          const double budget = 1.0 - mass[0] * conjugate_young(id, g1);
          return coeff[0] * g1 + last_atom(1, budget);
        },
        0.0, g1max);
  }

  const double g1max = conjugate_young_inverse(id, 1.0 / mass[0]);
  return detail::golden_max(
      [&](double g1) {
        const double outer_budget = 1.0 - mass[0] * conjugate_young(id, g1);
        if (outer_budget <= 0.0) return coeff[0] * g1;
        const double g2max =
            conjugate_young_inverse(id, outer_budget / mass[1]);
        const double inner = detail::golden_max(
            [&](double g2) {
              const double budget =
                  outer_budget - mass[1] * conjugate_young(id, g2);
              return coeff[1] * g2 + last_atom(2, budget);
            },
            0.0, g2max, 70);
        return coeff[0] * g1 + inner;
      },
      0.0, g1max, 70);
}

}  // namespace infogeo::oracles
