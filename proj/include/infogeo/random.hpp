// random.hpp - deterministic random instance generation for property sweeps.
// Every trial draws from its own stream derived from (seed, trial index), so
// sweeps are reproducible and order-independent.

#pragma once

#include <cstdint>
#include <random>

#include "infogeo/measure.hpp"
#include "infogeo/young.hpp"

namespace infogeo {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0,1), mapped from the raw 64-bit stream so results do not
  // depend on library distribution internals.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(detail::splitmix64(seed ^ detail::splitmix64(trial + 1)));
}

inline MeasureSpace random_space(Rng& rng, std::size_t n) {
  Vec w(n);
  for (double& x : w) x = rng.uniform(0.25, 2.0);
  return MeasureSpace(std::move(w));
}

// Density with log values drawn uniformly from [-log_range, log_range].
inline Density random_density(Rng& rng, const MeasureSpace& space,
                              double log_range = 1.0) {
  Vec vals(space.atom_count());
  for (double& x : vals) x = std::exp(rng.uniform(-log_range, log_range));
  const double mass = integrate(space, vals);
  for (double& x : vals) x /= mass;
  return Density(space, std::move(vals));
}

inline Vec random_vec(Rng& rng, std::size_t n, double lo, double hi) {
  Vec out(n);
  for (double& x : out) x = rng.uniform(lo, hi);
  return out;
}

inline TangentVector random_tangent(Rng& rng, const Density& p,
                                    double amplitude = 1.0) {
  return center(p, random_vec(rng, p.atom_count(), -amplitude, amplitude));
}

// Tangent vector rescaled so its Orlicz norm at p equals radius (< 1 keeps
// it inside the chart ball).
inline TangentVector random_ball_tangent(Rng& rng, const Density& p,
                                         double radius) {
  TangentVector u = random_tangent(rng, p);
  const double nrm = orlicz_norm(YoungFunction::phi1(), p, u.vals());
  if (nrm == 0.0) return u;
  return TangentVector(p, vec_scale(u.vals(), radius / nrm));
}

}  // namespace infogeo
