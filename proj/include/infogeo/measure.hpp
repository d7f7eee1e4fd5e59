// measure.hpp - finite atomic measure spaces and the point/tangent types built
// on them. A MeasureSpace is a list of strictly positive atom weights, a
// Density is a strictly positive normalised density against those weights, and
// a TangentVector is a centred random variable attached to its base density.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace infogeo {

using Vec = std::vector<double>;

// Constructor gates: inputs within the repair tolerance are renormalised /
// recentred to machine accuracy, anything worse is rejected.
inline constexpr double kRepairTolerance = 1e-9;
inline constexpr double kInvariantTolerance = 1e-12;
// Atom values at or below this floor would overflow p/q ratios downstream.
inline constexpr double kPositivityFloor = 1e-300;

namespace detail {

// Neumaier-compensated accumulator; weighted sums stay accurate to ~1 ulp
// independently of atom count.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline void require_finite(const Vec& f, const char* what) {
  for (double x : f) {
    if (!std::isfinite(x)) {
      throw std::domain_error(std::string(what) + ": non-finite value");
    }
  }
}

inline void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::domain_error(std::string(what) + ": expected " +
                            std::to_string(want) + " atom values, got " +
                            std::to_string(got));
  }
}

}  // namespace detail

class MeasureSpace {
 public:
  explicit MeasureSpace(Vec weights) : w_(std::move(weights)) {
    if (w_.empty()) {
      throw std::invalid_argument("MeasureSpace: at least one atom required");
    }
    detail::Accumulator acc;
    for (double wi : w_) {
      if (!std::isfinite(wi) || wi <= 0.0) {
        throw std::invalid_argument(
            "MeasureSpace: weights must be finite and strictly positive");
      }
      acc.add(wi);
    }
    mass_ = acc.value();
    if (!std::isfinite(mass_) || mass_ <= 0.0) {
      throw std::invalid_argument("MeasureSpace: total mass must be positive");
    }
  }

  std::size_t atom_count() const { return w_.size(); }
  const Vec& weights() const { return w_; }
  double weight(std::size_t i) const { return w_[i]; }
  double total_mass() const { return mass_; }

  friend bool operator==(const MeasureSpace& a, const MeasureSpace& b) {
    return a.w_ == b.w_;
  }

 private:
  Vec w_;
  double mass_ = 0.0;
};

// \int f dmu over the atoms.
inline double integrate(const MeasureSpace& space, const Vec& f) {
  detail::require_size(f.size(), space.atom_count(), "integrate");
  detail::require_finite(f, "integrate");
  detail::Accumulator acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc.add(space.weight(i) * f[i]);
  }
  return acc.value();
}

class Density {
 public:
  Density(MeasureSpace space, Vec vals)
      : space_(std::move(space)), vals_(std::move(vals)) {
    detail::require_size(vals_.size(), space_.atom_count(), "Density");
    for (double v : vals_) {
      if (!std::isfinite(v) || v <= kPositivityFloor) {
        throw std::invalid_argument(
            "Density: atom values must be finite and > 1e-300");
      }
    }
    const double mass = integrate(space_, vals_);
    if (std::abs(mass - 1.0) > kRepairTolerance) {
      throw std::invalid_argument("Density: mass " + std::to_string(mass) +
                                  " deviates from 1 beyond 1e-9");
    }
    for (double& v : vals_) v /= mass;
  }

  const MeasureSpace& space() const { return space_; }
  const Vec& vals() const { return vals_; }
  double operator[](std::size_t i) const { return vals_[i]; }
  std::size_t atom_count() const { return vals_.size(); }

  friend bool operator==(const Density& a, const Density& b) {
    return a.space_ == b.space_ && a.vals_ == b.vals_;
  }

 private:
  MeasureSpace space_;
  Vec vals_;
};

// E_p(f) = \int f p dmu.
inline double expectation(const Density& p, const Vec& f) {
  detail::require_size(f.size(), p.atom_count(), "expectation");
  detail::require_finite(f, "expectation");
  detail::Accumulator acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc.add(p.space().weight(i) * p[i] * f[i]);
  }
  return acc.value();
}

class TangentVector {
 public:
  TangentVector(Density base, Vec vals)
      : base_(std::move(base)), vals_(std::move(vals)) {
    detail::require_size(vals_.size(), base_.atom_count(), "TangentVector");
    detail::require_finite(vals_, "TangentVector");
    const double mean = expectation(base_, vals_);
    if (std::abs(mean) > kRepairTolerance) {
      throw std::invalid_argument("TangentVector: mean " +
                                  std::to_string(mean) +
                                  " deviates from 0 beyond 1e-9");
    }
    if (mean != 0.0) {
      for (double& v : vals_) v -= mean;
    }
  }

  const Density& base() const { return base_; }
  const Vec& vals() const { return vals_; }
  double operator[](std::size_t i) const { return vals_[i]; }
  std::size_t atom_count() const { return vals_.size(); }

 private:
  Density base_;
  Vec vals_;
};

// Projects f onto the centred functions at p: f - E_p(f). Idempotent.
inline TangentVector center(const Density& p, const Vec& f) {
  const double mean = expectation(p, f);
  Vec out(f);
  for (double& v : out) v -= mean;
  return TangentVector(p, std::move(out));
}

// Small dense-vector helpers shared by the geometry modules and tests.

inline Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

inline Vec vec_scale(const Vec& a, double s) {
  Vec out(a);
  for (double& v : out) v *= s;
  return out;
}

inline Vec vec_mul(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

inline double linf_norm(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double linf_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace infogeo
