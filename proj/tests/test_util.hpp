#pragma once

// Shared helpers for the unit tests: seeded random parameter draws and
// small matrix-comparison utilities.

#include <complex>
#include <random>

#include <qxy/model.hpp>
#include <qxy/spectrum.hpp>

namespace qxy::test {

// Deterministic parameter sampler used by property-style tests.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  // Couplings in |gamma|, |lambda| <= 2 and |B| <= b_max.
  Params params(double b_max = 5.0) {
    Params p;
    p.gamma = uniform(-2.0, 2.0);
    p.lambda_field = uniform(-2.0, 2.0);
    p.b_field = uniform(-b_max, b_max);
    return p;
  }

  Params thermal_params(double b_max = 5.0) {
    Params p = params(b_max);
    p.temperature = uniform(0.05, 10.0);
    return p;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

inline Matrix4 commutator(const Matrix4& a, const Matrix4& b) {
  return a * b - b * a;
}

}  // namespace qxy::test
