#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow::test {

using Rng = std::mt19937_64;
inline constexpr double kPi = std::numbers::pi;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

inline double log_uniform(Rng& rng, double lo, double hi) { return std::pow(10.0, uniform(rng, lo, hi)); }

inline cplx random_cplx(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

/// lambda in the sector |arg| < pi - theta with log-uniform modulus.
inline cplx sector_lambda(Rng& rng, double lo, double hi, double theta = kPi / 4.0) {
  return std::polar(log_uniform(rng, lo, hi), uniform(rng, -(kPi - theta), kPi - theta));
}

inline RVec random_xi(Rng& rng, std::size_t dims, double lo, double hi) {
  const double r = log_uniform(rng, lo, hi);
  if (dims == 1) return {uniform(rng, 0.0, 1.0) < 0.5 ? -r : r};
  const double a = uniform(rng, 0.0, 2.0 * kPi);
  return {r * std::cos(a), r * std::sin(a)};
}

inline ModelParams random_params(Rng& rng) {
  return make_params(log_uniform(rng, -1.0, 1.0), log_uniform(rng, -1.0, 1.0), uniform(rng, 0.0, 2.0),
                     uniform(rng, 0.05, 1.0));
}

inline ModeData random_mode_data(Rng& rng, std::size_t nt) {
  ModeData d;
  for (std::size_t k = 0; k < nt; ++k) d.h_v.push_back(random_cplx(rng));
  d.h_w = random_cplx(rng);
  return d;
}

/// Relative difference with a scale floor.
inline double rel(cplx a, cplx b, double floor = 0.0) {
  const double s = std::max({std::abs(a), std::abs(b), floor});
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace stokes_outflow::test
