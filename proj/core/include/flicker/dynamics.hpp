#pragma once

#include <algorithm>
#include <cstdint>

namespace flicker {

// Logistic growth with a sigmoidal (type-III) harvest term.
struct EcoParams {
  double r = 1.0;   // intrinsic growth rate per step
  double K = 10.0;  // carrying capacity
  double c = 1.0;   // extraction rate
  double h = 1.0;   // half-saturation constant of the harvest

  friend bool operator==(const EcoParams&, const EcoParams&) = default;
};

// AR(1) red noise: i' = (1 - 1/T) i + eta, eta ~ N(mu, beta^2).
struct NoiseParams {
  double T = 30.0;
  double beta = 0.07;
  double mu = 0.0;

  double memory() const { return 1.0 - 1.0 / T; }

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

struct AdaptationParams {
  double l = 0.01;  // fraction of the gap |x - y| closed per step

  friend bool operator==(const AdaptationParams&, const AdaptationParams&) = default;
};

struct SystemState {
  double x = 0.0;  // environment
  double i = 0.0;  // noise level
  double y = 0.0;  // environment the agents are adapted to
  std::int64_t t = 0;

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

// Throw InvalidConfig naming the violated bound.
void validate(const EcoParams& p);
void validate(const NoiseParams& np);
void validate(const AdaptationParams& ap);
void validate(const SystemState& s);

// Deterministic bracket of the environment map: r x (1 - x/K) - c x^2 / (x^2 + h^2).
inline double growth_increment(double x, const EcoParams& p) {
  const double x2 = x * x;
  return p.r * x * (1.0 - x / p.K) - p.c * x2 / (x2 + p.h * p.h);
}

// Environment is clamped at zero; the noise level is not.
inline double step_environment(double x, double i, const EcoParams& p) {
  return std::max(0.0, growth_increment(x, p) + (1.0 + i) * x);
}

inline double step_noise(double i, const NoiseParams& np, double eta) {
  return np.memory() * i + eta;
}

inline double step_adaptation(double x, double y, const AdaptationParams& ap) {
  return ap.l * (x - y) + y;
}

// Synchronous update: all three variables read the time-t state.
inline SystemState step_coupled(const SystemState& s, const EcoParams& p,
                                const NoiseParams& np, const AdaptationParams& ap,
                                double eta) {
  return SystemState{step_environment(s.x, s.i, p), step_noise(s.i, np, eta),
                     step_adaptation(s.x, s.y, ap), s.t + 1};
}

}  // namespace flicker
