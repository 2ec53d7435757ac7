#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>

namespace flicker {

// Affine payoff pi(x) = m + n x and Gaussian misadaptation penalty of
// half-width a.
struct WellbeingParams {
  double m = 5.0;
  double n = 0.5;
  double a = 3.0;

  friend bool operator==(const WellbeingParams&, const WellbeingParams&) = default;
};

enum class CaseLabel { Case1, Case2, Custom };

const char* to_string(CaseLabel c);

struct CaseProfile {
  CaseLabel label = CaseLabel::Case1;
  WellbeingParams params;

  friend bool operator==(const CaseProfile&, const CaseProfile&) = default;
};

// Specialist: steep payoff, narrow tolerance to misadaptation.
inline CaseProfile case1_profile() { return {CaseLabel::Case1, {5.0, 0.5, 3.0}}; }
// Generalist: flatter payoff, wider tolerance.
inline CaseProfile case2_profile() { return {CaseLabel::Case2, {5.75, 0.1, 5.0}}; }

// Rejects a <= 0 and payoffs that are not positive over [0, x_max].
void validate(const WellbeingParams& w, double x_max);

inline double payoff(double x, const WellbeingParams& w) { return w.m + w.n * x; }

inline double utility(double x, double y, const WellbeingParams& w) {
  const double d = x - y;
  return payoff(x, w) * std::exp(-std::numbers::ln2 * d * d / (w.a * w.a));
}

// Time averages of payoff and utility. Throw EmptyTrajectory / LengthMismatch.
double average_payoff(std::span<const double> xs, const WellbeingParams& w);
double average_utility(std::span<const double> xs, std::span<const double> ys,
                       const WellbeingParams& w);

// Payoffs of two profiles coincide at this environment level; NaN when the
// slopes are equal.
double payoff_crossover_level(const WellbeingParams& a, const WellbeingParams& b);

}  // namespace flicker
