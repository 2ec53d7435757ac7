#include "flicker/wellbeing.hpp"

#include <limits>
#include <vector>

#include "flicker/error.hpp"
#include "flicker/stats.hpp"

namespace flicker {

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Case1: return "case1";
    case CaseLabel::Case2: return "case2";
    case CaseLabel::Custom: return "custom";
  }
  return "custom";
}

void validate(const WellbeingParams& w, double x_max) {
  if (!std::isfinite(w.m)) throw ValidationError("wellbeing.m", "must be finite");
  if (!std::isfinite(w.n)) throw ValidationError("wellbeing.n", "must be finite");
  if (!(std::isfinite(w.a) && w.a > 0)) throw ValidationError("wellbeing.a", "must be finite and > 0");
  // Affine, so positivity at both ends covers the whole range.
  if (!(payoff(0.0, w) > 0) || !(payoff(x_max, w) > 0))
    throw ValidationError("wellbeing.m", "payoff m + n x must be positive on the operating range");
}

double average_payoff(std::span<const double> xs, const WellbeingParams& w) {
  if (xs.empty()) throw EmptyTrajectory("average payoff of an empty trajectory");
  std::vector<double> v(xs.size());
  for (std::size_t t = 0; t < xs.size(); ++t) v[t] = payoff(xs[t], w);
  return mean(v);
}

double average_utility(std::span<const double> xs, std::span<const double> ys,
                       const WellbeingParams& w) {
  if (xs.size() != ys.size()) throw LengthMismatch("x and y trajectories differ in length");
  if (xs.empty()) throw EmptyTrajectory("average utility of an empty trajectory");
  std::vector<double> v(xs.size());
  for (std::size_t t = 0; t < xs.size(); ++t) v[t] = utility(xs[t], ys[t], w);
  return mean(v);
}

double payoff_crossover_level(const WellbeingParams& a, const WellbeingParams& b) {
  if (a.n == b.n) return std::numeric_limits<double>::quiet_NaN();
  return (b.m - a.m) / (a.n - b.n);
}

}  // namespace flicker
