#include "flicker/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flicker/error.hpp"
#include "flicker/parallel.hpp"

namespace flicker {

namespace {

// Positive fixed points of the map are the roots of
//   q(x) = x^3 - K x^2 + (h^2 + c K / r) x - K h^2,
// which is -K/r times r (1 - x/K)(x^2 + h^2) - c x. q(0) < 0 and q(x) > 0 for
// every x >= K, so all positive roots lie in (0, K).
struct Cubic {
  double b, c1, d;  // x^3 + b x^2 + c1 x + d

  explicit Cubic(const EcoParams& p)
      : b(-p.K), c1(p.h * p.h + p.c * p.K / p.r), d(-p.K * p.h * p.h) {}

  double operator()(double x) const { return ((x + b) * x + c1) * x + d; }

  // Real critical points, ascending.
  std::vector<double> critical_points() const {
    // q'(x) = 3x^2 + 2b x + c1
    const double disc = b * b - 3.0 * c1;
    if (disc < 0) return {};
    const double s = std::sqrt(disc);
    return {(-b - s) / 3.0, (-b + s) / 3.0};
  }
};

// Bisects a sign change of f on [lo, hi] down to adjacent doubles.
template <typename F>
double bisect(const F& f, double lo, double hi) {
  double flo = f(lo);
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

Equilibrium make_equilibrium(double x, const EcoParams& p) {
  const double m = map_multiplier(x, p);
  return {x, std::abs(m) < 1.0, m};
}

int stable_positive_count(const EcoParams& p) {
  int n = 0;
  for (const auto& e : equilibria(p))
    if (!e.trivial() && e.stable) ++n;
  return n;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Regime1: return "regime1";
    case Regime::Regime2: return "regime2";
    case Regime::Regime3: return "regime3";
  }
  return "unknown";
}

double map_multiplier(double x, const EcoParams& p) {
  const double h2 = p.h * p.h;
  const double den = x * x + h2;
  return 1.0 + p.r - 2.0 * p.r * x / p.K - p.c * 2.0 * x * h2 / (den * den);
}

std::vector<Equilibrium> equilibria(const EcoParams& p) {
  validate(p);
  const Cubic q(p);
  const double upper = 2.0 * p.K;

  std::vector<double> knots{0.0};
  for (double cp : q.critical_points())
    if (cp > 0.0 && cp < upper) knots.push_back(cp);
  knots.push_back(upper);

  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double lo = knots[k], hi = knots[k + 1];
    const double flo = q(lo), fhi = q(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi)) {
      std::ostringstream msg;
      msg << "non-finite cubic value on [" << lo << ", " << hi << "]";
      throw RootFindingError(msg.str());
    }
    // A critical point that is itself a root (tangency at a fold).
    if (fhi == 0.0 && hi < upper) {
      roots.push_back(hi);
      continue;
    }
    if (flo == 0.0) continue;  // already recorded as the previous piece's hi
    if ((flo < 0) != (fhi < 0)) roots.push_back(bisect(q, lo, hi));
  }

  // q(0) < 0 < q(2K): the number of simple crossings must be odd unless a
  // tangency was hit exactly.
  const bool tangency = std::any_of(roots.begin(), roots.end(), [&](double x) { return q(x) == 0.0; });
  if (roots.empty() || (!tangency && roots.size() % 2 == 0)) {
    std::ostringstream msg;
    msg << "could not bracket every sign change of the fixed-point cubic on [0, " << upper
        << "] (found " << roots.size() << " roots)";
    throw RootFindingError(msg.str());
  }

  std::vector<Equilibrium> out;
  out.reserve(roots.size() + 1);
  out.push_back(make_equilibrium(0.0, p));
  for (double x : roots) out.push_back(make_equilibrium(x, p));
  return out;
}

Regime classify_regime(const EcoParams& p) {
  std::vector<double> stable;
  for (const auto& e : equilibria(p))
    if (!e.trivial() && e.stable) stable.push_back(e.x_star);
  if (stable.size() >= 2) return Regime::Regime2;
  if (stable.empty())
    throw PreconditionError("no stable positive equilibrium; cyclic or chaotic dynamics are not supported");
  return stable.front() > p.K / 3.0 ? Regime::Regime1 : Regime::Regime3;
}

std::vector<double> uniform_grid(double lo, double hi, int n_steps) {
  if (n_steps < 1) throw PreconditionError("grid needs at least one point");
  if (n_steps == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(n_steps));
  const double step = (hi - lo) / (n_steps - 1);
  for (int k = 0; k < n_steps; ++k) g[static_cast<std::size_t>(k)] = lo + step * k;
  g.back() = hi;
  return g;
}

std::vector<BifurcationRow> bifurcation_scan(const EcoParams& base, double c_min, double c_max,
                                             int n_steps, unsigned threads) {
  if (!(c_min >= 0.0) || !(c_min < c_max))
    throw PreconditionError("bifurcation scan requires 0 <= c_min < c_max");
  if (n_steps < 2) throw PreconditionError("bifurcation scan requires n_steps >= 2");

  const auto grid = uniform_grid(c_min, c_max, n_steps);
  std::vector<BifurcationRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    EcoParams p = base;
    p.c = grid[k];
    BifurcationRow& row = rows[k];
    row.c = grid[k];
    try {
      row.equilibria = equilibria(p);
      row.regime = classify_regime(p);
    } catch (const Error& e) {
      row.error = std::string(e.kind()) + ": " + e.what();
    }
  });
  return rows;
}

FoldPoints fold_points(const EcoParams& base, double c_min, double c_max, double tol,
                       int n_steps) {
  if (!(c_min >= 0.0) || !(c_min < c_max))
    throw PreconditionError("fold search requires 0 <= c_min < c_max");
  if (!(tol > 0.0)) throw PreconditionError("fold search requires tol > 0");
  n_steps = std::max(n_steps, 2);

  auto bistable = [&](double c) {
    EcoParams p = base;
    p.c = c;
    return stable_positive_count(p) >= 2;
  };

  const auto grid = uniform_grid(c_min, c_max, n_steps);
  std::vector<char> flag(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) flag[k] = bistable(grid[k]);

  const auto first = std::find(flag.begin(), flag.end(), 1);
  if (first == flag.end()) {
    std::ostringstream msg;
    msg << "no bistable extraction rate found in [" << c_min << ", " << c_max << "]";
    throw NoBistability(msg.str());
  }
  const auto last = std::find(flag.rbegin(), flag.rend(), 1);
  const std::size_t k_first = static_cast<std::size_t>(first - flag.begin());
  const std::size_t k_last = grid.size() - 1 - static_cast<std::size_t>(last - flag.rbegin());
  if (k_first == 0 || k_last == grid.size() - 1)
    throw PreconditionError("bistable band is not bracketed by the search range");

  // Bisection on the predicate; `inside` is the bistable end of the bracket.
  auto refine = [&](double outside, double inside) {
    while (std::abs(inside - outside) > tol) {
      const double mid = 0.5 * (outside + inside);
      if (mid == outside || mid == inside) break;
      (bistable(mid) ? inside : outside) = mid;
    }
    return 0.5 * (outside + inside);
  };

  return {refine(grid[k_first - 1], grid[k_first]), refine(grid[k_last + 1], grid[k_last])};
}

std::optional<double> separatrix(const EcoParams& p) {
  const auto eqs = equilibria(p);
  std::vector<const Equilibrium*> stable;
  for (const auto& e : eqs)
    if (!e.trivial() && e.stable) stable.push_back(&e);
  if (stable.size() < 2) return std::nullopt;
  for (const auto& e : eqs)
    if (!e.trivial() && !e.stable && e.x_star > stable.front()->x_star &&
        e.x_star < stable.back()->x_star)
      return e.x_star;
  return std::nullopt;
}

std::optional<double> upper_stable_equilibrium(const EcoParams& p) {
  const auto eqs = equilibria(p);
  for (auto it = eqs.rbegin(); it != eqs.rend(); ++it)
    if (!it->trivial() && it->stable) return it->x_star;
  return std::nullopt;
}

}  // namespace flicker
