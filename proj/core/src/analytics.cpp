#include "flicker/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "flicker/error.hpp"
#include "flicker/parallel.hpp"
#include "flicker/stats.hpp"

namespace flicker {

namespace {

std::optional<Regime> try_regime(EcoParams p, double c) {
  p.c = c;
  try {
    return classify_regime(p);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string describe(const Error& e) { return std::string(e.kind()) + ": " + e.what(); }

std::uint64_t mix(std::uint64_t acc, std::uint64_t v) {
  return (acc ^ v) * 0x100000001b3ULL;
}

}  // namespace

Basin classify_basin(double x, double separatrix) {
  if (!(separatrix > 0)) throw PreconditionError("separatrix must be > 0");
  return x >= separatrix ? Basin::High : Basin::Low;
}

FlickerStats flicker_stats(std::span<const double> xs, double separatrix, int debounce) {
  if (xs.empty()) throw EmptyTrajectory("flicker statistics of an empty trajectory");
  if (debounce < 1) throw PreconditionError("debounce must be >= 1");

  const std::size_t n = xs.size();
  std::vector<Basin> raw(n);
  for (std::size_t t = 0; t < n; ++t) raw[t] = classify_basin(xs[t], separatrix);

  std::vector<Basin> label(n);
  Basin current = raw[0];
  for (std::size_t t = 0; t < n;) {
    if (raw[t] == current) {
      label[t++] = current;
      continue;
    }
    std::size_t end = t;
    while (end < n && raw[end] != current) ++end;
    if (end - t >= static_cast<std::size_t>(debounce)) current = raw[t];
    std::fill(label.begin() + static_cast<std::ptrdiff_t>(t),
              label.begin() + static_cast<std::ptrdiff_t>(end), current);
    t = end;
  }

  FlickerStats st;
  st.length = static_cast<std::int64_t>(n);
  std::int64_t high_total = 0;
  for (std::size_t t = 0; t < n;) {
    std::size_t end = t;
    while (end < n && label[end] == label[t]) ++end;
    const auto dwell = static_cast<std::int64_t>(end - t);
    if (label[t] == Basin::High) {
      st.residence_high.push_back(dwell);
      high_total += dwell;
    } else {
      st.residence_low.push_back(dwell);
    }
    t = end;
  }
  st.n_transitions = static_cast<int>(st.residence_high.size() + st.residence_low.size()) - 1;
  st.fraction_high = static_cast<double>(high_total) / static_cast<double>(n);
  return st;
}

std::vector<SweepRow> utility_sweep(const SimConfig& base, std::span<const double> c_grid,
                                    std::span<const double> l_values, int n_seeds,
                                    unsigned threads) {
  if (c_grid.empty() || l_values.empty()) throw PreconditionError("sweep grids must be nonempty");
  if (n_seeds < 1) throw PreconditionError("sweep needs n_seeds >= 1");

  std::vector<SweepRow> rows;
  rows.reserve(c_grid.size() * l_values.size());
  for (double l : l_values)
    for (double c : c_grid) {
      SweepRow row;
      row.c = c;
      row.l = l;
      rows.push_back(std::move(row));
    }

  parallel_for(rows.size(), resolve_threads(threads), [&](std::size_t k) {
    SweepRow& row = rows[k];
    SimConfig cfg = base;
    cfg.eco.c = row.c;
    cfg.adapt.l = row.l;
    try {
      row.regime = classify_regime(cfg.eco);
      const EnsembleSummary s = run_ensemble(cfg, n_seeds, 1);
      row.avg_payoff = s.mean_payoff;
      row.stderr_payoff = s.stderr_payoff;
      row.avg_utility = s.mean_utility;
      row.stderr_utility = s.stderr_utility;
    } catch (const Error& e) {
      row.error = describe(e);
      row.avg_payoff = row.avg_utility = std::nan("");
    }
  });
  return rows;
}

Crossover locate_crossover(std::span<const double> c_grid, std::span<const double> a,
                           std::span<const double> a_se, std::span<const double> b,
                           std::span<const double> b_se) {
  const std::size_t n = c_grid.size();
  if (a.size() != n || b.size() != n || a_se.size() != n || b_se.size() != n)
    throw LengthMismatch("crossover inputs must match the grid length");

  Crossover out;
  std::size_t k = 0;
  while (k < n && !(b[k] - a[k] > 0)) ++k;
  if (k == n) return out;

  out.found = true;
  out.grid_index = k;
  if (k == 0) {
    out.c = c_grid[0];
  } else {
    // Bisection on the linear interpolant of b - a between grid cells.
    const double c0 = c_grid[k - 1], c1 = c_grid[k];
    const double d0 = b[k - 1] - a[k - 1], d1 = b[k] - a[k];
    auto diff = [&](double c) { return d0 + (d1 - d0) * (c - c0) / (c1 - c0); };
    double lo = c0, hi = c1;
    const double target = (c1 - c0) / 10.0;
    while (hi - lo > target) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) > 0 ? hi : lo) = mid;
    }
    out.c = 0.5 * (lo + hi);
  }

  auto overlap = [&](std::size_t j) {
    return std::abs(b[j] - a[j]) <= kBandZ * (a_se[j] + b_se[j]);
  };
  out.band_low = out.band_high = out.c;
  if (k > 0) {
    for (std::size_t j = k; j-- > 0 && overlap(j);) out.band_low = c_grid[j];
  }
  for (std::size_t j = k; j < n && overlap(j); ++j) out.band_high = c_grid[j];
  return out;
}

CrossoverReport transform_comparison(const SimConfig& base, const CaseProfile& case1,
                                     const CaseProfile& case2, std::span<const double> c_grid,
                                     double l, int n_seeds, unsigned threads) {
  if (c_grid.empty()) throw PreconditionError("transform grid must be nonempty");
  if (n_seeds < 1) throw PreconditionError("transform needs n_seeds >= 1");
  validate(case1.params, 2.0 * base.eco.K);
  validate(case2.params, 2.0 * base.eco.K);

  CrossoverReport report;
  report.payoff_level = payoff_crossover_level(case1.params, case2.params);
  try {
    report.folds = fold_points(base.eco, c_grid.front(), c_grid.back());
  } catch (const Error&) {
    report.folds.reset();
  }

  report.rows.resize(c_grid.size());
  parallel_for(c_grid.size(), resolve_threads(threads), [&](std::size_t k) {
    TransformRow& row = report.rows[k];
    row.c = c_grid[k];
    SimConfig cfg = base;
    cfg.eco.c = row.c;
    cfg.adapt.l = l;
    try {
      row.regime = classify_regime(cfg.eco);
      std::vector<double> mx, p1, p2, u1, u2;
      std::uint64_t h1 = 0xcbf29ce484222325ULL, h2 = h1;
      for (int s = 0; s < n_seeds; ++s) {
        const Trajectory tr = run_trajectory(cfg, static_cast<std::uint64_t>(s));
        mx.push_back(mean(tr.xs));
        p1.push_back(average_payoff(tr.xs, case1.params));
        u1.push_back(average_utility(tr.xs, tr.ys, case1.params));
        h1 = mix(h1, series_hash(tr.xs));
        p2.push_back(average_payoff(tr.xs, case2.params));
        u2.push_back(average_utility(tr.xs, tr.ys, case2.params));
        h2 = mix(h2, series_hash(tr.xs));
      }
      row.mean_x = mean(mx);
      row.payoff_case1 = mean(p1);
      row.payoff_case1_se = standard_error(p1);
      row.payoff_case2 = mean(p2);
      row.payoff_case2_se = standard_error(p2);
      row.utility_case1 = mean(u1);
      row.utility_case1_se = standard_error(u1);
      row.utility_case2 = mean(u2);
      row.utility_case2_se = standard_error(u2);
      row.x_hash_case1 = h1;
      row.x_hash_case2 = h2;
    } catch (const Error& e) {
      row.error = describe(e);
      row.payoff_case1 = row.payoff_case2 = row.utility_case1 = row.utility_case2 = std::nan("");
    }
  });

  const std::size_t n = c_grid.size();
  std::vector<double> p1(n), p1se(n), p2(n), p2se(n), u1(n), u1se(n), u2(n), u2se(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& r = report.rows[k];
    p1[k] = r.payoff_case1, p1se[k] = r.payoff_case1_se;
    p2[k] = r.payoff_case2, p2se[k] = r.payoff_case2_se;
    u1[k] = r.utility_case1, u1se[k] = r.utility_case1_se;
    u2[k] = r.utility_case2, u2se[k] = r.utility_case2_se;
  }
  report.perfect = locate_crossover(c_grid, p1, p1se, p2, p2se);
  report.adaptive = locate_crossover(c_grid, u1, u1se, u2, u2se);
  if (report.perfect.found) report.perfect.regime = try_regime(base.eco, report.perfect.c);
  if (report.adaptive.found) report.adaptive.regime = try_regime(base.eco, report.adaptive.c);
  return report;
}

}  // namespace flicker
