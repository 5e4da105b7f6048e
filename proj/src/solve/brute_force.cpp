#include <chrono>
#include <cmath>

#include "gips/error.hpp"
#include "gips/solve/simplex.hpp"
#include "gips/solve/solver.hpp"

namespace gips {

Solution brute_force(const IlpProblem& problem) {
  const auto start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(problem.variables.size());
  std::vector<int> ints, reals;
  for (int j = 0; j < n; ++j) {
    const Variable& v = problem.variables[j];
    if (!v.integral()) {
      reals.push_back(j);
    } else if (v.lower < 0 || v.upper > 1) {
      throw SolveError("brute force handles only 0/1 variables, not " + v.id);
    } else {
      ints.push_back(j);
    }
  }
  if (ints.size() > 22) {
    throw SolveError("brute force is limited to 22 binary variables, got " +
                     std::to_string(ints.size()));
  }
  const double flip = problem.objective.sense == Sense::kMax ? -1.0 : 1.0;
  std::vector<double> cost(n, 0.0);
  for (const auto& [var, c] : problem.objective.coeffs) cost[var] = flip * c;

  Solution sol;
  bool found = false;
  double best = 0;
  const int k = static_cast<int>(ints.size());
  std::vector<double> x(n, 0.0);
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    ++sol.stats.nodes;
    bool bounds_ok = true;
    for (int b = 0; b < k; ++b) {
      // The first variable is the most significant bit, so the first optimum
      // found is the lexicographically smallest.
      const int j = ints[b];
      x[j] = (mask >> (k - 1 - b)) & 1UL ? 1.0 : 0.0;
      const Variable& v = problem.variables[j];
      bounds_ok &= x[j] >= v.lower && x[j] <= v.upper;
    }
    if (!bounds_ok) continue;
    if (!reals.empty()) {
      std::vector<double> lower(n), upper(n);
      for (int j = 0; j < n; ++j) {
        const Variable& v = problem.variables[j];
        lower[j] = v.integral() ? x[j] : v.lower;
        upper[j] = v.integral() ? x[j] : v.upper;
      }
      LpResult lp = solve_lp(problem.rows, cost, lower, upper);
      if (lp.status == LpResult::Status::kUnbounded) throw SolveError("problem is unbounded");
      if (lp.status != LpResult::Status::kOptimal) continue;
      for (int j : reals) x[j] = lp.x[j];
    }
    if (!problem.feasible(x)) continue;
    double v = 0;
    for (int j = 0; j < n; ++j) v += cost[j] * x[j];
    if (!found || v < best - 1e-12 * std::max(1.0, std::fabs(best))) {
      found = true;
      best = v;
      sol.values = x;
    }
  }
  sol.status = found ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  sol.has_incumbent = found;
  if (found) sol.objective = problem.objective_value(sol.values);
  sol.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return sol;
}

}  // namespace gips
