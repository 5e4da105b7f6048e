#include <algorithm>
#include <chrono>
#include <cmath>

#include "gips/error.hpp"
#include "gips/solve/simplex.hpp"
#include "gips/solve/solver.hpp"

namespace gips {

namespace {

constexpr double kIntTol = 1e-6;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpProblem& p, const SolveLimits& limits)
      : p_(p), limits_(limits), n_(static_cast<int>(p.variables.size())) {
    const double flip = p.objective.sense == Sense::kMax ? -1.0 : 1.0;
    cost_.assign(n_, 0.0);
    bool nonnegative = true;
    for (const auto& [var, c] : p.objective.coeffs) {
      cost_[var] = flip * c;
      nonnegative &= c >= 0;
    }
    one_first_ = p.objective.sense == Sense::kMin && nonnegative;
    for (int j = 0; j < n_; ++j) {
      if (p.variables[j].integral()) integers_.push_back(j);
      if (!std::isfinite(p.variables[j].lower)) {
        throw SolveError("variable " + p.variables[j].id + " has no finite lower bound");
      }
    }
    // Lexicographic order of ids for tie-breaking.
    rank_.resize(n_);
    std::vector<int> order(n_);
    for (int j = 0; j < n_; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return p.variables[a].id < p.variables[b].id; });
    for (int r = 0; r < n_; ++r) rank_[order[r]] = r;
  }

  Solution run() {
    const auto start = Clock::now();
    Solution sol;
    Node root;
    for (const Variable& v : p_.variables) {
      double lo = v.lower, hi = v.upper;
      if (v.integral()) {
        lo = std::ceil(lo - kIntTol);
        hi = std::floor(hi + kIntTol);
      }
      root.lower.push_back(lo);
      root.upper.push_back(hi);
    }
    std::vector<Node> stack;
    stack.push_back(std::move(root));
    bool limit_hit = false;
    while (!stack.empty()) {
      if (sol.stats.nodes >= limits_.node_limit ||
          elapsed_ms(start) > limits_.time_limit_s * 1000) {
        limit_hit = true;
        break;
      }
      Node node = std::move(stack.back());
      stack.pop_back();
      ++sol.stats.nodes;
      process(node, sol, stack, sol.stats.nodes == 1);
    }
    sol.stats.wall_ms = elapsed_ms(start);
    if (limit_hit) {
      sol.status = SolveStatus::kTimeout;
    } else {
      sol.status = has_incumbent_ ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    }
    sol.has_incumbent = has_incumbent_;
    if (has_incumbent_) {
      sol.values = incumbent_;
      sol.objective = p_.objective_value(incumbent_);
    }
    return sol;
  }

 private:
  double min_objective(const std::vector<double>& x) const {
    double v = 0;
    for (int j = 0; j < n_; ++j) v += cost_[j] * x[j];
    return v;
  }

  bool improves(double bound) const {
    if (!has_incumbent_) return true;
    return bound < best_ - 1e-9 * std::max(1.0, std::fabs(best_));
  }

  void offer(const std::vector<double>& x) {
    if (!p_.feasible(x)) return;
    const double v = min_objective(x);
    if (improves(v)) {
      best_ = v;
      incumbent_ = x;
      has_incumbent_ = true;
    }
  }

  // Sum of the cheapest bound per variable; valid when the LP fails.
  double coefficient_bound(const Node& node) const {
    double b = 0;
    for (int j = 0; j < n_; ++j) {
      if (cost_[j] == 0) continue;
      b += std::min(cost_[j] * node.lower[j], cost_[j] * node.upper[j]);
    }
    return std::isnan(b) ? -kInfinity : b;
  }

  void branch(const Node& node, int var, double value, std::vector<Node>& stack) const {
    Node down = node, up = node;
    down.upper[var] = std::floor(value);
    up.lower[var] = std::floor(value) + 1;
    if (one_first_) {
      stack.push_back(std::move(down));
      stack.push_back(std::move(up));
    } else {
      stack.push_back(std::move(up));
      stack.push_back(std::move(down));
    }
  }

  int first_free(const Node& node) const {
    int best = -1;
    for (int j : integers_) {
      if (node.upper[j] > node.lower[j] && (best < 0 || rank_[j] < rank_[best])) best = j;
    }
    return best;
  }

  void process(const Node& node, Solution& sol, std::vector<Node>& stack, bool root) {
    for (int j = 0; j < n_; ++j) {
      if (node.upper[j] < node.lower[j]) return;
    }
    if (integers_.size() == static_cast<size_t>(n_) && first_free(node) < 0) {
      offer(node.lower);
      return;
    }
    LpResult lp = solve_lp(p_.rows, cost_, node.lower, node.upper);
    sol.stats.lp_iterations += lp.iterations;
    if (lp.status == LpResult::Status::kInfeasible) return;
    if (lp.status == LpResult::Status::kUnbounded) {
      throw SolveError("the relaxation is unbounded");
    }
    if (lp.status == LpResult::Status::kFailed) {
      ++sol.stats.lp_failures;
      const double bound = coefficient_bound(node);
      if (root) set_root_bound(sol, bound);
      if (!improves(bound)) return;
      int var = first_free(node);
      if (var >= 0) branch(node, var, node.lower[var], stack);
      return;
    }
    if (root) set_root_bound(sol, lp.objective);
    if (!improves(lp.objective)) return;

    int var = -1;
    double frac_best = 0;
    for (int j : integers_) {
      const double v = lp.x[j];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac <= kIntTol) continue;
      if (var < 0 || frac > frac_best + 1e-9 ||
          (frac > frac_best - 1e-9 && rank_[j] < rank_[var])) {
        var = j;
        frac_best = frac;
      }
    }
    if (var >= 0) {
      branch(node, var, lp.x[var], stack);
      return;
    }
    std::vector<double> x = lp.x;
    for (int j : integers_) x[j] = std::round(x[j]);
    if (p_.feasible(x)) {
      offer(x);
      return;
    }
    // Rounding broke a row; keep searching below this node.
    int free_var = first_free(node);
    if (free_var >= 0) branch(node, free_var, node.lower[free_var], stack);
  }

  void set_root_bound(Solution& sol, double bound) const {
    const double flip = p_.objective.sense == Sense::kMax ? -1.0 : 1.0;
    sol.stats.root_bound = flip * bound + p_.objective.constant;
    sol.stats.root_bound_valid = std::isfinite(bound);
  }

  const IlpProblem& p_;
  SolveLimits limits_;
  int n_;
  std::vector<double> cost_;
  std::vector<int> integers_;
  std::vector<int> rank_;
  bool one_first_ = false;
  bool has_incumbent_ = false;
  double best_ = 0;
  std::vector<double> incumbent_;
};

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTimeout:
      return "timeout";
  }
  return "?";
}

std::map<std::string, double> Solution::assignment(const IlpProblem& problem) const {
  std::map<std::string, double> out;
  for (size_t i = 0; i < values.size() && i < problem.variables.size(); ++i) {
    out[problem.variables[i].id] = values[i];
  }
  return out;
}

Solution solve(const IlpProblem& problem, const SolveLimits& limits) {
  return BranchAndBound(problem, limits).run();
}

}  // namespace gips
