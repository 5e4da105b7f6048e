#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gips/encode/ilp.hpp"

namespace gips {

enum class SolveStatus { kOptimal, kInfeasible, kTimeout };

std::string_view to_string(SolveStatus status);

struct SolveLimits {
  double time_limit_s = 60;
  long node_limit = 1'000'000;
};

struct SolveStats {
  long nodes = 0;
  long lp_iterations = 0;
  long lp_failures = 0;  // nodes bounded by coefficient sums instead
  double wall_ms = 0;
  double root_bound = 0;  // LP relaxation at the root, in the problem's sense
  bool root_bound_valid = false;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> values;  // by variable index
  double objective = 0;
  SolveStats stats;

  std::map<std::string, double> assignment(const IlpProblem& problem) const;
};

// Exact branch-and-bound over the integral variables with LP relaxation
// bounds. Deterministic for equal inputs unless the time limit is hit.
Solution solve(const IlpProblem& problem, const SolveLimits& limits = {});

// Enumerates all assignments of the binary variables (at most 22) and
// returns the lexicographically smallest optimum. Real variables are
// resolved by an LP for every assignment.
Solution brute_force(const IlpProblem& problem);

// CPLEX LP text. Variable names are the problem's ids; the table is used to
// check that every mapping variable carries its `m_<mapping>_<k>` name.
std::string export_lp(const IlpProblem& problem, const MappingTable& table);
std::string export_lp(const IlpProblem& problem);

// Inverse of export_lp. Binary variables named `m_...` become mapping
// variables, other binaries auxiliary ones. Throws ParseError.
IlpProblem import_lp(std::string_view text);

}  // namespace gips
