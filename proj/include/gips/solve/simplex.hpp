#pragma once

#include <vector>

#include "gips/encode/ilp.hpp"

namespace gips {

struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded, kFailed };
  Status status = Status::kFailed;
  double objective = 0;
  std::vector<double> x;
  long iterations = 0;
};

// Minimizes cost.x over the rows and lower <= x <= upper with a dense
// bounded-variable two-phase simplex. Lower bounds must be finite; upper
// bounds may be infinite. kFailed means the iteration limit was hit.
LpResult solve_lp(const std::vector<Row>& rows, const std::vector<double>& cost,
                  const std::vector<double>& lower, const std::vector<double>& upper,
                  long max_iterations = 0);

}  // namespace gips
