#include "gips/solve/simplex.hpp"

#include <cmath>

#include "gips/error.hpp"

namespace gips {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kBlandAfter = 50;

class Tableau {
 public:
  Tableau(int rows, int cols)
      : m_(rows), n_(cols), t_(static_cast<size_t>(rows) * cols, 0.0), xb_(rows, 0.0),
        ub_(cols, kInfinity), basis_(rows, -1), pos_(cols, -1), at_upper_(cols, 0),
        cost_(cols, 0.0), d_(cols, 0.0) {}

  double& at(int i, int j) { return t_[static_cast<size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return t_[static_cast<size_t>(i) * n_ + j]; }

  void set_basic(int row, int col, double value) {
    basis_[row] = col;
    pos_[col] = row;
    xb_[row] = value;
  }
  void set_upper(int col, double ub) { ub_[col] = ub; }
  double upper(int col) const { return ub_[col]; }
  int basic(int row) const { return basis_[row]; }
  int row_of(int col) const { return pos_[col]; }

  void set_costs(const std::vector<double>& cost) {
    cost_ = cost;
    for (int j = 0; j < n_; ++j) {
      double d = cost_[j];
      for (int i = 0; i < m_; ++i) d -= cost_[basis_[i]] * at(i, j);
      d_[j] = d;
    }
  }

  double value(int col) const {
    if (pos_[col] >= 0) return xb_[pos_[col]];
    return at_upper_[col] ? ub_[col] : 0.0;
  }

  double objective() const {
    double z = 0;
    for (int j = 0; j < n_; ++j) z += cost_[j] * value(j);
    return z;
  }

  // Swaps `col` into the basis at `row` without moving any value.
  void exchange(int row, int col) {
    const double v = value(col);
    const int leaving = basis_[row];
    at_upper_[leaving] = 0;
    pos_[leaving] = -1;
    pivot(row, col);
    at_upper_[col] = 0;
    set_basic(row, col, v);
  }

  LpResult::Status run(long max_iter, long& iterations) {
    int degenerate = 0;
    for (long it = 0; it < max_iter; ++it) {
      const bool bland = degenerate > kBlandAfter;
      int enter = -1;
      double best = 0;
      for (int j = 0; j < n_; ++j) {
        if (pos_[j] >= 0 || ub_[j] <= 0) continue;
        const double dj = d_[j];
        const bool improving = at_upper_[j] ? dj > kCostTol : dj < -kCostTol;
        if (!improving) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (std::fabs(dj) > best) {
          best = std::fabs(dj);
          enter = j;
        }
      }
      if (enter < 0) return LpResult::Status::kOptimal;
      ++iterations;

      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      double step = ub_[enter];
      int leave = -1;
      bool leave_upper = false;
      double leave_pivot = 0;
      for (int i = 0; i < m_; ++i) {
        const double a = dir * at(i, enter);
        double r;
        bool to_upper;
        if (a > kPivotTol) {
          r = std::max(xb_[i], 0.0) / a;
          to_upper = false;
        } else if (a < -kPivotTol && std::isfinite(ub_[basis_[i]])) {
          r = std::max(ub_[basis_[i]] - xb_[i], 0.0) / -a;
          to_upper = true;
        } else {
          continue;
        }
        bool take = r < step - 1e-12;
        if (!take && leave >= 0 && r <= step + 1e-12) {
          take = bland ? basis_[i] < basis_[leave] : std::fabs(a) > leave_pivot;
        }
        if (take) {
          step = r;
          leave = i;
          leave_upper = to_upper;
          leave_pivot = std::fabs(a);
        }
      }
      if (leave < 0 && !std::isfinite(step)) return LpResult::Status::kUnbounded;

      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a != 0) xb_[i] -= dir * a * step;
      }
      if (leave < 0) {
        at_upper_[enter] = !at_upper_[enter];
      } else {
        const double entering = at_upper_[enter] ? ub_[enter] - step : step;
        const int leaving = basis_[leave];
        pos_[leaving] = -1;
        at_upper_[leaving] = leave_upper ? 1 : 0;
        pivot(leave, enter);
        at_upper_[enter] = 0;
        set_basic(leave, enter, entering);
      }
      degenerate = step < 1e-12 ? degenerate + 1 : 0;
    }
    return LpResult::Status::kFailed;
  }

 private:
  void pivot(int r, int e) {
    const double p = at(r, e);
    double* row = &t_[static_cast<size_t>(r) * n_];
    for (int j = 0; j < n_; ++j) row[j] /= p;
    row[e] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* other = &t_[static_cast<size_t>(i) * n_];
      const double f = other[e];
      if (f == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (row[j] != 0) other[j] -= f * row[j];
      }
      other[e] = 0.0;
    }
    const double f = d_[e];
    if (f != 0) {
      for (int j = 0; j < n_; ++j) {
        if (row[j] != 0) d_[j] -= f * row[j];
      }
      d_[e] = 0.0;
    }
  }

  int m_, n_;
  std::vector<double> t_;
  std::vector<double> xb_;
  std::vector<double> ub_;
  std::vector<int> basis_;
  std::vector<int> pos_;
  std::vector<char> at_upper_;
  std::vector<double> cost_;
  std::vector<double> d_;
};

}  // namespace

LpResult solve_lp(const std::vector<Row>& rows, const std::vector<double>& cost,
                  const std::vector<double>& lower, const std::vector<double>& upper,
                  long max_iterations) {
  const int n = static_cast<int>(cost.size());
  LpResult result;
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j])) throw SolveError("variables need a finite lower bound");
    if (upper[j] < lower[j] - kFeasTol) {
      result.status = LpResult::Status::kInfeasible;
      return result;
    }
  }

  // Shifted rows: sum a_ij y_j (rel) rhs_i with y = x - lower.
  const int m = static_cast<int>(rows.size());
  std::vector<double> rhs(m);
  std::vector<double> sign(m, 1.0);
  int slacks = 0, artificials = 0;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    double b = rows[i].rhs;
    for (const auto& [var, c] : rows[i].coeffs) b -= c * lower[var];
    if (b < 0) sign[i] = -1.0;
    rhs[i] = b * sign[i];
    if (rows[i].rel != Relation::kEq) slack_col[i] = n + slacks++;
  }
  for (int i = 0; i < m; ++i) {
    double slack_coeff = rows[i].rel == Relation::kLe ? 1.0 : -1.0;
    if (slack_col[i] < 0 || slack_coeff * sign[i] < 0) art_col[i] = n + slacks + artificials++;
  }
  const int cols = n + slacks + artificials;
  Tableau tab(m, cols);
  for (int j = 0; j < n; ++j) tab.set_upper(j, upper[j] - lower[j]);
  for (int i = 0; i < m; ++i) {
    for (const auto& [var, c] : rows[i].coeffs) tab.at(i, var) += sign[i] * c;
    if (slack_col[i] >= 0) {
      tab.at(i, slack_col[i]) = sign[i] * (rows[i].rel == Relation::kLe ? 1.0 : -1.0);
    }
    if (art_col[i] >= 0) {
      tab.at(i, art_col[i]) = 1.0;
      tab.set_basic(i, art_col[i], rhs[i]);
    } else {
      tab.set_basic(i, slack_col[i], rhs[i]);
    }
  }
  if (max_iterations <= 0) max_iterations = 50L * (m + cols) + 1000;

  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (int i = 0; i < m; ++i) {
      if (art_col[i] >= 0) phase1[art_col[i]] = 1.0;
    }
    tab.set_costs(phase1);
    LpResult::Status s = tab.run(max_iterations, result.iterations);
    if (s != LpResult::Status::kOptimal) {
      result.status = LpResult::Status::kFailed;
      return result;
    }
    double scale = 1.0;
    for (double b : rhs) scale = std::max(scale, std::fabs(b));
    if (tab.objective() > kFeasTol * scale) {
      result.status = LpResult::Status::kInfeasible;
      return result;
    }
    const int first_art = n + slacks;
    for (int i = 0; i < m; ++i) {
      if (tab.basic(i) < first_art) continue;
      int best = -1;
      double mag = 1e-7;
      for (int j = 0; j < first_art; ++j) {
        if (tab.row_of(j) < 0 && std::fabs(tab.at(i, j)) > mag) {
          mag = std::fabs(tab.at(i, j));
          best = j;
        }
      }
      if (best >= 0) tab.exchange(i, best);
    }
    for (int j = first_art; j < cols; ++j) tab.set_upper(j, 0.0);
  }

  std::vector<double> phase2(cols, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = cost[j];
  tab.set_costs(phase2);
  LpResult::Status s = tab.run(max_iterations, result.iterations);
  if (s != LpResult::Status::kOptimal) {
    result.status = s;
    return result;
  }
  result.status = LpResult::Status::kOptimal;
  result.x.resize(n);
  result.objective = 0;
  for (int j = 0; j < n; ++j) {
    double v = lower[j] + tab.value(j);
    if (v < lower[j]) v = lower[j];
    if (v > upper[j]) v = upper[j];
    result.x[j] = v;
    result.objective += cost[j] * v;
  }
  return result;
}

}  // namespace gips
