#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gips/gipsl/ast.hpp"
#include "gips/pattern/pattern.hpp"

namespace gips {

enum class VarKind { kBinary, kAuxBinary, kReal };
enum class Relation { kLe, kEq, kGe };

std::string_view to_string(VarKind kind);
std::string_view to_string(Relation rel);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Variable {
  std::string id;
  VarKind kind = VarKind::kBinary;
  double lower = 0;
  double upper = 1;

  bool integral() const { return kind != VarKind::kReal; }
};

// Sparse linear combination of variables (by index) plus a constant.
struct LinearTerm {
  std::map<int, double> coeffs;
  double constant = 0;

  static LinearTerm of_constant(double c);
  static LinearTerm of_variable(int var, double coeff = 1);

  bool is_constant() const { return coeffs.empty(); }
  // True when every coefficient and the constant are integers.
  bool integral() const;
  void add(const LinearTerm& other, double scale = 1);
  void scale(double factor);
  // Smallest and largest value over the variables' bounds.
  double min_value(const std::vector<Variable>& vars) const;
  double max_value(const std::vector<Variable>& vars) const;

  bool operator==(const LinearTerm&) const = default;
};

struct Row {
  std::map<int, double> coeffs;
  Relation rel = Relation::kLe;
  double rhs = 0;
  std::string origin;  // free-form provenance for diagnostics

  double activity(const std::vector<double>& x) const;
  bool satisfied(const std::vector<double>& x, double tol = 1e-9) const;
};

struct IlpObjective {
  Sense sense = Sense::kMin;
  std::map<int, double> coeffs;
  double constant = 0;
};

struct IlpProblem {
  std::vector<Variable> variables;
  std::vector<Row> rows;
  IlpObjective objective;

  int add_variable(std::string id, VarKind kind, double lower = 0, double upper = 1);
  // -1 when absent.
  int find_variable(std::string_view id) const;
  void add_row(const LinearTerm& lhs, Relation rel, std::string origin);
  double objective_value(const std::vector<double>& x) const;
  bool feasible(const std::vector<double>& x, double tol = 1e-9) const;
  int count_vars(VarKind kind) const;

 private:
  std::map<std::string, int, std::less<>> index_;
};

// Structural comparison by variable id: same variables (kind and bounds),
// same rows in the same order and the same objective, with coefficients
// equal up to `rel_tol`.
bool same_problem(const IlpProblem& a, const IlpProblem& b, double rel_tol = 0,
                  std::string* why = nullptr);

// Human-readable dump: one line per variable, row and the objective.
std::string debug_dump(const IlpProblem& problem);

struct MappingEntry {
  std::string mapping;
  Match match;
};

// Bidirectional map between mapping variables and (mapping, match) pairs.
class MappingTable {
 public:
  void add(int var, std::string mapping, Match match);
  const MappingEntry* entry(int var) const;
  std::optional<int> variable(std::string_view mapping, const Match& match) const;
  size_t size() const { return by_var_.size(); }
  const std::map<int, MappingEntry>& entries() const { return by_var_; }

 private:
  std::map<int, MappingEntry> by_var_;
  std::map<std::pair<std::string, Match>, int> by_match_;
};

}  // namespace gips
