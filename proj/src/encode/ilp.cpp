#include "gips/encode/ilp.hpp"

#include <charconv>
#include <cmath>

#include "gips/error.hpp"

namespace gips {

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool close(double a, double b, double rel_tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

std::string_view to_string(VarKind kind) {
  switch (kind) {
    case VarKind::kBinary:
      return "binary";
    case VarKind::kAuxBinary:
      return "aux-binary";
    case VarKind::kReal:
      return "real";
  }
  return "?";
}

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::kLe:
      return "<=";
    case Relation::kEq:
      return "=";
    case Relation::kGe:
      return ">=";
  }
  return "?";
}

LinearTerm LinearTerm::of_constant(double c) {
  LinearTerm t;
  t.constant = c;
  return t;
}

LinearTerm LinearTerm::of_variable(int var, double coeff) {
  LinearTerm t;
  if (coeff != 0) t.coeffs[var] = coeff;
  return t;
}

bool LinearTerm::integral() const {
  if (std::floor(constant) != constant) return false;
  for (const auto& [var, c] : coeffs) {
    if (std::floor(c) != c) return false;
  }
  return true;
}

void LinearTerm::add(const LinearTerm& other, double scale) {
  constant += scale * other.constant;
  for (const auto& [var, c] : other.coeffs) {
    double& slot = coeffs[var];
    slot += scale * c;
    if (slot == 0) coeffs.erase(var);
  }
}

void LinearTerm::scale(double factor) {
  constant *= factor;
  if (factor == 0) {
    coeffs.clear();
    return;
  }
  for (auto& [var, c] : coeffs) c *= factor;
}

double LinearTerm::min_value(const std::vector<Variable>& vars) const {
  double v = constant;
  for (const auto& [var, c] : coeffs) {
    v += c > 0 ? c * vars[var].lower : c * vars[var].upper;
  }
  return v;
}

double LinearTerm::max_value(const std::vector<Variable>& vars) const {
  double v = constant;
  for (const auto& [var, c] : coeffs) {
    v += c > 0 ? c * vars[var].upper : c * vars[var].lower;
  }
  return v;
}

double Row::activity(const std::vector<double>& x) const {
  double a = 0;
  for (const auto& [var, c] : coeffs) a += c * x[var];
  return a;
}

bool Row::satisfied(const std::vector<double>& x, double tol) const {
  double a = activity(x);
  double slack = tol * std::max(1.0, std::fabs(rhs));
  switch (rel) {
    case Relation::kLe:
      return a <= rhs + slack;
    case Relation::kGe:
      return a >= rhs - slack;
    case Relation::kEq:
      return std::fabs(a - rhs) <= slack;
  }
  return false;
}

int IlpProblem::add_variable(std::string id, VarKind kind, double lower, double upper) {
  if (index_.count(id)) throw Error("duplicate variable id '" + id + "'");
  int index = static_cast<int>(variables.size());
  index_.emplace(id, index);
  variables.push_back({std::move(id), kind, lower, upper});
  return index;
}

int IlpProblem::find_variable(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

void IlpProblem::add_row(const LinearTerm& lhs, Relation rel, std::string origin) {
  for (const auto& [var, c] : lhs.coeffs) {
    if (!std::isfinite(c)) throw GenerationError("non-finite coefficient in " + origin);
  }
  if (!std::isfinite(lhs.constant)) throw GenerationError("non-finite constant in " + origin);
  Row row;
  row.coeffs = lhs.coeffs;
  row.rel = rel;
  row.rhs = lhs.constant == 0 ? 0 : -lhs.constant;
  row.origin = std::move(origin);
  rows.push_back(std::move(row));
}

double IlpProblem::objective_value(const std::vector<double>& x) const {
  double v = objective.constant;
  for (const auto& [var, c] : objective.coeffs) v += c * x[var];
  return v;
}

bool IlpProblem::feasible(const std::vector<double>& x, double tol) const {
  for (size_t i = 0; i < variables.size(); ++i) {
    const Variable& v = variables[i];
    if (x[i] < v.lower - tol || x[i] > v.upper + tol) return false;
    if (v.integral() && std::fabs(x[i] - std::round(x[i])) > tol) return false;
  }
  for (const Row& row : rows) {
    if (!row.satisfied(x, tol)) return false;
  }
  return true;
}

int IlpProblem::count_vars(VarKind kind) const {
  int n = 0;
  for (const Variable& v : variables) n += v.kind == kind;
  return n;
}

bool same_problem(const IlpProblem& a, const IlpProblem& b, double rel_tol,
                  std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (a.variables.size() != b.variables.size()) return fail("variable count differs");
  std::vector<int> to_b(a.variables.size());
  for (size_t i = 0; i < a.variables.size(); ++i) {
    const Variable& va = a.variables[i];
    int j = b.find_variable(va.id);
    if (j < 0) return fail("variable " + va.id + " missing");
    const Variable& vb = b.variables[j];
    if (va.kind != vb.kind || va.lower != vb.lower || va.upper != vb.upper) {
      return fail("variable " + va.id + " differs in kind or bounds");
    }
    to_b[i] = j;
  }
  auto same_coeffs = [&](const std::map<int, double>& ca, const std::map<int, double>& cb) {
    if (ca.size() != cb.size()) return false;
    for (const auto& [var, c] : ca) {
      auto it = cb.find(to_b[var]);
      if (it == cb.end() || !close(c, it->second, rel_tol)) return false;
    }
    return true;
  };
  if (a.rows.size() != b.rows.size()) return fail("row count differs");
  for (size_t r = 0; r < a.rows.size(); ++r) {
    const Row& ra = a.rows[r];
    const Row& rb = b.rows[r];
    if (ra.rel != rb.rel || !close(ra.rhs, rb.rhs, rel_tol) ||
        !same_coeffs(ra.coeffs, rb.coeffs)) {
      return fail("row " + std::to_string(r) + " differs");
    }
  }
  if (a.objective.sense != b.objective.sense ||
      !close(a.objective.constant, b.objective.constant, rel_tol) ||
      !same_coeffs(a.objective.coeffs, b.objective.coeffs)) {
    return fail("objective differs");
  }
  return true;
}

std::string debug_dump(const IlpProblem& p) {
  auto terms = [&](const std::map<int, double>& coeffs) {
    std::string s;
    for (const auto& [var, c] : coeffs) {
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      s += num(std::fabs(c)) + " " + p.variables[var].id;
    }
    return s.empty() ? std::string("0") : s;
  };
  std::string out;
  for (const Variable& v : p.variables) {
    out += "var " + v.id + " " + std::string(to_string(v.kind)) + " [" + num(v.lower) + ", " +
           num(v.upper) + "]\n";
  }
  for (size_t r = 0; r < p.rows.size(); ++r) {
    const Row& row = p.rows[r];
    out += "c" + std::to_string(r) + ": " + terms(row.coeffs) + " " +
           std::string(to_string(row.rel)) + " " + num(row.rhs);
    if (!row.origin.empty()) out += "  ; " + row.origin;
    out += "\n";
  }
  out += std::string(p.objective.sense == Sense::kMin ? "minimize " : "maximize ") +
         terms(p.objective.coeffs);
  if (p.objective.constant != 0) out += " + " + num(p.objective.constant);
  out += "\n";
  return out;
}

void MappingTable::add(int var, std::string mapping, Match match) {
  auto key = std::make_pair(mapping, match);
  if (by_var_.count(var) || by_match_.count(key)) {
    throw Error("mapping table entry for variable " + std::to_string(var) + " is not unique");
  }
  by_match_.emplace(std::move(key), var);
  by_var_.emplace(var, MappingEntry{std::move(mapping), std::move(match)});
}

const MappingEntry* MappingTable::entry(int var) const {
  auto it = by_var_.find(var);
  return it == by_var_.end() ? nullptr : &it->second;
}

std::optional<int> MappingTable::variable(std::string_view mapping, const Match& match) const {
  auto it = by_match_.find(std::make_pair(std::string(mapping), match));
  if (it == by_match_.end()) return std::nullopt;
  return it->second;
}

}  // namespace gips
