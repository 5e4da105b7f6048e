#include <algorithm>
#include <cmath>
#include <map>

#include "gips/encode/boolean.hpp"

namespace gips {

namespace {

bool integral_term(const LinearTerm& t, const IlpProblem& p) {
  if (!t.integral()) return false;
  for (const auto& [var, c] : t.coeffs) {
    if (!p.variables[var].integral()) return false;
  }
  return true;
}

class Linearizer {
 public:
  Linearizer(const Cnf& cnf, const std::vector<Atom>& atoms, IlpProblem& problem,
             const std::string& origin)
      : cnf_(cnf), atoms_(atoms), p_(problem), origin_(origin) {}

  void run() {
    std::map<int, int> occurrences;
    for (const Clause& c : cnf_.clauses) {
      for (const Literal& l : c) ++occurrences[l.atom];
    }
    for (const Clause& c : cnf_.clauses) {
      if (c.empty()) {
        p_.add_row(LinearTerm::of_constant(-1), Relation::kGe, origin_ + " (unsatisfiable)");
        continue;
      }
      const Literal& first = c.front();
      if (c.size() == 1 && first.positive && first.atom < cnf_.input_atoms &&
          occurrences[first.atom] == 1) {
        const Atom& a = atoms_[first.atom];
        p_.add_row(a.term, a.rel, origin_);
        continue;
      }
      // sum(pos) - sum(neg) >= 1 - |neg|
      LinearTerm row;
      int negatives = 0;
      for (const Literal& l : c) {
        int v = indicator(l.atom);
        row.add(LinearTerm::of_variable(v, l.positive ? 1 : -1));
        negatives += !l.positive;
      }
      row.constant = negatives - 1;
      p_.add_row(row, Relation::kGe, origin_ + " (clause)");
    }
  }

 private:
  int fresh(const std::string& tag) {
    std::string id = "aux_" + std::to_string(p_.variables.size()) + "_" + tag;
    return p_.add_variable(std::move(id), VarKind::kAuxBinary, 0, 1);
  }

  // v = 1 <=> t <= 0
  int le_indicator(const LinearTerm& t) {
    const double eps = integral_term(t, p_) ? 1.0 : 1e-6;
    const double tmax = t.max_value(p_.variables);
    const double tmin = t.min_value(p_.variables);
    if (!std::isfinite(tmax) || !std::isfinite(tmin)) {
      throw GenerationError("cannot bound big-M for an atom over unbounded variables in " +
                            origin_);
    }
    const double upper = 2 * std::max(tmax, 1.0);
    const double lower = 2 * std::max(eps - tmin, 1.0);
    int v = fresh("le");
    // t <= U (1 - v)
    LinearTerm off = t;
    off.add(LinearTerm::of_variable(v, upper));
    off.constant -= upper;
    p_.add_row(off, Relation::kLe, origin_ + " (indicator)");
    // t >= eps - L v
    LinearTerm on = t;
    on.add(LinearTerm::of_variable(v, lower));
    on.constant -= eps;
    p_.add_row(on, Relation::kGe, origin_ + " (indicator)");
    return v;
  }

  int indicator(int atom) {
    auto it = indicators_.find(atom);
    if (it != indicators_.end()) return it->second;
    int v;
    if (atom >= cnf_.input_atoms) {
      v = fresh("def");
    } else {
      const Atom& a = atoms_[atom];
      LinearTerm neg = a.term;
      neg.scale(-1);
      if (a.rel == Relation::kLe) {
        v = le_indicator(a.term);
      } else if (a.rel == Relation::kGe) {
        v = le_indicator(neg);
      } else {
        int le = le_indicator(a.term);
        int ge = le_indicator(neg);
        v = fresh("eq");
        // v = le & ge
        LinearTerm r1 = LinearTerm::of_variable(v);
        r1.add(LinearTerm::of_variable(le), -1);
        p_.add_row(r1, Relation::kLe, origin_ + " (indicator)");
        LinearTerm r2 = LinearTerm::of_variable(v);
        r2.add(LinearTerm::of_variable(ge), -1);
        p_.add_row(r2, Relation::kLe, origin_ + " (indicator)");
        LinearTerm r3 = LinearTerm::of_variable(v);
        r3.add(LinearTerm::of_variable(le), -1);
        r3.add(LinearTerm::of_variable(ge), -1);
        r3.constant = 1;
        p_.add_row(r3, Relation::kGe, origin_ + " (indicator)");
      }
    }
    indicators_.emplace(atom, v);
    return v;
  }

  const Cnf& cnf_;
  const std::vector<Atom>& atoms_;
  IlpProblem& p_;
  const std::string& origin_;
  std::map<int, int> indicators_;
};

}  // namespace

void linearize(const Cnf& cnf, const std::vector<Atom>& atoms, IlpProblem& problem,
               const std::string& origin) {
  Linearizer(cnf, atoms, problem, origin).run();
}

}  // namespace gips
