#pragma once

#include <compare>
#include <string>
#include <vector>

#include "gips/encode/ilp.hpp"

namespace gips {

// Relational atom `term rel 0`.
struct Atom {
  LinearTerm term;
  Relation rel = Relation::kLe;

  bool operator==(const Atom&) const = default;
  bool holds(const std::vector<double>& x, double tol = 1e-9) const;
};

// Boolean formula over atom indices.
struct Formula {
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr };
  Kind kind = Kind::kTrue;
  int atom = -1;
  std::vector<Formula> children;

  static Formula constant(bool value);
  static Formula of_atom(int atom);
  // The combinators fold constants and flatten nested operators.
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);

  bool is_constant() const { return kind == Kind::kTrue || kind == Kind::kFalse; }
  bool eval(const std::vector<bool>& atoms) const;
};

struct Literal {
  int atom = -1;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

// No clauses means true; an empty clause means false. Atoms numbered at or
// above `input_atoms` are definitions introduced to keep the clause count
// bounded; each one implies the subformula it names.
struct Cnf {
  std::vector<Clause> clauses;
  int input_atoms = 0;
  int atom_count = 0;

  bool eval(const std::vector<bool>& atoms) const;
};

// Clause set for `f`. Distribution is used while the result stays within
// `max_clauses`; larger disjunctions get definition atoms instead.
Cnf to_cnf(const Formula& f, int atom_count, size_t max_clauses = 256);

// Appends rows (and indicator variables) to `problem` such that for every
// assignment of the existing variables the rows are satisfiable by some
// choice of the new variables iff `cnf` holds over `atoms`.
void linearize(const Cnf& cnf, const std::vector<Atom>& atoms, IlpProblem& problem,
               const std::string& origin);

}  // namespace gips
