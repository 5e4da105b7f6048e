#include "gips/encode/boolean.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gips {

bool Atom::holds(const std::vector<double>& x, double tol) const {
  double v = term.constant;
  for (const auto& [var, c] : term.coeffs) v += c * x[var];
  switch (rel) {
    case Relation::kLe:
      return v <= tol;
    case Relation::kGe:
      return v >= -tol;
    case Relation::kEq:
      return std::fabs(v) <= tol;
  }
  return false;
}

Formula Formula::constant(bool value) {
  Formula f;
  f.kind = value ? Kind::kTrue : Kind::kFalse;
  return f;
}

Formula Formula::of_atom(int atom) {
  Formula f;
  f.kind = Kind::kAtom;
  f.atom = atom;
  return f;
}

Formula Formula::negate(Formula f) {
  if (f.kind == Kind::kTrue) return constant(false);
  if (f.kind == Kind::kFalse) return constant(true);
  if (f.kind == Kind::kNot) return std::move(f.children[0]);
  Formula n;
  n.kind = Kind::kNot;
  n.children.push_back(std::move(f));
  return n;
}

namespace {

Formula combine(Formula::Kind kind, std::vector<Formula> children) {
  const Formula::Kind absorbing = kind == Formula::Kind::kAnd ? Formula::Kind::kFalse
                                                              : Formula::Kind::kTrue;
  const Formula::Kind neutral = kind == Formula::Kind::kAnd ? Formula::Kind::kTrue
                                                            : Formula::Kind::kFalse;
  Formula out;
  out.kind = kind;
  for (Formula& c : children) {
    if (c.kind == absorbing) return c;
    if (c.kind == neutral) continue;
    if (c.kind == kind) {
      for (Formula& g : c.children) out.children.push_back(std::move(g));
    } else {
      out.children.push_back(std::move(c));
    }
  }
  if (out.children.empty()) return Formula::constant(neutral == Formula::Kind::kTrue);
  if (out.children.size() == 1) return std::move(out.children[0]);
  return out;
}

using ClauseSet = std::vector<Clause>;

// Sorted, duplicate-free literals; false for tautologies.
bool normalize(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (size_t i = 1; i < c.size(); ++i) {
    if (c[i].atom == c[i - 1].atom) return false;
  }
  return true;
}

void push_unique(ClauseSet& set, Clause c) {
  if (!normalize(c)) return;
  if (std::find(set.begin(), set.end(), c) == set.end()) set.push_back(std::move(c));
}

class Converter {
 public:
  Converter(int atom_count, size_t max_clauses) : next_(atom_count), max_(max_clauses) {}

  // `f` must be in negation normal form.
  ClauseSet convert(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::kTrue:
        return {};
      case Formula::Kind::kFalse:
        return {Clause{}};
      case Formula::Kind::kAtom:
        return {Clause{{f.atom, true}}};
      case Formula::Kind::kNot:
        return {Clause{{f.children[0].atom, false}}};
      case Formula::Kind::kAnd: {
        ClauseSet out;
        for (const Formula& c : f.children) {
          for (Clause& clause : convert(c)) push_unique(out, std::move(clause));
        }
        return out;
      }
      case Formula::Kind::kOr: {
        ClauseSet acc{Clause{}};
        for (const Formula& c : f.children) {
          ClauseSet part = convert(c);
          if (acc.size() * part.size() > max_ && part.size() > 1) part = define(std::move(part));
          if (acc.size() * part.size() > max_ && acc.size() > 1) acc = define(std::move(acc));
          ClauseSet next;
          for (const Clause& a : acc) {
            for (const Clause& b : part) {
              Clause merged = a;
              merged.insert(merged.end(), b.begin(), b.end());
              push_unique(next, std::move(merged));
            }
          }
          acc = std::move(next);
        }
        return acc;
      }
    }
    return {};
  }

  int next_atom() const { return next_; }
  ClauseSet take_definitions() { return std::move(definitions_); }

 private:
  // Replaces a clause set by a fresh atom t with t -> set.
  ClauseSet define(ClauseSet set) {
    int t = next_++;
    for (Clause& c : set) {
      c.push_back({t, false});
      push_unique(definitions_, std::move(c));
    }
    return {Clause{{t, true}}};
  }

  int next_;
  size_t max_;
  ClauseSet definitions_;
};

Formula to_nnf(const Formula& f, bool negated) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return negated ? Formula::negate(f) : f;
    case Formula::Kind::kAtom:
      return negated ? Formula::negate(f) : f;
    case Formula::Kind::kNot:
      return to_nnf(f.children[0], !negated);
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      std::vector<Formula> children;
      for (const Formula& c : f.children) children.push_back(to_nnf(c, negated));
      bool conj = (f.kind == Formula::Kind::kAnd) != negated;
      return conj ? Formula::conj(std::move(children)) : Formula::disj(std::move(children));
    }
  }
  return f;
}

}  // namespace

Formula Formula::conj(std::vector<Formula> children) {
  return combine(Kind::kAnd, std::move(children));
}

Formula Formula::disj(std::vector<Formula> children) {
  return combine(Kind::kOr, std::move(children));
}

bool Formula::eval(const std::vector<bool>& atoms) const {
  switch (kind) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kAtom:
      return atoms[atom];
    case Kind::kNot:
      return !children[0].eval(atoms);
    case Kind::kAnd:
      return std::all_of(children.begin(), children.end(),
                         [&](const Formula& c) { return c.eval(atoms); });
    case Kind::kOr:
      return std::any_of(children.begin(), children.end(),
                         [&](const Formula& c) { return c.eval(atoms); });
  }
  return false;
}

bool Cnf::eval(const std::vector<bool>& atoms) const {
  for (const Clause& c : clauses) {
    bool sat = false;
    for (const Literal& l : c) sat |= atoms[l.atom] == l.positive;
    if (!sat) return false;
  }
  return true;
}

Cnf to_cnf(const Formula& f, int atom_count, size_t max_clauses) {
  Converter conv(atom_count, std::max<size_t>(max_clauses, 2));
  ClauseSet main = conv.convert(to_nnf(f, false));
  Cnf out;
  out.input_atoms = atom_count;
  out.atom_count = conv.next_atom();
  out.clauses = conv.take_definitions();
  for (Clause& c : main) push_unique(out.clauses, std::move(c));
  return out;
}

}  // namespace gips
