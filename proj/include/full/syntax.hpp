#pragma once

// Core vocabulary of the language: sorts, terms, formulas and maxims.
// Terms and formulas are immutable values backed by shared nodes, so copies
// are cheap and values can be shared freely between threads.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace full {

/// Base class of every diagnostic raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sort forest rooted at the base sorts Object, Agent and Action.
class SortHierarchy {
 public:
  static bool is_base(const std::string& name);

  /// Declares a sort. Roots must be base sorts; parents must already exist.
  void declare(const std::string& name, std::optional<std::string> parent);

  bool contains(const std::string& name) const;
  std::optional<std::string> parent(const std::string& name) const;
  /// Reflexive-transitive subsort test (sub ⊑ super).
  bool is_subsort(const std::string& sub, const std::string& super) const;
  std::string root(const std::string& name) const;

  /// Sorts in declaration order.
  const std::vector<std::string>& names() const { return order_; }
  std::size_t size() const { return order_.size(); }

  friend bool operator==(const SortHierarchy&, const SortHierarchy&) = default;

 private:
  std::map<std::string, std::optional<std::string>> parents_;
  std::vector<std::string> order_;
};

class Term {
 public:
  enum class Kind { Variable, Constant, Application };

  static Term variable(std::string name, std::string sort);
  static Term constant(std::string name, std::string sort);
  static Term application(std::string function, std::vector<Term> args, std::string result_sort);

  Kind kind() const { return node_->kind; }
  const std::string& symbol() const { return node_->symbol; }
  const std::string& sort() const { return node_->sort; }
  std::span<const Term> args() const { return node_->args; }

  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_application() const { return kind() == Kind::Application; }

  bool is_ground() const;
  /// Nesting depth of applications; variables and constants have depth 0.
  std::size_t depth() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string symbol;
    std::string sort;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class DeonticOperator { Perm, Imp, Obl };

std::string to_string(DeonticOperator op);
std::optional<DeonticOperator> deontic_from_string(const std::string& text);

enum class FormulaKind {
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  Equals,
  Atom,
  Does,
  Wills,
  Causes,
  For,
  Deontic
};

/// Sentence of the language. Layout per kind:
///   Not/Deontic: sub(0); And/Or/Implies/Iff/Causes/For: sub(0), sub(1);
///   Forall/Exists: bound(), sub(0); Equals/Does: term(0), term(1);
///   Atom: symbol() and terms(); Wills: term(0) is the agent, sub(0) the body.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);
  static Formula forall(Term var, Formula body);
  static Formula exists(Term var, Formula body);
  static Formula equals(Term a, Term b);
  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula does(Term agent, Term action);
  static Formula wills(Term agent, Formula body);
  static Formula causes(Formula antecedent, Formula consequent);
  static Formula purpose(Formula behavior, Formula purpose);  // For(φ1, φ2)
  static Formula deontic(DeonticOperator op, Formula maxim);

  /// Quantifier block helpers: ∀v1 ... ∀vn. body (outermost first).
  static Formula forall_block(const std::vector<Term>& vars, Formula body);
  static Formula exists_block(const std::vector<Term>& vars, Formula body);

  FormulaKind kind() const { return node_->kind; }
  bool is(FormulaKind k) const { return node_->kind == k; }
  const std::string& symbol() const { return node_->symbol; }
  DeonticOperator op() const { return node_->op; }
  std::span<const Term> terms() const { return node_->terms; }
  const Term& term(std::size_t i) const { return node_->terms.at(i); }
  const Formula& sub(std::size_t i) const { return node_->subs.at(i); }
  std::size_t arity() const { return node_->subs.size(); }
  const Term& bound() const { return node_->terms.at(0); }
  bool is_quantifier() const { return is(FormulaKind::Forall) || is(FormulaKind::Exists); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::string symbol;
    DeonticOperator op = DeonticOperator::Perm;
    std::vector<Term> terms;
    std::vector<Formula> subs;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);
  std::shared_ptr<const Node> node_;
};

/// "I will φ1 for φ2", owned by `agent`.
struct Maxim {
  Term agent;
  Formula behavior;
  Formula purpose;

  Formula as_formula() const { return Formula::purpose(behavior, purpose); }
  friend bool operator==(const Maxim&, const Maxim&) = default;
};

/// Builds a maxim from a For(...) formula; the agent is α(behavior).
Maxim maxim_from_formula(const Formula& f);

/// Finite, injective, sort-preserving map from constants to variables.
class Substitution {
 public:
  /// Throws Error if the pair breaks injectivity or sort preservation.
  void bind(const Term& constant, const Term& variable);

  std::optional<Term> lookup(const Term& constant) const;
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<Term, Term>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<Term, Term>> pairs_;
};

}  // namespace full
