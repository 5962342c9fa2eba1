#include "full/syntax.hpp"

#include <algorithm>
#include <cctype>

#include "full/transform.hpp"

namespace full {

bool SortHierarchy::is_base(const std::string& name) {
  return name == "Object" || name == "Agent" || name == "Action";
}

void SortHierarchy::declare(const std::string& name, std::optional<std::string> parent) {
  if (parents_.count(name)) throw Error("duplicate sort '" + name + "'");
  if (parent) {
    if (!parents_.count(*parent)) throw Error("unknown parent sort '" + *parent + "'");
  } else if (!is_base(name)) {
    throw Error("sort '" + name + "' must have a parent (roots are Object, Agent, Action)");
  }
  parents_.emplace(name, std::move(parent));
  order_.push_back(name);
}

bool SortHierarchy::contains(const std::string& name) const { return parents_.count(name) != 0; }

std::optional<std::string> SortHierarchy::parent(const std::string& name) const {
  auto it = parents_.find(name);
  if (it == parents_.end()) return std::nullopt;
  return it->second;
}

bool SortHierarchy::is_subsort(const std::string& sub, const std::string& super) const {
  std::optional<std::string> cur = sub;
  while (cur) {
    if (*cur == super) return true;
    auto it = parents_.find(*cur);
    if (it == parents_.end()) return false;
    cur = it->second;
  }
  return false;
}

std::string SortHierarchy::root(const std::string& name) const {
  std::string cur = name;
  for (auto p = parent(cur); p; p = parent(cur)) cur = *p;
  return cur;
}

// ---------------------------------------------------------------------------

Term Term::variable(std::string name, std::string sort) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), std::move(sort), {}}));
}

Term Term::constant(std::string name, std::string sort) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, std::move(name), std::move(sort), {}}));
}

Term Term::application(std::string function, std::vector<Term> args, std::string result_sort) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Application, std::move(function), std::move(result_sort), std::move(args)}));
}

bool Term::is_ground() const {
  if (is_variable()) return false;
  return std::all_of(args().begin(), args().end(), [](const Term& t) { return t.is_ground(); });
}

std::size_t Term::depth() const {
  if (!is_application()) return 0;
  std::size_t d = 0;
  for (const Term& a : args()) d = std::max(d, a.depth());
  return d + 1;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.symbol() == b.symbol() && a.sort() == b.sort() &&
         std::equal(a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
}

std::string to_string(DeonticOperator op) {
  switch (op) {
    case DeonticOperator::Perm: return "Perm";
    case DeonticOperator::Imp: return "Imp";
    case DeonticOperator::Obl: return "Obl";
  }
  return "?";
}

std::optional<DeonticOperator> deontic_from_string(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "perm") return DeonticOperator::Perm;
  if (lower == "imp") return DeonticOperator::Imp;
  if (lower == "obl") return DeonticOperator::Obl;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Formula Formula::make(Node node) { return Formula(std::make_shared<const Node>(std::move(node))); }

Formula Formula::truth() {
  static const Formula t = make(Node{FormulaKind::True, {}, {}, {}, {}});
  return t;
}

Formula Formula::falsity() {
  static const Formula f = make(Node{FormulaKind::False, {}, {}, {}, {}});
  return f;
}

Formula Formula::negation(Formula f) { return make(Node{FormulaKind::Not, {}, {}, {}, {std::move(f)}}); }

Formula Formula::conjunction(Formula a, Formula b) {
  return make(Node{FormulaKind::And, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::disjunction(Formula a, Formula b) {
  return make(Node{FormulaKind::Or, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::implication(Formula a, Formula b) {
  return make(Node{FormulaKind::Implies, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::biconditional(Formula a, Formula b) {
  return make(Node{FormulaKind::Iff, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::forall(Term var, Formula body) {
  if (!var.is_variable()) throw Error("quantifier must bind a variable");
  return make(Node{FormulaKind::Forall, {}, {}, {std::move(var)}, {std::move(body)}});
}

Formula Formula::exists(Term var, Formula body) {
  if (!var.is_variable()) throw Error("quantifier must bind a variable");
  return make(Node{FormulaKind::Exists, {}, {}, {std::move(var)}, {std::move(body)}});
}

Formula Formula::equals(Term a, Term b) {
  return make(Node{FormulaKind::Equals, {}, {}, {std::move(a), std::move(b)}, {}});
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return make(Node{FormulaKind::Atom, std::move(predicate), {}, std::move(args), {}});
}

Formula Formula::does(Term agent, Term action) {
  return make(Node{FormulaKind::Does, {}, {}, {std::move(agent), std::move(action)}, {}});
}

Formula Formula::wills(Term agent, Formula body) {
  return make(Node{FormulaKind::Wills, {}, {}, {std::move(agent)}, {std::move(body)}});
}

Formula Formula::causes(Formula antecedent, Formula consequent) {
  return make(Node{FormulaKind::Causes, {}, {}, {}, {std::move(antecedent), std::move(consequent)}});
}

Formula Formula::purpose(Formula behavior, Formula purpose) {
  return make(Node{FormulaKind::For, {}, {}, {}, {std::move(behavior), std::move(purpose)}});
}

Formula Formula::deontic(DeonticOperator op, Formula maxim) {
  if (!maxim.is(FormulaKind::For)) throw Error("deontic operator must wrap a For(...) maxim");
  return make(Node{FormulaKind::Deontic, {}, op, {}, {std::move(maxim)}});
}

Formula Formula::forall_block(const std::vector<Term>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula Formula::exists_block(const std::vector<Term>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.symbol == y.symbol && x.op == y.op && x.terms == y.terms && x.subs == y.subs;
}

// ---------------------------------------------------------------------------

Maxim maxim_from_formula(const Formula& f) {
  if (!f.is(FormulaKind::For)) throw Error("a maxim must have the form For(behavior, purpose)");
  Term agent = alpha_of(f.sub(0));
  if (!agent.is_constant()) throw Error("the agent of a maxim must be a constant");
  return Maxim{agent, f.sub(0), f.sub(1)};
}

void Substitution::bind(const Term& constant, const Term& variable) {
  if (!constant.is_constant()) throw Error("substitution domain must contain constants only");
  if (!variable.is_variable()) throw Error("substitution range must contain variables only");
  if (constant.sort() != variable.sort())
    throw Error("substitution must preserve sorts: " + constant.symbol() + ":" + constant.sort() + " -> " +
                variable.symbol() + ":" + variable.sort());
  for (const auto& [c, v] : pairs_) {
    if (c.symbol() == constant.symbol()) throw Error("constant '" + c.symbol() + "' mapped twice");
    if (v.symbol() == variable.symbol()) throw Error("substitution is not injective on '" + v.symbol() + "'");
  }
  pairs_.emplace_back(constant, variable);
}

std::optional<Term> Substitution::lookup(const Term& constant) const {
  for (const auto& [c, v] : pairs_)
    if (c.symbol() == constant.symbol()) return v;
  return std::nullopt;
}

}  // namespace full
