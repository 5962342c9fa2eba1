#include "full/transform.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

namespace full {
namespace {

void constants_of_term(const Term& t, std::vector<Term>& out) {
  if (t.is_constant()) {
    bool seen = std::any_of(out.begin(), out.end(), [&](const Term& c) { return c.symbol() == t.symbol(); });
    if (!seen) out.push_back(t);
    return;
  }
  for (const Term& a : t.args()) constants_of_term(a, out);
}

template <typename TermFn>
void for_each_term(const Formula& f, TermFn&& fn) {
  for (const Term& t : f.terms()) {
    if (f.is_quantifier()) continue;  // bound variable, not an occurrence
    fn(t);
  }
  for (std::size_t i = 0; i < f.arity(); ++i) for_each_term(f.sub(i), fn);
}

void collect_does(const Formula& f, std::vector<Formula>& out) {
  if (f.is(FormulaKind::Does)) out.push_back(f);
  for (std::size_t i = 0; i < f.arity(); ++i) collect_does(f.sub(i), out);
}

Formula single_does(const Formula& f) {
  std::vector<Formula> found;
  collect_does(f, found);
  if (found.size() != 1)
    throw Error("expected exactly one Does(...) node, found " + std::to_string(found.size()));
  return found.front();
}

// -- substitution -----------------------------------------------------------

Term substitute_term(const Term& t, const Substitution& sigma, const std::set<std::string>& bound) {
  if (t.is_constant()) {
    if (auto v = sigma.lookup(t)) {
      if (bound.count(v->symbol()))
        throw Error("substituting '" + t.symbol() + "' by '" + v->symbol() + "' would be captured by a binder");
      return *v;
    }
    return t;
  }
  if (t.is_application()) {
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(substitute_term(a, sigma, bound));
    return Term::application(t.symbol(), std::move(args), t.sort());
  }
  return t;
}

std::vector<Term> map_term_list(std::span<const Term> ts, const std::function<Term(const Term&)>& fn) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const Term& t : ts) out.push_back(fn(t));
  return out;
}

// Rebuilds a node of the same kind with new terms / subformulas.
Formula rebuild(const Formula& f, std::vector<Term> terms, std::vector<Formula> subs) {
  switch (f.kind()) {
    case FormulaKind::True: return Formula::truth();
    case FormulaKind::False: return Formula::falsity();
    case FormulaKind::Not: return Formula::negation(subs[0]);
    case FormulaKind::And: return Formula::conjunction(subs[0], subs[1]);
    case FormulaKind::Or: return Formula::disjunction(subs[0], subs[1]);
    case FormulaKind::Implies: return Formula::implication(subs[0], subs[1]);
    case FormulaKind::Iff: return Formula::biconditional(subs[0], subs[1]);
    case FormulaKind::Forall: return Formula::forall(terms[0], subs[0]);
    case FormulaKind::Exists: return Formula::exists(terms[0], subs[0]);
    case FormulaKind::Equals: return Formula::equals(terms[0], terms[1]);
    case FormulaKind::Atom: return Formula::atom(f.symbol(), std::move(terms));
    case FormulaKind::Does: return Formula::does(terms[0], terms[1]);
    case FormulaKind::Wills: return Formula::wills(terms[0], subs[0]);
    case FormulaKind::Causes: return Formula::causes(subs[0], subs[1]);
    case FormulaKind::For: return Formula::purpose(subs[0], subs[1]);
    case FormulaKind::Deontic: return Formula::deontic(f.op(), subs[0]);
  }
  throw Error("unknown formula kind");
}

Formula substitute_impl(const Formula& f, const Substitution& sigma, std::set<std::string>& bound) {
  if (f.is_quantifier()) {
    const std::string& name = f.bound().symbol();
    bool inserted = bound.insert(name).second;
    Formula body = substitute_impl(f.sub(0), sigma, bound);
    if (inserted) bound.erase(name);
    return rebuild(f, {f.bound()}, {body});
  }
  std::vector<Term> terms;
  for (const Term& t : f.terms()) terms.push_back(substitute_term(t, sigma, bound));
  std::vector<Formula> subs;
  for (std::size_t i = 0; i < f.arity(); ++i) subs.push_back(substitute_impl(f.sub(i), sigma, bound));
  return rebuild(f, std::move(terms), std::move(subs));
}

// -- normalization ----------------------------------------------------------

// Step 1: give every binder a unique name so that reordering cannot capture.
Formula uniquify(const Formula& f, std::map<std::string, Term>& env, std::size_t& counter) {
  if (f.is_quantifier()) {
    const Term& v = f.bound();
    Term fresh = Term::variable("#" + std::to_string(counter++), v.sort());
    auto saved = env.find(v.symbol()) == env.end() ? std::nullopt : std::optional<Term>(env.at(v.symbol()));
    env.insert_or_assign(v.symbol(), fresh);
    Formula body = uniquify(f.sub(0), env, counter);
    if (saved) env.insert_or_assign(v.symbol(), *saved);
    else env.erase(v.symbol());
    return rebuild(f, {fresh}, {body});
  }
  std::function<Term(const Term&)> rename = [&](const Term& t) -> Term {
    if (t.is_variable()) {
      auto it = env.find(t.symbol());
      return it == env.end() ? t : it->second;
    }
    if (t.is_application()) return Term::application(t.symbol(), map_term_list(t.args(), rename), t.sort());
    return t;
  };
  std::vector<Term> terms = map_term_list(f.terms(), rename);
  std::vector<Formula> subs;
  for (std::size_t i = 0; i < f.arity(); ++i) subs.push_back(uniquify(f.sub(i), env, counter));
  return rebuild(f, std::move(terms), std::move(subs));
}

// Step 2: negation normal form (restricted).
Formula push_negation(const Formula& f, bool negated) {
  auto wrap = [&](Formula g) { return negated ? Formula::negation(std::move(g)) : g; };
  switch (f.kind()) {
    case FormulaKind::True: return negated ? Formula::falsity() : Formula::truth();
    case FormulaKind::False: return negated ? Formula::truth() : Formula::falsity();
    case FormulaKind::Not: return push_negation(f.sub(0), !negated);
    case FormulaKind::And:
      if (negated) return Formula::disjunction(push_negation(f.sub(0), true), push_negation(f.sub(1), true));
      return Formula::conjunction(push_negation(f.sub(0), false), push_negation(f.sub(1), false));
    case FormulaKind::Or:
      if (negated) return Formula::conjunction(push_negation(f.sub(0), true), push_negation(f.sub(1), true));
      return Formula::disjunction(push_negation(f.sub(0), false), push_negation(f.sub(1), false));
    case FormulaKind::Implies:
      if (negated) return Formula::conjunction(push_negation(f.sub(0), false), push_negation(f.sub(1), true));
      return Formula::implication(push_negation(f.sub(0), false), push_negation(f.sub(1), false));
    case FormulaKind::Iff:
      return Formula::biconditional(push_negation(f.sub(0), false), push_negation(f.sub(1), negated));
    case FormulaKind::Forall:
      if (negated) return Formula::exists(f.bound(), push_negation(f.sub(0), true));
      return Formula::forall(f.bound(), push_negation(f.sub(0), false));
    case FormulaKind::Exists:
      if (negated) return Formula::forall(f.bound(), push_negation(f.sub(0), true));
      return Formula::exists(f.bound(), push_negation(f.sub(0), false));
    case FormulaKind::Equals:
    case FormulaKind::Atom:
    case FormulaKind::Does: return wrap(f);
    case FormulaKind::Wills: return wrap(Formula::wills(f.term(0), push_negation(f.sub(0), false)));
    case FormulaKind::Causes:
      return wrap(Formula::causes(push_negation(f.sub(0), false), push_negation(f.sub(1), false)));
    case FormulaKind::For:
      return wrap(Formula::purpose(push_negation(f.sub(0), false), push_negation(f.sub(1), false)));
    case FormulaKind::Deontic: return wrap(Formula::deontic(f.op(), push_negation(f.sub(0), false)));
  }
  throw Error("unknown formula kind");
}

// Position of the first free occurrence of each variable in a pre-order walk.
void first_occurrences(const Formula& f, std::map<std::string, std::size_t>& pos, std::size_t& counter) {
  std::function<void(const Term&)> visit = [&](const Term& t) {
    ++counter;
    if (t.is_variable()) pos.try_emplace(t.symbol(), counter);
    for (const Term& a : t.args()) visit(a);
  };
  ++counter;
  if (!f.is_quantifier())
    for (const Term& t : f.terms()) visit(t);
  for (std::size_t i = 0; i < f.arity(); ++i) first_occurrences(f.sub(i), pos, counter);
}

// Step 3: order each maximal block of same-kind quantifiers by first use.
Formula order_blocks(const Formula& f) {
  if (f.is_quantifier()) {
    QuantifierBlock block = split_block(f, f.kind());
    Formula body = order_blocks(block.body);
    std::map<std::string, std::size_t> pos;
    std::size_t counter = 0;
    first_occurrences(body, pos, counter);
    std::vector<std::size_t> idx(block.vars.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t unused = static_cast<std::size_t>(-1);
    auto key = [&](std::size_t i) {
      auto it = pos.find(block.vars[i].symbol());
      return std::make_tuple(it == pos.end() ? unused : it->second, block.vars[i].sort(), i);
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    std::vector<Term> vars;
    for (std::size_t i : idx) vars.push_back(block.vars[i]);
    return f.is(FormulaKind::Forall) ? Formula::forall_block(vars, body) : Formula::exists_block(vars, body);
  }
  std::vector<Formula> subs;
  for (std::size_t i = 0; i < f.arity(); ++i) subs.push_back(order_blocks(f.sub(i)));
  return rebuild(f, std::vector<Term>(f.terms().begin(), f.terms().end()), std::move(subs));
}

std::string sort_initial(const std::string& sort) {
  char c = sort.empty() ? 'v' : static_cast<char>(std::tolower(static_cast<unsigned char>(sort[0])));
  return std::string(1, c);
}

// Step 4: canonical names "_<sort initial><depth>".
Formula canonical_names(const Formula& f, std::map<std::string, Term>& env, std::size_t depth) {
  if (f.is_quantifier()) {
    const Term& v = f.bound();
    Term named = Term::variable("_" + sort_initial(v.sort()) + std::to_string(depth + 1), v.sort());
    auto it = env.find(v.symbol());
    std::optional<Term> saved = it == env.end() ? std::nullopt : std::optional<Term>(it->second);
    env.insert_or_assign(v.symbol(), named);
    Formula body = canonical_names(f.sub(0), env, depth + 1);
    if (saved) env.insert_or_assign(v.symbol(), *saved);
    else env.erase(v.symbol());
    return rebuild(f, {named}, {body});
  }
  std::function<Term(const Term&)> rename = [&](const Term& t) -> Term {
    if (t.is_variable()) {
      auto it = env.find(t.symbol());
      return it == env.end() ? t : it->second;
    }
    if (t.is_application()) return Term::application(t.symbol(), map_term_list(t.args(), rename), t.sort());
    return t;
  };
  std::vector<Term> terms = map_term_list(f.terms(), rename);
  std::vector<Formula> subs;
  for (std::size_t i = 0; i < f.arity(); ++i) subs.push_back(canonical_names(f.sub(i), env, depth));
  return rebuild(f, std::move(terms), std::move(subs));
}

void free_vars_impl(const Formula& f, std::set<std::string>& bound, std::vector<Term>& out) {
  if (f.is_quantifier()) {
    const std::string& name = f.bound().symbol();
    bool inserted = bound.insert(name).second;
    free_vars_impl(f.sub(0), bound, out);
    if (inserted) bound.erase(name);
    return;
  }
  std::function<void(const Term&)> visit = [&](const Term& t) {
    if (t.is_variable()) {
      if (bound.count(t.symbol())) return;
      bool seen = std::any_of(out.begin(), out.end(), [&](const Term& v) { return v.symbol() == t.symbol(); });
      if (!seen) out.push_back(t);
      return;
    }
    for (const Term& a : t.args()) visit(a);
  };
  for (const Term& t : f.terms()) visit(t);
  for (std::size_t i = 0; i < f.arity(); ++i) free_vars_impl(f.sub(i), bound, out);
}

}  // namespace

std::vector<Term> collect_constants(const Formula& f) {
  std::vector<Term> out;
  for_each_term(f, [&](const Term& t) { constants_of_term(t, out); });
  return out;
}

std::size_t count_does(const Formula& f) {
  std::vector<Formula> found;
  collect_does(f, found);
  return found.size();
}

Term alpha_of(const Formula& f) { return single_does(f).term(0); }
Term beta_of(const Formula& f) { return single_does(f).term(1); }

Formula substitute(const Formula& f, const Substitution& sigma) {
  if (sigma.empty()) return f;
  std::set<std::string> bound;
  return substitute_impl(f, sigma, bound);
}

Term instantiate(const Term& t, const std::string& var, const Term& value) {
  if (t.is_variable()) return t.symbol() == var ? value : t;
  if (t.is_application()) {
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(instantiate(a, var, value));
    return Term::application(t.symbol(), std::move(args), t.sort());
  }
  return t;
}

Formula instantiate(const Formula& f, const std::string& var, const Term& value) {
  if (f.is_quantifier()) {
    if (f.bound().symbol() == var) return f;  // shadowed
    return rebuild(f, {f.bound()}, {instantiate(f.sub(0), var, value)});
  }
  std::vector<Term> terms;
  for (const Term& t : f.terms()) terms.push_back(instantiate(t, var, value));
  std::vector<Formula> subs;
  for (std::size_t i = 0; i < f.arity(); ++i) subs.push_back(instantiate(f.sub(i), var, value));
  return rebuild(f, std::move(terms), std::move(subs));
}

std::vector<Term> free_variables(const Formula& f) {
  std::set<std::string> bound;
  std::vector<Term> out;
  free_vars_impl(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

std::vector<Term> ground_subterms(const Formula& f) {
  std::vector<Term> out;
  std::function<void(const Term&)> visit = [&](const Term& t) {
    if (t.is_ground() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    for (const Term& a : t.args()) visit(a);
  };
  for_each_term(f, visit);
  return out;
}

std::size_t max_term_depth(const Formula& f) {
  std::size_t d = 0;
  for_each_term(f, [&](const Term& t) { d = std::max(d, t.depth()); });
  return d;
}

Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn) {
  std::function<Term(const Term&)> walk = [&](const Term& t) -> Term {
    if (!t.is_application()) return t;
    return fn(Term::application(t.symbol(), map_term_list(t.args(), walk), t.sort()));
  };
  if (f.is_quantifier()) return rebuild(f, {f.bound()}, {map_terms(f.sub(0), fn)});
  std::vector<Term> terms = map_term_list(f.terms(), walk);
  std::vector<Formula> subs;
  for (std::size_t i = 0; i < f.arity(); ++i) subs.push_back(map_terms(f.sub(i), fn));
  return rebuild(f, std::move(terms), std::move(subs));
}

Formula normalize(const Formula& f) {
  std::map<std::string, Term> env;
  std::size_t counter = 0;
  Formula g = uniquify(f, env, counter);
  g = push_negation(g, false);
  g = order_blocks(g);
  env.clear();
  return canonical_names(g, env, 0);
}

bool alpha_equivalent(const Formula& a, const Formula& b) { return normalize(a) == normalize(b); }

QuantifierBlock split_block(const Formula& f, FormulaKind quantifier) {
  QuantifierBlock block{{}, f};
  while (block.body.is(quantifier)) {
    block.vars.push_back(block.body.bound());
    Formula next = block.body.sub(0);
    block.body = next;
  }
  return block;
}

Formula forall_over_used(const std::vector<Term>& vars, const Formula& body) {
  std::vector<Term> free = free_variables(body);
  std::vector<Term> used;
  for (const Term& v : vars) {
    bool occurs = std::any_of(free.begin(), free.end(), [&](const Term& x) { return x.symbol() == v.symbol(); });
    if (occurs) used.push_back(v);
  }
  return Formula::forall_block(used, body);
}

}  // namespace full
