#include "generators.hpp"

#include <algorithm>

#include "full/transform.hpp"

namespace full::testing {
namespace {

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <typename T>
const T& choose(std::mt19937& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))];
}

struct Gen {
  std::mt19937& rng;
  const KnowledgeBase& kb;
  FormulaOptions opt;
  std::vector<Term> scope;
  int counter = 0;

  std::vector<std::string> sorts_below(const std::string& s) const {
    std::vector<std::string> out;
    for (const auto& n : kb.sorts.names())
      if (kb.sorts.is_subsort(n, s)) out.push_back(n);
    return out;
  }

  // A term whose sort is a subsort of `sort`, or nullopt if none can be built.
  std::optional<Term> term(const std::string& sort, int depth) {
    std::vector<Term> options;
    for (const Term& v : scope)
      if (kb.sorts.is_subsort(v.sort(), sort)) options.push_back(v);
    for (const auto& c : kb.constants)
      if (kb.sorts.is_subsort(c.sort, sort)) options.push_back(Term::constant(c.name, c.sort));
    std::vector<const FunctionDecl*> fns;
    for (const auto& f : kb.functions)
      if (kb.sorts.is_subsort(f.result, sort)) fns.push_back(&f);
    if (!fns.empty() && depth > 0 && (options.empty() || pick(rng, 0, 2) == 0)) {
      const FunctionDecl* f = fns[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(fns.size()) - 1))];
      std::vector<Term> args;
      for (const auto& p : f->params) {
        auto a = term(p, depth - 1);
        if (!a) return std::nullopt;
        args.push_back(*a);
      }
      return Term::application(f->name, std::move(args), f->result);
    }
    if (options.empty()) return std::nullopt;
    return choose(rng, options);
  }

  Term must_term(const std::string& sort) {
    for (int attempt = 0; attempt < 8; ++attempt)
      if (auto t = term(sort, 2)) return *t;
    for (const auto& c : kb.constants)
      if (kb.sorts.is_subsort(c.sort, sort)) return Term::constant(c.name, c.sort);
    throw Error("generator: no term of sort " + sort);
  }

  Formula does() { return Formula::does(must_term("Agent"), must_term("Action")); }

  Formula atom() {
    int k = pick(rng, 0, 9);
    if (k < 6 && !kb.predicates.empty()) {
      const auto& p = choose(rng, kb.predicates);
      std::vector<Term> args;
      for (const auto& s : p.params) args.push_back(must_term(s));
      return Formula::atom(p.name, std::move(args));
    }
    if (k < 8) return does();
    std::string sort = choose(rng, std::vector<std::string>{"Agent", "Object"});
    return Formula::equals(must_term(sort), must_term(sort));
  }

  Formula quantified(bool universal, int depth) {
    std::string sort = choose(rng, kb.sorts.names());
    Term v = Term::variable("x" + std::to_string(++counter), sort);
    scope.push_back(v);
    Formula body = formula(depth - 1);
    scope.pop_back();
    return universal ? Formula::forall(v, body) : Formula::exists(v, body);
  }

  Formula behavior() {
    if (pick(rng, 0, 2) == 0) {
      Term v = Term::variable("x" + std::to_string(++counter), "Agent");
      scope.push_back(v);
      Formula d = Formula::does(must_term("Agent"), must_term("Action"));
      scope.pop_back();
      Formula body = pick(rng, 0, 1) ? Formula::negation(d) : d;
      return pick(rng, 0, 1) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    Formula d = does();
    return pick(rng, 0, 2) == 0 ? Formula::negation(d) : d;
  }

  Formula first_order(int depth) {
    bool saved = opt.modal;
    opt.modal = false;
    Formula f = formula(depth);
    opt.modal = saved;
    return f;
  }

  Formula formula(int depth) {
    if (depth <= 0) {
      int k = pick(rng, 0, 12);
      if (k == 0) return Formula::truth();
      if (k == 1) return Formula::falsity();
      return atom();
    }
    int k = pick(rng, 0, opt.modal ? 14 : 10);
    switch (k) {
      case 0: return Formula::negation(formula(depth - 1));
      case 1: return Formula::conjunction(formula(depth - 1), formula(depth - 1));
      case 2: return Formula::disjunction(formula(depth - 1), formula(depth - 1));
      case 3: return Formula::implication(formula(depth - 1), formula(depth - 1));
      case 4: return Formula::biconditional(formula(depth - 1), formula(depth - 1));
      case 5: return quantified(true, depth);
      case 6: return quantified(false, depth);
      case 7:
      case 8:
      case 9:
      case 10: return atom();
      case 11: return Formula::wills(must_term("Agent"), formula(depth - 1));
      case 12: return Formula::causes(behavior(), formula(depth - 1));
      case 13: return Formula::purpose(behavior(), first_order(depth - 1));
      default: {
        auto op = choose(rng, std::vector<DeonticOperator>{DeonticOperator::Perm, DeonticOperator::Imp,
                                                             DeonticOperator::Obl});
        return Formula::deontic(op, Formula::purpose(behavior(), first_order(depth - 1)));
      }
    }
  }
};

}  // namespace

KnowledgeBase random_signature(std::mt19937& rng) {
  KnowledgeBase kb;
  kb.sorts.declare("Agent", std::nullopt);
  kb.sorts.declare("Action", std::nullopt);
  kb.sorts.declare("Object", std::nullopt);
  kb.sorts.declare("Job", std::string("Object"));
  kb.sorts.declare("Gift", std::string("Action"));
  int agents = pick(rng, 1, 3);
  for (int i = 0; i < agents; ++i) kb.constants.push_back({"c" + std::to_string(i + 1), "Agent"});
  kb.constants.push_back({"o1", "Object"});
  if (pick(rng, 0, 1)) kb.constants.push_back({"j", "Job"});
  kb.functions.push_back({"act", {"Agent"}, "Action", std::nullopt});
  kb.functions.push_back({"give", {"Agent"}, "Gift", std::string("act")});
  if (pick(rng, 0, 1)) kb.functions.push_back({"rest", {}, "Action", std::nullopt});
  kb.predicates.push_back({"P", {"Agent"}});
  kb.predicates.push_back({"Q", {"Agent", "Object"}});
  kb.predicates.push_back({"R", {}});
  kb.predicates.push_back({"Alive", {"Agent"}});
  Term a = Term::variable("a", "Agent");
  kb.necessities.push_back({"Alive", a, Formula::atom("Alive", {a}), true});
  return kb;
}

Formula random_formula(std::mt19937& rng, const KnowledgeBase& kb, FormulaOptions options) {
  Gen g{rng, kb, options, {}, 0};
  return g.formula(options.max_depth);
}

Maxim random_maxim(std::mt19937& rng, const KnowledgeBase& kb) {
  Gen g{rng, kb, {2, false}, {}, 0};
  // The agent must be a constant; retry until the Does node has one.
  for (;;) {
    Formula b = g.behavior();
    Term agent = alpha_of(b);
    if (!agent.is_constant()) continue;
    return Maxim{agent, b, g.first_order(pick(rng, 0, 2))};
  }
}

KnowledgeBase random_kb(std::mt19937& rng) {
  KnowledgeBase kb = random_signature(rng);
  Gen g{rng, kb, {2, true}, {}, 0};
  int n = pick(rng, 0, 4);
  for (int i = 0; i < n; ++i) {
    Formula f = pick(rng, 0, 3) == 0 ? g.formula(2) : g.first_order(pick(rng, 0, 2));
    kb.axioms.push_back({"A" + std::to_string(i + 1), f});
  }
  int m = pick(rng, 1, 2);
  for (int i = 0; i < m; ++i) kb.maxims.push_back({"M" + std::to_string(i + 1), random_maxim(rng, kb)});
  return kb;
}

namespace {

Formula rename_formula(const Formula& f, const std::string& prefix) {
  std::vector<Term> cs = collect_constants(f);
  // Constants go to fresh variables first, then to their new names.
  Substitution sigma;
  std::vector<std::pair<Term, Term>> back;
  int i = 0;
  for (const Term& c : cs) {
    Term v = Term::variable("__rename" + std::to_string(i++), c.sort());
    sigma.bind(c, v);
    back.push_back({v, Term::constant(prefix + c.symbol(), c.sort())});
  }
  Formula out = substitute(f, sigma);
  for (const auto& [v, c] : back) out = instantiate(out, v.symbol(), c);
  return out;
}

}  // namespace

KnowledgeBase rename_constants(const KnowledgeBase& kb, const std::string& prefix) {
  KnowledgeBase out = kb;
  for (auto& c : out.constants) c.name = prefix + c.name;
  for (auto& a : out.axioms) a.formula = rename_formula(a.formula, prefix);
  for (auto& n : out.necessities) n.consequent = rename_formula(n.consequent, prefix);
  for (auto& m : out.maxims) {
    Formula f = rename_formula(m.maxim.as_formula(), prefix);
    m.maxim = maxim_from_formula(f);
  }
  return out;
}

}  // namespace full::testing
