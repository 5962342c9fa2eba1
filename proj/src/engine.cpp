#include "full/engine.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "full/printer.hpp"
#include "full/transform.hpp"

namespace full {

// ---------------------------------------------------------------------------
// DerivationContext

DerivationContext::DerivationContext(std::shared_ptr<const KnowledgeBase> kb, ResourceLimits limits)
    : kb_(std::move(kb)), limits_(limits), index_(1) {
  if (!kb_) throw Error("derivation context needs a knowledge base");
  if (limits_.max_facts == 0 || limits_.max_iterations == 0 || limits_.max_term_depth == 0)
    throw Error("resource limits must be positive");
}

ScopeId DerivationContext::willed_scope(const Term& agent) {
  for (std::size_t i = 0; i < scope_agents_.size(); ++i)
    if (scope_agents_[i] == agent) return i + 1;
  scope_agents_.push_back(agent);
  index_.emplace_back();
  return scope_agents_.size();
}

std::optional<Term> DerivationContext::scope_agent(ScopeId s) const {
  if (s == kBackground || s > scope_agents_.size()) return std::nullopt;
  return scope_agents_[s - 1];
}

std::string DerivationContext::scope_name(ScopeId s) const {
  if (auto a = scope_agent(s)) return "willed-by(" + render(*a) + ")";
  return "background";
}

std::optional<FactId> DerivationContext::find(ScopeId scope, const std::string& text) const {
  if (scope < index_.size()) {
    auto it = index_[scope].find(text);
    if (it != index_[scope].end()) return it->second;
  }
  if (scope != kBackground) {
    auto it = index_[kBackground].find(text);
    if (it != index_[kBackground].end()) return it->second;
  }
  return std::nullopt;
}

std::optional<FactId> DerivationContext::find(ScopeId scope, const Formula& f) const {
  return find(scope, render(normalize(f)));
}

FactId DerivationContext::add(ScopeId scope, const Formula& f, std::string rule, std::vector<FactId> premises,
                              std::string detail) {
  if (scope >= index_.size()) throw Error("unknown scope");
  Formula canonical = normalize(f);
  std::string text = render(canonical);
  if (auto existing = find(scope, text)) return *existing;
  for (FactId p : premises) {
    if (p >= facts_.size()) throw Error("premise refers to a later fact");
    if (!visible(p, scope)) throw Error("premise is not visible from the target scope");
  }
  FactId id = facts_.size();
  facts_.push_back(Fact{id, scope, canonical, text, std::move(rule), std::move(premises), std::move(detail)});
  index_[scope].emplace(facts_.back().text, id);
  return id;
}

Term DerivationContext::new_witness(const std::string& sort, ScopeId scope, std::size_t generation) {
  for (;;) {
    std::string name = "w" + std::to_string(++witness_counter_);
    if (kb_->find_constant(name) || kb_->find_function(name) || kb_->find_predicate(name)) continue;
    witnesses_.push_back({name, sort, scope, generation});
    return Term::constant(name, sort);
  }
}

std::size_t DerivationContext::witness_generation(const std::string& name) const {
  for (const auto& w : witnesses_)
    if (w.name == name) return w.generation;
  return 0;
}

std::string to_string(SaturationStatus s) {
  switch (s) {
    case SaturationStatus::SaturatedConsistent: return "saturated_consistent";
    case SaturationStatus::Contradiction: return "contradiction";
    case SaturationStatus::ResourceExhausted: return "resource_exhausted";
  }
  return "?";
}

std::vector<FactId> ancestors(const DerivationContext& ctx, FactId id) {
  std::set<FactId> seen{id};
  std::vector<FactId> stack{id};
  while (!stack.empty()) {
    FactId cur = stack.back();
    stack.pop_back();
    for (FactId p : ctx.fact(cur).premises)
      if (seen.insert(p).second) stack.push_back(p);
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Pattern matching of open formulas against canonical facts

namespace {

using Binding = std::map<std::string, Term>;

struct Matcher {
  const SortHierarchy& sorts;
  const std::set<std::string>& pattern_vars;
  Binding binding;
  std::map<std::string, std::string> bound_map;  // pattern binder -> fact binder

  bool term(const Term& p, const Term& g) {
    if (p.is_variable()) {
      if (auto it = bound_map.find(p.symbol()); it != bound_map.end())
        return g.is_variable() && g.symbol() == it->second;
      if (pattern_vars.count(p.symbol())) {
        if (auto it = binding.find(p.symbol()); it != binding.end()) return it->second == g;
        if (!g.is_ground() || !sorts.is_subsort(g.sort(), p.sort())) return false;
        binding.emplace(p.symbol(), g);
        return true;
      }
      return p == g;
    }
    if (p.kind() != g.kind() || p.symbol() != g.symbol() || p.args().size() != g.args().size()) return false;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!term(p.args()[i], g.args()[i])) return false;
    return true;
  }

  bool formula(const Formula& p, const Formula& g) {
    if (p.kind() != g.kind() || p.symbol() != g.symbol() || p.terms().size() != g.terms().size() ||
        p.arity() != g.arity())
      return false;
    if (p.is(FormulaKind::Deontic) && p.op() != g.op()) return false;
    if (p.is_quantifier()) {
      if (p.bound().sort() != g.bound().sort()) return false;
      auto saved = bound_map.find(p.bound().symbol()) == bound_map.end()
                       ? std::nullopt
                       : std::optional<std::string>(bound_map[p.bound().symbol()]);
      bound_map[p.bound().symbol()] = g.bound().symbol();
      bool ok = formula(p.sub(0), g.sub(0));
      if (saved) bound_map[p.bound().symbol()] = *saved;
      else bound_map.erase(p.bound().symbol());
      return ok;
    }
    for (std::size_t i = 0; i < p.terms().size(); ++i)
      if (!term(p.terms()[i], g.terms()[i])) return false;
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (!formula(p.sub(i), g.sub(i))) return false;
    return true;
  }
};

void flatten(const Formula& f, FormulaKind kind, std::vector<Formula>& out) {
  if (f.is(kind)) {
    flatten(f.sub(0), kind, out);
    flatten(f.sub(1), kind, out);
  } else {
    out.push_back(f);
  }
}

bool mentions_any(const Formula& f, const std::set<std::string>& vars) {
  for (const Term& v : free_variables(f))
    if (vars.count(v.symbol())) return true;
  return false;
}

bool is_equality_literal(const Formula& f) {
  return f.is(FormulaKind::Equals) || (f.is(FormulaKind::Not) && f.sub(0).is(FormulaKind::Equals));
}

Formula instantiate_all(Formula f, const Binding& b) {
  for (const auto& [name, value] : b) f = instantiate(f, name, value);
  return f;
}

std::string describe_binding(const std::vector<Term>& vars, const Binding& b) {
  std::string out;
  for (const Term& v : vars) {
    auto it = b.find(v.symbol());
    if (it == b.end()) continue;
    if (!out.empty()) out += ", ";
    out += v.symbol() + " := " + render(it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Saturation

class Saturator {
 public:
  Saturator(DerivationContext& ctx) : ctx_(ctx), kb_(ctx.kb()), terms_(ctx.scope_count()) {}

  bool over_budget() const { return ctx_.size() > ctx_.limits().max_facts; }

  /// One pass over the facts that existed when it started.
  void pass() {
    std::size_t snapshot = ctx_.size();
    refresh_terms();
    for (FactId id = processed_; id < snapshot && !over_budget(); ++id) single_premise(id);
    processed_ = snapshot;
    for (ScopeId s = 0; s < ctx_.scope_count() && !over_budget(); ++s) {
      for (FactId id = 0; id < snapshot && !over_budget(); ++id) {
        if (!ctx_.visible(id, s)) continue;
        const Formula f = ctx_.fact(id).formula;
        if (f.is(FormulaKind::Forall)) universal_elimination(id, s);
        implication_rules(id, s);
        if (f.is(FormulaKind::Or)) disjunctive_syllogism(id, s);
      }
    }
  }

  /// Rules with a single premise, applied once per fact.
  void single_premise(FactId id) {
    const Fact fact = ctx_.fact(id);
    const Formula& f = fact.formula;
    ScopeId s = fact.scope;
    switch (f.kind()) {
      case FormulaKind::And: {
        ctx_.add(s, f.sub(0), "And-Elim", {id});
        ctx_.add(s, f.sub(1), "And-Elim", {id});
        break;
      }
      case FormulaKind::Iff:
        ctx_.add(s, Formula::implication(f.sub(0), f.sub(1)), "Iff-Elim", {id});
        ctx_.add(s, Formula::implication(f.sub(1), f.sub(0)), "Iff-Elim", {id});
        break;
      case FormulaKind::For: maxim_rules(ctx_, id); break;
      case FormulaKind::Wills:
        ctx_.add(s, Formula::negation(Formula::wills(f.term(0), Formula::negation(f.sub(0)))), "R2-Will-Consistency",
                 {id});
        if (s == kBackground) {
          for (ScopeId w = 1; w < ctx_.scope_count(); ++w)
            if (*ctx_.scope_agent(w) == f.term(0)) ctx_.add(w, f.sub(0), "Will-Open", {id});
        }
        break;
      case FormulaKind::Equals:
        if (distinct_by_unique_names(kb_, f.term(0), f.term(1)))
          ctx_.add(kBackground, Formula::negation(f), "UNA");
        break;
      case FormulaKind::Not:
        if (f.sub(0).is(FormulaKind::Equals) && f.sub(0).term(0) == f.sub(0).term(1))
          ctx_.add(kBackground, f.sub(0), "Eq-Refl");
        break;
      case FormulaKind::False: ctx_.add(kBackground, Formula::truth(), "Truth"); break;
      case FormulaKind::Exists: exists_witness(id); break;
      default: break;
    }
    QuantifierBlock block = split_block(f, FormulaKind::Forall);
    if (block.body.is(FormulaKind::Causes)) {
      Formula law = Formula::implication(block.body.sub(0), block.body.sub(1));
      ctx_.add(s, Formula::forall_block(block.vars, law), "R1-Cause-Discharge", {id});
    }
    if (!block.vars.empty()) refine(id);
  }

  static void maxim_rules(DerivationContext& ctx, FactId id) {
    const Fact fact = ctx.fact(id);
    const Formula& f = fact.formula;
    Term agent = alpha_of(f.sub(0));
    ctx.add(fact.scope, f.sub(0), "R5-Maxim-Split", {id});
    // A behavior whose agent is quantified has no single willing agent.
    if (!agent.is_ground()) {
      ctx.add(fact.scope, Formula::causes(f.sub(0), f.sub(1)), "R6-Maxim-Cause", {id});
      return;
    }
    ctx.add(fact.scope, Formula::wills(agent, f.sub(1)), "R5-Maxim-Split", {id});
    ctx.add(fact.scope, Formula::causes(f.sub(0), f.sub(1)), "R6-Maxim-Cause", {id});
    auto owner = ctx.scope_agent(fact.scope);
    if (owner && *owner == agent)
      for (const auto& n : ctx.kb().necessities)
        ctx.add(fact.scope, n.instantiate(agent), "R4-Necessity", {id}, n.name);
  }

  // -- terms ------------------------------------------------------------------

  bool is_background_term(const std::string& text) const { return terms_[kBackground].keys.count(text) != 0; }

  void note_term(ScopeId s, const Term& t) {
    if (t.depth() > ctx_.limits().max_term_depth) return;
    std::string text = render(t);
    if (s != kBackground && is_background_term(text)) return;
    if (terms_[s].keys.insert(text).second) terms_[s].list.push_back(t);
  }

  void refresh_terms() {
    if (!seeded_) {
      for (const auto& c : kb_.constants) note_term(kBackground, Term::constant(c.name, c.sort));
      seeded_ = true;
    }
    terms_.resize(ctx_.scope_count());
    for (; scanned_ < ctx_.size(); ++scanned_) {
      const Fact& f = ctx_.fact(scanned_);
      for (const Term& t : ground_subterms(f.formula)) note_term(f.scope, t);
    }
  }

  // -- universal elimination ------------------------------------------------

  void universal_elimination(FactId id, ScopeId s) {
    const Fact u = ctx_.fact(id);
    QuantifierBlock block = split_block(u.formula, FormulaKind::Forall);
    // From a willed pass, a background universal only meets the scope's own terms.
    std::vector<std::pair<ScopeId, const std::vector<Term>*>> pools;
    if (s == kBackground || u.scope == s) pools.push_back({u.scope, &terms_[kBackground].list});
    if (s != kBackground) pools.push_back({s, &terms_[s].list});
    for (std::size_t i = 0; i < block.vars.size(); ++i) {
      const Term& var = block.vars[i];
      for (auto [target, pool] : pools) {
        for (std::size_t k = 0; k < pool->size(); ++k) {
          const Term t = (*pool)[k];
          if (!kb_.sorts.is_subsort(t.sort(), var.sort())) continue;
          std::string t_text = render(t);
          if (!ue_done_.insert({id, i, t_text, target}).second) continue;
          std::vector<Term> rest = block.vars;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
          Formula inst = Formula::forall_block(rest, instantiate(block.body, var.symbol(), t));
          if (max_term_depth(inst) > ctx_.limits().max_term_depth) {
            ctx_.incomplete = true;
            continue;
          }
          ctx_.add(target, inst, "UE", {id}, var.symbol() + " := " + t_text);
          if (over_budget()) return;
        }
      }
    }
  }

  void refine(FactId id) {
    if (!refined_.insert(id).second) return;
    const Fact u = ctx_.fact(id);
    QuantifierBlock block = split_block(u.formula, FormulaKind::Forall);
    if (has_connective(block.body)) return;
    for (const auto& fn : kb_.functions) {
      if (!fn.refines) continue;
      bool fits = true;
      bool changed = false;
      Formula variant = map_terms(block.body, [&](const Term& t) {
        if (t.symbol() != *fn.refines) return t;
        for (std::size_t i = 0; i < t.args().size(); ++i)
          if (i >= fn.params.size() || !kb_.sorts.is_subsort(t.args()[i].sort(), fn.params[i])) fits = false;
        changed = true;
        return Term::application(fn.name, std::vector<Term>(t.args().begin(), t.args().end()), fn.result);
      });
      if (!changed || !fits) continue;
      ctx_.add(u.scope, Formula::forall_block(block.vars, variant), "UE-Refine", {id},
               *fn.refines + " := " + fn.name);
    }
  }

  static bool has_connective(const Formula& f) {
    if (f.is(FormulaKind::Implies) || f.is(FormulaKind::Iff)) return true;
    if (f.is(FormulaKind::Causes) || f.is(FormulaKind::Wills) || f.is(FormulaKind::For) ||
        f.is(FormulaKind::Deontic))
      return false;  // opaque bodies
    for (std::size_t i = 0; i < f.arity(); ++i)
      if (has_connective(f.sub(i))) return true;
    return false;
  }

  // -- existential witnesses ------------------------------------------------

  void exists_witness(FactId id) {
    const Fact e = ctx_.fact(id);
    QuantifierBlock block = split_block(e.formula, FormulaKind::Exists);
    if (match_exists(block, e.scope, /*materialize=*/false)) return;
    std::size_t generation = 0;
    for (const Term& c : collect_constants(e.formula))
      generation = std::max(generation, ctx_.witness_generation(c.symbol()));
    ++generation;
    if (generation > ctx_.limits().max_term_depth) {
      ctx_.incomplete = true;
      return;
    }
    Formula body = block.body;
    std::string detail;
    for (const Term& v : block.vars) {
      Term w = ctx_.new_witness(v.sort(), e.scope, generation);
      body = instantiate(body, v.symbol(), w);
      if (!detail.empty()) detail += ", ";
      detail += v.symbol() + " := " + w.symbol();
    }
    ctx_.add(e.scope, body, "Exists-Witness", {id}, detail);
  }

  // -- establishing goals ---------------------------------------------------

  ScopeId join(std::initializer_list<FactId> ids) const {
    ScopeId s = kBackground;
    for (FactId i : ids) s = std::max(s, ctx_.fact(i).scope);
    return s;
  }

  ScopeId join(const std::vector<FactId>& ids) const {
    ScopeId s = kBackground;
    for (FactId i : ids) s = std::max(s, ctx_.fact(i).scope);
    return s;
  }

  /// Fact proving `goal` from `scope`, materializing composite proofs.
  std::optional<FactId> establish(const Formula& goal_in, ScopeId scope, int depth = 0) {
    if (depth > 8) return std::nullopt;
    Formula goal = normalize(goal_in);
    if (auto id = ctx_.find(scope, render(goal))) return id;
    switch (goal.kind()) {
      case FormulaKind::True: return ctx_.add(kBackground, goal, "Truth");
      case FormulaKind::Equals:
        if (goal.term(0) == goal.term(1) && goal.term(0).is_ground()) return ctx_.add(kBackground, goal, "Eq-Refl");
        return std::nullopt;
      case FormulaKind::Not:
        if (goal.sub(0).is(FormulaKind::Equals) &&
            distinct_by_unique_names(kb_, goal.sub(0).term(0), goal.sub(0).term(1)))
          return ctx_.add(kBackground, goal, "UNA");
        return std::nullopt;
      case FormulaKind::And: {
        auto a = establish(goal.sub(0), scope, depth + 1);
        if (!a) return std::nullopt;
        auto b = establish(goal.sub(1), scope, depth + 1);
        if (!b) return std::nullopt;
        return ctx_.add(join({*a, *b}), goal, "And-Intro", {*a, *b});
      }
      case FormulaKind::Or:
        for (std::size_t i = 0; i < 2; ++i)
          if (auto a = lookup(goal.sub(i), scope)) return ctx_.add(join({*a}), goal, "Or-Intro", {*a});
        return std::nullopt;
      case FormulaKind::Exists: {
        QuantifierBlock block = split_block(goal, FormulaKind::Exists);
        return match_exists(block, scope, /*materialize=*/true, goal, depth);
      }
      case FormulaKind::Forall: {
        QuantifierBlock block = split_block(goal, FormulaKind::Forall);
        std::vector<Formula> disjuncts;
        flatten(block.body, FormulaKind::Or, disjuncts);
        if (disjuncts.size() < 2) return std::nullopt;
        for (const Formula& d : disjuncts)
          if (auto a = lookup(forall_over_used(block.vars, d), scope))
            return ctx_.add(join({*a}), goal, "Or-Intro", {*a});
        return std::nullopt;
      }
      default: return std::nullopt;
    }
  }

  std::optional<FactId> lookup(const Formula& f, ScopeId scope) const { return ctx_.find(scope, f); }

  std::optional<FactId> match_exists(const QuantifierBlock& block, ScopeId scope, bool materialize,
                                     std::optional<Formula> goal = std::nullopt, int depth = 0) {
    std::vector<Formula> conjuncts;
    flatten(block.body, FormulaKind::And, conjuncts);
    std::stable_partition(conjuncts.begin(), conjuncts.end(), [](const Formula& c) { return !is_equality_literal(c); });
    std::set<std::string> vars;
    for (const Term& v : block.vars) vars.insert(v.symbol());

    Binding binding;
    std::vector<FactId> used;
    if (!solve(conjuncts, 0, vars, scope, binding, used, depth)) return std::nullopt;
    for (const Term& v : block.vars)
      if (!binding.count(v.symbol()) && mentions_any(block.body, {v.symbol()})) return std::nullopt;
    if (!materialize) return used.empty() ? FactId{0} : used.front();
    return ctx_.add(join(used), *goal, "Exists-Intro", used, describe_binding(block.vars, binding));
  }

  bool solve(const std::vector<Formula>& conjuncts, std::size_t i, const std::set<std::string>& vars, ScopeId scope,
             Binding& binding, std::vector<FactId>& used, int depth) {
    if (i == conjuncts.size()) return true;
    Formula c = instantiate_all(conjuncts[i], binding);
    if (!mentions_any(c, vars)) {
      auto id = establish(c, scope, depth + 1);
      if (!id) return false;
      used.push_back(*id);
      if (solve(conjuncts, i + 1, vars, scope, binding, used, depth)) return true;
      used.pop_back();
      return false;
    }
    if (is_equality_literal(c)) return false;  // would need an unbound variable
    std::size_t limit = ctx_.size();
    for (FactId id = 0; id < limit; ++id) {
      if (!ctx_.visible(id, scope)) continue;
      const Fact& g = ctx_.fact(id);
      if (g.formula.kind() != c.kind()) continue;
      Matcher m{kb_.sorts, vars, binding, {}};
      if (!m.formula(c, g.formula)) continue;
      Binding saved = binding;
      binding = m.binding;
      used.push_back(id);
      if (solve(conjuncts, i + 1, vars, scope, binding, used, depth)) return true;
      used.pop_back();
      binding = saved;
    }
    return false;
  }

  // -- modus ponens / tollens ---------------------------------------------------

  void implication_rules(FactId id, ScopeId s) {
    const Fact u = ctx_.fact(id);
    QuantifierBlock block = split_block(u.formula, FormulaKind::Forall);
    if (!block.body.is(FormulaKind::Implies)) return;
    const Formula& a = block.body.sub(0);
    const Formula& b = block.body.sub(1);
    if (!mp_done_.count({id, s})) {
      if (auto p = establish(forall_over_used(block.vars, a), s)) {
        ScopeId target = join({id, *p});
        if (s == kBackground || target != kBackground) {
          ctx_.add(target, forall_over_used(block.vars, b), "MP", {id, *p});
          mp_done_.insert({id, s});
        }
      }
    }
    if (!mt_done_.count({id, s})) {
      if (auto p = establish(forall_over_used(block.vars, Formula::negation(b)), s)) {
        ScopeId target = join({id, *p});
        if (s == kBackground || target != kBackground) {
          ctx_.add(target, forall_over_used(block.vars, Formula::negation(a)), "MT", {id, *p});
          mt_done_.insert({id, s});
        }
      }
    }
  }

  void disjunctive_syllogism(FactId id, ScopeId s) {
    const Fact u = ctx_.fact(id);
    for (std::size_t i = 0; i < 2; ++i) {
      if (ds_done_.count({id, s * 2 + i})) continue;
      if (auto p = lookup(Formula::negation(u.formula.sub(i)), s)) {
        ScopeId target = join({id, *p});
        if (s != kBackground && target == kBackground) continue;
        ctx_.add(target, u.formula.sub(1 - i), "Disjunctive-Syllogism", {id, *p});
        ds_done_.insert({id, s * 2 + i});
      }
    }
  }

 private:
  struct TermPool {
    std::vector<Term> list;
    std::set<std::string> keys;
  };

  DerivationContext& ctx_;
  const KnowledgeBase& kb_;
  std::vector<TermPool> terms_;
  bool seeded_ = false;
  std::size_t scanned_ = 0;
  std::size_t processed_ = 0;
  std::set<std::tuple<FactId, std::size_t, std::string, ScopeId>> ue_done_;
  std::set<FactId> refined_;
  std::set<std::pair<FactId, ScopeId>> mp_done_, mt_done_, ds_done_;
};

std::string negation_key(const Formula& f) { return render(normalize(Formula::negation(f))); }

}  // namespace

// ---------------------------------------------------------------------------

std::vector<ContradictionEvidence> find_contradictions(const DerivationContext& ctx) {
  struct Candidate {
    ContradictionEvidence ev;
    std::size_t weight;
    std::string pos_text, neg_text;
  };
  std::vector<Candidate> found;
  std::set<std::pair<FactId, FactId>> seen;
  for (const Fact& f : ctx.facts()) {
    auto other = ctx.find(f.scope, negation_key(f.formula));
    if (!other) continue;
    const Fact& g = ctx.fact(*other);
    if (!seen.insert({std::min(f.id, g.id), std::max(f.id, g.id)}).second) continue;
    bool f_neg = f.formula.is(FormulaKind::Not);
    bool g_neg = g.formula.is(FormulaKind::Not);
    const Fact* pos = &f;
    const Fact* neg = &g;
    if (f_neg && !g_neg) std::swap(pos, neg);
    else if (f_neg == g_neg && g.text < f.text) std::swap(pos, neg);
    ContradictionEvidence ev{pos->formula, neg->formula, pos->id, neg->id, std::max(f.scope, g.scope),
                             ancestors(ctx, pos->id), ancestors(ctx, neg->id)};
    std::set<FactId> all(ev.trace_positive.begin(), ev.trace_positive.end());
    all.insert(ev.trace_negative.begin(), ev.trace_negative.end());
    found.push_back({std::move(ev), all.size(), pos->text, neg->text});
  }
  std::stable_sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.weight, a.pos_text, a.neg_text) < std::tie(b.weight, b.pos_text, b.neg_text);
  });
  std::vector<ContradictionEvidence> out;
  for (auto& c : found) out.push_back(std::move(c.ev));
  return out;
}

std::optional<ContradictionEvidence> detect_contradiction(const DerivationContext& ctx) {
  auto all = find_contradictions(ctx);
  if (all.empty()) return std::nullopt;
  return all.front();
}

SaturationResult saturate(std::shared_ptr<DerivationContext> ctx, SaturateOptions options) {
  Saturator sat(*ctx);
  SaturationResult result{SaturationStatus::SaturatedConsistent, std::nullopt, {}, ctx, 0};
  bool exhausted = false;
  for (;;) {
    if (sat.over_budget() || result.iterations >= ctx->limits().max_iterations) {
      exhausted = true;
      break;
    }
    std::size_t before = ctx->size();
    sat.pass();
    if (ctx->size() == before) break;
    ++result.iterations;
    if (options.stop_at_contradiction && detect_contradiction(*ctx)) break;
  }
  if (!exhausted && sat.over_budget()) exhausted = true;
  result.all_evidence = find_contradictions(*ctx);
  if (!result.all_evidence.empty()) {
    result.status = SaturationStatus::Contradiction;
    result.evidence = result.all_evidence.front();
  } else if (exhausted || ctx->incomplete) {
    result.status = SaturationStatus::ResourceExhausted;
  }
  return result;
}

std::shared_ptr<DerivationContext> build_gamma_context(std::shared_ptr<const KnowledgeBase> gamma,
                                                       ResourceLimits limits) {
  auto ctx = std::make_shared<DerivationContext>(gamma, limits);
  for (const auto& a : gamma->axioms) ctx->add(kBackground, a.formula, "axiom", {}, a.name);
  return ctx;
}

std::shared_ptr<DerivationContext> build_wul_context(std::shared_ptr<const KnowledgeBase> gamma, const Maxim& m,
                                                     const UniversalizationRecord& ul, ResourceLimits limits) {
  auto ctx = build_gamma_context(gamma, limits);
  ScopeId s = ctx->willed_scope(m.agent);
  ctx->add(s, ul.ul_formula, "UL");
  FactId maxim = ctx->add(s, m.as_formula(), "maxim");
  Saturator::maxim_rules(*ctx, maxim);
  return ctx;
}

SaturationResult check_gamma_consistency(std::shared_ptr<const KnowledgeBase> gamma, ResourceLimits limits) {
  return saturate(build_gamma_context(std::move(gamma), limits), SaturateOptions{true});
}

}  // namespace full
