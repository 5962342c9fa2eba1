#include "properties.hpp"

#include <algorithm>
#include <memory>
#include <random>

#include "full/evaluator.hpp"
#include "full/parser.hpp"
#include "full/printer.hpp"
#include "full/report.hpp"
#include "full/transform.hpp"
#include "full/universalizer.hpp"
#include "certificate.hpp"
#include "generators.hpp"

namespace full::testing {
namespace {

// Verdict evaluation on generated KBs uses tight limits so that 500 cases stay
// fast; every comparison is between runs under the same limits.
const ResourceLimits kSmall{1500, 40, 3};

struct Runner {
  PropertyOutcome out;
  explicit Runner(std::string name) { out.name = std::move(name); }

  template <typename F>
  void run(std::uint32_t seed, std::size_t cases, F&& body) {
    for (std::size_t i = 0; i < cases; ++i) {
      std::uint32_t s = seed + static_cast<std::uint32_t>(i);
      std::mt19937 rng(s);
      std::string why;
      try {
        why = body(rng);
      } catch (const std::exception& e) {
        why = std::string("exception: ") + e.what();
      }
      ++out.cases;
      if (!why.empty() && out.failures.size() < 5) out.failures.push_back("seed " + std::to_string(s) + ": " + why);
      else if (!why.empty()) out.failures.push_back("seed " + std::to_string(s));
    }
  }
};

// Renames every bound variable by appending `suffix`.
Formula rename_bound(const Formula& f, const std::string& suffix) {
  switch (f.kind()) {
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Term v = Term::variable(f.bound().symbol() + suffix, f.bound().sort());
      Formula body = rename_bound(instantiate(f.sub(0), f.bound().symbol(), v), suffix);
      return f.is(FormulaKind::Forall) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    case FormulaKind::Not: return Formula::negation(rename_bound(f.sub(0), suffix));
    case FormulaKind::And: return Formula::conjunction(rename_bound(f.sub(0), suffix), rename_bound(f.sub(1), suffix));
    case FormulaKind::Or: return Formula::disjunction(rename_bound(f.sub(0), suffix), rename_bound(f.sub(1), suffix));
    case FormulaKind::Implies:
      return Formula::implication(rename_bound(f.sub(0), suffix), rename_bound(f.sub(1), suffix));
    case FormulaKind::Iff:
      return Formula::biconditional(rename_bound(f.sub(0), suffix), rename_bound(f.sub(1), suffix));
    case FormulaKind::Wills: return Formula::wills(f.term(0), rename_bound(f.sub(0), suffix));
    case FormulaKind::Causes: return Formula::causes(rename_bound(f.sub(0), suffix), rename_bound(f.sub(1), suffix));
    case FormulaKind::For: return Formula::purpose(rename_bound(f.sub(0), suffix), rename_bound(f.sub(1), suffix));
    case FormulaKind::Deontic: return Formula::deontic(f.op(), rename_bound(f.sub(0), suffix));
    default: return f;
  }
}

struct Summary {
  bool answer;
  Basis basis;
  std::optional<DutyKind> duty;
  std::vector<DutyKind> kinds;
  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summarize(const Verdict& v) { return {v.answer, v.basis, v.duty, v.duty_kinds}; }

std::string describe(const Summary& s) {
  return std::string(s.answer ? "true" : "false") + "/" + to_string(s.basis) + "/" + (s.duty ? to_string(*s.duty) : "-");
}

std::shared_ptr<const KnowledgeBase> share(KnowledgeBase kb) { return std::make_shared<const KnowledgeBase>(std::move(kb)); }

}  // namespace

PropertyOutcome prop_parse_render_identity(std::uint32_t seed, std::size_t cases) {
  Runner r("parse . render identity");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    KnowledgeBase kb = random_kb(rng);
    Formula f = random_formula(rng, kb);
    std::string text = render(f);
    if (!(parse_formula(kb, text) == f)) return "formula changed: " + text;
    std::string kb_text = render(kb);
    KnowledgeBase back = parse_kb(kb_text);
    if (!(back == kb)) return "knowledge base changed:\n" + kb_text;
    if (render(back) != kb_text) return "rendering not stable";
    return {};
  });
  return r.out;
}

PropertyOutcome prop_normalize_idempotent(std::uint32_t seed, std::size_t cases) {
  Runner r("normalize idempotence");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    KnowledgeBase kb = random_signature(rng);
    Formula f = random_formula(rng, kb);
    Formula n = normalize(f);
    if (!(normalize(n) == n)) return "normalize(normalize(f)) != normalize(f) for " + render(f);
    if (!alpha_equivalent(f, n)) return "f not alpha-equivalent to its normal form";
    if (!(parse_formula(kb, render(n)) == n)) return "normal form does not round-trip";
    return {};
  });
  return r.out;
}

PropertyOutcome prop_alpha_equivalence_laws(std::uint32_t seed, std::size_t cases) {
  Runner r("alpha-equivalence laws");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    KnowledgeBase kb = random_signature(rng);
    Formula f = random_formula(rng, kb);
    Formula g = rename_bound(f, "_g");
    Formula h = rename_bound(g, "_h");
    Formula other = random_formula(rng, kb);
    if (!alpha_equivalent(f, f)) return "not reflexive";
    if (!alpha_equivalent(f, g) || !alpha_equivalent(g, f)) return "bound renaming not equivalent";
    if (!alpha_equivalent(g, h) || !alpha_equivalent(f, h)) return "not transitive";
    if (alpha_equivalent(f, other) != alpha_equivalent(other, f)) return "not symmetric";
    if (alpha_equivalent(f, other) && alpha_equivalent(other, h) != alpha_equivalent(f, h)) return "class leak";
    if (alpha_equivalent(f, Formula::negation(f)) && !f.is(FormulaKind::Deontic)) return "f equivalent to not f";
    return {};
  });
  return r.out;
}

PropertyOutcome prop_perm_imp_complement(std::uint32_t seed, std::size_t cases) {
  Runner r("Perm/Imp complementarity");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto kb = share(random_kb(rng));
    const Maxim& m = kb->maxims.front().maxim;
    Verdict perm = evaluate(kb, DeonticOperator::Perm, m, kSmall);
    Verdict imp = evaluate(kb, DeonticOperator::Imp, m, kSmall);
    if (perm.basis != imp.basis) return "bases differ";
    if (perm.basis == Basis::GammaInconsistent) {
      if (perm.answer || imp.answer) return "refusal must not answer true";
      return {};
    }
    if (perm.answer == imp.answer) return "Perm and Imp agree on " + render(m);
    return {};
  });
  return r.out;
}

PropertyOutcome prop_obl_duality(std::uint32_t seed, std::size_t cases) {
  Runner r("Obl duality");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto kb = share(random_kb(rng));
    const Maxim& m = kb->maxims.front().maxim;
    Verdict obl = evaluate(kb, DeonticOperator::Obl, m, kSmall);
    Verdict imp_neg = evaluate(kb, DeonticOperator::Imp, behavior_negated(m), kSmall);
    if (!(summarize(obl) == summarize(imp_neg)))
      return "Obl(m) " + describe(summarize(obl)) + " vs Imp(not m) " + describe(summarize(imp_neg));
    if (!alpha_equivalent(behavior_negated(behavior_negated(m)).behavior, m.behavior)) return "negation not involutive";
    return {};
  });
  return r.out;
}

PropertyOutcome prop_renaming_invariance(std::uint32_t seed, std::size_t cases) {
  Runner r("verdict invariance under constant renaming");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    KnowledgeBase base = random_kb(rng);
    KnowledgeBase renamed = rename_constants(base, "k_");
    auto a = share(base);
    auto b = share(renamed);
    for (DeonticOperator op : {DeonticOperator::Perm, DeonticOperator::Obl}) {
      Summary x = summarize(evaluate(a, op, a->maxims.front().maxim, kSmall));
      Summary y = summarize(evaluate(b, op, b->maxims.front().maxim, kSmall));
      if (!(x == y)) return to_string(op) + ": " + describe(x) + " vs " + describe(y);
    }
    return {};
  });
  return r.out;
}

PropertyOutcome prop_reordering_invariance(std::uint32_t seed, std::size_t cases) {
  Runner r("verdict invariance under axiom reordering");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    KnowledgeBase base = random_kb(rng);
    KnowledgeBase shuffled = base;
    std::shuffle(shuffled.axioms.begin(), shuffled.axioms.end(), rng);
    auto a = share(base);
    auto b = share(shuffled);
    for (DeonticOperator op : {DeonticOperator::Perm, DeonticOperator::Obl}) {
      Summary x = summarize(evaluate(a, op, a->maxims.front().maxim, kSmall));
      Summary y = summarize(evaluate(b, op, b->maxims.front().maxim, kSmall));
      if (!(x == y)) return to_string(op) + ": " + describe(x) + " vs " + describe(y);
    }
    return {};
  });
  return r.out;
}

PropertyOutcome prop_universalize_deterministic_closed(std::uint32_t seed, std::size_t cases) {
  Runner r("universalize determinism and closedness");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    KnowledgeBase kb = random_signature(rng);
    Maxim m = random_maxim(rng, kb);
    UniversalizationRecord a = universalize(m);
    UniversalizationRecord b = universalize(m);
    if (!(a.ul_formula == b.ul_formula) || !(a.t_phi1 == b.t_phi1) || !(a.t_phi2 == b.t_phi2))
      return "two runs differ for " + render(m);
    if (!is_closed(a.ul_formula)) return "UL has free variables: " + render(a.ul_formula);
    for (const Term& c : collect_constants(a.ul_formula)) {
      for (const Term& t : a.t_phi2)
        if (t == c) return "constant " + c.symbol() + " survived generalization";
      for (const Term& t : a.t_phi1)
        if (t == c) return "constant " + c.symbol() + " survived generalization";
    }
    if (!(a.t_phi2.front() == m.agent)) return "agent is not first in T_phi2";
    // Alpha-equivalent maxims (bound renaming) give alpha-equivalent laws.
    Maxim renamed{m.agent, rename_bound(m.behavior, "_r"), m.purpose};
    if (!alpha_equivalent(universalize(renamed).ul_formula, a.ul_formula)) return "not stable under bound renaming";
    return {};
  });
  return r.out;
}

PropertyOutcome prop_certificate_replay(std::uint32_t seed, std::size_t cases) {
  Runner r("certificate replay on generated KBs");
  r.run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto kb = share(random_kb(rng));
    auto op = std::uniform_int_distribution<int>(0, 2)(rng);
    Verdict v = evaluate(kb, static_cast<DeonticOperator>(op), kb->maxims.front().maxim, kSmall);
    CertificateReport rep = check_certificate(*kb, trace_json(*v.saturation.context), v.evaluated);
    return rep.ok() ? std::string{} : rep.failures.front();
  });
  return r.out;
}

std::vector<std::pair<std::string, Property>> all_properties() {
  return {{"parse-render", prop_parse_render_identity},
          {"normalize", prop_normalize_idempotent},
          {"alpha", prop_alpha_equivalence_laws},
          {"perm-imp", prop_perm_imp_complement},
          {"obl-duality", prop_obl_duality},
          {"renaming", prop_renaming_invariance},
          {"reordering", prop_reordering_invariance},
          {"universalize", prop_universalize_deterministic_closed},
          {"certificates", prop_certificate_replay}};
}

}  // namespace full::testing
