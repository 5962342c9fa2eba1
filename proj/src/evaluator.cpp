#include "full/evaluator.hpp"

#include <algorithm>

#include "full/printer.hpp"
#include "full/transform.hpp"

namespace full {

std::string to_string(DutyKind d) {
  switch (d) {
    case DutyKind::Perfect: return "perfect";
    case DutyKind::Imperfect: return "imperfect";
    case DutyKind::Unclassified: return "unclassified";
  }
  return "?";
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::Contradiction: return "contradiction";
    case Basis::SaturatedNoContradiction: return "saturated_no_contradiction";
    case Basis::GammaInconsistent: return "gamma_inconsistent";
    case Basis::ResourceExhausted: return "resource_exhausted";
  }
  return "?";
}

DutyKind classify_duty(const ContradictionEvidence& evidence, const Maxim& m,
                       const std::vector<NecessitySchema>& necessities) {
  if (alpha_equivalent(evidence.positive, Formula::causes(m.behavior, m.purpose))) return DutyKind::Perfect;
  for (const auto& n : necessities) {
    Formula need = n.instantiate(m.agent);
    if (alpha_equivalent(evidence.positive, need) || alpha_equivalent(evidence.negative, need))
      return DutyKind::Imperfect;
  }
  return DutyKind::Unclassified;
}

Maxim behavior_negated(const Maxim& m) {
  return Maxim{m.agent, normalize(Formula::negation(m.behavior)), m.purpose};
}

Verdict evaluate_perm(std::shared_ptr<const KnowledgeBase> gamma, const Maxim& m, ResourceLimits limits) {
  Verdict v{DeonticOperator::Perm, m, m, false, Basis::SaturatedNoContradiction, false, {}, std::nullopt,
            std::nullopt, {}, universalize(m), {}};
  SaturationResult gamma_check = check_gamma_consistency(gamma, limits);
  if (gamma_check.status == SaturationStatus::Contradiction) {
    v.basis = Basis::GammaInconsistent;
    v.note = "refused: the knowledge base is inconsistent";
    v.evidence = gamma_check.evidence;
    v.saturation = std::move(gamma_check);
    return v;
  }
  v.saturation = saturate(build_wul_context(gamma, m, v.ul, limits));
  switch (v.saturation.status) {
    case SaturationStatus::SaturatedConsistent:
      v.answer = true;
      v.basis = Basis::SaturatedNoContradiction;
      break;
    case SaturationStatus::ResourceExhausted:
      v.basis = Basis::ResourceExhausted;
      v.unproven = true;
      v.note = "unproven: search limits reached before saturation";
      break;
    case SaturationStatus::Contradiction: {
      v.basis = Basis::Contradiction;
      // Classify every pair; the reported evidence is the best pair of the
      // strongest kind found (perfect before imperfect before unclassified).
      std::optional<DutyKind> best;
      for (const auto& ev : v.saturation.all_evidence) {
        DutyKind k = classify_duty(ev, m, gamma->necessities);
        bool seen = false;
        for (DutyKind d : v.duty_kinds) seen = seen || d == k;
        if (!seen) v.duty_kinds.push_back(k);
        if (!best || static_cast<int>(k) < static_cast<int>(*best)) {
          best = k;
          v.evidence = ev;
        }
      }
      v.duty = best;
      std::sort(v.duty_kinds.begin(), v.duty_kinds.end());
      break;
    }
  }
  return v;
}

Verdict evaluate(std::shared_ptr<const KnowledgeBase> gamma, DeonticOperator op, const Maxim& m,
                 ResourceLimits limits) {
  Maxim tested = op == DeonticOperator::Obl ? behavior_negated(m) : m;
  Verdict v = evaluate_perm(std::move(gamma), tested, limits);
  v.op = op;
  v.maxim = m;
  v.evaluated = tested;
  if (v.basis == Basis::GammaInconsistent) return v;  // refusal: no deontic answer
  if (op != DeonticOperator::Perm) v.answer = !v.answer;
  return v;
}

}  // namespace full
