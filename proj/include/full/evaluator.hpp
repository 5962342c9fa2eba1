#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "full/engine.hpp"

namespace full {

enum class DutyKind { Perfect, Imperfect, Unclassified };
std::string to_string(DutyKind d);

enum class Basis { Contradiction, SaturatedNoContradiction, GammaInconsistent, ResourceExhausted };
std::string to_string(Basis b);

struct Verdict {
  DeonticOperator op;
  Maxim maxim;      // as queried
  Maxim evaluated;  // maxim whose universal law was tested (behavior-negated for Obl)
  bool answer = false;
  Basis basis = Basis::SaturatedNoContradiction;
  bool unproven = false;  // answer rests on the negation-as-failure default
  std::string note;
  std::optional<ContradictionEvidence> evidence;
  std::optional<DutyKind> duty;
  std::vector<DutyKind> duty_kinds;  // every kind seen among all contradiction pairs
  UniversalizationRecord ul;
  SaturationResult saturation;
};

/// Perfect when χ is the maxim's causal law, imperfect when χ (or ¬χ) is a
/// necessity of the maxim agent's will.
DutyKind classify_duty(const ContradictionEvidence& evidence, const Maxim& m,
                       const std::vector<NecessitySchema>& necessities);

Verdict evaluate_perm(std::shared_ptr<const KnowledgeBase> gamma, const Maxim& m, ResourceLimits limits = {});
Verdict evaluate(std::shared_ptr<const KnowledgeBase> gamma, DeonticOperator op, const Maxim& m,
                 ResourceLimits limits = {});

/// Obl(For(b, p)) is decided as Imp(For(normalize(not b), p)).
Maxim behavior_negated(const Maxim& m);

}  // namespace full
