#pragma once

// Bounded forward-chaining saturation with provenance.
//
// Facts live in scopes: scope 0 is the background (Γ and what follows from
// it), every other scope is the world willed by one agent. Background facts
// are visible from every willed scope; nothing derived in a willed scope ever
// flows back into the background.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "full/knowledge_base.hpp"
#include "full/universalizer.hpp"

namespace full {

struct ResourceLimits {
  std::size_t max_facts = 10000;
  std::size_t max_iterations = 200;
  std::size_t max_term_depth = 4;
};

using FactId = std::size_t;
using ScopeId = std::size_t;
constexpr ScopeId kBackground = 0;

struct Fact {
  FactId id;
  ScopeId scope;
  Formula formula;  // canonical (normalized)
  std::string text;  // rendering of `formula`; doubles as the dedup key
  std::string rule;
  std::vector<FactId> premises;
  std::string detail;  // axiom name, instantiation, ...
};

/// Skolem constant introduced for an existential.
struct Witness {
  std::string name;
  std::string sort;
  ScopeId scope;
  std::size_t generation;
};

class DerivationContext {
 public:
  DerivationContext(std::shared_ptr<const KnowledgeBase> kb, ResourceLimits limits);

  const KnowledgeBase& kb() const { return *kb_; }
  std::shared_ptr<const KnowledgeBase> kb_ptr() const { return kb_; }
  const ResourceLimits& limits() const { return limits_; }

  /// Scope of the world willed by `agent`, created on first use.
  ScopeId willed_scope(const Term& agent);
  std::size_t scope_count() const { return scope_agents_.size() + 1; }
  /// nullopt for the background.
  std::optional<Term> scope_agent(ScopeId s) const;
  std::string scope_name(ScopeId s) const;

  /// Normalizes and inserts; returns the id of the new fact or of the
  /// visible fact it duplicates.
  FactId add(ScopeId scope, const Formula& f, std::string rule, std::vector<FactId> premises = {},
             std::string detail = {});
  /// Fact visible from `scope` whose canonical text is `text`.
  std::optional<FactId> find(ScopeId scope, const std::string& text) const;
  std::optional<FactId> find(ScopeId scope, const Formula& f) const;

  const std::vector<Fact>& facts() const { return facts_; }
  const Fact& fact(FactId id) const { return facts_.at(id); }
  std::size_t size() const { return facts_.size(); }

  const std::vector<Witness>& witnesses() const { return witnesses_; }
  Term new_witness(const std::string& sort, ScopeId scope, std::size_t generation);
  /// Generation of a witness constant; 0 for anything else.
  std::size_t witness_generation(const std::string& name) const;

  bool visible(FactId id, ScopeId from) const {
    ScopeId s = facts_[id].scope;
    return s == from || s == kBackground;
  }

  /// Set when a depth bound suppressed a derivation.
  bool incomplete = false;

 private:
  std::shared_ptr<const KnowledgeBase> kb_;
  ResourceLimits limits_;
  std::vector<Term> scope_agents_;
  std::vector<Fact> facts_;
  std::vector<std::unordered_map<std::string, FactId>> index_;
  std::vector<Witness> witnesses_;
  std::size_t witness_counter_ = 0;
};

struct ContradictionEvidence {
  Formula positive;  // χ
  Formula negative;  // canonical ¬χ
  FactId positive_id;
  FactId negative_id;
  ScopeId scope;
  std::vector<FactId> trace_positive;  // ancestors of positive_id, ascending, inclusive
  std::vector<FactId> trace_negative;
};

enum class SaturationStatus { SaturatedConsistent, Contradiction, ResourceExhausted };
std::string to_string(SaturationStatus s);

struct SaturationResult {
  SaturationStatus status;
  std::optional<ContradictionEvidence> evidence;  // best pair
  std::vector<ContradictionEvidence> all_evidence;
  std::shared_ptr<DerivationContext> context;
  std::size_t iterations = 0;
};

/// Γ as background, UL(M) and M as willed by the maxim agent, plus the
/// immediate consequences of willing M (R5, R6, R4).
std::shared_ptr<DerivationContext> build_wul_context(std::shared_ptr<const KnowledgeBase> gamma, const Maxim& m,
                                                     const UniversalizationRecord& ul,
                                                     ResourceLimits limits = {});

/// Context holding only Γ.
std::shared_ptr<DerivationContext> build_gamma_context(std::shared_ptr<const KnowledgeBase> gamma,
                                                       ResourceLimits limits = {});

struct SaturateOptions {
  /// Stop at the first pass that exposes a contradiction instead of running
  /// to fixpoint.
  bool stop_at_contradiction = false;
};

SaturationResult saturate(std::shared_ptr<DerivationContext> ctx, SaturateOptions options = {});

/// All complementary pairs, best first.
std::vector<ContradictionEvidence> find_contradictions(const DerivationContext& ctx);
std::optional<ContradictionEvidence> detect_contradiction(const DerivationContext& ctx);

SaturationResult check_gamma_consistency(std::shared_ptr<const KnowledgeBase> gamma, ResourceLimits limits = {});

/// Ids of `id` and all facts it depends on, ascending.
std::vector<FactId> ancestors(const DerivationContext& ctx, FactId id);

}  // namespace full
