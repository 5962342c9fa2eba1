#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "full/syntax.hpp"

namespace full {

struct ConstantDecl {
  std::string name;
  std::string sort;
  friend bool operator==(const ConstantDecl&, const ConstantDecl&) = default;
};

/// Function symbol. A nullary function denotes a fixed term (e.g. an action
/// type) and, unlike a constant, is never generalized by universalization.
struct FunctionDecl {
  std::string name;
  std::vector<std::string> params;
  std::string result;
  std::optional<std::string> refines;  // general function this one specializes
  friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> params;
  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

struct NamedFormula {
  std::string name;
  Formula formula;
  friend bool operator==(const NamedFormula&, const NamedFormula&) = default;
};

/// A requirement of willing anything at all: Wills(a, φ) → consequent[a].
struct NecessitySchema {
  std::string name;
  Term variable;  // the single free agent variable of the template
  Formula consequent;
  bool builtin = false;

  Formula instantiate(const Term& agent) const;
  friend bool operator==(const NecessitySchema&, const NecessitySchema&) = default;
};

struct NamedMaxim {
  std::string name;
  Maxim maxim;
  friend bool operator==(const NamedMaxim&, const NamedMaxim&) = default;
};

/// Γ together with its signature and the maxims to be evaluated against it.
struct KnowledgeBase {
  SortHierarchy sorts;
  std::vector<ConstantDecl> constants;
  std::vector<FunctionDecl> functions;
  std::vector<PredicateDecl> predicates;
  std::vector<NamedFormula> axioms;
  std::vector<NecessitySchema> necessities;
  std::vector<NamedMaxim> maxims;

  const ConstantDecl* find_constant(const std::string& name) const;
  const FunctionDecl* find_function(const std::string& name) const;
  const PredicateDecl* find_predicate(const std::string& name) const;
  const NamedMaxim* find_maxim(const std::string& name) const;
  /// Throws Error naming the missing maxim.
  const Maxim& maxim(const std::string& name) const;

  bool is_declared_constant(const std::string& name) const { return find_constant(name) != nullptr; }
  /// Functions that refine `general`.
  std::vector<const FunctionDecl*> refinements_of(const std::string& general) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

/// Behavior shape: a block of quantifiers, at most one negation, then Does.
bool is_behavior_shape(const Formula& f);

/// Unique-name assumption for declared constants: both sides are distinct
/// declared constants.
bool distinct_by_unique_names(const KnowledgeBase& kb, const Term& a, const Term& b);

}  // namespace full
