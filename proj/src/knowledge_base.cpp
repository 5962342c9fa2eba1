#include "full/knowledge_base.hpp"

#include "full/transform.hpp"

namespace full {

Formula NecessitySchema::instantiate(const Term& agent) const {
  return full::instantiate(consequent, variable.symbol(), agent);
}

const ConstantDecl* KnowledgeBase::find_constant(const std::string& name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c;
  return nullptr;
}

const FunctionDecl* KnowledgeBase::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const PredicateDecl* KnowledgeBase::find_predicate(const std::string& name) const {
  for (const auto& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

const NamedMaxim* KnowledgeBase::find_maxim(const std::string& name) const {
  for (const auto& m : maxims)
    if (m.name == name) return &m;
  return nullptr;
}

const Maxim& KnowledgeBase::maxim(const std::string& name) const {
  if (const NamedMaxim* m = find_maxim(name)) return m->maxim;
  throw Error("unknown maxim '" + name + "'");
}

std::vector<const FunctionDecl*> KnowledgeBase::refinements_of(const std::string& general) const {
  std::vector<const FunctionDecl*> out;
  for (const auto& f : functions)
    if (f.refines && *f.refines == general) out.push_back(&f);
  return out;
}

bool is_behavior_shape(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is_quantifier()) cur = &cur->sub(0);
  if (cur->is(FormulaKind::Not)) cur = &cur->sub(0);
  return cur->is(FormulaKind::Does);
}

bool distinct_by_unique_names(const KnowledgeBase& kb, const Term& a, const Term& b) {
  return a.is_constant() && b.is_constant() && a.symbol() != b.symbol() && kb.is_declared_constant(a.symbol()) &&
         kb.is_declared_constant(b.symbol());
}

}  // namespace full
