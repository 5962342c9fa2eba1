#pragma once

// Syntactic operations over formulas: constant collection, Does accessors,
// substitution, canonical normalization and alpha-equivalence.

#include <functional>
#include <string>
#include <vector>

#include "full/syntax.hpp"

namespace full {

/// Constants occurring anywhere in φ (including under modal operators and
/// inside applications), unique by symbol, in first-occurrence order.
std::vector<Term> collect_constants(const Formula& f);

/// Agent / action term of the single Does node of φ. Throws Error when φ has
/// zero or several Does nodes.
Term alpha_of(const Formula& f);
Term beta_of(const Formula& f);

std::size_t count_does(const Formula& f);

/// Replaces every occurrence of each constant of σ by its variable. Throws
/// Error if a range variable would be captured by a binder of φ.
Formula substitute(const Formula& f, const Substitution& sigma);

/// Replaces free occurrences of the variable named `var` by `value`.
/// `value` must be ground (or at least free of variables bound in φ).
Formula instantiate(const Formula& f, const std::string& var, const Term& value);
Term instantiate(const Term& t, const std::string& var, const Term& value);

/// Free variables of φ (unique by name) in first-occurrence order.
std::vector<Term> free_variables(const Formula& f);
bool is_closed(const Formula& f);

/// Ground subterms of φ in first-occurrence order, outermost before inner.
std::vector<Term> ground_subterms(const Formula& f);

/// Maximum application depth of any term in φ.
std::size_t max_term_depth(const Formula& f);

/// Rewrites every application term bottom-up with `fn`.
Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn);

/// Canonical form: negations pushed to literals (but never into Wills,
/// Causes, For or deontic nodes), double negations removed, adjacent
/// same-kind quantifiers ordered by first use in their body, and bound
/// variables renamed by binding depth. Idempotent.
Formula normalize(const Formula& f);

/// normalize(φ1) and normalize(φ2) are structurally identical.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Strips a leading block of quantifiers of the given kind.
struct QuantifierBlock {
  std::vector<Term> vars;
  Formula body;
};
QuantifierBlock split_block(const Formula& f, FormulaKind quantifier);

/// Builds ∀ over those variables of `vars` that occur free in `body`.
Formula forall_over_used(const std::vector<Term>& vars, const Formula& body);

}  // namespace full
