#pragma once

// Pretty-printer producing the concrete syntax accepted by the parser.
// Output is minimal-parenthesis and round-trips through parse_formula/parse_kb.

#include <string>

#include "full/knowledge_base.hpp"

namespace full {

std::string render(const Term& t);
std::string render(const Formula& f);
std::string render(const Maxim& m);
/// Declarations in canonical order; builtin necessities are omitted since the
/// parser reinstalls them.
std::string render(const KnowledgeBase& kb);

}  // namespace full
