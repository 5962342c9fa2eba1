#pragma once

// Textual knowledge-base language (.full files).
//
//   sort Agent
//   sort Promise < Action
//   const karli, jan : Agent
//   func promise(Agent) : Promise
//   func falsePromise(Agent) : FalsePromise refines promise
//   pred HasTravelMoney(Agent)
//   axiom B1: exists a1:Agent. a1 != karli and Wills(a1, HasTravelMoney(a1))
//   necessity Alive(a:Agent): Alive(a)
//   maxim M: For(Does(karli, falsePromise(jan)), HasTravelMoney(karli))
//
// Sorts come first, then symbols, then axioms/necessities/maxims. Operator
// precedence, tightest first: not, and, or, ->, <->. Quantifier bodies extend
// as far right as possible. `#` starts a comment.

#include <cstddef>
#include <string>
#include <string_view>

#include "full/knowledge_base.hpp"

namespace full {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceLocation where, const std::string& message);
  /// Same diagnostic, prefixed with the file it came from.
  ParseError(const std::string& file, SourceLocation where, const std::string& message);
  SourceLocation where() const { return where_; }
  const std::string& message() const { return message_; }
  const std::string& file() const { return file_; }

 private:
  SourceLocation where_;
  std::string message_;
  std::string file_;
};

KnowledgeBase parse_kb(std::string_view source);
KnowledgeBase load_kb(const std::string& path);

/// Parses a closed formula against the signature of `kb`.
Formula parse_formula(const KnowledgeBase& kb, std::string_view text);

}  // namespace full
