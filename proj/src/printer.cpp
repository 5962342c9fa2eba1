#include "full/printer.hpp"

#include <sstream>

namespace full {
namespace {

constexpr int kQuant = 0;
constexpr int kIff = 1;
constexpr int kImplies = 2;
constexpr int kOr = 3;
constexpr int kAnd = 4;
constexpr int kNot = 5;
constexpr int kAtom = 6;

int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Forall:
    case FormulaKind::Exists: return kQuant;
    case FormulaKind::Iff: return kIff;
    case FormulaKind::Implies: return kImplies;
    case FormulaKind::Or: return kOr;
    case FormulaKind::And: return kAnd;
    case FormulaKind::Not: return f.sub(0).is(FormulaKind::Equals) ? kAtom : kNot;
    default: return kAtom;
  }
}

std::string term_list(std::span<const Term> ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ", ";
    out += render(ts[i]);
  }
  return out;
}

void emit(const Formula& f, int min_prec, std::string& out);

void binary(const Formula& f, const char* op, int left, int right, std::string& out) {
  emit(f.sub(0), left, out);
  out += op;
  emit(f.sub(1), right, out);
}

void emit_body(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::Not:
      if (f.sub(0).is(FormulaKind::Equals)) {
        out += render(f.sub(0).term(0)) + " != " + render(f.sub(0).term(1));
        return;
      }
      out += "not ";
      emit(f.sub(0), kNot, out);
      return;
    case FormulaKind::And: binary(f, " and ", kAnd, kNot, out); return;
    case FormulaKind::Or: binary(f, " or ", kOr, kAnd, out); return;
    case FormulaKind::Implies: binary(f, " -> ", kOr, kImplies, out); return;
    case FormulaKind::Iff: binary(f, " <-> ", kIff, kImplies, out); return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      out += f.is(FormulaKind::Forall) ? "forall " : "exists ";
      // Consecutive binders of one sort share it: forall a1, a2:Agent, j1:Job.
      const Formula* cur = &f;
      std::vector<Term> vars;
      while (cur->is(f.kind())) {
        vars.push_back(cur->bound());
        cur = &cur->sub(0);
      }
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += vars[i].symbol();
        if (i + 1 == vars.size() || vars[i + 1].sort() != vars[i].sort()) out += ":" + vars[i].sort();
      }
      out += ". ";
      emit(*cur, kQuant, out);
      return;
    }
    case FormulaKind::Equals: out += render(f.term(0)) + " = " + render(f.term(1)); return;
    case FormulaKind::Atom:
      out += f.symbol();
      if (!f.terms().empty()) out += "(" + term_list(f.terms()) + ")";
      return;
    case FormulaKind::Does: out += "Does(" + term_list(f.terms()) + ")"; return;
    case FormulaKind::Wills:
      out += "Wills(" + render(f.term(0)) + ", ";
      emit(f.sub(0), kQuant, out);
      out += ")";
      return;
    case FormulaKind::Causes:
    case FormulaKind::For:
      out += f.is(FormulaKind::Causes) ? "Causes(" : "For(";
      emit(f.sub(0), kQuant, out);
      out += ", ";
      emit(f.sub(1), kQuant, out);
      out += ")";
      return;
    case FormulaKind::Deontic:
      out += to_string(f.op()) + "(";
      emit(f.sub(0), kQuant, out);
      out += ")";
      return;
  }
}

void emit(const Formula& f, int min_prec, std::string& out) {
  // Quantifiers extend to the right, so any quantifier used as an operand is
  // bracketed.
  bool paren = precedence(f) < min_prec || (f.is_quantifier() && min_prec > kQuant);
  if (paren) out += "(";
  emit_body(f, out);
  if (paren) out += ")";
}

std::string params(const std::vector<std::string>& ps) {
  std::string out = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i];
  return out + ")";
}

}  // namespace

std::string render(const Term& t) {
  if (!t.is_application() || t.args().empty()) return t.symbol();
  return t.symbol() + "(" + term_list(t.args()) + ")";
}

std::string render(const Formula& f) {
  std::string out;
  emit(f, kQuant, out);
  return out;
}

std::string render(const Maxim& m) { return render(m.as_formula()); }

std::string render(const KnowledgeBase& kb) {
  std::ostringstream out;
  for (const std::string& s : kb.sorts.names()) {
    out << "sort " << s;
    if (auto p = kb.sorts.parent(s)) out << " < " << *p;
    out << '\n';
  }
  for (const auto& c : kb.constants) out << "const " << c.name << " : " << c.sort << '\n';
  for (const auto& f : kb.functions) {
    out << "func " << f.name;
    if (!f.params.empty()) out << params(f.params);
    out << " : " << f.result;
    if (f.refines) out << " refines " << *f.refines;
    out << '\n';
  }
  for (const auto& p : kb.predicates) {
    out << "pred " << p.name;
    if (!p.params.empty()) out << params(p.params);
    out << '\n';
  }
  for (const auto& a : kb.axioms) out << "axiom " << a.name << ": " << render(a.formula) << '\n';
  for (const auto& n : kb.necessities) {
    if (n.builtin) continue;
    out << "necessity " << n.name << "(" << n.variable.symbol() << ":" << n.variable.sort()
        << "): " << render(n.consequent) << '\n';
  }
  for (const auto& m : kb.maxims) out << "maxim " << m.name << ": " << render(m.maxim) << '\n';
  return out.str();
}

}  // namespace full
