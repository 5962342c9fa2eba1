#include "full/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "full/transform.hpp"

namespace full {

ParseError::ParseError(SourceLocation where, const std::string& message)
    : Error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
      where_(where),
      message_(message) {}

ParseError::ParseError(const std::string& file, SourceLocation where, const std::string& message)
    : Error(file + ":" + std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
      where_(where),
      message_(message),
      file_(file) {}

namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Colon,
  Dot,
  Subsort,
  Arrow,
  DoubleArrow,
  Eq,
  Neq,
  Not,
  And,
  Or,
  Forall,
  Exists,
  Top,
  Bottom,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceLocation where;
};

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> k = {
      "sort",   "const", "func",  "pred", "axiom", "necessity", "maxim",  "refines", "forall",
      "exists", "not",   "and",   "or",   "true",  "false",     "Does",   "Wills",   "Causes",
      "For",    "Perm",  "Imp",   "Obl"};
  return k;
}

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceLocation here = loc_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", here});
        return out;
      }
      unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_]))) advance(1);
        std::string word(src_.substr(start, pos_ - start));
        Tok kind = Tok::Ident;
        if (word == "not") kind = Tok::Not;
        else if (word == "and") kind = Tok::And;
        else if (word == "or") kind = Tok::Or;
        else if (word == "forall") kind = Tok::Forall;
        else if (word == "exists") kind = Tok::Exists;
        else if (word == "true") kind = Tok::Top;
        else if (word == "false") kind = Tok::Bottom;
        out.push_back({kind, word, here});
        continue;
      }
      if (c >= 0x80) {
        out.push_back(unicode_operator(here));
        continue;
      }
      switch (c) {
        case '(': out.push_back(simple(Tok::LParen, 1, here)); continue;
        case ')': out.push_back(simple(Tok::RParen, 1, here)); continue;
        case ',': out.push_back(simple(Tok::Comma, 1, here)); continue;
        case ':': out.push_back(simple(Tok::Colon, 1, here)); continue;
        case '.': out.push_back(simple(Tok::Dot, 1, here)); continue;
        case '=': out.push_back(simple(Tok::Eq, 1, here)); continue;
        case '-':
          if (peek(1) == '>') {
            out.push_back(simple(Tok::Arrow, 2, here));
            continue;
          }
          break;
        case '<':
          if (peek(1) == '-' && peek(2) == '>') {
            out.push_back(simple(Tok::DoubleArrow, 3, here));
            continue;
          }
          out.push_back(simple(Tok::Subsort, 1, here));
          continue;
        case '!':
          if (peek(1) == '=') {
            out.push_back(simple(Tok::Neq, 2, here));
            continue;
          }
          break;
        default: break;
      }
      std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c)) : "\\x" + hex(c);
      throw ParseError(here, "unexpected character '" + shown + "'");
    }
  }

 private:
  static std::string hex(unsigned char c) {
    const char* digits = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 15]};
  }

  char peek(std::size_t ahead) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      unsigned char c = static_cast<unsigned char>(src_[pos_++]);
      if (c == '\n') {
        ++loc_.line;
        loc_.column = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++loc_.column;  // count code points, not continuation bytes
      }
    }
  }

  Token simple(Tok kind, std::size_t len, SourceLocation here) {
    std::string text(src_.substr(pos_, len));
    advance(len);
    return {kind, text, here};
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else {
        return;
      }
    }
  }

  Token unicode_operator(SourceLocation here) {
    static const std::pair<std::string_view, Tok> table[] = {
        {"\xC2\xAC", Tok::Not},         {"\xE2\x88\xA7", Tok::And},    {"\xE2\x88\xA8", Tok::Or},
        {"\xE2\x86\x92", Tok::Arrow},   {"\xE2\x86\x94", Tok::DoubleArrow},
        {"\xE2\x88\x80", Tok::Forall},  {"\xE2\x88\x83", Tok::Exists}, {"\xE2\x89\xA0", Tok::Neq},
        {"\xE2\x8A\xA4", Tok::Top},     {"\xE2\x8A\xA5", Tok::Bottom}, {"\xE2\x8A\x91", Tok::Subsort},
    };
    for (const auto& [text, kind] : table)
      if (src_.substr(pos_, text.size()) == text) return simple(kind, text.size(), here);
    throw ParseError(here, "unexpected non-ASCII character");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  SourceLocation loc_;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, KnowledgeBase& kb) : toks_(std::move(tokens)), kb_(kb) {}

  void knowledge_base() {
    while (!at(Tok::End)) declaration();
    install_default_necessities();
  }

  Formula standalone_formula() {
    Formula f = formula();
    expect(Tok::End, "end of formula");
    return f;
  }

 private:
  // -- token helpers ----------------------------------------------------------
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && cur().text == w; }
  bool peek_is(Tok k) const { return pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == k; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& at_tok, const std::string& msg) const { throw ParseError(at_tok.where, msg); }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(cur(), "expected " + what + ", found " + describe(cur()));
    return take();
  }

  Token identifier(const std::string& what) {
    if (!at(Tok::Ident)) fail(cur(), "expected " + what + ", found " + describe(cur()));
    return take();
  }

  Token fresh_name(const std::string& what) {
    Token t = identifier(what);
    if (keywords().count(t.text)) fail(t, "'" + t.text + "' is a reserved word");
    return t;
  }

  // -- declarations -----------------------------------------------------------
  void enter_phase(int phase, const Token& t) {
    static const char* names[] = {"sort", "symbol", "axiom/necessity/maxim"};
    if (phase < phase_)
      fail(t, std::string(names[phase]) + " declarations must precede " + names[phase_] + " declarations");
    phase_ = phase;
  }

  void declaration() {
    const Token& t = cur();
    if (!at(Tok::Ident)) fail(t, "expected a declaration, found " + describe(t));
    if (t.text == "sort") return sort_decl();
    if (t.text == "const") return const_decl();
    if (t.text == "func") return func_decl();
    if (t.text == "pred") return pred_decl();
    if (t.text == "axiom") return axiom_decl();
    if (t.text == "necessity") return necessity_decl();
    if (t.text == "maxim") return maxim_decl();
    fail(t, "unknown declaration " + describe(t));
  }

  void check_new_symbol(const Token& name) {
    if (name.text[0] == '_') fail(name, "declared names must not start with '_'");
    if (kb_.find_constant(name.text) || kb_.find_function(name.text) || kb_.find_predicate(name.text))
      fail(name, "duplicate name '" + name.text + "'");
  }

  std::string sort_ref() {
    Token s = identifier("a sort name");
    if (!kb_.sorts.contains(s.text)) fail(s, "undeclared sort '" + s.text + "'");
    return s.text;
  }

  void sort_decl() {
    enter_phase(0, take());
    Token name = fresh_name("a sort name");
    std::optional<std::string> parent;
    if (at(Tok::Subsort)) {
      take();
      parent = sort_ref();
    }
    try {
      kb_.sorts.declare(name.text, parent);
    } catch (const Error& e) {
      fail(name, e.what());
    }
  }

  void const_decl() {
    enter_phase(1, take());
    std::vector<Token> names{fresh_name("a constant name")};
    while (at(Tok::Comma)) {
      take();
      names.push_back(fresh_name("a constant name"));
    }
    expect(Tok::Colon, "':'");
    std::string sort = sort_ref();
    for (const Token& n : names) {
      check_new_symbol(n);
      kb_.constants.push_back({n.text, sort});
    }
  }

  std::vector<std::string> sort_list() {
    std::vector<std::string> out;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      out.push_back(sort_ref());
      while (at(Tok::Comma)) {
        take();
        out.push_back(sort_ref());
      }
    }
    expect(Tok::RParen, "')'");
    return out;
  }

  void func_decl() {
    enter_phase(1, take());
    Token name = fresh_name("a function name");
    check_new_symbol(name);
    FunctionDecl decl{name.text, {}, {}, std::nullopt};
    if (at(Tok::LParen)) decl.params = sort_list();
    expect(Tok::Colon, "':'");
    decl.result = sort_ref();
    if (at_word("refines")) {
      take();
      Token general = identifier("a function name");
      const FunctionDecl* g = kb_.find_function(general.text);
      if (!g) fail(general, "undeclared function '" + general.text + "'");
      if (g->params.size() != decl.params.size())
        fail(general, "'" + name.text + "' cannot refine '" + general.text + "': arity differs");
      for (std::size_t i = 0; i < decl.params.size(); ++i)
        if (!kb_.sorts.is_subsort(decl.params[i], g->params[i]))
          fail(general, "'" + name.text + "' cannot refine '" + general.text + "': parameter " +
                            std::to_string(i + 1) + " sort " + decl.params[i] + " is not a subsort of " +
                            g->params[i]);
      if (!kb_.sorts.is_subsort(decl.result, g->result))
        fail(general, "'" + name.text + "' cannot refine '" + general.text + "': result sort " + decl.result +
                          " is not a subsort of " + g->result);
      decl.refines = general.text;
    }
    kb_.functions.push_back(std::move(decl));
  }

  void pred_decl() {
    enter_phase(1, take());
    Token name = fresh_name("a predicate name");
    check_new_symbol(name);
    PredicateDecl decl{name.text, {}};
    if (at(Tok::LParen)) decl.params = sort_list();
    kb_.predicates.push_back(std::move(decl));
  }

  void check_statement_name(const Token& name) {
    auto clash = [&](const auto& list) {
      for (const auto& item : list)
        if (item.name == name.text) return true;
      return false;
    };
    if (clash(kb_.axioms) || clash(kb_.necessities) || clash(kb_.maxims))
      fail(name, "duplicate name '" + name.text + "'");
  }

  void axiom_decl() {
    enter_phase(2, take());
    Token name = fresh_name("an axiom name");
    check_statement_name(name);
    expect(Tok::Colon, "':'");
    kb_.axioms.push_back({name.text, formula()});
  }

  void necessity_decl() {
    enter_phase(2, take());
    Token name = fresh_name("a necessity name");
    check_statement_name(name);
    expect(Tok::LParen, "'('");
    Token var = fresh_name("a variable name");
    expect(Tok::Colon, "':'");
    Token sort_tok = cur();
    std::string sort = sort_ref();
    if (!kb_.sorts.is_subsort(sort, "Agent")) fail(sort_tok, "necessity variable must have sort Agent");
    expect(Tok::RParen, "')'");
    expect(Tok::Colon, "':'");
    Term v = Term::variable(var.text, sort);
    scope_.push_back(v);
    Formula body = formula();
    scope_.pop_back();
    kb_.necessities.push_back({name.text, v, body, false});
  }

  void maxim_decl() {
    enter_phase(2, take());
    Token name = fresh_name("a maxim name");
    check_statement_name(name);
    expect(Tok::Colon, "':'");
    Token start = cur();
    Formula f = formula();
    if (!f.is(FormulaKind::For)) fail(start, "a maxim must have the form For(behavior, purpose)");
    Term agent = alpha_of(f.sub(0));
    if (!agent.is_constant()) fail(start, "the agent of a maxim must be a constant");
    kb_.maxims.push_back({name.text, Maxim{agent, f.sub(0), f.sub(1)}});
  }

  void install_default_necessities() {
    const PredicateDecl* alive = kb_.find_predicate("Alive");
    if (!alive || alive->params.size() != 1 || !kb_.sorts.is_subsort("Agent", alive->params[0])) return;
    for (const auto& n : kb_.necessities)
      if (n.name == "Alive") return;
    Term a = Term::variable("a", "Agent");
    kb_.necessities.push_back({"Alive", a, Formula::atom("Alive", {a}), true});
  }

  // -- formulas ---------------------------------------------------------------
  Formula formula() { return iff(); }

  Formula iff() {
    Formula left = implies();
    while (at(Tok::DoubleArrow)) {
      take();
      left = Formula::biconditional(left, implies());
    }
    return left;
  }

  Formula implies() {
    Formula left = disjunction();
    if (at(Tok::Arrow)) {
      take();
      return Formula::implication(left, implies());
    }
    return left;
  }

  Formula disjunction() {
    Formula left = conjunction();
    while (at(Tok::Or)) {
      take();
      left = Formula::disjunction(left, conjunction());
    }
    return left;
  }

  Formula conjunction() {
    Formula left = unary();
    while (at(Tok::And)) {
      take();
      left = Formula::conjunction(left, unary());
    }
    return left;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      take();
      return Formula::negation(unary());
    }
    if (at(Tok::Forall) || at(Tok::Exists)) return quantified();
    return primary();
  }

  Formula quantified() {
    bool universal = take().kind == Tok::Forall;
    std::vector<Term> vars;
    std::vector<Token> pending;
    for (;;) {
      pending.push_back(fresh_name("a variable name"));
      if (at(Tok::Colon)) {
        take();
        std::string sort = sort_ref();
        for (const Token& p : pending) vars.push_back(Term::variable(p.text, sort));
        pending.clear();
        if (at(Tok::Dot)) break;
      }
      expect(Tok::Comma, "',' or ':'");
    }
    take();  // '.'
    for (const Term& v : vars) scope_.push_back(v);
    Formula body = formula();
    scope_.erase(scope_.end() - static_cast<std::ptrdiff_t>(vars.size()), scope_.end());
    return universal ? Formula::forall_block(vars, body) : Formula::exists_block(vars, body);
  }

  void check_sort(const Token& where, const Term& t, const std::string& expected, const std::string& role) {
    if (!kb_.sorts.is_subsort(t.sort(), expected))
      fail(where, role + " expects sort " + expected + " but got " + t.sort());
  }

  Formula primary() {
    Token t = cur();
    switch (t.kind) {
      case Tok::LParen: {
        take();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Top: take(); return Formula::truth();
      case Tok::Bottom: take(); return Formula::falsity();
      case Tok::Ident: break;
      default: fail(t, "expected a formula, found " + describe(t));
    }
    if (t.text == "Does") {
      take();
      expect(Tok::LParen, "'('");
      Token at_agent = cur();
      Term agent = term();
      check_sort(at_agent, agent, "Agent", "Does");
      expect(Tok::Comma, "','");
      Token at_action = cur();
      Term action = term();
      check_sort(at_action, action, "Action", "Does");
      expect(Tok::RParen, "')'");
      return Formula::does(agent, action);
    }
    if (t.text == "Wills") {
      take();
      expect(Tok::LParen, "'('");
      Token at_agent = cur();
      Term agent = term();
      check_sort(at_agent, agent, "Agent", "Wills");
      expect(Tok::Comma, "','");
      Formula body = formula();
      expect(Tok::RParen, "')'");
      return Formula::wills(agent, body);
    }
    if (t.text == "Causes" || t.text == "For") {
      take();
      expect(Tok::LParen, "'('");
      Token at_first = cur();
      Formula first = formula();
      if (!is_behavior_shape(first))
        fail(at_first, t.text + " expects a (possibly quantified and/or negated) Does(...) as first argument");
      expect(Tok::Comma, "','");
      Token at_second = cur();
      Formula second = formula();
      expect(Tok::RParen, "')'");
      if (t.text == "Causes") return Formula::causes(first, second);
      if (contains_modal(second)) fail(at_second, "the purpose of a maxim must not contain For, Wills or deontic operators");
      return Formula::purpose(first, second);
    }
    if (auto op = deontic_word(t.text)) {
      take();
      expect(Tok::LParen, "'('");
      Token at_inner = cur();
      Formula inner = formula();
      if (!inner.is(FormulaKind::For)) fail(at_inner, t.text + " expects a For(...) maxim");
      expect(Tok::RParen, "')'");
      return Formula::deontic(*op, inner);
    }
    if (const PredicateDecl* p = kb_.find_predicate(t.text); p && !bound(t.text)) {
      take();
      std::vector<Term> args;
      std::vector<Token> where;
      if (at(Tok::LParen)) {
        take();
        if (!at(Tok::RParen)) {
          where.push_back(cur());
          args.push_back(term());
          while (at(Tok::Comma)) {
            take();
            where.push_back(cur());
            args.push_back(term());
          }
        }
        expect(Tok::RParen, "')'");
      }
      if (args.size() != p->params.size())
        fail(t, "predicate '" + p->name + "' expects " + std::to_string(p->params.size()) + " argument(s), got " +
                    std::to_string(args.size()));
      for (std::size_t i = 0; i < args.size(); ++i)
        check_sort(where[i], args[i], p->params[i], "argument " + std::to_string(i + 1) + " of " + p->name);
      return Formula::atom(p->name, std::move(args));
    }
    Term left = term();
    Token op = cur();
    if (!at(Tok::Eq) && !at(Tok::Neq)) fail(op, "expected '=' or '!=' after term, found " + describe(op));
    take();
    Term right = term();
    if (kb_.sorts.root(left.sort()) != kb_.sorts.root(right.sort()))
      fail(op, "cannot compare terms of sorts " + left.sort() + " and " + right.sort());
    Formula eq = Formula::equals(left, right);
    return op.kind == Tok::Neq ? Formula::negation(eq) : eq;
  }

  static std::optional<DeonticOperator> deontic_word(const std::string& w) {
    if (w == "Perm") return DeonticOperator::Perm;
    if (w == "Imp") return DeonticOperator::Imp;
    if (w == "Obl") return DeonticOperator::Obl;
    return std::nullopt;
  }

  static bool contains_modal(const Formula& f) {
    if (f.is(FormulaKind::For) || f.is(FormulaKind::Wills) || f.is(FormulaKind::Deontic)) return true;
    for (std::size_t i = 0; i < f.arity(); ++i)
      if (contains_modal(f.sub(i))) return true;
    return false;
  }

  const Term* bound(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->symbol() == name) return &*it;
    return nullptr;
  }

  Term term() {
    Token name = identifier("a term");
    if (keywords().count(name.text)) fail(name, "expected a term, found reserved word '" + name.text + "'");
    if (at(Tok::LParen)) {
      const FunctionDecl* fn = kb_.find_function(name.text);
      if (!fn) fail(name, "undeclared function '" + name.text + "'");
      take();
      std::vector<Term> args;
      std::vector<Token> where;
      if (!at(Tok::RParen)) {
        where.push_back(cur());
        args.push_back(term());
        while (at(Tok::Comma)) {
          take();
          where.push_back(cur());
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
      if (args.size() != fn->params.size())
        fail(name, "function '" + fn->name + "' expects " + std::to_string(fn->params.size()) +
                       " argument(s), got " + std::to_string(args.size()));
      for (std::size_t i = 0; i < args.size(); ++i)
        check_sort(where[i], args[i], fn->params[i], "argument " + std::to_string(i + 1) + " of " + fn->name);
      return Term::application(fn->name, std::move(args), fn->result);
    }
    if (const Term* v = bound(name.text)) return *v;
    if (const ConstantDecl* c = kb_.find_constant(name.text)) return Term::constant(c->name, c->sort);
    if (const FunctionDecl* fn = kb_.find_function(name.text)) {
      if (!fn->params.empty())
        fail(name, "function '" + fn->name + "' expects " + std::to_string(fn->params.size()) + " argument(s)");
      return Term::application(fn->name, {}, fn->result);
    }
    if (kb_.find_predicate(name.text)) fail(name, "predicate '" + name.text + "' used as a term");
    fail(name, "unbound variable '" + name.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  KnowledgeBase& kb_;
  std::vector<Term> scope_;
  int phase_ = 0;
};

}  // namespace

KnowledgeBase parse_kb(std::string_view source) {
  KnowledgeBase kb;
  Parser parser(Lexer(source).run(), kb);
  parser.knowledge_base();
  return kb;
}

KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_kb(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path, e.where(), e.message());
  }
}

Formula parse_formula(const KnowledgeBase& kb, std::string_view text) {
  KnowledgeBase scratch = kb;
  Parser parser(Lexer(text).run(), scratch);
  return parser.standalone_formula();
}

}  // namespace full
