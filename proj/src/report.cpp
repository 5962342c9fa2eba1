#include "full/report.hpp"

#include <sstream>

#include "full/printer.hpp"

namespace full {
namespace {

std::string term_list(const std::vector<Term>& ts) {
  std::string out;
  for (const Term& t : ts) out += (out.empty() ? "" : ", ") + t.symbol() + ":" + t.sort();
  return out;
}

std::string paint(const std::string& text, const char* code, bool color) {
  return color ? std::string("\x1b[") + code + "m" + text + "\x1b[0m" : text;
}

nlohmann::json term_array(const std::vector<Term>& ts) {
  nlohmann::json out = nlohmann::json::array();
  for (const Term& t : ts) out.push_back({{"name", t.symbol()}, {"sort", t.sort()}});
  return out;
}

}  // namespace

nlohmann::json trace_json(const DerivationContext& ctx) {
  nlohmann::json facts = nlohmann::json::array();
  for (const Fact& f : ctx.facts()) {
    nlohmann::json j = {{"id", f.id},
                        {"scope", ctx.scope_name(f.scope)},
                        {"text", f.text},
                        {"rule", f.rule},
                        {"premises", f.premises}};
    if (!f.detail.empty()) j["detail"] = f.detail;
    facts.push_back(std::move(j));
  }
  nlohmann::json witnesses = nlohmann::json::array();
  for (const Witness& w : ctx.witnesses())
    witnesses.push_back({{"name", w.name}, {"sort", w.sort}, {"scope", ctx.scope_name(w.scope)}});
  return {{"facts", std::move(facts)}, {"witnesses", std::move(witnesses)}};
}

nlohmann::json ul_json(const UniversalizationRecord& rec) {
  nlohmann::json sigma = nlohmann::json::array();
  for (const auto& [c, v] : rec.sigma.pairs()) sigma.push_back({{"constant", c.symbol()}, {"variable", v.symbol()}, {"sort", c.sort()}});
  return {{"formula", render(rec.ul_formula)},
          {"t_phi2", term_array(rec.t_phi2)},
          {"t_phi1", term_array(rec.t_phi1)},
          {"sigma", std::move(sigma)},
          {"hoisted", term_array(rec.hoisted)}};
}

nlohmann::json evidence_json(const DerivationContext& ctx, const ContradictionEvidence& ev) {
  return {{"positive", render(ev.positive)},
          {"negative", render(ev.negative)},
          {"positive_id", ev.positive_id},
          {"negative_id", ev.negative_id},
          {"scope", ctx.scope_name(ev.scope)},
          {"trace_positive", ev.trace_positive},
          {"trace_negative", ev.trace_negative}};
}

nlohmann::json verdict_json(const Verdict& v, bool include_trace) {
  const DerivationContext& ctx = *v.saturation.context;
  nlohmann::json j = {
      {"query", {{"op", to_string(v.op)}, {"maxim", render(v.maxim)}, {"evaluated", render(v.evaluated)}}},
      {"answer", v.answer},
      {"basis", to_string(v.basis)},
      {"unproven", v.unproven},
      {"duty", v.duty ? nlohmann::json(to_string(*v.duty)) : nlohmann::json(nullptr)},
      {"ul", ul_json(v.ul)},
      {"stats",
       {{"status", to_string(v.saturation.status)},
        {"facts", ctx.size()},
        {"iterations", v.saturation.iterations},
        {"contradictions", v.saturation.all_evidence.size()}}}};
  nlohmann::json kinds = nlohmann::json::array();
  for (DutyKind d : v.duty_kinds) kinds.push_back(to_string(d));
  j["duty_kinds"] = std::move(kinds);
  j["evidence"] = v.evidence ? evidence_json(ctx, *v.evidence) : nlohmann::json(nullptr);
  if (!v.note.empty()) j["note"] = v.note;
  if (include_trace) j["trace"] = trace_json(ctx);
  return j;
}

std::string describe_ul(const UniversalizationRecord& rec) {
  std::ostringstream out;
  out << "T_phi2: {" << term_list(rec.t_phi2) << "}\n";
  out << "T_phi1: {" << term_list(rec.t_phi1) << "}\n";
  out << "sigma:  {";
  bool first = true;
  for (const auto& [c, v] : rec.sigma.pairs()) {
    out << (first ? "" : ", ") << c.symbol() << " -> " << v.symbol();
    first = false;
  }
  out << "}\n";
  out << "UL:     " << render(rec.ul_formula) << '\n';
  return out.str();
}

std::string describe_trace(const DerivationContext& ctx) {
  std::ostringstream out;
  for (const Fact& f : ctx.facts()) {
    out << '[' << f.id << "] " << ctx.scope_name(f.scope) << ": " << f.text << "   (" << f.rule;
    if (!f.premises.empty()) {
      out << " from";
      for (FactId p : f.premises) out << ' ' << p;
    }
    if (!f.detail.empty()) out << "; " << f.detail;
    out << ")\n";
  }
  return out.str();
}

std::string describe_verdict(const Verdict& v, HumanStyle style) {
  const DerivationContext& ctx = *v.saturation.context;
  std::ostringstream out;
  out << "query:    " << to_string(v.op) << "(" << render(v.maxim) << ")\n";
  if (v.op == DeonticOperator::Obl) out << "tested:   Imp(" << render(v.evaluated) << ")\n";
  std::string answer = v.answer ? "true" : "false";
  if (v.basis == Basis::GammaInconsistent) answer = "refused";
  out << "answer:   " << paint(answer, v.answer ? "32" : "31", style.color);
  if (v.unproven) out << "  " << paint("[UNPROVEN]", "33;1", style.color);
  out << '\n';
  out << "basis:    " << to_string(v.basis) << '\n';
  if (v.duty) {
    out << "duty:     " << to_string(*v.duty);
    if (v.duty_kinds.size() > 1) {
      out << " (kinds found:";
      for (DutyKind d : v.duty_kinds) out << ' ' << to_string(d);
      out << ')';
    }
    out << '\n';
  }
  if (v.evidence) {
    out << "chi:      " << render(v.evidence->positive) << "   [" << v.evidence->positive_id << "]\n";
    out << "not chi:  " << render(v.evidence->negative) << "   [" << v.evidence->negative_id << "]\n";
    out << "scope:    " << ctx.scope_name(v.evidence->scope) << '\n';
  }
  out << "ul:       " << render(v.ul.ul_formula) << '\n';
  out << "status:   " << to_string(v.saturation.status) << ", " << ctx.size() << " facts, "
      << v.saturation.iterations << " iterations\n";
  if (!v.note.empty()) out << "note:     " << v.note << '\n';
  if (style.trace) out << "trace:\n" << describe_trace(ctx);
  return out.str();
}

}  // namespace full
