#include "full/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "full/parser.hpp"
#include "full/printer.hpp"
#include "full/report.hpp"

namespace full {
namespace {

int check(const CliConfig& cfg, std::shared_ptr<const KnowledgeBase> kb, std::ostream& out) {
  SaturationResult r = check_gamma_consistency(kb, cfg.limits);
  const DerivationContext& ctx = *r.context;
  if (cfg.output_format == "json") {
    nlohmann::json j = {{"status", to_string(r.status)},
                        {"consistent", r.status == SaturationStatus::SaturatedConsistent},
                        {"axioms", kb->axioms.size()},
                        {"maxims", kb->maxims.size()},
                        {"facts", ctx.size()},
                        {"iterations", r.iterations}};
    j["evidence"] = r.evidence ? evidence_json(ctx, *r.evidence) : nlohmann::json(nullptr);
    if (cfg.trace) j["trace"] = trace_json(ctx);
    out << j.dump(2) << '\n';
  } else {
    switch (r.status) {
      case SaturationStatus::SaturatedConsistent:
        out << "consistent (" << kb->axioms.size() << " axioms)\n";
        break;
      case SaturationStatus::Contradiction:
        out << "inconsistent: " << render(r.evidence->positive) << " and " << render(r.evidence->negative) << '\n';
        break;
      case SaturationStatus::ResourceExhausted:
        out << "unknown: search limits reached before saturation (" << kb->axioms.size() << " axioms)\n";
        break;
    }
    if (cfg.trace) out << describe_trace(ctx);
  }
  return r.status == SaturationStatus::SaturatedConsistent ? 0 : 1;
}

int universalize_cmd(const CliConfig& cfg, const KnowledgeBase& kb, std::ostream& out) {
  UniversalizationRecord rec = universalize(kb.maxim(cfg.maxim_name));
  if (cfg.output_format == "json") {
    nlohmann::json j = ul_json(rec);
    j["maxim"] = cfg.maxim_name;
    out << j.dump(2) << '\n';
  } else {
    out << "maxim:  " << cfg.maxim_name << " = " << render(kb.maxim(cfg.maxim_name)) << '\n' << describe_ul(rec);
  }
  return 0;
}

int eval_cmd(const CliConfig& cfg, std::shared_ptr<const KnowledgeBase> kb, std::ostream& out) {
  Verdict v = evaluate(kb, cfg.op, kb->maxim(cfg.maxim_name), cfg.limits);
  if (cfg.output_format == "json") {
    nlohmann::json j = verdict_json(v, cfg.trace);
    j["query"]["name"] = cfg.maxim_name;
    out << j.dump(2) << '\n';
  } else {
    out << "maxim:    " << cfg.maxim_name << '\n' << describe_verdict(v, {cfg.color, cfg.trace});
  }
  if (v.basis == Basis::GammaInconsistent) return 2;
  return v.answer ? 0 : 1;
}

int batch_cmd(const CliConfig& cfg, std::shared_ptr<const KnowledgeBase> kb, std::ostream& out) {
  std::vector<std::string> names;
  for (const auto& m : kb->maxims) names.push_back(m.name);
  std::sort(names.begin(), names.end());

  struct Job {
    std::string name;
    DeonticOperator op;
  };
  std::vector<Job> jobs;
  for (const auto& n : names)
    for (DeonticOperator op : cfg.batch_ops) jobs.push_back({n, op});

  std::vector<std::optional<Verdict>> results(jobs.size());
  std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(cfg.jobs, jobs.size()));
  std::vector<std::future<void>> pool;
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++)
        results[i] = evaluate(kb, jobs[i].op, kb->maxim(jobs[i].name), cfg.limits);
    }));
  for (auto& f : pool) f.get();

  bool refused = false;
  if (cfg.output_format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      nlohmann::json j = verdict_json(*results[i], cfg.trace);
      j["query"]["name"] = jobs[i].name;
      rows.push_back(std::move(j));
      refused = refused || results[i]->basis == Basis::GammaInconsistent;
    }
    out << nlohmann::json{{"verdicts", rows}}.dump(2) << '\n';
  } else {
    std::size_t width = 5;
    for (const auto& n : names) width = std::max(width, n.size());
    out << std::left << std::setw(static_cast<int>(width)) << "maxim" << "  op    answer  basis                       duty\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const Verdict& v = *results[i];
      refused = refused || v.basis == Basis::GammaInconsistent;
      std::string answer = v.basis == Basis::GammaInconsistent ? "refused" : (v.answer ? "true" : "false");
      if (v.unproven) answer += "*";
      out << std::left << std::setw(static_cast<int>(width)) << jobs[i].name << "  " << std::setw(4)
          << to_string(jobs[i].op) << "  " << std::setw(6) << answer << "  " << std::setw(26) << to_string(v.basis)
          << "  " << (v.duty ? to_string(*v.duty) : "-") << '\n';
    }
    if (std::any_of(results.begin(), results.end(), [](const auto& v) { return v->unproven; }))
      out << "* unproven: search limits reached; answer follows the negation-as-failure default\n";
  }
  return refused ? 2 : 0;
}

bool resolve_color() {
  const char* env = std::getenv("FULL_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return ::isatty(STDOUT_FILENO) != 0;
}

}  // namespace

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.output_format != "human" && cfg.output_format != "json")
      throw Error("unknown output format '" + cfg.output_format + "'");
    auto kb = std::make_shared<const KnowledgeBase>(load_kb(cfg.kb_path));
    if (cfg.subcommand == "check") return check(cfg, kb, out);
    if (cfg.subcommand == "universalize") return universalize_cmd(cfg, *kb, out);
    if (cfg.subcommand == "eval") return eval_cmd(cfg, kb, out);
    if (cfg.subcommand == "batch") return batch_cmd(cfg, kb, out);
    throw Error("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const std::exception& e) {
    err << "full: error: " << e.what() << '\n';
    return 2;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formula of the Universal Law reasoner"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string op = "perm";
  std::vector<std::string> batch_ops;

  auto common = [&](CLI::App* sub, bool needs_maxim) {
    sub->add_option("--kb", cfg.kb_path, "knowledge base (.full)")->required();
    if (needs_maxim) sub->add_option("--maxim", cfg.maxim_name, "maxim name")->required();
    sub->add_option("--format", cfg.output_format, "output format")->check(CLI::IsMember({"human", "json"}));
    sub->add_flag("--trace", cfg.trace, "include the derivation trace");
    sub->add_option("--max-facts", cfg.limits.max_facts, "fact budget per saturation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-iterations", cfg.limits.max_iterations, "saturation passes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-term-depth", cfg.limits.max_term_depth, "nesting bound for terms and witnesses")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  CLI::App* check = app.add_subcommand("check", "check that the knowledge base is consistent");
  common(check, false);
  CLI::App* uni = app.add_subcommand("universalize", "print the universal law of a maxim");
  common(uni, true);
  CLI::App* eval = app.add_subcommand("eval", "evaluate a deontic query");
  common(eval, true);
  eval->add_option("--op", op, "perm | imp | obl")->check(CLI::IsMember({"perm", "imp", "obl"}, CLI::ignore_case));
  CLI::App* batch = app.add_subcommand("batch", "evaluate every maxim of the knowledge base");
  common(batch, false);
  batch->add_option("--op", batch_ops, "operators (default: all)")
      ->check(CLI::IsMember({"perm", "imp", "obl"}, CLI::ignore_case));
  batch->add_option("--jobs", cfg.jobs, "concurrent evaluations")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    int code = app.exit(e, out, msg);
    err << msg.str();
    return code == 0 ? 0 : 2;
  }

  for (CLI::App* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  cfg.op = *deontic_from_string(op);
  if (!batch_ops.empty()) {
    cfg.batch_ops.clear();
    for (const auto& o : batch_ops) cfg.batch_ops.push_back(*deontic_from_string(o));
  }
  cfg.color = resolve_color();
  return run(cfg, out, err);
}

}  // namespace full
