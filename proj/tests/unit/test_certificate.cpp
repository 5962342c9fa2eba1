#include <doctest.h>

#include <memory>

#include "full/evaluator.hpp"
#include "full/parser.hpp"
#include "full/report.hpp"
#include "support/certificate.hpp"

using namespace full;

namespace {

struct Sample {
  KnowledgeBase kb;
  Verdict verdict;
  nlohmann::json trace;
};

Sample sample(const char* file, const char* maxim, DeonticOperator op) {
  auto kb = std::make_shared<const KnowledgeBase>(load_kb(std::string(FULL_SOURCE_DIR "/examples/") + file));
  Verdict v = evaluate(kb, op, kb->maxim(maxim));
  return {*kb, v, trace_json(*v.saturation.context)};
}

std::size_t index_of_rule(const nlohmann::json& trace, const std::string& rule) {
  for (const auto& f : trace["facts"])
    if (f["rule"] == rule) return f["id"].get<std::size_t>();
  FAIL("rule not found: " << rule);
  return 0;
}

}  // namespace

TEST_CASE("genuine traces verify") {
  Sample s = sample("falsepromise.full", "M", DeonticOperator::Imp);
  auto r = testing::check_certificate(s.kb, s.trace, s.verdict.evaluated);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(r.checked == s.trace["facts"].size());
}

TEST_CASE("tampering is caught") {
  Sample s = sample("falsepromise.full", "M", DeonticOperator::Imp);
  auto fails = [&](nlohmann::json t) { return !testing::check_certificate(s.kb, t, s.verdict.evaluated).ok(); };

  SUBCASE("changed conclusion") {
    auto t = s.trace;
    std::size_t i = index_of_rule(t, "MP");
    t["facts"][i]["text"] = "HasTravelMoney(jan)";
    CHECK(fails(t));
  }
  SUBCASE("relabelled rule") {
    auto t = s.trace;
    std::size_t i = index_of_rule(t, "MT");
    t["facts"][i]["rule"] = "MP";
    CHECK(fails(t));
  }
  SUBCASE("dropped premise") {
    auto t = s.trace;
    std::size_t i = index_of_rule(t, "MP");
    t["facts"][i]["premises"] = nlohmann::json::array({t["facts"][i]["premises"][0]});
    CHECK(fails(t));
  }
  SUBCASE("forward reference") {
    auto t = s.trace;
    std::size_t i = index_of_rule(t, "And-Elim");
    t["facts"][i]["premises"] = nlohmann::json::array({t["facts"].size() - 1});
    CHECK(fails(t));
  }
  SUBCASE("willed fact moved to the background") {
    auto t = s.trace;
    std::size_t i = index_of_rule(t, "R6-Maxim-Cause");
    t["facts"][i]["scope"] = "background";
    CHECK(fails(t));
  }
  SUBCASE("unknown axiom") {
    auto t = s.trace;
    t["facts"][0]["detail"] = "B9";
    CHECK(fails(t));
  }
  SUBCASE("non-canonical text") {
    auto t = s.trace;
    std::size_t i = index_of_rule(t, "R6-Maxim-Cause");
    t["facts"][i]["text"] = "Causes(Does(karli,falsePromise(jan)), HasTravelMoney(karli))";
    CHECK(fails(t));
  }
}

TEST_CASE("witnesses must be fresh") {
  Sample s = sample("murder.full", "M", DeonticOperator::Imp);
  auto t = s.trace;
  // Replay the first witness step a second time, reusing its constant.
  std::size_t i = index_of_rule(t, "Exists-Witness");
  auto copy = t["facts"][i];
  copy["id"] = t["facts"].size();
  t["facts"].push_back(copy);
  CHECK_FALSE(testing::check_certificate(s.kb, t, s.verdict.evaluated).ok());
}
