#include "full/universalizer.hpp"

#include <cctype>
#include <map>
#include <set>

#include "full/transform.hpp"

namespace full {
namespace {

void bound_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_quantifier()) out.insert(f.bound().symbol());
  for (std::size_t i = 0; i < f.arity(); ++i) bound_names(f.sub(i), out);
}

class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

  Term next(const std::string& sort) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(sort.empty() ? 'v' : sort[0])));
    std::string prefix(1, c);
    for (;;) {
      std::string name = prefix + std::to_string(++counters_[prefix]);
      if (taken_.insert(name).second) return Term::variable(name, sort);
    }
  }

 private:
  std::set<std::string> taken_;
  std::map<std::string, std::size_t> counters_;
};

bool contains(const std::vector<Term>& ts, const Term& t) {
  for (const Term& x : ts)
    if (x.symbol() == t.symbol()) return true;
  return false;
}

}  // namespace

UniversalizationRecord universalize(const Maxim& m) {
  if (count_does(m.behavior) != 1) throw Error("maxim behavior must contain exactly one Does(...) node");

  UniversalizationRecord rec{{}, {}, {}, {}, Formula::truth()};
  rec.t_phi2.push_back(m.agent);
  for (const Term& c : collect_constants(m.purpose))
    if (!contains(rec.t_phi2, c)) rec.t_phi2.push_back(c);
  for (const Term& c : collect_constants(m.behavior))
    if (!contains(rec.t_phi2, c)) rec.t_phi1.push_back(c);

  std::set<std::string> taken;
  bound_names(m.behavior, taken);
  bound_names(m.purpose, taken);
  FreshNames fresh(taken);

  std::vector<Term> univ, exist;
  for (const Term& c : rec.t_phi2) {
    univ.push_back(fresh.next(c.sort()));
    rec.sigma.bind(c, univ.back());
  }
  for (const Term& c : rec.t_phi1) {
    exist.push_back(fresh.next(c.sort()));
    rec.sigma.bind(c, exist.back());
  }

  // Rename the behavior's own binders so they read like the other variables.
  QuantifierBlock own = m.behavior.is_quantifier() ? split_block(m.behavior, m.behavior.kind())
                                                    : QuantifierBlock{{}, m.behavior};
  Formula behavior_body = own.body;
  std::vector<Term> own_vars;
  for (const Term& v : own.vars) {
    Term renamed = fresh.next(v.sort());
    behavior_body = instantiate(behavior_body, v.symbol(), renamed);
    own_vars.push_back(renamed);
  }
  behavior_body = substitute(behavior_body, rec.sigma);
  Formula purpose = substitute(m.purpose, rec.sigma);
  Term agent = *rec.sigma.lookup(m.agent);

  bool hoist = m.behavior.is(FormulaKind::Forall) && behavior_body.is(FormulaKind::Not) &&
               behavior_body.sub(0).is(FormulaKind::Does);
  Formula phi1 = behavior_body;
  if (hoist) {
    rec.hoisted = own_vars;
    univ.insert(univ.end(), own_vars.begin(), own_vars.end());
    phi1 = behavior_body;
  } else if (own_vars.empty()) {
    phi1 = behavior_body;
  } else {
    phi1 = m.behavior.is(FormulaKind::Forall) ? Formula::forall_block(own_vars, behavior_body)
                                              : Formula::exists_block(own_vars, behavior_body);
  }
  rec.ul_formula =
      Formula::forall_block(univ, Formula::implication(Formula::wills(agent, purpose), Formula::exists_block(exist, phi1)));
  return rec;
}

}  // namespace full
