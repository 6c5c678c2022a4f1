#include "retrakt/json_io.hpp"

namespace retrakt {

Json path_to_json(const Path& p) {
  Json out = Json::array();
  for (const Triple& t : p) out.push_back(Json::array({t.head_pos, t.arity, t.chosen}));
  return out;
}

Json hnf_to_json(const Hnf& h) {
  Json out;
  out["binders"] = h.binders;
  out["head"] = h.head;
  Json args = Json::array();
  for (const auto& a : h.args) args.push_back(print_term(a));
  out["args"] = std::move(args);
  return out;
}

Json xi_to_json(const XiDerivation& d) {
  Json out;
  out["term"] = print_term(reassemble(d.term));
  out["path"] = path_to_json(d.path);
  if (d.sub) out["sub"] = xi_to_json(*d.sub);
  return out;
}

Json type_to_json(const StrictPtr& t) {
  switch (t->kind) {
    case StrictType::Kind::Var: return Json{{"kind", "var"}, {"name", t->name}};
    case StrictType::Kind::Omega: return Json{{"kind", "omega"}};
    case StrictType::Kind::Arrow:
      return Json{{"kind", "arrow"},
                  {"domain", type_to_json(t->domain)},
                  {"codomain", type_to_json(t->codomain)}};
  }
  return {};
}

Json type_to_json(const Intersection& t) {
  Json out = Json::array();
  for (const auto& m : t.members) out.push_back(type_to_json(m));
  return out;
}

Json type_to_json(const StdPtr& t) {
  switch (t->kind) {
    case StdType::Kind::Var: return Json{{"kind", "var"}, {"name", t->name}};
    case StdType::Kind::Omega: return Json{{"kind", "omega"}};
    case StdType::Kind::Arrow:
      return Json{{"kind", "arrow"},
                  {"domain", type_to_json(t->left)},
                  {"codomain", type_to_json(t->right)}};
    case StdType::Kind::Meet:
      return Json{{"kind", "meet"}, {"left", type_to_json(t->left)}, {"right", type_to_json(t->right)}};
  }
  return {};
}

Json judgment_to_json(const Judgment& j) {
  Json env = Json::object();
  for (const auto& [name, ty] : j.env) env[name] = print_type(ty);
  return Json{{"env", std::move(env)},
              {"term", print_term(j.term)},
              {"type", print_type(j.type)},
              {"system", j.system == System::Essential ? "essential" : "standard"}};
}

Json retract_result_to_json(const RetractResult& r) {
  Json out;
  switch (r.status) {
    case RetractResult::Status::Witness: out["status"] = "witness"; break;
    case RetractResult::Status::ProvablyNo: out["status"] = "provably_no"; break;
    case RetractResult::Status::NoWithinBudget: out["status"] = "unknown"; break;
  }
  if (r.witness) {
    out["left"] = print_term(r.witness->left);
    out["right"] = print_term(r.witness->right);
    Json decomposition = Json::array();
    if (r.witness->decomposition)
      for (const auto& rho : r.witness->decomposition->params) decomposition.push_back(print_type(rho));
    out["decomposition"] = std::move(decomposition);
    out["trace_steps"] = r.witness->composition_trace.size() - 1;
  } else {
    out["left"] = nullptr;
    out["right"] = nullptr;
    out["decomposition"] = Json::array();
    out["trace_steps"] = 0;
  }
  return out;
}

Json verify_report_to_json(const VerifyReport& r) {
  auto chk = [](CheckResult c) {
    switch (c) {
      case CheckResult::Derivable: return "derivable";
      case CheckResult::NotDerivable: return "not_derivable";
      default: return "unknown";
    }
  };
  const char* comp = r.composition == EqualityResult::Equal
                         ? "equal"
                         : (r.composition == EqualityResult::Distinct ? "distinct" : "unknown");
  return Json{{"left_typing", chk(r.left_typing)},
              {"right_typing", chk(r.right_typing)},
              {"composition", comp},
              {"holds", r.all_hold()}};
}

}  // namespace retrakt
