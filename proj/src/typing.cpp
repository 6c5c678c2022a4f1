#include "retrakt/typing.hpp"

#include <algorithm>
#include <stdexcept>

namespace retrakt {

// ======================= checking, essential system =======================

namespace {

struct Spine {
  TermPtr head;
  std::vector<TermPtr> args;
};

Spine unwind(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  while (cur->kind == Term::Kind::Apply) {
    s.args.push_back(cur->arg);
    cur = cur->fun;
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

const Intersection* env_lookup(const StrictEnv& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

std::vector<std::string> names_in_scope(const StrictEnv& env, const TermPtr& t) {
  std::vector<std::string> used = free_names(t);
  for (const auto& [n, _] : env) used.push_back(n);
  return used;
}

bool check_nf(const StrictEnv& env, const TermPtr& t, const StrictPtr& goal);

bool check_nf_inter(const StrictEnv& env, const TermPtr& t, const Intersection& goal) {
  for (const auto& mu : goal.members)
    if (!check_nf(env, t, mu)) return false;
  return true;
}

// The term is in beta-bottom normal form, the goal canonical.
bool check_nf(const StrictEnv& env, const TermPtr& t, const StrictPtr& goal) {
  if (is_omega(goal)) return true;
  switch (t->kind) {
    case Term::Kind::Bottom:
      return false;  // bottom inhabits only omega
    case Term::Kind::Lambda: {
      if (goal->kind != StrictType::Kind::Arrow) return false;
      std::string x = fresh_name(names_in_scope(env, t));
      StrictEnv inner = env;
      inner.emplace_back(x, goal->domain);
      return check_nf(inner, instantiate(t->body, make_free(x)), goal->codomain);
    }
    case Term::Kind::Free: {
      const Intersection* sigma = env_lookup(env, t->name);
      if (!sigma) return false;
      return subtype_strict(*sigma, single(goal));
    }
    case Term::Kind::Apply: {
      Spine s = unwind(t);
      if (s.head->kind != Term::Kind::Free) return false;  // not a normal form
      const Intersection* sigma = env_lookup(env, s.head->name);
      if (!sigma) return false;
      const int k = static_cast<int>(s.args.size());
      for (const auto& member : sigma->members) {
        if (top_arrows(member) < k) continue;
        SpineSplit split = split_spine(member, k);
        if (!strict_le(split.core, goal)) continue;
        bool ok = true;
        for (int l = 0; l < k && ok; ++l) ok = check_nf_inter(env, s.args[l], split.params[l]);
        if (ok) return true;
      }
      return false;
    }
    case Term::Kind::Bound:
      throw std::logic_error("check: dangling bound variable");
  }
  return false;
}

}  // namespace

CheckResult check_strict(const StrictEnv& env, const TermPtr& term, const Intersection& goal,
                         const ReductionBudget& budget) {
  auto nf = normalize(term, budget).normal_form;
  if (!nf) return CheckResult::Unknown;
  return check_nf_inter(env, *nf, goal) ? CheckResult::Derivable : CheckResult::NotDerivable;
}

// ======================= checking, standard system =======================

namespace {

bool check_std_nf(const StrictEnv& env, const TermPtr& t, const StrictPtr& goal);

bool check_std_nf_inter(const StrictEnv& env, const TermPtr& t, const Intersection& goal) {
  for (const auto& mu : goal.members)
    if (!check_std_nf(env, t, mu)) return false;
  return true;
}

bool check_std_nf(const StrictEnv& env, const TermPtr& t, const StrictPtr& goal) {
  if (is_omega(goal)) return true;
  switch (t->kind) {
    case Term::Kind::Bottom:
      return false;
    case Term::Kind::Lambda: {
      if (goal->kind != StrictType::Kind::Arrow) return false;
      std::string x = fresh_name(names_in_scope(env, t));
      StrictEnv inner = env;
      inner.emplace_back(x, goal->domain);
      return check_std_nf(inner, instantiate(t->body, make_free(x)), goal->codomain);
    }
    case Term::Kind::Free: {
      const Intersection* sigma = env_lookup(env, t->name);
      if (!sigma) return false;
      return subtype_std_inter(*sigma, single(goal));
    }
    case Term::Kind::Apply: {
      Spine s = unwind(t);
      if (s.head->kind != Term::Kind::Free) return false;
      const Intersection* sigma = env_lookup(env, s.head->name);
      if (!sigma) return false;
      const int k = static_cast<int>(s.args.size());
      // With distributivity the head may combine several members: pick a
      // subset, meet the domains pointwise and the cores.
      std::vector<StrictPtr> usable;
      for (const auto& member : sigma->members)
        if (top_arrows(member) >= k) usable.push_back(member);
      if (usable.empty()) return false;
      if (static_cast<int>(usable.size()) > kStdWidthCap)
        throw std::invalid_argument("check_std: intersection wider than the supported cap");
      const size_t n = usable.size();
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::vector<StrictPtr>> param_members(k);
        std::vector<StrictPtr> cores;
        for (size_t b = 0; b < n; ++b) {
          if (!(mask & (1u << b))) continue;
          SpineSplit split = split_spine(usable[b], k);
          for (int l = 0; l < k; ++l)
            param_members[l].insert(param_members[l].end(), split.params[l].members.begin(),
                                    split.params[l].members.end());
          cores.push_back(split.core);
        }
        if (!subtype_std_inter(Intersection{cores}, single(goal))) continue;
        bool ok = true;
        for (int l = 0; l < k && ok; ++l)
          ok = check_std_nf_inter(env, s.args[l], make_inter(param_members[l]));
        if (ok) return true;
      }
      return false;
    }
    case Term::Kind::Bound:
      throw std::logic_error("check_std: dangling bound variable");
  }
  return false;
}

}  // namespace

CheckResult check_std(const StrictEnv& env, const TermPtr& term, const Intersection& goal,
                      const ReductionBudget& budget) {
  auto nf = normalize(term, budget).normal_form;
  if (!nf) return CheckResult::Unknown;
  return check_std_nf_inter(env, *nf, goal) ? CheckResult::Derivable : CheckResult::NotDerivable;
}

CheckResult check(const Judgment& j, const ReductionBudget& budget) {
  StrictEnv env;
  for (const auto& [name, ty] : j.env) env.emplace_back(name, to_strict(ty));
  Intersection goal = to_strict(j.type);
  return j.system == System::Essential ? check_strict(env, j.term, goal, budget)
                                       : check_std(env, j.term, goal, budget);
}

// ======================= inhabitation =======================

namespace {

// One obligation the candidate term must meet: under this environment
// (indexed by binder introduction order) it has the given strict type.
struct Obligation {
  std::vector<Intersection> env;
  StrictPtr goal;
};

struct Solver {
  SearchSession& session;

  bool spent() {
    if (session.candidates_used >= session.budget.max_candidates) return true;
    ++session.candidates_used;
    return false;
  }

  // All obligations share one term skeleton; env sizes stay in lock step.
  std::optional<TermPtr> solve(const std::vector<Obligation>& raw, int depth) {
    std::vector<Obligation> goals;
    for (const auto& ob : raw)
      if (!is_omega(ob.goal)) goals.push_back(ob);
    if (goals.empty()) return bottom();
    if (depth <= 0 || spent()) return std::nullopt;

    const int width = static_cast<int>(goals.front().env.size());

    // Abstraction move: available when every goal is an arrow.
    bool all_arrows = true;
    for (const auto& ob : goals) all_arrows &= ob.goal->kind == StrictType::Kind::Arrow;
    if (all_arrows) {
      std::vector<Obligation> next;
      for (const auto& ob : goals) {
        Obligation n{ob.env, ob.goal->codomain};
        n.env.push_back(ob.goal->domain);
        next.push_back(std::move(n));
      }
      // Binder references were emitted against the extended depth, so one
      // lambda wrapper restores local closure.
      if (auto body = solve(next, depth - 1)) return make_lambda(*body);
    }

    // Head moves: x N1...Nk for every variable in scope and arity k.
    for (int var = 0; var < width; ++var) {
      int max_k = 0;
      for (const auto& ob : goals)
        for (const auto& m : ob.env[var].members) max_k = std::max(max_k, top_arrows(m));
      for (int k = 0; k <= max_k; ++k) {
        // Per obligation, the usable member decompositions at arity k.
        std::vector<std::vector<SpineSplit>> options(goals.size());
        bool feasible = true;
        for (size_t g = 0; g < goals.size() && feasible; ++g) {
          for (const auto& m : goals[g].env[var].members) {
            if (top_arrows(m) < k) continue;
            SpineSplit split = split_spine(m, k);
            if (strict_le(split.core, goals[g].goal)) options[g].push_back(std::move(split));
          }
          feasible = !options[g].empty();
        }
        if (!feasible) continue;
        if (auto t = head_move(goals, var, k, options, depth)) return t;
      }
    }
    return std::nullopt;
  }

  // Bound indices are emitted relative to the obligation's binder count.
  static TermPtr var_ref(int var, int width) { return make_bound(width - 1 - var); }

  std::optional<TermPtr> head_move(const std::vector<Obligation>& goals, int var, int k,
                                   const std::vector<std::vector<SpineSplit>>& options, int depth) {
    const int width = static_cast<int>(goals.front().env.size());
    std::vector<size_t> pick(goals.size(), 0);
    long combos = 0;
    while (true) {
      if (++combos > 64 || spent()) return std::nullopt;
      bool ok = true;
      std::vector<TermPtr> args;
      for (int l = 0; l < k && ok; ++l) {
        std::vector<Obligation> sub;
        for (size_t g = 0; g < goals.size(); ++g)
          for (const auto& mu : options[g][pick[g]].params[l].members)
            sub.push_back({goals[g].env, mu});
        auto arg = solve(sub, depth - 1);
        if (!arg) ok = false;
        else args.push_back(*arg);
      }
      if (ok) return make_apply_chain(var_ref(var, width), args);
      // Next combination of member choices.
      size_t g = 0;
      while (g < pick.size()) {
        if (++pick[g] < options[g].size()) break;
        pick[g] = 0;
        ++g;
      }
      if (g == pick.size()) return std::nullopt;
    }
  }
};

std::string cache_key(std::vector<StrictPtr> goals) {
  std::sort(goals.begin(), goals.end(), [](const StrictPtr& a, const StrictPtr& b) { return cmp(a, b) < 0; });
  std::string key;
  for (const auto& g : goals) {
    key += print_type(g);
    key += '|';
  }
  return key;
}

}  // namespace

std::optional<TermPtr> joint_inhabit(const std::vector<StrictPtr>& goals, SearchSession& session) {
  std::string key = cache_key(goals);
  if (auto it = session.inhabit_cache.find(key); it != session.inhabit_cache.end()) return it->second;
  std::vector<Obligation> obs;
  for (const auto& g : goals) obs.push_back({{}, g});
  Solver solver{session};
  session.candidates_used = 0;  // the candidate budget is per query
  std::optional<TermPtr> result;
  for (int d = 1; d <= session.budget.max_depth && !result; ++d) result = solver.solve(obs, d);
  session.inhabit_cache[key] = result;
  return result;
}

InhabitResult inhabit(const StrictPtr& target, SearchSession& session) {
  auto t = joint_inhabit({target}, session);
  if (t) return {InhabitResult::Status::Inhabitant, *t};
  return {InhabitResult::Status::NoneFound, nullptr};
}

InhabitResult inhabit(const StrictPtr& target, const SearchBudget& budget) {
  SearchSession session{budget, {}, {}, {}, 0};
  return inhabit(target, session);
}

InhabitJointResult inhabit_joint(const Intersection& domain, const std::vector<Intersection>& targets,
                                 SearchSession& session) {
  std::vector<TermPtr> terms;
  for (const auto& rho : targets) {
    std::vector<StrictPtr> goals;
    for (const auto& mu : rho.members) goals.push_back(make_arrow(domain, mu));
    auto t = joint_inhabit(goals, session);
    if (!t) return {InhabitJointResult::Status::NoneFound, {}};
    terms.push_back(*t);
  }
  return {InhabitJointResult::Status::Inhabitants, std::move(terms)};
}

InhabitJointResult inhabit_joint(const Intersection& domain, const std::vector<Intersection>& targets,
                                 const SearchBudget& budget) {
  SearchSession session{budget, {}, {}, {}, 0};
  return inhabit_joint(domain, targets, session);
}

}  // namespace retrakt
