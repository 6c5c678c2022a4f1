#include "retrakt/invert.hpp"

#include <algorithm>
#include <stdexcept>

namespace retrakt {

namespace {

// Budget for the head reductions performed while exploring components and
// rebuilding permuted derivations. Generous relative to every desk-scale
// input; exploration simply abandons a component that exceeds it.
const ReductionBudget kInternalBudget{10000};

// \ (binders). body
TermPtr close_over(const std::vector<std::string>& binders, TermPtr body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = close_lambda(body, *it);
  return body;
}

// 1-based position of the head among the binders; 0 when the head is free.
int head_position(const Hnf& h) {
  for (size_t i = 0; i < h.binders.size(); ++i)
    if (h.binders[i] == h.head) return static_cast<int>(i) + 1;
  return 0;
}

}  // namespace

const Path& path_of(const XiDerivation& d) { return d.path; }

int sharp(int head_pos, const Path& p) {
  int best = 0;
  for (const Triple& t : p)
    if (t.head_pos == head_pos) best = std::max(best, t.arity);
  return best;
}

std::optional<XiDerivation> xi_membership(const Hnf& h) {
  if (h.binders.empty()) return std::nullopt;
  const int pos = head_position(h);
  if (pos == 0) return std::nullopt;  // free head
  if (pos == 1) {
    if (!h.args.empty()) return std::nullopt;  // t applied to arguments
    return XiDerivation{h, Path{{1, 0, 0}}, nullptr};
  }
  const int m = static_cast<int>(h.args.size());
  if (m == 0) return std::nullopt;
  for (int i = 1; i <= m; ++i) {
    TermPtr candidate = close_over(h.binders, h.args[i - 1]);
    HnfResult hr = head_normal_form(candidate, kInternalBudget);
    if (hr.status != HnfResult::Status::Ok) continue;
    auto sub = xi_membership(*hr.hnf);
    if (!sub) continue;
    Path p{{pos, m, i}};
    p.insert(p.end(), sub->path.begin(), sub->path.end());
    return XiDerivation{h, std::move(p),
                        std::make_shared<const XiDerivation>(std::move(*sub))};
  }
  return std::nullopt;
}

// ======================= permutator substitution =======================

namespace {

// Re-derives Xi membership of a transformed term following the component
// choices of the original derivation.
XiDerivation guided_xi(const TermPtr& term, const std::vector<int>& choices, size_t idx) {
  HnfResult hr = head_normal_form(term, kInternalBudget);
  if (hr.status != HnfResult::Status::Ok)
    throw std::logic_error("permute_substitute: transformed term lost its hnf");
  const Hnf& h = *hr.hnf;
  const int pos = head_position(h);
  if (idx == choices.size()) {
    if (pos != 1 || !h.args.empty())
      throw std::logic_error("permute_substitute: transformed base case has the wrong shape");
    return XiDerivation{h, Path{{1, 0, 0}}, nullptr};
  }
  const int m = static_cast<int>(h.args.size());
  const int i = choices[idx];
  if (pos <= 1 || i < 1 || i > m)
    throw std::logic_error("permute_substitute: transformed step case has the wrong shape");
  TermPtr sub_term = close_over(h.binders, h.args[i - 1]);
  XiDerivation sub = guided_xi(sub_term, choices, idx + 1);
  Path p{{pos, m, i}};
  p.insert(p.end(), sub.path.begin(), sub.path.end());
  return XiDerivation{h, std::move(p), std::make_shared<const XiDerivation>(std::move(sub))};
}

}  // namespace

XiDerivation permute_substitute(const XiDerivation& d, const std::vector<int>& arities) {
  const int n = static_cast<int>(arities.size());
  const int q = static_cast<int>(d.term.binders.size()) - 1;
  if (n > q) throw std::invalid_argument("permute_substitute: more arities than bound positions");
  for (int j = 1; j <= n; ++j) {
    if (arities[j - 1] < sharp(j + 1, d.path))
      throw std::invalid_argument("permute_substitute: arity below the path maximum at position " +
                                  std::to_string(j));
  }

  // Substitute permutators for x1..xn in the open spine, then rebind t and
  // the remaining binders.
  TermPtr spine = make_apply_chain(make_free(d.term.head), d.term.args);
  for (int j = 1; j <= n; ++j)
    spine = substitute(spine, d.term.binders[j], permutator(arities[j - 1]));
  std::vector<std::string> keep{d.term.binders.front()};
  keep.insert(keep.end(), d.term.binders.begin() + 1 + n, d.term.binders.end());
  TermPtr q_term = close_over(keep, spine);

  std::vector<int> choices;
  for (const XiDerivation* node = &d; node->sub; node = node->sub.get())
    choices.push_back(node->path.front().chosen);

  XiDerivation out = guided_xi(q_term, choices, 0);
  if (out.path.size() != d.path.size())
    throw std::logic_error("permute_substitute: path length not preserved");
  return out;
}

// ======================= left inverses =======================

namespace {

// Arguments A1..Aq of the left inverse \z. z A1...Aq. Positions whose head
// position never occurs in the path hold bottom.
std::vector<TermPtr> build_left_args(const XiDerivation& d) {
  if (!d.sub) {
    const size_t n = d.term.binders.size() - 1;
    return std::vector<TermPtr>(n, bottom());
  }
  const Triple t = d.path.front();
  const int j = t.head_pos - 1;
  if (sharp(t.head_pos, d.sub->path) == 0) {
    // The head position is exhausted below: splice a selector in.
    std::vector<TermPtr> args = build_left_args(*d.sub);
    if (static_cast<int>(args.size()) < j || args[j - 1]->kind != Term::Kind::Bottom)
      throw std::logic_error("left_inverse: selector slot is not free");
    args[j - 1] = selector(t.chosen, t.arity);
    return args;
  }
  // The head position recurs below: disambiguate its occurrences with
  // permutators up to position j, then handle the permuted derivation.
  std::vector<int> arities;
  for (int l = 1; l <= j; ++l) arities.push_back(sharp(l + 1, d.path));
  XiDerivation permuted = permute_substitute(d, arities);
  std::vector<TermPtr> args;
  for (int a : arities) args.push_back(permutator(a));
  std::vector<TermPtr> rest = build_left_args(permuted);
  args.insert(args.end(), rest.begin(), rest.end());
  return args;
}

}  // namespace

LeftInverseResult left_inverse(const TermPtr& t, const ReductionBudget& budget) {
  HnfResult hr = head_normal_form(t, budget);
  if (hr.status == HnfResult::Status::BudgetExceeded)
    return {LeftInverseResult::Status::BudgetExceeded, nullptr};
  if (hr.status == HnfResult::Status::Unsolvable)
    return {LeftInverseResult::Status::NotInvertible, nullptr};
  auto d = xi_membership(*hr.hnf);
  if (!d) return {LeftInverseResult::Status::NotInvertible, nullptr};
  std::vector<TermPtr> args = build_left_args(*d);
  std::string z = fresh_name({}, "z");
  TermPtr body = make_apply_chain(make_free(z), args);
  return {LeftInverseResult::Status::Found, close_lambda(body, z)};
}

RightInverseResult right_inverse_arity(const TermPtr& t, const ReductionBudget& budget) {
  HnfResult hr = head_normal_form(t, budget);
  if (hr.status == HnfResult::Status::BudgetExceeded)
    return {RightInverseResult::Status::BudgetExceeded, 0};
  if (hr.status == HnfResult::Status::Unsolvable)
    return {RightInverseResult::Status::NotInvertible, 0};
  const Hnf& h = *hr.hnf;
  if (h.binders.size() != 1 || h.head != h.binders.front())
    return {RightInverseResult::Status::NotInvertible, 0};
  return {RightInverseResult::Status::Found, static_cast<int>(h.args.size())};
}

bool is_simple_right_inverse(const TermPtr& t, const ReductionBudget& budget) {
  auto nf = normalize(t, budget).normal_form;
  if (!nf) return false;
  int binders = 0;
  TermPtr cur = *nf;
  while (cur->kind == Term::Kind::Lambda) {
    ++binders;
    cur = cur->body;
  }
  return binders >= 1 && cur->kind == Term::Kind::Bound && cur->index == binders - 1;
}

// ======================= generator =======================

namespace {

struct XiGen {
  std::mt19937_64& rng;
  const XiGenParams& p;

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool chance(double prob) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob; }

  // A harmless filler component over the variables in scope.
  TermPtr filler(const std::vector<std::string>& scope) {
    switch (uniform(0, 3)) {
      case 0: return bottom();
      case 1: return make_free(scope[uniform(0, static_cast<int>(scope.size()) - 1)]);
      default: {
        TermPtr a = make_free(scope[uniform(0, static_cast<int>(scope.size()) - 1)]);
        TermPtr b = make_free(scope[uniform(0, static_cast<int>(scope.size()) - 1)]);
        return make_apply(a, b);
      }
    }
  }

  // Body of a Xi term over the binders currently in scope (scope[0] is t).
  TermPtr body(std::vector<std::string>& scope, int depth) {
    const int n = static_cast<int>(scope.size()) - 1;
    if (n == 0 || depth >= p.max_depth || !chance(p.continue_prob)) return make_free(scope[0]);
    const int j = uniform(1, n);
    const int m = uniform(1, p.max_components);
    const int i = uniform(1, m);
    // The chosen component may introduce extra binders of its own.
    const int extra = uniform(0, 2);
    std::vector<std::string> inner = scope;
    std::vector<std::string> added;
    for (int k = 0; k < extra; ++k) {
      std::string x = fresh_name(inner, "x" + std::to_string(inner.size()));
      inner.push_back(x);
      added.push_back(x);
    }
    TermPtr chosen = close_over(added, body(inner, depth + 1));
    std::vector<TermPtr> args;
    for (int k = 1; k <= m; ++k) args.push_back(k == i ? chosen : filler(scope));
    return make_apply_chain(make_free(scope[j]), args);
  }
};

}  // namespace

TermPtr generate_xi_term(std::mt19937_64& rng, const XiGenParams& params) {
  XiGen gen{rng, params};
  int n = gen.uniform(0, params.max_binders);
  std::vector<std::string> scope{"t"};
  for (int k = 1; k <= n; ++k) scope.push_back("x" + std::to_string(k));
  TermPtr b = gen.body(scope, 0);
  return close_over(scope, b);
}

}  // namespace retrakt
