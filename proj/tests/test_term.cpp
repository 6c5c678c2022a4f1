#include <doctest.h>

#include <random>

#include "retrakt/term.hpp"

using namespace retrakt;

namespace {

TermPtr tp(const std::string& s) { return parse_term(s); }

bool alpha_eq(const std::string& a, const std::string& b) { return term_eq(tp(a), tp(b)); }

}  // namespace

TEST_CASE("parser and alpha equivalence") {
  CHECK(alpha_eq("\\x. x", "\\y. y"));
  CHECK(alpha_eq("\\x y. x y", "\\a.\\b. a b"));
  CHECK_FALSE(alpha_eq("\\x y. x", "\\x y. y"));
  CHECK(term_eq(tp("_|_"), bottom()));
  // Application associates left, abstraction body extends right.
  CHECK(alpha_eq("\\x. x x x", "\\x. (x x) x"));
  CHECK(alpha_eq("\\t.\\x. x x (x t)", "\\t x. x x (x t)"));
  CHECK_FALSE(alpha_eq("\\x. x (x x)", "\\x. x x x"));
  CHECK_THROWS_AS(tp("\\. x"), ParseError);
  CHECK_THROWS_AS(tp("(x"), ParseError);
  CHECK_THROWS_AS(tp("x )"), ParseError);
}

TEST_CASE("print round trip") {
  const char* samples[] = {
      "\\x. x",       "_|_",           "\\t x. x x (x t)", "x y z",
      "\\x. x _|_",   "(\\x. x) y",    "\\t x1 x2. x2 x1 t",
      "\\z. z (\\y1 y2. y2) _|_ (\\y1 y2. y1)",
  };
  for (const char* s : samples) {
    TermPtr t = tp(s);
    CHECK(term_eq(parse_term(print_term(t)), t));
  }
}

TEST_CASE("substitute") {
  // direct hit
  CHECK(term_eq(substitute(tp("x"), "x", bottom()), bottom()));
  // replacing under a binder of the same name cannot capture
  TermPtr t = substitute(tp("\\y. x y"), "x", tp("y"));
  CHECK(term_eq(t, tp("\\q. y q")));
  CHECK_FALSE(term_eq(t, tp("\\y. y y")));
  // the permutator example: \t. (x x (x t)){P(2)/x} reduces to the permuted form
  TermPtr spine = substitute(tp("x x (x t)"), "x", permutator(2));
  TermPtr q = close_lambda(spine, "t");
  auto nf = normalize(q, {});
  REQUIRE(nf.normal_form.has_value());
  CHECK(term_eq(*nf.normal_form, tp("\\t z1. z1 (\\z2 z3 z4. z4 z2 z3) (\\z5 z6. z6 t z5)")));
}

TEST_CASE("substitute preserves other free variables") {
  std::mt19937_64 rng(7);
  TermPtr body = tp("\\a. x (y a) (z x)");
  TermPtr repl = tp("\\b. w b");
  auto names = free_names(substitute(body, "x", repl));
  CHECK(names == std::vector<std::string>{"w", "y", "z"});
}

TEST_CASE("reduce_step rules") {
  CHECK(term_eq(*reduce_step(tp("_|_ m")), bottom()));
  CHECK(term_eq(*reduce_step(tp("\\x. _|_")), bottom()));
  CHECK(term_eq(*reduce_step(tp("(\\x. x) y")), tp("y")));
  CHECK_FALSE(reduce_step(tp("\\x. x y")).has_value());
  CHECK_FALSE(reduce_step(tp("x (\\y. y)")).has_value());
}

TEST_CASE("normal form has no residual redex") {
  std::mt19937_64 rng(11);
  auto random_term = [&](auto&& self, int depth, int scope) -> TermPtr {
    std::uniform_int_distribution<int> d(0, depth <= 0 ? 1 : 4);
    switch (d(rng)) {
      case 0: return bottom();
      case 1:
        return scope > 0 ? make_bound(std::uniform_int_distribution<int>(0, scope - 1)(rng))
                         : bottom();
      case 2: return make_lambda(self(self, depth - 1, scope + 1));
      default: return make_apply(self(self, depth - 1, scope), self(self, depth - 1, scope));
    }
  };
  auto has_redex = [](auto&& self, const TermPtr& t) -> bool {
    switch (t->kind) {
      case Term::Kind::Apply:
        if (t->fun->kind == Term::Kind::Bottom || t->fun->kind == Term::Kind::Lambda) return true;
        return self(self, t->fun) || self(self, t->arg);
      case Term::Kind::Lambda:
        if (t->body->kind == Term::Kind::Bottom) return true;
        return self(self, t->body);
      default: return false;
    }
  };
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    TermPtr t = random_term(random_term, 5, 0);
    auto nf = normalize(t, ReductionBudget{400});
    if (!nf.normal_form) continue;
    ++checked;
    CHECK_FALSE(has_redex(has_redex, *nf.normal_form));
  }
  CHECK(checked > 300);
}

TEST_CASE("confluence at desk scale") {
  // Rightmost-innermost single step, for cross-checking normal forms.
  auto step_ri = [](auto&& self, const TermPtr& t) -> std::optional<TermPtr> {
    switch (t->kind) {
      case Term::Kind::Apply: {
        if (auto a = self(self, t->arg)) return make_apply(t->fun, *a);
        if (auto f = self(self, t->fun)) return make_apply(*f, t->arg);
        if (t->fun->kind == Term::Kind::Bottom) return bottom();
        if (t->fun->kind == Term::Kind::Lambda) return instantiate(t->fun->body, t->arg);
        return std::nullopt;
      }
      case Term::Kind::Lambda: {
        if (auto b = self(self, t->body)) return make_lambda(*b);
        if (t->body->kind == Term::Kind::Bottom) return bottom();
        return std::nullopt;
      }
      default: return std::nullopt;
    }
  };
  std::mt19937_64 rng(23);
  auto random_term = [&](auto&& self, int depth, int scope) -> TermPtr {
    std::uniform_int_distribution<int> d(0, depth <= 0 ? 1 : 4);
    switch (d(rng)) {
      case 0: return bottom();
      case 1:
        return scope > 0 ? make_bound(std::uniform_int_distribution<int>(0, scope - 1)(rng))
                         : bottom();
      case 2: return make_lambda(self(self, depth - 1, scope + 1));
      default: return make_apply(self(self, depth - 1, scope), self(self, depth - 1, scope));
    }
  };
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    TermPtr t = random_term(random_term, 5, 0);
    auto lo = normalize(t, ReductionBudget{300});
    if (!lo.normal_form) continue;
    TermPtr cur = t;
    bool ok = true;
    for (int s = 0; s < 300; ++s) {
      auto n = step_ri(step_ri, cur);
      if (!n) break;
      cur = *n;
      if (s == 299) ok = false;
    }
    if (!ok || step_ri(step_ri, cur).has_value()) continue;
    ++compared;
    CHECK(term_eq(*lo.normal_form, cur));
  }
  CHECK(compared > 200);
}

TEST_CASE("head normal forms") {
  auto r = head_normal_form(tp("\\z. (\\x. x) z"), {});
  REQUIRE(r.status == HnfResult::Status::Ok);
  CHECK(r.hnf->binders.size() == 1);
  CHECK(r.hnf->head == r.hnf->binders[0]);
  CHECK(r.hnf->args.empty());

  CHECK(head_normal_form(tp("_|_ x"), {}).status == HnfResult::Status::Unsolvable);
  CHECK(head_normal_form(tp("\\x y. _|_"), {}).status == HnfResult::Status::Unsolvable);
  CHECK(head_normal_form(tp("(\\x. x x) (\\x. x x)"), ReductionBudget{100}).status ==
        HnfResult::Status::BudgetExceeded);

  // Reassembly inverts decomposition.
  TermPtr m = tp("\\t x. x x (x t)");
  auto h = head_normal_form(m, {});
  REQUIRE(h.status == HnfResult::Status::Ok);
  CHECK(term_eq(reassemble(*h.hnf), m));
}

TEST_CASE("beta_bot_equal") {
  CHECK(beta_bot_equal(compose(identity(), identity()), identity(), {}) == EqualityResult::Equal);
  // composing the constructed left inverse with its term gives the identity
  TermPtr l = tp("\\z. z (\\z1 z2 z3. z3 z1 z2) (\\y1 y2. y2) _|_ (\\y1 y2. y1)");
  TermPtr m = tp("\\t x. x x (x t)");
  CHECK(beta_bot_equal(compose(l, m), identity(), ReductionBudget{500}) == EqualityResult::Equal);
  // no eta rule
  CHECK(beta_bot_equal(tp("\\x. x"), tp("\\x y. x y"), {}) == EqualityResult::Distinct);
  CHECK(beta_bot_equal(tp("(\\x. x x) (\\x. x x)"), tp("\\x. x"), ReductionBudget{100}) ==
        EqualityResult::BudgetExceeded);
}

TEST_CASE("combinators") {
  CHECK(term_eq(permutator(0), bottom()));
  CHECK(term_eq(permutator(2), tp("\\z1 z2 z3. z3 z1 z2")));
  CHECK(term_eq(selector(1, 2), tp("\\y1 y2. y1")));
  CHECK(term_eq(selector(2, 2), tp("\\y1 y2. y2")));
  CHECK_THROWS_AS(selector(3, 2), std::invalid_argument);
  CHECK(term_eq(simple_right_inverse_term(3), tp("\\t x1 x2 x3. t")));
  CHECK(term_eq(simple_right_inverse_term(0), tp("\\t. t")));
  // compose(L, R) x reduces to L (R x)
  TermPtr l = tp("\\a. a a");
  TermPtr r = tp("\\b. b _|_");
  TermPtr applied = make_apply(compose(l, r), tp("x"));
  auto nf1 = normalize(applied, {});
  auto nf2 = normalize(make_apply(l, make_apply(r, tp("x"))), {});
  REQUIRE(nf1.normal_form);
  REQUIRE(nf2.normal_form);
  CHECK(term_eq(*nf1.normal_form, *nf2.normal_form));
}
