#include <doctest.h>

#include <random>

#include "retrakt/invert.hpp"
#include "retrakt/term.hpp"

using namespace retrakt;

namespace {

TermPtr tp(const std::string& s) { return parse_term(s); }

Hnf hnf_of(const std::string& s) {
  auto r = head_normal_form(tp(s), {});
  REQUIRE(r.status == HnfResult::Status::Ok);
  return *r.hnf;
}

Path path_of_term(const std::string& s) {
  auto d = xi_membership(hnf_of(s));
  REQUIRE(d.has_value());
  return d->path;
}

}  // namespace

TEST_CASE("xi membership and paths") {
  CHECK(path_of_term("\\t x. x x (x t)") == Path{{2, 2, 2}, {2, 1, 1}, {1, 0, 0}});
  CHECK(path_of_term("\\t. t") == Path{{1, 0, 0}});
  CHECK(path_of_term("\\t x1 x2 x3. t") == Path{{1, 0, 0}});
  // deterministic search picks the smallest component index first
  CHECK(path_of_term("\\t x1 x2. x2 (\\x3. t) (x1 t)") == Path{{3, 2, 1}, {1, 0, 0}});
  CHECK(path_of_term("\\t x1 x2. x1 x2 (x2 t)") == Path{{2, 2, 2}, {3, 1, 1}, {1, 0, 0}});

  CHECK_FALSE(xi_membership(hnf_of("\\t x. x")).has_value());
  CHECK_FALSE(xi_membership(hnf_of("\\x. x x")).has_value());
  CHECK_FALSE(xi_membership(hnf_of("\\t. t t")).has_value());   // t must not be applied
  CHECK_FALSE(xi_membership(hnf_of("\\t x. y t")).has_value()); // free head
}

TEST_CASE("xi handles components that still carry redexes") {
  CHECK(path_of_term("\\t x. x ((\\y. y) t)") == Path{{2, 1, 1}, {1, 0, 0}});
}

TEST_CASE("sharp") {
  Path p{{2, 2, 2}, {2, 1, 1}, {1, 0, 0}};
  CHECK(sharp(2, p) == 2);
  CHECK(sharp(5, p) == 0);
  CHECK(sharp(1, Path{{1, 0, 0}}) == 0);
}

TEST_CASE("permute_substitute reproduces the permuted derivation") {
  auto d = xi_membership(hnf_of("\\t x. x x (x t)"));
  REQUIRE(d);
  XiDerivation q = permute_substitute(*d, {2});
  CHECK(q.path == Path{{2, 2, 2}, {4, 2, 1}, {1, 0, 0}});
  CHECK(q.path.size() == d->path.size());
  CHECK(term_eq(reassemble(q.term), tp("\\t z1. z1 (\\z2 z3 z4. z4 z2 z3) (\\z5 z6. z6 t z5)")));

  // base case: binders covered by arities are dropped
  auto base = xi_membership(hnf_of("\\t x1 x2 x3. t"));
  REQUIRE(base);
  XiDerivation qb = permute_substitute(*base, {1, 2});
  CHECK(term_eq(reassemble(qb.term), tp("\\t x3. t")));

  auto id = xi_membership(hnf_of("\\t. t"));
  REQUIRE(id);
  CHECK(term_eq(reassemble(permute_substitute(*id, {}).term), tp("\\t. t")));

  CHECK_THROWS_AS(permute_substitute(*d, {1}), std::invalid_argument);  // below sharp(2, path)
  CHECK_THROWS_AS(permute_substitute(*d, {2, 2}), std::invalid_argument);
}

TEST_CASE("left inverse of the worked example") {
  auto r = left_inverse(tp("\\t x. x x (x t)"), {});
  REQUIRE(r.status == LeftInverseResult::Status::Found);
  CHECK(term_eq(r.term, tp("\\z. z (\\z1 z2 z3. z3 z1 z2) (\\y1 y2. y2) _|_ (\\y1 y2. y1)")));
  CHECK(beta_bot_equal(compose(r.term, tp("\\t x. x x (x t)")), identity(), ReductionBudget{500}) ==
        EqualityResult::Equal);
}

TEST_CASE("left inverse simple cases") {
  auto r = left_inverse(tp("\\t x1 x2. t"), {});
  REQUIRE(r.status == LeftInverseResult::Status::Found);
  CHECK(term_eq(r.term, tp("\\z. z _|_ _|_")));

  CHECK(left_inverse(tp("\\x. x x"), {}).status == LeftInverseResult::Status::NotInvertible);
  CHECK(left_inverse(tp("_|_ x"), {}).status == LeftInverseResult::Status::NotInvertible);
  CHECK(left_inverse(tp("(\\x. x x) (\\x. x x)"), ReductionBudget{100}).status ==
        LeftInverseResult::Status::BudgetExceeded);

  // the identity is its own left inverse
  auto i = left_inverse(identity(), {});
  REQUIRE(i.status == LeftInverseResult::Status::Found);
  CHECK(term_eq(i.term, identity()));
}

TEST_CASE("right inverses") {
  // the left inverse built above is itself right invertible, with arity 4
  TermPtr ln = tp("\\z. z (\\z1 z2 z3. z3 z1 z2) (\\y1 y2. y2) _|_ (\\y1 y2. y1)");
  auto r = right_inverse_arity(ln, {});
  REQUIRE(r.status == RightInverseResult::Status::Found);
  CHECK(r.arity == 4);
  CHECK(beta_bot_equal(compose(ln, simple_right_inverse_term(r.arity)), identity(),
                       ReductionBudget{500}) == EqualityResult::Equal);
  // one arity lower fails, so 4 is tight
  CHECK(beta_bot_equal(compose(ln, simple_right_inverse_term(3)), identity(), ReductionBudget{500}) !=
        EqualityResult::Equal);

  auto i = right_inverse_arity(identity(), {});
  REQUIRE(i.status == RightInverseResult::Status::Found);
  CHECK(i.arity == 0);

  CHECK(right_inverse_arity(tp("\\x y. x"), {}).status == RightInverseResult::Status::NotInvertible);
}

TEST_CASE("is_simple_right_inverse") {
  CHECK(is_simple_right_inverse(tp("\\t x1 x2 x3. t")));
  CHECK(is_simple_right_inverse(tp("\\t. t")));
  CHECK(is_simple_right_inverse(tp("(\\a. a) (\\t x. t)")));  // up to reduction
  CHECK_FALSE(is_simple_right_inverse(tp("\\t x1 x2 x3. x2 x1 t")));
  CHECK_FALSE(is_simple_right_inverse(bottom()));
}

TEST_CASE("path well-formedness on accepted hnfs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = generate_xi_term(rng);
    auto h = head_normal_form(t, {});
    REQUIRE(h.status == HnfResult::Status::Ok);
    auto d = xi_membership(*h.hnf);
    REQUIRE(d.has_value());
    const Path& p = d->path;
    REQUIRE_FALSE(p.empty());
    CHECK(p.back() == Triple{1, 0, 0});
    for (size_t k = 0; k + 1 < p.size(); ++k) {
      CHECK(p[k].arity >= 1);
      CHECK(p[k].chosen >= 1);
      CHECK(p[k].chosen <= p[k].arity);
      CHECK(p[k].head_pos >= 2);
    }
  }
}

TEST_CASE("left inverse soundness on generated xi terms") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    TermPtr m = generate_xi_term(rng);
    auto r = left_inverse(m, {});
    REQUIRE(r.status == LeftInverseResult::Status::Found);
    CHECK(beta_bot_equal(compose(r.term, m), identity(), ReductionBudget{4000}) ==
          EqualityResult::Equal);
  }
}

TEST_CASE("permute_substitute preserves path length on generated terms") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 100; ++i) {
    TermPtr m = generate_xi_term(rng);
    auto h = head_normal_form(m, {});
    auto d = xi_membership(*h.hnf);
    REQUIRE(d);
    const int n = static_cast<int>(d->term.binders.size()) - 1;
    std::vector<int> arities;
    for (int j = 1; j <= n; ++j) arities.push_back(sharp(j + 1, d->path) + (i % 2));
    XiDerivation q = permute_substitute(*d, arities);
    CHECK(q.path.size() == d->path.size());
  }
}

// Exhaustive agreement with a brute-force derivation search over all small
// closed hnfs built from normal-form components.
namespace {

// Enumerate beta-bottom normal forms of a given size with `scope` bound
// variables available; hnf_only restricts the top level to abstractions.
void enumerate_nf(int size, int scope, bool lambda_ok, std::vector<TermPtr>& out);

void enumerate_spines(int size, int scope, std::vector<TermPtr>& out) {
  // head variable applied to normal-form arguments
  for (int head = 0; head < scope; ++head) {
    if (size == 1) {
      out.push_back(make_bound(head));
      continue;
    }
    // split size-1 among one or more arguments
    auto rec = [&](auto&& self, int remaining, std::vector<TermPtr>& acc) -> void {
      if (remaining == 0) {
        if (!acc.empty()) out.push_back(make_apply_chain(make_bound(head), acc));
        return;
      }
      for (int a = 1; a <= remaining; ++a) {
        std::vector<TermPtr> args;
        enumerate_nf(a, scope, true, args);
        for (const auto& arg : args) {
          acc.push_back(arg);
          self(self, remaining - a, acc);
          acc.pop_back();
        }
      }
    };
    std::vector<TermPtr> acc;
    rec(rec, size - 1, acc);
  }
}

void enumerate_nf(int size, int scope, bool lambda_ok, std::vector<TermPtr>& out) {
  if (size <= 0) return;
  if (size == 1) {
    out.push_back(bottom());
    for (int i = 0; i < scope; ++i) out.push_back(make_bound(i));
    return;
  }
  if (lambda_ok) {
    std::vector<TermPtr> bodies;
    enumerate_nf(size - 1, scope + 1, true, bodies);
    for (const auto& b : bodies)
      if (b->kind != Term::Kind::Bottom) out.push_back(make_lambda(b));
  }
  enumerate_spines(size, scope, out);
}

// Literal brute force over the two formation rules, trying every component.
bool xi_brute(const Hnf& h) {
  if (h.binders.empty()) return false;
  bool head_is_t = h.head == h.binders.front();
  if (head_is_t) return h.args.empty();
  bool head_bound = false;
  for (size_t i = 1; i < h.binders.size(); ++i) head_bound |= h.binders[i] == h.head;
  if (!head_bound || h.args.empty()) return false;
  for (const auto& comp : h.args) {
    TermPtr sub = comp;
    for (auto it = h.binders.rbegin(); it != h.binders.rend(); ++it) sub = close_lambda(sub, *it);
    auto hr = head_normal_form(sub, ReductionBudget{500});
    if (hr.status != HnfResult::Status::Ok) continue;
    if (xi_brute(*hr.hnf)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("xi membership agrees with brute force on small closed hnfs") {
  std::vector<TermPtr> terms;
  for (int size = 2; size <= 9; ++size) {
    std::vector<TermPtr> layer;
    enumerate_nf(size, 0, true, layer);
    for (auto& t : layer)
      if (t->kind == Term::Kind::Lambda) terms.push_back(t);
  }
  REQUIRE(terms.size() > 500);
  int accepted = 0;
  for (const auto& t : terms) {
    auto h = head_normal_form(t, {});
    REQUIRE(h.status == HnfResult::Status::Ok);
    bool engine = xi_membership(*h.hnf).has_value();
    bool brute = xi_brute(*h.hnf);
    CHECK(engine == brute);
    accepted += engine;
  }
  CHECK(accepted > 10);
}
