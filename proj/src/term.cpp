#include "retrakt/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace retrakt {

// ======================= construction =======================

TermPtr make_free(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Free;
  t->name = std::move(name);
  return t;
}

TermPtr make_bound(int index) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Bound;
  t->index = index;
  return t;
}

TermPtr bottom() {
  static const TermPtr b = [] {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Bottom;
    return t;
  }();
  return b;
}

TermPtr make_lambda(TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Lambda;
  t->body = std::move(body);
  return t;
}

TermPtr make_apply(TermPtr fun, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Apply;
  t->fun = std::move(fun);
  t->arg = std::move(arg);
  return t;
}

TermPtr make_apply_chain(TermPtr head, const std::vector<TermPtr>& args) {
  TermPtr t = std::move(head);
  for (const auto& a : args) t = make_apply(t, a);
  return t;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Free: return a->name == b->name;
    case Term::Kind::Bound: return a->index == b->index;
    case Term::Kind::Bottom: return true;
    case Term::Kind::Lambda: return term_eq(a->body, b->body);
    case Term::Kind::Apply: return term_eq(a->fun, b->fun) && term_eq(a->arg, b->arg);
  }
  return false;
}

int term_size(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Lambda: return 1 + term_size(t->body);
    case Term::Kind::Apply: return 1 + term_size(t->fun) + term_size(t->arg);
    default: return 1;
  }
}

static void collect_free(const TermPtr& t, std::vector<std::string>& out, std::set<std::string>& seen) {
  switch (t->kind) {
    case Term::Kind::Free:
      if (seen.insert(t->name).second) out.push_back(t->name);
      break;
    case Term::Kind::Lambda: collect_free(t->body, out, seen); break;
    case Term::Kind::Apply:
      collect_free(t->fun, out, seen);
      collect_free(t->arg, out, seen);
      break;
    default: break;
  }
}

std::vector<std::string> free_names(const TermPtr& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_free(t, out, seen);
  return out;
}

// ======================= substitution =======================

// Replace dangling index `depth` by `arg` (locally closed) and shift the
// indices above it down by one.
static TermPtr open_at(const TermPtr& t, int depth, const TermPtr& arg) {
  switch (t->kind) {
    case Term::Kind::Bound:
      if (t->index == depth) return arg;
      if (t->index > depth) return make_bound(t->index - 1);
      return t;
    case Term::Kind::Lambda: {
      TermPtr b = open_at(t->body, depth + 1, arg);
      return b == t->body ? t : make_lambda(b);
    }
    case Term::Kind::Apply: {
      TermPtr f = open_at(t->fun, depth, arg);
      TermPtr a = open_at(t->arg, depth, arg);
      return (f == t->fun && a == t->arg) ? t : make_apply(f, a);
    }
    default: return t;
  }
}

TermPtr instantiate(const TermPtr& body, const TermPtr& arg) { return open_at(body, 0, arg); }

static TermPtr close_at(const TermPtr& t, int depth, const std::string& name) {
  switch (t->kind) {
    case Term::Kind::Free:
      if (t->name == name) return make_bound(depth);
      return t;
    case Term::Kind::Bound:
      if (t->index >= depth) return make_bound(t->index + 1);
      return t;
    case Term::Kind::Lambda: {
      TermPtr b = close_at(t->body, depth + 1, name);
      return b == t->body ? t : make_lambda(b);
    }
    case Term::Kind::Apply: {
      TermPtr f = close_at(t->fun, depth, name);
      TermPtr a = close_at(t->arg, depth, name);
      return (f == t->fun && a == t->arg) ? t : make_apply(f, a);
    }
    default: return t;
  }
}

TermPtr abstract_name(const TermPtr& t, const std::string& name) { return close_at(t, 0, name); }

TermPtr close_lambda(const TermPtr& t, const std::string& name) {
  return make_lambda(abstract_name(t, name));
}

TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& replacement) {
  switch (body->kind) {
    case Term::Kind::Free: return body->name == name ? replacement : body;
    case Term::Kind::Lambda: {
      TermPtr b = substitute(body->body, name, replacement);
      return b == body->body ? body : make_lambda(b);
    }
    case Term::Kind::Apply: {
      TermPtr f = substitute(body->fun, name, replacement);
      TermPtr a = substitute(body->arg, name, replacement);
      return (f == body->fun && a == body->arg) ? body : make_apply(f, a);
    }
    default: return body;
  }
}

// ======================= reduction =======================

std::optional<TermPtr> reduce_step(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Apply: {
      if (t->fun->kind == Term::Kind::Bottom) return bottom();
      if (t->fun->kind == Term::Kind::Lambda) return instantiate(t->fun->body, t->arg);
      if (auto f = reduce_step(t->fun)) return make_apply(*f, t->arg);
      if (auto a = reduce_step(t->arg)) return make_apply(t->fun, *a);
      return std::nullopt;
    }
    case Term::Kind::Lambda: {
      if (t->body->kind == Term::Kind::Bottom) return bottom();
      if (auto b = reduce_step(t->body)) return make_lambda(*b);
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

NormalizeResult normalize(const TermPtr& t, const ReductionBudget& budget) {
  TermPtr cur = t;
  for (long i = 0; i <= budget.max_steps; ++i) {
    auto next = reduce_step(cur);
    if (!next) return {cur, i};
    if (i == budget.max_steps) break;
    cur = *next;
  }
  return {std::nullopt, budget.max_steps};
}

std::optional<std::vector<TermPtr>> reduction_trace(const TermPtr& t, const ReductionBudget& budget) {
  std::vector<TermPtr> trace{t};
  TermPtr cur = t;
  for (long i = 0; i < budget.max_steps; ++i) {
    auto next = reduce_step(cur);
    if (!next) return trace;
    cur = *next;
    trace.push_back(cur);
  }
  if (!reduce_step(cur)) return trace;
  return std::nullopt;
}

EqualityResult beta_bot_equal(const TermPtr& a, const TermPtr& b, const ReductionBudget& budget) {
  auto na = normalize(a, budget);
  auto nb = normalize(b, budget);
  if (!na.normal_form || !nb.normal_form) return EqualityResult::BudgetExceeded;
  return term_eq(*na.normal_form, *nb.normal_form) ? EqualityResult::Equal : EqualityResult::Distinct;
}

// ======================= head normal forms =======================

TermPtr reassemble(const Hnf& h) {
  TermPtr t = make_apply_chain(make_free(h.head), h.args);
  for (auto it = h.binders.rbegin(); it != h.binders.rend(); ++it) t = close_lambda(t, *it);
  return t;
}

std::string fresh_name(const std::vector<std::string>& used, const std::string& stem) {
  std::set<std::string> taken(used.begin(), used.end());
  if (!stem.empty() && !taken.count(stem)) return stem;
  static const char* pool[] = {"x", "y", "z", "u", "v", "s", "t", "a", "b", "c"};
  if (stem.empty()) {
    for (const char* p : pool)
      if (!taken.count(p)) return p;
  }
  const std::string base = stem.empty() ? "v" : stem;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

HnfResult head_normal_form(const TermPtr& t, const ReductionBudget& budget) {
  long steps = 0;
  TermPtr cur = t;
  std::vector<std::string> used = free_names(t);
  std::vector<std::string> binders;
  std::vector<TermPtr> spine;  // arguments, innermost application last

  // Walk the head: open lambdas with fresh names, unwind applications, and
  // contract the head redex when one appears.
  while (true) {
    spine.clear();
    TermPtr head = cur;
    // Strip the lambda prefix.
    bool opened = false;
    while (head->kind == Term::Kind::Lambda) {
      std::string x = fresh_name(used, binders.empty() ? "t" : "x" + std::to_string(binders.size()));
      used.push_back(x);
      binders.push_back(x);
      head = instantiate(head->body, make_free(x));
      opened = true;
    }
    if (opened) cur = head;
    // Unwind the application spine.
    while (head->kind == Term::Kind::Apply) {
      spine.push_back(head->arg);
      head = head->fun;
    }
    std::reverse(spine.begin(), spine.end());
    if (head->kind == Term::Kind::Free) {
      return {HnfResult::Status::Ok, Hnf{binders, head->name, spine}, steps};
    }
    if (head->kind == Term::Kind::Bottom) {
      return {HnfResult::Status::Unsolvable, std::nullopt, steps};
    }
    // head is a lambda applied to at least one argument: contract.
    if (steps >= budget.max_steps) return {HnfResult::Status::BudgetExceeded, std::nullopt, steps};
    auto next = reduce_step(cur);
    if (!next) return {HnfResult::Status::Unsolvable, std::nullopt, steps};  // unreachable
    cur = *next;
    ++steps;
  }
}

// ======================= combinators =======================

TermPtr identity() { return make_lambda(make_bound(0)); }

TermPtr combinator_b() {
  // \x y z. x (y z)
  TermPtr body = make_apply(make_bound(2), make_apply(make_bound(1), make_bound(0)));
  return make_lambda(make_lambda(make_lambda(body)));
}

TermPtr compose(const TermPtr& m, const TermPtr& n) {
  return make_apply(make_apply(combinator_b(), m), n);
}

TermPtr selector(int i, int m) {
  if (m < 1 || i < 1 || i > m) throw std::invalid_argument("selector: need 1 <= i <= m");
  TermPtr t = make_bound(m - i);
  for (int k = 0; k < m; ++k) t = make_lambda(t);
  return t;
}

TermPtr permutator(int m) {
  if (m < 0) throw std::invalid_argument("permutator: m must be nonnegative");
  if (m == 0) return bottom();
  TermPtr t = make_bound(0);  // z_{m+1}
  for (int k = m; k >= 1; --k) t = make_apply(t, make_bound(k));
  for (int k = 0; k <= m; ++k) t = make_lambda(t);
  return t;
}

TermPtr simple_right_inverse_term(int m) {
  if (m < 0) throw std::invalid_argument("simple right inverse arity must be nonnegative");
  TermPtr t = make_bound(m);
  for (int k = 0; k <= m; ++k) t = make_lambda(t);
  return t;
}

// ======================= parsing =======================

namespace {

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError{msg, line, col}; }

  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool try_bottom() {
    skip_ws();
    if (src.compare(pos, 3, "_|_") == 0) {
      advance();
      advance();
      advance();
      return true;
    }
    return false;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !ident_start(src[pos])) fail("expected identifier");
    std::string out;
    while (pos < src.size() && ident_char(src[pos])) {
      out += src[pos];
      advance();
    }
    return out;
  }
};

struct TermParser {
  Lexer lex;
  explicit TermParser(const std::string& s) : lex(s) {}

  TermPtr parse() {
    TermPtr t = term();
    if (!lex.eof()) lex.fail("unexpected trailing input");
    return t;
  }

  TermPtr term() {
    if (lex.peek() == '\\') {
      lex.advance();
      std::vector<std::string> binders;
      while (lex.peek() != '.') binders.push_back(lex.ident());
      if (binders.empty()) lex.fail("lambda needs at least one binder");
      lex.advance();  // '.'
      TermPtr body = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = close_lambda(body, *it);
      return body;
    }
    return application();
  }

  TermPtr application() {
    TermPtr t = atom_required();
    while (true) {
      auto a = atom_optional();
      if (!a) return t;
      t = make_apply(t, *a);
    }
  }

  TermPtr atom_required() {
    auto a = atom_optional();
    if (!a) lex.fail("expected a term");
    return *a;
  }

  std::optional<TermPtr> atom_optional() {
    char c = lex.peek();
    if (c == '\0' || c == ')' || c == '.') return std::nullopt;
    if (c == '\\') return term();  // a trailing lambda extends to the right
    if (c == '(') {
      lex.advance();
      TermPtr t = term();
      if (lex.peek() != ')') lex.fail("expected ')'");
      lex.advance();
      return t;
    }
    if (lex.try_bottom()) return bottom();
    if (Lexer::ident_start(c)) return make_free(lex.ident());
    lex.fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

TermPtr parse_term(const std::string& src) { return TermParser(src).parse(); }

// ======================= printing =======================

namespace {

void print_rec(const TermPtr& t, std::vector<std::string>& scope, std::vector<std::string>& used,
               std::string& out, bool fun_pos, bool arg_pos) {
  switch (t->kind) {
    case Term::Kind::Free: out += t->name; return;
    case Term::Kind::Bound: {
      int i = static_cast<int>(scope.size()) - 1 - t->index;
      out += (i >= 0) ? scope[i] : "?" + std::to_string(t->index);
      return;
    }
    case Term::Kind::Bottom: out += "_|_"; return;
    case Term::Kind::Lambda: {
      bool paren = fun_pos || arg_pos;
      if (paren) out += '(';
      out += '\\';
      // Collapse consecutive binders.
      TermPtr cur = t;
      size_t opened = 0;
      while (cur->kind == Term::Kind::Lambda) {
        std::string x = fresh_name(used);
        used.push_back(x);
        scope.push_back(x);
        ++opened;
        out += x;
        cur = cur->body;
        if (cur->kind == Term::Kind::Lambda) out += ' ';
      }
      out += ". ";
      print_rec(cur, scope, used, out, false, false);
      scope.resize(scope.size() - opened);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::Apply: {
      bool paren = arg_pos;
      if (paren) out += '(';
      print_rec(t->fun, scope, used, out, true, false);
      out += ' ';
      print_rec(t->arg, scope, used, out, false, true);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  std::vector<std::string> scope;
  std::vector<std::string> used = free_names(t);
  print_rec(t, scope, used, out, false, false);
  return out;
}

}  // namespace retrakt
