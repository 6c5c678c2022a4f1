#ifndef RETRAKT_TERM_HPP
#define RETRAKT_TERM_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace retrakt {

// ======================= lambda-bottom terms =======================
//
// Terms are immutable and shared. Binders are stored in a locally
// nameless form: bound variables are de Bruijn indices, free variables
// are names. Syntactic equality of well-formed (locally closed) terms
// is exactly alpha-equivalence, and substitution of a locally closed
// term for a free name can never capture.

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Free, Bound, Bottom, Lambda, Apply };

  Kind kind;
  std::string name;  // Free
  int index = 0;     // Bound
  TermPtr body;      // Lambda
  TermPtr fun, arg;  // Apply
};

TermPtr make_free(std::string name);
TermPtr make_bound(int index);
TermPtr bottom();
TermPtr make_lambda(TermPtr body);
TermPtr make_apply(TermPtr fun, TermPtr arg);
TermPtr make_apply_chain(TermPtr head, const std::vector<TermPtr>& args);

bool term_eq(const TermPtr& a, const TermPtr& b);
int term_size(const TermPtr& t);

/// Free names occurring in t, each listed once, in first-occurrence order.
std::vector<std::string> free_names(const TermPtr& t);

/// Replace the dangling index 0 of a lambda body by a locally closed term.
TermPtr instantiate(const TermPtr& body, const TermPtr& arg);

/// Turn free occurrences of `name` back into a binder index; the result is
/// meant to be wrapped in one more lambda by the caller.
TermPtr abstract_name(const TermPtr& t, const std::string& name);

/// close_lambda(t, x) == \x. t
TermPtr close_lambda(const TermPtr& t, const std::string& name);

/// Capture-avoiding substitution of all free occurrences of `name`.
/// `replacement` must be locally closed.
TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& replacement);

// ----------------------- reduction -----------------------

struct ReductionBudget {
  long max_steps = 10000;
};

/// One leftmost-outermost step among: beta, bottom-application, bottom-abstraction.
/// Empty when the term is in beta-bottom normal form.
std::optional<TermPtr> reduce_step(const TermPtr& t);

struct NormalizeResult {
  std::optional<TermPtr> normal_form;  // empty iff budget ran out
  long steps = 0;
};

NormalizeResult normalize(const TermPtr& t, const ReductionBudget& budget);

/// Full leftmost-outermost reduction trace: first element is t, last is the
/// normal form. Empty optional when the budget runs out.
std::optional<std::vector<TermPtr>> reduction_trace(const TermPtr& t, const ReductionBudget& budget);

enum class EqualityResult { Equal, Distinct, BudgetExceeded };

/// Decides beta-bottom convertibility by budgeted normalization of both sides.
EqualityResult beta_bot_equal(const TermPtr& a, const TermPtr& b, const ReductionBudget& budget);

// ----------------------- head normal forms -----------------------

/// A term of the shape \x1...xn. head M1...Mm with head a variable.
/// Binders are opened with concrete names; args are locally closed and may
/// mention the binder names as free variables.
struct Hnf {
  std::vector<std::string> binders;
  std::string head;
  std::vector<TermPtr> args;
};

TermPtr reassemble(const Hnf& h);

struct HnfResult {
  enum class Status { Ok, Unsolvable, BudgetExceeded };
  Status status;
  std::optional<Hnf> hnf;
  long steps = 0;
};

/// Head-reduce until the head is a variable; Unsolvable when the head
/// collapses to bottom.
HnfResult head_normal_form(const TermPtr& t, const ReductionBudget& budget);

// ----------------------- combinators -----------------------

TermPtr identity();                              // \x. x
TermPtr combinator_b();                          // \x y z. x (y z)
TermPtr compose(const TermPtr& m, const TermPtr& n);  // B m n, unreduced
TermPtr selector(int i, int m);                  // \y1...ym. yi, 1 <= i <= m
TermPtr permutator(int m);                       // \z1...z_{m+1}. z_{m+1} z1...zm; P(0) = bottom
TermPtr simple_right_inverse_term(int m);        // \t x1...xm. t

// ----------------------- concrete syntax -----------------------
//
// term := '\' ident+ '.' term | app
// app  := atom+                 (application associates to the left)
// atom := ident | '_|_' | '(' term ')'

struct ParseError {
  std::string message;
  int line = 1;
  int column = 1;
};

/// Throws ParseError on malformed input.
TermPtr parse_term(const std::string& src);

std::string print_term(const TermPtr& t);

/// Deterministic fresh-name supply: yields names not in `used`.
std::string fresh_name(const std::vector<std::string>& used, const std::string& stem = "");

}  // namespace retrakt

#endif
