#ifndef RETRAKT_TYPING_HPP
#define RETRAKT_TYPING_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "retrakt/term.hpp"
#include "retrakt/types.hpp"

namespace retrakt {

// ======================= judgments =======================

enum class System { Essential, Standard };

/// A typing claim. Types are given in the standard grammar; essential-system
/// judgments convert them to strict intersections internally (a goal that is
/// an intersection means every member must be derivable).
struct Judgment {
  System system = System::Essential;
  std::vector<std::pair<std::string, StdPtr>> env;
  TermPtr term;
  StdPtr type;
};

enum class CheckResult { Derivable, NotDerivable, Unknown };

using StrictEnv = std::vector<std::pair<std::string, Intersection>>;

/// Syntax-directed check on the beta-bottom normal form of the term;
/// Unknown only when normalization exceeds the budget.
CheckResult check(const Judgment& j, const ReductionBudget& budget = {});

/// Essential system, strict types.
CheckResult check_strict(const StrictEnv& env, const TermPtr& term, const Intersection& goal,
                         const ReductionBudget& budget = {});

/// Standard system; abstraction inversion splits the goal into an
/// intersection of arrows and checks every component.
CheckResult check_std(const StrictEnv& env, const TermPtr& term, const Intersection& goal,
                      const ReductionBudget& budget = {});

// ======================= inhabitation =======================

struct SearchBudget {
  int max_depth = 6;
  long max_candidates = 10000;
};

/// Shared state for one query session: memoized inhabitation results and the
/// left-type membership cache. Not meant to be shared across threads.
struct SearchSession {
  SearchBudget budget;
  ReductionBudget reduction;
  std::map<std::string, std::optional<TermPtr>> inhabit_cache;
  std::map<std::string, int> theta_cache;  // 0 in progress, 1 yes, 2 no
  long candidates_used = 0;
};

struct InhabitResult {
  enum class Status { Inhabitant, NoneFound, Empty };
  Status status;
  TermPtr term;  // set for Inhabitant
};

/// Bounded search for a closed term of the given type. NoneFound is a
/// semi-decision outcome, never a refutation; Empty is reserved for targets
/// refutable without search and is currently never produced.
InhabitResult inhabit(const StrictPtr& target, const SearchBudget& budget = {});
InhabitResult inhabit(const StrictPtr& target, SearchSession& session);

struct InhabitJointResult {
  enum class Status { Inhabitants, NoneFound };
  Status status;
  std::vector<TermPtr> terms;  // one per target when found
};

/// For each target rho_k, finds a single term inhabiting domain -> mu for
/// every strict member mu of rho_k.
InhabitJointResult inhabit_joint(const Intersection& domain, const std::vector<Intersection>& targets,
                                 const SearchBudget& budget = {});
InhabitJointResult inhabit_joint(const Intersection& domain, const std::vector<Intersection>& targets,
                                 SearchSession& session);

/// One closed term inhabiting all the given strict types at once; the
/// primitive behind inhabit and inhabit_joint.
std::optional<TermPtr> joint_inhabit(const std::vector<StrictPtr>& goals, SearchSession& session);

}  // namespace retrakt

#endif
