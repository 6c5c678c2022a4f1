#ifndef RETRAKT_RETRACT_HPP
#define RETRAKT_RETRACT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "retrakt/term.hpp"
#include "retrakt/types.hpp"
#include "retrakt/typing.hpp"

namespace retrakt {

// ======================= left and right types =======================

/// One node of a left-type derivation: either the base clause
/// (sigma <= nu after cutting n parameters) or the step clause through
/// member `via_member` of sigma_j read as rho_1 -> ... -> rho_m -> nu.
struct ThetaNode {
  StrictPtr type;
  int cut = 0;
  bool base = true;
  int j = 0;
  StrictPtr via_member;
  int m = 0;
  int chosen = 0;
  std::vector<ThetaNode> subs;  // one per strict member of rho_chosen
};

struct LeftTypeResult {
  enum class Status { Yes, NoWithinBudget };
  Status status;
  std::optional<ThetaNode> derivation;
};

/// Membership in the set of left types. Inhabitation subqueries are bounded,
/// so a negative answer is only "not found within budget".
LeftTypeResult is_left_type(const StrictPtr& t, SearchSession& session);
LeftTypeResult is_left_type(const StrictPtr& t, const SearchBudget& budget = {});

struct RightTypeResult {
  enum class Status { Yes, NoWithinBudget };
  Status status;
};

/// tau -> mu is a right type when tau <= rho_1 -> ... -> rho_m -> mu and
/// every tau -> rho_i is inhabited; candidate decompositions are read off
/// the canonical arrow spines of the members of tau.
RightTypeResult is_right_type(const StrictPtr& t, SearchSession& session);
RightTypeResult is_right_type(const StrictPtr& t, const SearchBudget& budget = {});

// ======================= retraction =======================

struct Decomposition {
  std::vector<Intersection> params;  // rho_1 ... rho_m
  StrictPtr core;                    // mu
  int arity = 0;                     // m
};

struct RetractionWitness {
  TermPtr left;   // L : nu -> mu
  TermPtr right;  // R : mu -> nu
  Judgment left_typing;
  Judgment right_typing;
  std::vector<TermPtr> composition_trace;  // compose(left, right) down to the identity
  std::optional<Decomposition> decomposition;
  // For standard-system witnesses: the strict components (nu_i, mu_i) of the
  // uniform decomposition, in member order.
  std::vector<std::pair<StrictPtr, StrictPtr>> std_parts;
};

/// Checks both typings and the composition; throws std::logic_error when a
/// supposed witness fails its own invariants.
RetractionWitness make_witness(System system, const StdPtr& mu, const StdPtr& nu, const TermPtr& left,
                               const TermPtr& right, const ReductionBudget& budget = {});

struct RetractResult {
  enum class Status { Witness, NoWithinBudget, ProvablyNo };
  Status status;
  std::optional<RetractionWitness> witness;
};

/// Decides mu <| nu for strict types: nu must decompose (up to equivalence)
/// as rho_1 -> ... -> rho_m -> mu with every nu -> rho_i inhabited; on
/// success the witness pair is L = \z. z (M1 z)...(Mm z) with a simple right
/// inverse R = \t x1...xm. t. ProvablyNo when no decomposition exists at any
/// arity; NoWithinBudget when one exists but inhabitation is inconclusive.
RetractResult retract_strict(const StrictPtr& mu, const StrictPtr& nu, SearchSession& session);
RetractResult retract_strict(const StrictPtr& mu, const StrictPtr& nu, const SearchBudget& budget = {});

/// Chains witnesses of mu <| mu' and mu' <| nu into one of mu <| nu,
/// re-checking typings and re-verifying the composition. Throws
/// std::invalid_argument when the middle types do not match.
RetractionWitness retract_transitive(const RetractionWitness& w1, const RetractionWitness& w2,
                                     const ReductionBudget& budget = {});

/// Simple retraction for standard types: sigma <|_s tau demands a uniform
/// arity m with tau ~ /\ (rho_1^i -> ... -> rho_m^i -> sigma_i),
/// sigma ~ /\ sigma_i, and every tau -> /\_i rho_k^i inhabited.
RetractResult simple_retract_std(const StdPtr& sigma, const StdPtr& tau, SearchSession& session);
RetractResult simple_retract_std(const StdPtr& sigma, const StdPtr& tau, const SearchBudget& budget = {});

/// Splits a standard simple-retraction witness into the family of strict
/// retractions mu_i <| nu_i it implies, each independently verified. Throws
/// std::invalid_argument when the witness did not come from
/// simple_retract_std, std::runtime_error when a component cannot be
/// re-established within budget.
std::vector<RetractionWitness> decompose_simple_retraction(const RetractionWitness& w,
                                                           SearchSession& session);

// ======================= external auditing =======================

struct VerifyReport {
  CheckResult left_typing;
  CheckResult right_typing;
  EqualityResult composition;
  bool all_hold() const;
};

/// Independently checks the three clauses of the retraction definition for
/// a claimed witness pair; failures are report content, not errors.
VerifyReport verify_retraction(const TermPtr& left, const TermPtr& right, const StdPtr& mu,
                               const StdPtr& nu, System system, const ReductionBudget& budget = {});

}  // namespace retrakt

#endif
