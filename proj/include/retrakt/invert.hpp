#ifndef RETRAKT_INVERT_HPP
#define RETRAKT_INVERT_HPP

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "retrakt/term.hpp"

namespace retrakt {

// ======================= recognizing left invertible terms =======================
//
// Xi is the set of hnfs built from \t x1...xn. t by repeatedly wrapping a
// chosen component: if \t x1...xn. Mi is in Xi, so is
// \t x1...xn. xj M1...Mi...Mm. A term has a left inverse exactly when its
// hnf lies in Xi; the derivation is recorded as a path of triples
// (head position, component count, chosen component).

struct Triple {
  int head_pos;  // 1-based abstraction position of the head variable
  int arity;     // number of components
  int chosen;    // component used by the derivation, 0 at the base
  bool operator==(const Triple&) const = default;
};

using Path = std::vector<Triple>;

struct XiDerivation {
  Hnf term;
  Path path;  // path of this node; the head triple belongs to it
  std::shared_ptr<const XiDerivation> sub;  // empty at the base
};

/// Deterministic search: components tried in ascending index order, first
/// success kept. Components are head-reduced on demand (bounded internally),
/// so hnfs whose components still carry redexes are handled.
std::optional<XiDerivation> xi_membership(const Hnf& h);

const Path& path_of(const XiDerivation& d);

/// Maximum arity among path triples with the given head position; 0 when
/// the position does not occur.
int sharp(int head_pos, const Path& p);

/// The permutator-substitution step: given a derivation of
/// M = \t x1...xn. M' and arities m1...mn with mj >= sharp(j+1, path),
/// returns the derivation of \t. M'{P(m1)/x1}...{P(mn)/xn}. Path length is
/// preserved. Throws std::invalid_argument on a precondition violation.
XiDerivation permute_substitute(const XiDerivation& d, const std::vector<int>& arities);

struct LeftInverseResult {
  enum class Status { Found, NotInvertible, BudgetExceeded };
  Status status;
  TermPtr term;  // set when Found
};

/// Constructive left inverse: when the hnf of t lies in Xi, builds L with
/// compose(L, t) convertible to the identity. Selectors resolve positions
/// whose head occurs once; permutators disambiguate repeated positions.
LeftInverseResult left_inverse(const TermPtr& t, const ReductionBudget& budget);

struct RightInverseResult {
  enum class Status { Found, NotInvertible, BudgetExceeded };
  Status status;
  int arity = 0;  // set when Found; the canonical right inverse is \t x1...xm. t
};

/// A term has a right inverse exactly when its hnf is \z. z M1...Mm.
RightInverseResult right_inverse_arity(const TermPtr& t, const ReductionBudget& budget);

/// True iff the beta-bottom normal form of t is \t x1...xn. t. A term that
/// does not normalize within the budget reports false.
bool is_simple_right_inverse(const TermPtr& t, const ReductionBudget& budget = {});

// ======================= random Xi terms for property tests =======================

struct XiGenParams {
  int max_binders = 4;     // n per level
  int max_components = 3;  // m per level
  double continue_prob = 0.5;
  int max_depth = 6;
};

/// Samples a term of Xi top-down from the inductive definition; the result
/// is guaranteed left invertible. Deterministic for a given generator state.
TermPtr generate_xi_term(std::mt19937_64& rng, const XiGenParams& params = {});

}  // namespace retrakt

#endif
