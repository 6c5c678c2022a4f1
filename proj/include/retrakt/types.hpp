#ifndef RETRAKT_TYPES_HPP
#define RETRAKT_TYPES_HPP

#include <memory>
#include <string>
#include <vector>

namespace retrakt {

// ======================= strict intersection types =======================
//
// mu := 'a | w | sigma -> mu        (strict types)
// sigma := mu | sigma & sigma       (intersections of strict types)
//
// Intersections are kept canonical: members are themselves canonical,
// sorted, deduplicated, with w dropped from wider intersections and
// subsumed members removed. Arrows with a codomain equivalent to w
// collapse to w. On canonical forms, syntactic equality coincides with
// the equivalence induced by the subtype preorder, which the
// decomposition searches rely on.

struct StrictType;
using StrictPtr = std::shared_ptr<const StrictType>;

struct Intersection {
  std::vector<StrictPtr> members;  // canonical, nonempty
};

struct StrictType {
  enum class Kind { Var, Omega, Arrow };
  Kind kind;
  std::string name;     // Var
  Intersection domain;  // Arrow
  StrictPtr codomain;   // Arrow, always strict
};

StrictPtr type_var(std::string name);
StrictPtr omega();
/// Collapses to omega when the codomain is omega.
StrictPtr make_arrow(Intersection domain, StrictPtr codomain);
/// Canonicalizes: assumes the given members are canonical strict types.
Intersection make_inter(std::vector<StrictPtr> members);
Intersection single(StrictPtr t);

int cmp(const StrictPtr& a, const StrictPtr& b);
int cmp(const Intersection& a, const Intersection& b);
bool type_eq(const StrictPtr& a, const StrictPtr& b);
bool inter_eq(const Intersection& a, const Intersection& b);
bool is_omega(const StrictPtr& t);

/// Subtype preorder on strict types / intersections (no distributivity).
bool strict_le(const StrictPtr& a, const StrictPtr& b);
bool subtype_strict(const Intersection& a, const Intersection& b);
bool equiv_strict(const Intersection& a, const Intersection& b);
bool equiv_strict(const StrictPtr& a, const StrictPtr& b);

/// Number of top-level arrows of a canonical strict type.
int top_arrows(const StrictPtr& t);

/// Rank, computed on the canonical representation.
int rank(const StrictPtr& t);
int rank(const Intersection& t);

/// Splits t as rho_1 -> ... -> rho_m -> core; m must not exceed top_arrows(t).
struct SpineSplit {
  std::vector<Intersection> params;
  StrictPtr core;
};
SpineSplit split_spine(const StrictPtr& t, int m);

/// rho_1 -> ... -> rho_m -> core
StrictPtr join_spine(const std::vector<Intersection>& params, const StrictPtr& core);

// ======================= standard intersection types =======================
//
// sigma := 'a | w | sigma -> sigma | sigma & sigma

struct StdType;
using StdPtr = std::shared_ptr<const StdType>;

struct StdType {
  enum class Kind { Var, Omega, Arrow, Meet };
  Kind kind;
  std::string name;      // Var
  StdPtr left, right;    // Arrow: left -> right; Meet: left & right
};

StdPtr std_var(std::string name);
StdPtr std_omega();
StdPtr std_arrow(StdPtr domain, StdPtr codomain);
StdPtr std_meet(StdPtr left, StdPtr right);

/// Equivalent intersection of strict types, obtained by distributing
/// meets out of codomains.
Intersection to_strict(const StdPtr& s);

/// Strict types embed into the standard grammar unchanged.
StdPtr to_std(const StrictPtr& t);
StdPtr to_std(const Intersection& t);

/// Subtype preorder with the distributivity rule; arrow-versus-arrow goes
/// through a subset search. Throws std::invalid_argument when an
/// intersection wider than kStdWidthCap shows up on the left of an arrow
/// comparison.
inline constexpr int kStdWidthCap = 8;
bool subtype_std(const StdPtr& a, const StdPtr& b);
bool subtype_std_inter(const Intersection& a, const Intersection& b);
bool equiv_std(const StdPtr& a, const StdPtr& b);
bool equiv_std_inter(const Intersection& a, const Intersection& b);

// ======================= concrete syntax =======================
//
// type  := inter ('->' type)?      (-> associates to the right)
// inter := atom ('&' atom)*        (& binds tighter than ->)
// atom  := 'ident | 'w' | '(' type ')'

StdPtr parse_type(const std::string& src);

/// Parses and converts; throws std::invalid_argument when the type is not
/// equivalent to a single strict type.
StrictPtr parse_strict_type(const std::string& src);
Intersection parse_intersection(const std::string& src);

std::string print_type(const StrictPtr& t);
std::string print_type(const Intersection& t);
std::string print_type(const StdPtr& t);

}  // namespace retrakt

#endif
