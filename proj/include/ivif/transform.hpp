#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ivif/lp.hpp"
#include "ivif/model.hpp"

namespace ivif {

/// Names the scalar unknowns behind a problem's variables: one unknown per
/// crisp variable, nine per fuzzy variable (mean plus the eight spreads,
/// suffixed ".a", ".mu_l", ... in tuple order).
struct ComponentSpace {
  std::vector<std::string> names;  // unknown index -> printable name
  std::vector<int> first;          // variable index -> its first unknown
  std::vector<int> width;          // 1 for crisp, 9 for fuzzy
  int total = 0;

  /// Unknown index of component `comp` (0 = mean/value, 1..8 = spreads in
  /// tuple order) of variable `var`.
  int unknown(int var, int comp) const { return first[var] + comp; }
};

ComponentSpace component_space(const Problem& p);

/// Any number of the problem (objective first, then constraints); the
/// carrier of the problem-wide shape handles. Crisp zero for an empty
/// problem.
const Ivifn& reference_number(const Problem& p);

/// Affine function of the component unknowns.
struct AffineExpr {
  double constant = 0.0;
  std::map<int, double> terms;  // unknown index -> coefficient, no dupes

  void add_term(int unknown, double coeff);
  /// this += scale * other
  void add_scaled(const AffineExpr& other, double scale);
  double eval(const std::vector<double>& point) const;
};

/// An expression whose value is a fuzzy number: mean plus eight spreads as
/// affine functions of the unknowns, in tuple order.
using IvifnExpr = std::array<AffineExpr, 9>;

/// The seven ranking components of a fuzzy-valued expression, canonical
/// order (S, A, M, C, D, G, H); evaluating them at a point equals lex_key of
/// the assembled number at that point.
struct LexAffine {
  std::array<AffineExpr, 7> comp;
};

/// One leaf of the sign/class/pattern enumeration. Vectors run parallel to
/// the problem's variables and constraints; entries for positions that do
/// not branch hold their fixed value (+1 / class 1) or -1 for eq patterns.
struct Branch {
  long id = 0;
  std::vector<int> sign;     // crisp vars: +1 (>= 0) or -1 (<= 0)
  std::vector<int> cls;      // fuzzy vars: sign class 1..10
  std::vector<int> pattern;  // leq/geq constraints: 0..7; eq: -1
};

/// A crisp row plus a short provenance label for debug dumps and tests.
struct TaggedRow {
  LpRow row;
  std::string tag;
};

/// The stage-t crisp program of one branch: maximize the t-th key component
/// subject to the branch rows plus the carried floors on earlier stages.
struct StagedLp {
  int stage = 1;  // 1..7, in key-permutation order
  AffineExpr objective;
  std::vector<TaggedRow> rows;     // branch rows (stage-independent)
  std::vector<TaggedRow> carried;  // key_s >= opt_s - lex_slack, s < stage
};

/// Mean and spreads of coeff (.) var as affine expressions. The branch must
/// pin var's sign (crisp) or sign class (fuzzy) so every endpoint selection
/// in the product is decided; a selection that would depend on variable
/// magnitudes throws UnresolvedSelection.
IvifnExpr expand_term(const Problem& p, const ComponentSpace& space,
                      const Branch& b, const Ivifn& coeff, int var);

/// Sum of expand_term over all variables with the given coefficients.
IvifnExpr expand_combination(const Problem& p, const ComponentSpace& space,
                             const Branch& b, const std::vector<Ivifn>& coeffs);

/// The seven ranking components of a fuzzy-valued expression; the shape
/// inverse integrals are taken from `shape_ref`.
LexAffine key_of(const IvifnExpr& e, const Ivifn& shape_ref);

/// Componentwise equality of Sum coeffs (.) vars and the constraint's rhs:
/// nine rows (mean plus eight spreads).
std::vector<TaggedRow> equality_rows(const Problem& p,
                                     const ComponentSpace& space,
                                     const Branch& b, int constraint);

/// Rows encoding the lexicographic relation between lhs and rhs of an
/// inequality constraint under the branch's chain pattern. In resolved mode:
/// the first p key differences are zero and, when p < 7, the next exceeds
/// the strictness margin k. In bigM mode: the full 14 two-sided rows with
/// the binary chain fixed to the pattern. Key differences follow the
/// problem's key permutation.
std::vector<TaggedRow> lex_rows(const Problem& p, const ComponentSpace& space,
                                const Branch& b, int constraint);

/// The seven objective key components (canonical order) under the branch.
LexAffine objective_key(const Problem& p, const ComponentSpace& space,
                        const Branch& b);

/// Domain rows of one variable: sign row for crisp; spread ordering,
/// spread non-negativity, and class or non-negativity rows for fuzzy.
std::vector<TaggedRow> variable_rows(const Problem& p,
                                     const ComponentSpace& space,
                                     const Branch& b, int var);

/// All stage-independent rows of a branch: per-variable domain rows, the
/// nine equality rows per eq constraint, and the lex rows per inequality.
std::vector<TaggedRow> branch_rows(const Problem& p,
                                   const ComponentSpace& space,
                                   const Branch& b);

/// Assembles the stage-t program. `carried_optima` holds the global optima
/// of stages 1..t-1; the branch receives floors key_s >= opt_s - lex_slack
/// on its own key expressions.
StagedLp build_branch_lp(const Problem& p, const ComponentSpace& space,
                         const Branch& b, int stage,
                         const std::vector<double>& carried_optima);

/// Lowers a staged program onto the LP solver's dense instance format.
LpInstance to_instance(const StagedLp& staged, const ComponentSpace& space);

/// Debug listing, one row per line: "coeff*name ... {<=,=,>=} rhs".
std::string dump_rows(const std::vector<TaggedRow>& rows,
                      const ComponentSpace& space);

}  // namespace ivif
