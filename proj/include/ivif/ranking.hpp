#pragma once

#include <array>
#include <string>
#include <utility>

#include "ivif/ivifn.hpp"

namespace ivif {

/// The seven ranking values of one number, canonical order: score,
/// accuracy, mean, then the four left support ends from innermost
/// (membership lower) to outermost (nonmembership lower).
struct LexKey {
  double s = 0.0, acc = 0.0, m = 0.0, c = 0.0, d = 0.0, g = 0.0, h = 0.0;

  std::array<double, 7> values() const { return {s, acc, m, c, d, g, h}; }
};

/// Order in which the seven key components are compared; entries index the
/// canonical order above.
using KeyPermutation = std::array<int, 7>;

/// The identity permutation: compare score first, then accuracy, and so on.
KeyPermutation default_permutation();

/// Parses a comparison order spelled with the component letters, e.g.
/// "SAMCDGH" (the default) or "MSACDGH". Each of S, A, M, C, D, G, H must
/// appear exactly once; throws ValidationError otherwise.
KeyPermutation parse_permutation(const std::string& spec);

/// Signed spread asymmetry averaged across the four curves: positive when
/// the number leans right of its mean. Fully symmetric numbers score 0; the
/// mean itself cancels out.
double score(const Ivifn& x);

/// Twice the mean plus the asymmetry aggregate with the nonmembership terms
/// flipped; the first tie-breaker after score.
double accuracy(const Ivifn& x);

/// Score and accuracy of a triangular number given directly by its nine
/// support abscissas in ascending order (outermost left end, inner left
/// ends, mean, inner right ends, outermost right end). Closed form for
/// linear shapes; throws OrderingViolated when the abscissas are not
/// sorted. Matches score/accuracy of the equivalent mean-and-spreads form.
std::pair<double, double> tivifn_indices(const std::array<double, 9>& t);

LexKey lex_key(const Ivifn& x);

enum class Ordering { less, equal, greater };

/// Lexicographic comparison of two keys under `perm`; components tie at
/// absolute tolerance `tol`.
Ordering compare_keys(const LexKey& a, const LexKey& b,
                      const KeyPermutation& perm = default_permutation(),
                      double tol = 1e-9);

/// Total order on numbers with compatible shapes (throws ShapeMismatch
/// otherwise): lexicographic comparison of the two keys.
Ordering compare(const Ivifn& x, const Ivifn& y,
                 const KeyPermutation& perm = default_permutation(),
                 double tol = 1e-9);

/// Componentwise equality of mean and all eight spreads at 1e-9.
bool ivifn_equal(const Ivifn& x, const Ivifn& y);

}  // namespace ivif
