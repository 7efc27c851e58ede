#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "ivif/errors.hpp"

namespace ivif {

/// One reference curve for a fuzzy-number side. `value` maps a normalized
/// distance t >= 0 into [0,1], with value(0) = 1 and nonincreasing;
/// `inverse` maps a height z in [0,1] back to the distance where the curve
/// crosses it, so value(inverse(z)) = z on the curve's strict range.
struct ShapeSpec {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> inverse;
  double inverse_integral = 0.0;  // integral of `inverse` over [0,1]
};

using ShapeHandle = std::shared_ptr<const ShapeSpec>;

/// Shared handle for the triangular shape value(t) = max(0, 1-t),
/// inverse(z) = 1-z, inverse integral 1/2.
ShapeHandle linear_shape();

/// Builds a custom shape. When `inverse_integral` is negative (the default)
/// it is computed from `inverse` by adaptive quadrature. The integral must
/// come out strictly positive — ranking loses antisymmetry otherwise — so
/// zero or negative integrals throw ValidationError.
ShapeHandle make_shape(std::string name, std::function<double(double)> value,
                       std::function<double(double)> inverse,
                       double inverse_integral = -1.0);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Mean-and-spreads encoding of an interval-valued intuitionistic fuzzy
/// number. The membership degree is bracketed by a lower and an upper curve,
/// and so is the nonmembership degree; all four curves peak (resp. bottom
/// out) at the same mean `a` and contribute one (left, right) spread pair.
/// The four supports nest, innermost to outermost:
///   level 0  membership lower      (mu_l,  mu_r)
///   level 1  membership upper      (mup_l, mup_r)
///   level 2  nonmembership upper   (nup_l, nup_r)
///   level 3  nonmembership lower   (nu_l,  nu_r)
/// The unprimed shape pair (L, R) drives the two lower curves, the primed
/// pair (Lp, Rp) the two upper curves.
struct Ivifn {
  double a = 0.0;
  double mu_l = 0.0, mu_r = 0.0;
  double mup_l = 0.0, mup_r = 0.0;
  double nu_l = 0.0, nu_r = 0.0;
  double nup_l = 0.0, nup_r = 0.0;
  ShapeHandle L, R, Lp, Rp;

  Ivifn();
  /// Component order matches the printed 9-tuple:
  /// (a; mu_l,mu_r,mup_l,mup_r; nu_l,nu_r,nup_l,nup_r), linear shapes.
  Ivifn(double mean, double ml, double mr, double mpl, double mpr, double nl,
        double nr, double npl, double npr);

  double left(int level) const;
  double right(int level) const;
  void set_level(int level, double l, double r);
};

/// Crisp constant c as a degenerate fuzzy number (all spreads zero).
Ivifn crisp(double c);

/// Throws SpreadNegative / NestingViolated (naming the offending component
/// pair) when a spread is below -tol or two supports fail to nest by more
/// than tol.
void validate(const Ivifn& x, double tol = 1e-9);

/// Componentwise agreement of mean and all eight spreads within tol.
bool approx_equal(const Ivifn& x, const Ivifn& y, double tol = 1e-9);

/// True when even the outermost support sits at or above (below) zero.
bool is_nonneg(const Ivifn& x);
bool is_nonpos(const Ivifn& x);

/// The four level supports [a - left, a + right], innermost first.
std::array<Interval, 4> supports(const Ivifn& x);

/// Curve evaluation, mainly for plotting. Membership curves are 0 outside
/// their support; nonmembership curves are 1 outside theirs; all four meet
/// the mean at their extreme value (1 for membership, 0 for nonmembership).
double mu_lower(const Ivifn& x, double t);
double mu_upper(const Ivifn& x, double t);
double nu_lower(const Ivifn& x, double t);
double nu_upper(const Ivifn& x, double t);

/// Horizontal cuts at membership height alpha and nonmembership height beta.
struct Cuts {
  Interval mu_lower, mu_upper;  // at height alpha
  Interval nu_lower, nu_upper;  // at height beta
};

/// Requires alpha, beta in (0,1] with alpha + beta <= 1; throws OutOfRange
/// otherwise. Membership cuts evaluate the shape inverses at alpha,
/// nonmembership cuts at 1 - beta.
Cuts cuts(const Ivifn& x, double alpha, double beta);

/// Throws ShapeMismatch unless x and y carry compatible shapes slot by slot
/// (same handle or same name).
void require_same_shapes(const Ivifn& x, const Ivifn& y);

/// Arithmetic. Operands must carry compatible shapes slot by slot (same
/// handle or same name); the result inherits them. All operations work per
/// nesting level on the (left, right) spread pairs.
Ivifn add(const Ivifn& x, const Ivifn& y);
Ivifn sub(const Ivifn& x, const Ivifn& y);
Ivifn scalar_mul(double lambda, const Ivifn& x);

/// Product. At each nesting level the result support is the exact interval
/// hull of the four endpoint products, so the spreads are shape-independent.
Ivifn mul(const Ivifn& x, const Ivifn& y);

/// The nine support abscissas in ascending order for a valid number: left
/// ends from outermost in, the mean, then right ends from innermost out.
std::array<double, 9> characteristic_points(const Ivifn& x);

/// Position of the number relative to zero, 1..10: the 1-based index of the
/// first characteristic point that is >= 0, or 10 when all nine are
/// negative. Class 1 is exactly the non-negative numbers; class 10 the
/// strictly negative ones. Points exactly at zero resolve to the
/// lower-numbered class.
int sign_class(const Ivifn& x);

}  // namespace ivif
