#include "ivif/ivifn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace ivif {

namespace {

double simpson(double h, double fa, double fm, double fb) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double left = simpson(m - a, fa, flm, fm);
  const double right = simpson(b - m, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson over [0,1]; plenty for the smooth monotone inverses the
// shape constructor accepts.
double integrate01(const std::function<double(double)>& f, double tol) {
  const double fa = f(0.0), fm = f(0.5), fb = f(1.0);
  return adapt(f, 0.0, 1.0, fa, fm, fb, simpson(1.0, fa, fm, fb), tol, 48);
}

// Curve height of one side at distance `dist` from the mean. A zero spread
// collapses the side onto the mean, where the curve tops out at 1.
double side_value(const ShapeHandle& s, double dist, double spread) {
  return spread > 0.0 ? s->value(dist / spread) : 1.0;
}

}  // namespace

void require_same_shapes(const Ivifn& x, const Ivifn& y) {
  const ShapeHandle* xs[4] = {&x.L, &x.R, &x.Lp, &x.Rp};
  const ShapeHandle* ys[4] = {&y.L, &y.R, &y.Lp, &y.Rp};
  static const char* slot[4] = {"L", "R", "L'", "R'"};
  for (int i = 0; i < 4; ++i) {
    const ShapeHandle& sx = *xs[i];
    const ShapeHandle& sy = *ys[i];
    if (sx == sy) continue;
    if (sx && sy && sx->name == sy->name) continue;
    std::ostringstream msg;
    msg << "shape mismatch in slot " << slot[i] << ": '"
        << (sx ? sx->name : "<none>") << "' vs '" << (sy ? sy->name : "<none>")
        << "'";
    throw ShapeMismatch(msg.str());
  }
}

ShapeHandle linear_shape() {
  static const ShapeHandle h = std::make_shared<const ShapeSpec>(ShapeSpec{
      "linear", [](double t) { return std::max(0.0, 1.0 - t); },
      [](double z) { return 1.0 - z; }, 0.5});
  return h;
}

ShapeHandle make_shape(std::string name, std::function<double(double)> value,
                       std::function<double(double)> inverse,
                       double inverse_integral) {
  if (!value || !inverse)
    throw ValidationError("make_shape: value and inverse are both required");
  if (inverse_integral < 0.0) inverse_integral = integrate01(inverse, 1e-10);
  if (!(inverse_integral > 0.0))
    throw ValidationError("make_shape: inverse integral of '" + name +
                          "' must be strictly positive");
  return std::make_shared<const ShapeSpec>(ShapeSpec{
      std::move(name), std::move(value), std::move(inverse), inverse_integral});
}

Ivifn::Ivifn() : L(linear_shape()), R(L), Lp(L), Rp(L) {}

Ivifn::Ivifn(double mean, double ml, double mr, double mpl, double mpr,
             double nl, double nr, double npl, double npr)
    : a(mean),
      mu_l(ml),
      mu_r(mr),
      mup_l(mpl),
      mup_r(mpr),
      nu_l(nl),
      nu_r(nr),
      nup_l(npl),
      nup_r(npr),
      L(linear_shape()),
      R(L),
      Lp(L),
      Rp(L) {}

double Ivifn::left(int level) const {
  switch (level) {
    case 0: return mu_l;
    case 1: return mup_l;
    case 2: return nup_l;
    default: return nu_l;
  }
}

double Ivifn::right(int level) const {
  switch (level) {
    case 0: return mu_r;
    case 1: return mup_r;
    case 2: return nup_r;
    default: return nu_r;
  }
}

void Ivifn::set_level(int level, double l, double r) {
  switch (level) {
    case 0: mu_l = l; mu_r = r; break;
    case 1: mup_l = l; mup_r = r; break;
    case 2: nup_l = l; nup_r = r; break;
    default: nu_l = l; nu_r = r; break;
  }
}

Ivifn crisp(double c) {
  Ivifn x;
  x.a = c;
  return x;
}

void validate(const Ivifn& x, double tol) {
  struct Named {
    const char* name;
    double v;
  };
  const Named spreads[8] = {{"mu_l", x.mu_l},   {"mu_r", x.mu_r},
                            {"mup_l", x.mup_l}, {"mup_r", x.mup_r},
                            {"nu_l", x.nu_l},   {"nu_r", x.nu_r},
                            {"nup_l", x.nup_l}, {"nup_r", x.nup_r}};
  for (const Named& s : spreads) {
    if (s.v < -tol) {
      std::ostringstream msg;
      msg << "spread negative: " << s.name << " = " << s.v;
      throw SpreadNegative(msg.str());
    }
  }
  // The chain mu <= mup <= nup <= nu on each side implies every other
  // containment between levels.
  struct Pair {
    const char* outer;
    double ov;
    const char* inner;
    double iv;
  };
  const Pair chain[6] = {{"mup_l", x.mup_l, "mu_l", x.mu_l},
                         {"mup_r", x.mup_r, "mu_r", x.mu_r},
                         {"nup_l", x.nup_l, "mup_l", x.mup_l},
                         {"nup_r", x.nup_r, "mup_r", x.mup_r},
                         {"nu_l", x.nu_l, "nup_l", x.nup_l},
                         {"nu_r", x.nu_r, "nup_r", x.nup_r}};
  for (const Pair& p : chain) {
    if (p.ov < p.iv - tol) {
      std::ostringstream msg;
      msg << "nesting violated: " << p.outer << " = " << p.ov << " < "
          << p.inner << " = " << p.iv;
      throw NestingViolated(msg.str());
    }
  }
}

bool approx_equal(const Ivifn& x, const Ivifn& y, double tol) {
  const double d[9] = {x.a - y.a,         x.mu_l - y.mu_l,   x.mu_r - y.mu_r,
                       x.mup_l - y.mup_l, x.mup_r - y.mup_r, x.nu_l - y.nu_l,
                       x.nu_r - y.nu_r,   x.nup_l - y.nup_l, x.nup_r - y.nup_r};
  for (double v : d)
    if (std::abs(v) > tol) return false;
  return true;
}

bool is_nonneg(const Ivifn& x) { return x.a - x.nu_l >= 0.0; }
bool is_nonpos(const Ivifn& x) { return x.a + x.nu_r <= 0.0; }

std::array<Interval, 4> supports(const Ivifn& x) {
  std::array<Interval, 4> s;
  for (int lvl = 0; lvl < 4; ++lvl)
    s[lvl] = {x.a - x.left(lvl), x.a + x.right(lvl)};
  return s;
}

double mu_lower(const Ivifn& x, double t) {
  if (t < x.a - x.mu_l || t > x.a + x.mu_r) return 0.0;
  return t <= x.a ? side_value(x.L, x.a - t, x.mu_l)
                  : side_value(x.R, t - x.a, x.mu_r);
}

double mu_upper(const Ivifn& x, double t) {
  if (t < x.a - x.mup_l || t > x.a + x.mup_r) return 0.0;
  return t <= x.a ? side_value(x.Lp, x.a - t, x.mup_l)
                  : side_value(x.Rp, t - x.a, x.mup_r);
}

double nu_lower(const Ivifn& x, double t) {
  if (t < x.a - x.nu_l || t > x.a + x.nu_r) return 1.0;
  return t <= x.a ? 1.0 - side_value(x.L, x.a - t, x.nu_l)
                  : 1.0 - side_value(x.R, t - x.a, x.nu_r);
}

double nu_upper(const Ivifn& x, double t) {
  if (t < x.a - x.nup_l || t > x.a + x.nup_r) return 1.0;
  return t <= x.a ? 1.0 - side_value(x.Lp, x.a - t, x.nup_l)
                  : 1.0 - side_value(x.Rp, t - x.a, x.nup_r);
}

Cuts cuts(const Ivifn& x, double alpha, double beta) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw OutOfRange("cut level alpha must lie in (0,1]");
  if (!(beta > 0.0) || beta > 1.0)
    throw OutOfRange("cut level beta must lie in (0,1]");
  if (alpha + beta > 1.0 + 1e-12)
    throw OutOfRange("cut levels must satisfy alpha + beta <= 1");
  Cuts c;
  c.mu_lower = {x.a - x.mu_l * x.L->inverse(alpha),
                x.a + x.mu_r * x.R->inverse(alpha)};
  c.mu_upper = {x.a - x.mup_l * x.Lp->inverse(alpha),
                x.a + x.mup_r * x.Rp->inverse(alpha)};
  c.nu_lower = {x.a - x.nu_l * x.L->inverse(1.0 - beta),
                x.a + x.nu_r * x.R->inverse(1.0 - beta)};
  c.nu_upper = {x.a - x.nup_l * x.Lp->inverse(1.0 - beta),
                x.a + x.nup_r * x.Rp->inverse(1.0 - beta)};
  return c;
}

Ivifn add(const Ivifn& x, const Ivifn& y) {
  require_same_shapes(x, y);
  Ivifn z = x;
  z.a = x.a + y.a;
  for (int lvl = 0; lvl < 4; ++lvl)
    z.set_level(lvl, x.left(lvl) + y.left(lvl), x.right(lvl) + y.right(lvl));
  return z;
}

Ivifn sub(const Ivifn& x, const Ivifn& y) {
  require_same_shapes(x, y);
  Ivifn z = x;
  z.a = x.a - y.a;
  // Crosswise: what y could reach on its right, x - y can miss on its left.
  for (int lvl = 0; lvl < 4; ++lvl)
    z.set_level(lvl, x.left(lvl) + y.right(lvl), x.right(lvl) + y.left(lvl));
  return z;
}

Ivifn scalar_mul(double lambda, const Ivifn& x) {
  Ivifn z = x;
  z.a = lambda * x.a;
  for (int lvl = 0; lvl < 4; ++lvl) {
    const double l = x.left(lvl);
    const double r = x.right(lvl);
    // One expression for both signs: lambda >= 0 keeps (l, r) scaled,
    // lambda < 0 swaps the pair and flips the sign.
    z.set_level(lvl, std::max(lambda * l, -lambda * r),
                std::max(lambda * r, -lambda * l));
  }
  return z;
}

Ivifn mul(const Ivifn& x, const Ivifn& y) {
  require_same_shapes(x, y);
  Ivifn z = x;
  z.a = x.a * y.a;
  for (int lvl = 0; lvl < 4; ++lvl) {
    const double xlo = x.a - x.left(lvl), xhi = x.a + x.right(lvl);
    const double ylo = y.a - y.left(lvl), yhi = y.a + y.right(lvl);
    const double p[4] = {xlo * ylo, xlo * yhi, xhi * ylo, xhi * yhi};
    const double lo = std::min(std::min(p[0], p[1]), std::min(p[2], p[3]));
    const double hi = std::max(std::max(p[0], p[1]), std::max(p[2], p[3]));
    z.set_level(lvl, z.a - lo, hi - z.a);
  }
  return z;
}

std::array<double, 9> characteristic_points(const Ivifn& x) {
  return {x.a - x.nu_l, x.a - x.nup_l, x.a - x.mup_l, x.a - x.mu_l, x.a,
          x.a + x.mu_r, x.a + x.mup_r, x.a + x.nup_r, x.a + x.nu_r};
}

int sign_class(const Ivifn& x) {
  const auto p = characteristic_points(x);
  for (int i = 0; i < 9; ++i)
    if (p[i] >= 0.0) return i + 1;
  return 10;
}

}  // namespace ivif
