#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "ivif/ivifn.hpp"
#include "oracles.hpp"

using namespace ivif;

namespace {

const Ivifn five(5, 2, 2, 3, 3, 5, 5, 5, 4);
const Ivifn eight(8, 1, 1, 2, 2, 4, 4, 2, 3);
const Ivifn twelve(12, 2, 3, 4, 4, 6, 8, 4, 4);

bool components_equal(const Ivifn& x, const std::array<double, 9>& t,
                      double tol = 1e-12) {
  const auto c = oracles::components(x);
  for (int i = 0; i < 9; ++i)
    if (std::abs(c[i] - t[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("tuple constructor and level accessors") {
  CHECK(five.a == 5);
  CHECK(five.mu_l == 2);
  CHECK(five.mu_r == 2);
  CHECK(five.mup_l == 3);
  CHECK(five.mup_r == 3);
  CHECK(five.nu_l == 5);
  CHECK(five.nu_r == 5);
  CHECK(five.nup_l == 5);
  CHECK(five.nup_r == 4);
  // levels are ordered by nesting: mu, mup, nup, nu
  CHECK(five.left(0) == 2);
  CHECK(five.left(1) == 3);
  CHECK(five.left(2) == 5);
  CHECK(five.left(3) == 5);
  CHECK(five.right(0) == 2);
  CHECK(five.right(1) == 3);
  CHECK(five.right(2) == 4);
  CHECK(five.right(3) == 5);
}

TEST_CASE("crisp constants have zero spreads and validate") {
  const Ivifn z = crisp(-3.5);
  CHECK(z.a == -3.5);
  CHECK(components_equal(z, {-3.5, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK_NOTHROW(validate(z));
  CHECK(is_nonpos(z));
  CHECK_FALSE(is_nonneg(z));
}

TEST_CASE("validate rejects negative spreads and broken nesting") {
  CHECK_NOTHROW(validate(five));
  CHECK_NOTHROW(validate(eight));
  Ivifn bad = five;
  bad.mu_r = -0.5;
  CHECK_THROWS_AS(validate(bad), SpreadNegative);
  // membership-lower wider than membership-upper
  Ivifn nest(0, 2, 2, 1, 1, 3, 3, 1.5, 1.5);
  CHECK_THROWS_AS(validate(nest), NestingViolated);
  // nonmembership-upper wider than nonmembership-lower
  Ivifn nest2(0, 1, 1, 1, 1, 2, 2, 3, 3);
  CHECK_THROWS_AS(validate(nest2), NestingViolated);
  // tolerance: a violation below 1e-9 passes
  Ivifn close = five;
  close.mup_l = close.mu_l - 1e-12;
  CHECK_NOTHROW(validate(close));
}

TEST_CASE("approx_equal compares all nine components") {
  Ivifn a = five;
  Ivifn b = five;
  CHECK(approx_equal(a, b));
  b.nup_r += 5e-10;
  CHECK(approx_equal(a, b));
  b.nup_r += 1e-6;
  CHECK_FALSE(approx_equal(a, b));
}

TEST_CASE("addition is componentwise") {
  const Ivifn sum = add(five, eight);
  CHECK(components_equal(sum, {13, 3, 3, 5, 5, 9, 9, 7, 7}));
  CHECK_NOTHROW(validate(sum));
}

TEST_CASE("subtraction crosses the spreads") {
  const Ivifn diff = sub(eight, five);
  // right spreads of the subtrahend land on the left of the result
  CHECK(components_equal(diff, {3, 3, 3, 5, 5, 9, 9, 6, 8}));
  CHECK_NOTHROW(validate(diff));
  // x - x is symmetric around zero, not crisp zero
  const Ivifn self = sub(five, five);
  CHECK(self.a == 0);
  CHECK(self.mu_l == self.mu_r);
  CHECK(self.nu_l == self.nu_r);
}

TEST_CASE("scalar multiplication scales or crosses by sign") {
  CHECK(components_equal(scalar_mul(10, twelve),
                         {120, 20, 30, 40, 40, 60, 80, 40, 40}));
  CHECK(components_equal(scalar_mul(-1, five), {-5, 2, 2, 3, 3, 5, 5, 4, 5}));
  CHECK(components_equal(scalar_mul(0, five), {0, 0, 0, 0, 0, 0, 0, 0, 0}));
  // smul(-1, .) is an involution
  CHECK(approx_equal(scalar_mul(-1, scalar_mul(-1, eight)), eight));
}

TEST_CASE("product golden value") {
  const Ivifn prod = mul(five, eight);
  CHECK(components_equal(prod, {40, 19, 23, 28, 40, 40, 80, 40, 59}));
  CHECK_NOTHROW(validate(prod));
}

TEST_CASE("product is commutative and agrees with scalar multiplication") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const Ivifn x = oracles::random_ivifn(rng);
    const Ivifn y = oracles::random_ivifn(rng);
    const Ivifn xy = mul(x, y);
    const Ivifn yx = mul(y, x);
    CHECK(approx_equal(xy, yx, 1e-7));
    const double lambda = y.a;
    const Ivifn viaprod = mul(crisp(lambda), x);
    const Ivifn viascal = scalar_mul(lambda, x);
    CHECK(approx_equal(viaprod, viascal, 1e-7));
  }
}

TEST_CASE("product agrees with the per-class case formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Ivifn x = oracles::random_ivifn(rng);
    const Ivifn y = oracles::random_ivifn(rng);
    const auto expect = oracles::pair_product(x, y);
    const auto got = oracles::components(mul(x, y));
    for (int c = 0; c < 9; ++c) {
      const double scale = std::max(1.0, std::abs(expect[c]));
      CHECK(std::abs(got[c] - expect[c]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("characteristic points are the sorted support ends") {
  const auto pts = characteristic_points(five);
  const std::array<double, 9> expect = {0, 0, 2, 3, 5, 7, 8, 9, 10};
  for (int i = 0; i < 9; ++i) CHECK(pts[i] == doctest::Approx(expect[i]));
}

TEST_CASE("sign classes split at the characteristic points") {
  CHECK(sign_class(five) == 1);  // wholly non-negative
  CHECK(is_nonneg(five));
  CHECK(sign_class(scalar_mul(-1, five)) == 8);
  CHECK(sign_class(crisp(0)) == 1);
  CHECK(sign_class(crisp(-1)) == 10);
  CHECK(sign_class(Ivifn(0, 1, 1, 2, 2, 4, 4, 3, 3)) == 5);  // mean at zero
  // strictly negative support
  const Ivifn neg(-20, 1, 1, 2, 2, 4, 4, 3, 3);
  CHECK(sign_class(neg) == 10);
  CHECK(is_nonpos(neg));
  // boundary tie resolves to the lower-numbered class
  const Ivifn edge(4, 1, 1, 2, 2, 4, 4, 3, 3);  // a - nu_l == 0
  CHECK(sign_class(edge) == 1);
}

TEST_CASE("supports nest innermost to outermost") {
  const auto sup = supports(five);
  CHECK(sup[0].lo == 3);
  CHECK(sup[0].hi == 7);
  CHECK(sup[1].lo == 2);
  CHECK(sup[1].hi == 8);
  CHECK(sup[2].lo == 0);
  CHECK(sup[2].hi == 9);
  CHECK(sup[3].lo == 0);
  CHECK(sup[3].hi == 10);
}

TEST_CASE("curve evaluation at and outside the supports") {
  CHECK(mu_lower(five, 5) == doctest::Approx(1.0));
  CHECK(mu_upper(five, 5) == doctest::Approx(1.0));
  CHECK(nu_lower(five, 5) == doctest::Approx(0.0));
  CHECK(nu_upper(five, 5) == doctest::Approx(0.0));
  CHECK(mu_lower(five, 4) == doctest::Approx(0.5));
  CHECK(mu_upper(five, 3.5) == doctest::Approx(0.5));
  CHECK(nu_lower(five, 0) == doctest::Approx(1.0));
  CHECK(nu_upper(five, 0) == doctest::Approx(1.0));
  CHECK(nu_upper(five, 1) == doctest::Approx(0.8));
  CHECK(mu_lower(five, -100) == doctest::Approx(0.0));
  CHECK(nu_lower(five, -100) == doctest::Approx(1.0));
  CHECK(mu_upper(five, 100) == doctest::Approx(0.0));
  CHECK(nu_upper(five, 100) == doctest::Approx(1.0));
  // envelopes: lower membership under upper, lower nonmembership under upper
  for (double t = -1; t <= 11; t += 0.5) {
    CHECK(mu_lower(five, t) <= mu_upper(five, t) + 1e-12);
    CHECK(nu_lower(five, t) <= nu_upper(five, t) + 1e-12);
  }
}

TEST_CASE("cuts evaluate the shape inverses") {
  const Cuts c = cuts(five, 0.5, 0.25);
  CHECK(c.mu_lower.lo == doctest::Approx(4.0));
  CHECK(c.mu_lower.hi == doctest::Approx(6.0));
  CHECK(c.mu_upper.lo == doctest::Approx(3.5));
  CHECK(c.mu_upper.hi == doctest::Approx(6.5));
  CHECK(c.nu_lower.lo == doctest::Approx(3.75));
  CHECK(c.nu_lower.hi == doctest::Approx(6.25));
  CHECK(c.nu_upper.lo == doctest::Approx(3.75));
  CHECK(c.nu_upper.hi == doctest::Approx(6.0));
  CHECK_THROWS_AS(cuts(five, 0.0, 0.5), OutOfRange);
  CHECK_THROWS_AS(cuts(five, 0.7, 0.5), OutOfRange);
  CHECK_THROWS_AS(cuts(five, 1.2, 0.0), OutOfRange);
}

TEST_CASE("closure under the operators") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Ivifn x = oracles::random_ivifn(rng);
    const Ivifn y = oracles::random_ivifn(rng);
    CHECK_NOTHROW(validate(add(x, y)));
    CHECK_NOTHROW(validate(sub(x, y)));
    CHECK_NOTHROW(validate(mul(x, y)));
    CHECK_NOTHROW(validate(scalar_mul(-2.5, x)));
  }
}

TEST_CASE("custom shapes: construction, arithmetic guard, and integral") {
  CHECK(linear_shape()->inverse_integral == doctest::Approx(0.5));
  // quadratic flanks: value(t) = max(0, 1 - t^2), inverse(z) = sqrt(1 - z)
  auto quad = make_shape(
      "quad", [](double t) { return std::max(0.0, 1.0 - t * t); },
      [](double z) { return std::sqrt(std::max(0.0, 1.0 - z)); });
  CHECK(quad->inverse_integral == doctest::Approx(2.0 / 3.0).epsilon(1e-6));

  Ivifn q = five;
  q.L = q.R = q.Lp = q.Rp = quad;
  CHECK_THROWS_AS(require_same_shapes(q, eight), ShapeMismatch);
  CHECK_THROWS_AS((void)add(q, eight), ShapeMismatch);
  CHECK_THROWS_AS((void)mul(q, eight), ShapeMismatch);
  Ivifn q8 = eight;
  q8.L = q8.R = q8.Lp = q8.Rp = quad;
  CHECK_NOTHROW((void)add(q, q8));
  // the product support hull does not depend on the shapes
  const Ivifn lin_prod = mul(five, eight);
  const Ivifn quad_prod = mul(q, q8);
  CHECK(components_equal(quad_prod, oracles::components(lin_prod)));

  // a shape whose inverse integrates to zero is rejected
  CHECK_THROWS_AS(make_shape(
                      "zero", [](double) { return 0.0; },
                      [](double) { return 0.0; }),
                  ValidationError);
}
