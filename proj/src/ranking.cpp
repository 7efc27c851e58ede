#include "ivif/ranking.hpp"

#include <cmath>
#include <cstring>

namespace ivif {

namespace {

// Weighted side-asymmetry of the membership curves and of the nonmembership
// curves: each is int_0^1 of (right reach - left reach) across the two
// estimates, which collapses onto the shape inverse integrals.
void asymmetry_parts(const Ivifn& x, double& mu_part, double& nu_part) {
  const double il = x.L->inverse_integral;
  const double ir = x.R->inverse_integral;
  const double ilp = x.Lp->inverse_integral;
  const double irp = x.Rp->inverse_integral;
  mu_part = -x.mu_l * il + x.mu_r * ir - x.mup_l * ilp + x.mup_r * irp;
  nu_part = -x.nu_l * il + x.nu_r * ir - x.nup_l * ilp + x.nup_r * irp;
}

}  // namespace

KeyPermutation default_permutation() { return {0, 1, 2, 3, 4, 5, 6}; }

KeyPermutation parse_permutation(const std::string& spec) {
  static const char* letters = "SAMCDGH";
  if (spec.size() != 7)
    throw ValidationError("key permutation must spell 7 letters from SAMCDGH");
  KeyPermutation perm{};
  bool seen[7] = {};
  for (int i = 0; i < 7; ++i) {
    const char* hit = std::strchr(letters, std::toupper(spec[i]));
    if (!hit)
      throw ValidationError(std::string("unknown key component '") + spec[i] +
                            "' in permutation; expected letters SAMCDGH");
    const int idx = static_cast<int>(hit - letters);
    if (seen[idx])
      throw ValidationError(std::string("key component '") + letters[idx] +
                            "' repeated in permutation");
    seen[idx] = true;
    perm[i] = idx;
  }
  return perm;
}

double score(const Ivifn& x) {
  double mu_part, nu_part;
  asymmetry_parts(x, mu_part, nu_part);
  return 0.25 * (mu_part - nu_part);
}

double accuracy(const Ivifn& x) {
  double mu_part, nu_part;
  asymmetry_parts(x, mu_part, nu_part);
  return 2.0 * x.a + 0.25 * (mu_part + nu_part);
}

std::pair<double, double> tivifn_indices(const std::array<double, 9>& t) {
  for (int i = 0; i + 1 < 9; ++i) {
    if (t[i] > t[i + 1] + 1e-9)
      throw OrderingViolated("triangular abscissas must be ascending");
  }
  // t = (outer left, inner-upper lefts, mean, rights mirrored back out).
  const double inner = t[2] + t[3] + t[5] + t[6];
  const double outer = t[0] + t[1] + t[7] + t[8];
  return {(inner - outer) / 8.0, (inner + outer + 8.0 * t[4]) / 8.0};
}

LexKey lex_key(const Ivifn& x) {
  LexKey k;
  k.s = score(x);
  k.acc = accuracy(x);
  k.m = x.a;
  k.c = x.a - x.mu_l;
  k.d = x.a - x.mup_l;
  k.g = x.a - x.nup_l;
  k.h = x.a - x.nu_l;
  return k;
}

Ordering compare_keys(const LexKey& a, const LexKey& b,
                      const KeyPermutation& perm, double tol) {
  const auto av = a.values();
  const auto bv = b.values();
  for (int idx : perm) {
    const double diff = av[idx] - bv[idx];
    if (std::abs(diff) <= tol) continue;
    return diff < 0.0 ? Ordering::less : Ordering::greater;
  }
  return Ordering::equal;
}

Ordering compare(const Ivifn& x, const Ivifn& y, const KeyPermutation& perm,
                 double tol) {
  require_same_shapes(x, y);
  return compare_keys(lex_key(x), lex_key(y), perm, tol);
}

bool ivifn_equal(const Ivifn& x, const Ivifn& y) {
  return approx_equal(x, y, 1e-9);
}

}  // namespace ivif
