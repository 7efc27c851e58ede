#include "ivif/transform.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ivif/ranking.hpp"

namespace ivif {

namespace {

const char* const kCompName[9] = {"a",    "mu_l", "mu_r",  "mup_l", "mup_r",
                                  "nu_l", "nu_r", "nup_l", "nup_r"};
const char kKeyLetter[8] = "SAMCDGH";

// Tuple-order component indices of the (left, right) spread pair at each
// nesting level (0 = mu, 1 = mup, 2 = nup, 3 = nu).
constexpr int kLeftIdx[4] = {1, 3, 7, 5};
constexpr int kRightIdx[4] = {2, 4, 8, 6};

enum class Category { pos, neg, mixed };

// Sign category of a fuzzy variable's level support under a sign class:
// level support [p_i, p_{10-i}] is non-negative when the class index stays
// at or below i and non-positive when it reaches 10-i+1... spelled out per
// level against the characteristic-point order.
Category level_category(int cls, int level) {
  static const int pos_max[4] = {4, 3, 2, 1};   // mu, mup, nup, nu
  static const int neg_min[4] = {7, 8, 9, 10};  // mu, mup, nup, nu
  if (cls <= pos_max[level]) return Category::pos;
  if (cls >= neg_min[level]) return Category::neg;
  return Category::mixed;
}

double spread_of(const Ivifn& x, int comp) {
  switch (comp) {
    case 0: return x.a;
    case 1: return x.mu_l;
    case 2: return x.mu_r;
    case 3: return x.mup_l;
    case 4: return x.mup_r;
    case 5: return x.nu_l;
    case 6: return x.nu_r;
    case 7: return x.nup_l;
    default: return x.nup_r;
  }
}

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

TaggedRow make_row(const AffineExpr& e, Rel rel, double bound, int total,
                   std::string tag) {
  TaggedRow out;
  out.row.coeff.assign(total, 0.0);
  for (const auto& [idx, c] : e.terms) out.row.coeff[idx] = c;
  out.row.rel = rel;
  out.row.rhs = bound - e.constant;
  out.tag = std::move(tag);
  return out;
}

AffineExpr single(int idx, double coeff = 1.0) {
  AffineExpr e;
  e.add_term(idx, coeff);
  return e;
}

// a - left_spread or a + right_spread of variable `var` at `level`.
AffineExpr level_end(const ComponentSpace& space, int var, int level,
                     bool upper) {
  AffineExpr e = single(space.unknown(var, 0));
  if (upper)
    e.add_term(space.unknown(var, kRightIdx[level]), 1.0);
  else
    e.add_term(space.unknown(var, kLeftIdx[level]), -1.0);
  return e;
}

// Key difference d_s = key_s(hi side) - key_s(lo side) of an inequality, in
// key-permutation order: for lhs <= rhs the rhs is the high side.
std::vector<AffineExpr> key_differences(const Problem& p,
                                        const ComponentSpace& space,
                                        const Branch& b, int constraint) {
  const Constraint& c = p.constraints[constraint];
  const IvifnExpr lhs = expand_combination(p, space, b, c.coeffs);
  const LexAffine lhs_key = key_of(lhs, reference_number(p));
  const auto rhs_key = lex_key(c.rhs).values();
  std::vector<AffineExpr> d(7);
  for (int s = 0; s < 7; ++s) {
    const int idx = p.params.perm[s];
    if (c.relation == Relation::leq) {
      d[s].constant = rhs_key[idx];
      d[s].add_scaled(lhs_key.comp[idx], -1.0);
    } else {
      d[s] = lhs_key.comp[idx];
      d[s].constant -= rhs_key[idx];
    }
  }
  return d;
}

}  // namespace

void AffineExpr::add_term(int unknown, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms.emplace(unknown, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms.erase(it);
  }
}

void AffineExpr::add_scaled(const AffineExpr& other, double scale) {
  constant += scale * other.constant;
  for (const auto& [idx, c] : other.terms) add_term(idx, scale * c);
}

double AffineExpr::eval(const std::vector<double>& point) const {
  double v = constant;
  for (const auto& [idx, c] : terms) v += c * point[idx];
  return v;
}

const Ivifn& reference_number(const Problem& p) {
  static const Ivifn unit = crisp(0.0);
  if (!p.objective.empty()) return p.objective.front();
  for (const Constraint& c : p.constraints) {
    if (!c.coeffs.empty()) return c.coeffs.front();
    return c.rhs;
  }
  return unit;
}

ComponentSpace component_space(const Problem& p) {
  ComponentSpace space;
  space.first.reserve(p.variables.size());
  space.width.reserve(p.variables.size());
  for (const VariableDecl& v : p.variables) {
    const bool fuzzy =
        v.kind == VarKind::ivifn_nonneg || v.kind == VarKind::ivifn_unrestricted;
    space.first.push_back(space.total);
    space.width.push_back(fuzzy ? 9 : 1);
    if (fuzzy) {
      for (int c = 0; c < 9; ++c)
        space.names.push_back(v.name + "." + kCompName[c]);
    } else {
      space.names.push_back(v.name);
    }
    space.total += space.width.back();
  }
  return space;
}

IvifnExpr expand_term(const Problem& p, const ComponentSpace& space,
                      const Branch& b, const Ivifn& coeff, int var) {
  IvifnExpr out;
  const VariableDecl& decl = p.variables[var];
  const bool fuzzy = decl.kind == VarKind::ivifn_nonneg ||
                     decl.kind == VarKind::ivifn_unrestricted;

  if (!fuzzy) {
    const int ux = space.unknown(var, 0);
    const int sign = b.sign[var];
    out[0] = single(ux, coeff.a);
    for (int level = 0; level < 4; ++level) {
      const double l = spread_of(coeff, kLeftIdx[level]);
      const double r = spread_of(coeff, kRightIdx[level]);
      // x >= 0 keeps the pair; x <= 0 swaps it with the sign folded in.
      const double lc = sign >= 0 ? l : -r;
      const double rc = sign >= 0 ? r : -l;
      out[kLeftIdx[level]] = single(ux, lc);
      out[kRightIdx[level]] = single(ux, rc);
    }
    return out;
  }

  const int cls = b.cls[var];
  out[0] = single(space.unknown(var, 0), coeff.a);
  for (int level = 0; level < 4; ++level) {
    const double b_lo = coeff.a - spread_of(coeff, kLeftIdx[level]);
    const double b_hi = coeff.a + spread_of(coeff, kRightIdx[level]);
    const AffineExpr a_lo = level_end(space, var, level, false);
    const AffineExpr a_hi = level_end(space, var, level, true);

    AffineExpr lo, hi;
    switch (level_category(cls, level)) {
      case Category::pos:
        lo.add_scaled(b_lo >= 0.0 ? a_lo : a_hi, b_lo);
        hi.add_scaled(b_hi >= 0.0 ? a_hi : a_lo, b_hi);
        break;
      case Category::neg:
        lo.add_scaled(b_hi >= 0.0 ? a_lo : a_hi, b_hi);
        hi.add_scaled(b_lo >= 0.0 ? a_hi : a_lo, b_lo);
        break;
      case Category::mixed:
        if (b_lo >= 0.0) {
          lo.add_scaled(a_lo, b_hi);
          hi.add_scaled(a_hi, b_hi);
        } else if (b_hi <= 0.0) {
          lo.add_scaled(a_hi, b_lo);
          hi.add_scaled(a_lo, b_lo);
        } else {
          std::ostringstream msg;
          msg << "product endpoint selection for variable '" << decl.name
              << "' at nesting level " << level
              << " depends on magnitudes: its class " << cls
              << " straddles zero and so does the coefficient ([" << b_lo
              << ", " << b_hi << "])";
          throw UnresolvedSelection(msg.str());
        }
        break;
    }

    // Spreads of the product: distance from the mean to the support ends.
    AffineExpr left = out[0];
    left.add_scaled(lo, -1.0);
    AffineExpr right = hi;
    right.add_scaled(out[0], -1.0);
    out[kLeftIdx[level]] = std::move(left);
    out[kRightIdx[level]] = std::move(right);
  }
  return out;
}

IvifnExpr expand_combination(const Problem& p, const ComponentSpace& space,
                             const Branch& b,
                             const std::vector<Ivifn>& coeffs) {
  IvifnExpr sum;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const IvifnExpr term = expand_term(p, space, b, coeffs[j], static_cast<int>(j));
    for (int c = 0; c < 9; ++c) sum[c].add_scaled(term[c], 1.0);
  }
  return sum;
}

LexAffine key_of(const IvifnExpr& e, const Ivifn& shape_ref) {
  const double il = shape_ref.L->inverse_integral;
  const double ir = shape_ref.R->inverse_integral;
  const double ilp = shape_ref.Lp->inverse_integral;
  const double irp = shape_ref.Rp->inverse_integral;

  LexAffine k;
  // Score and accuracy mirror the scalar ranking formulas term by term.
  AffineExpr mu_part, nu_part;
  mu_part.add_scaled(e[1], -il);
  mu_part.add_scaled(e[2], ir);
  mu_part.add_scaled(e[3], -ilp);
  mu_part.add_scaled(e[4], irp);
  nu_part.add_scaled(e[5], -il);
  nu_part.add_scaled(e[6], ir);
  nu_part.add_scaled(e[7], -ilp);
  nu_part.add_scaled(e[8], irp);

  k.comp[0].add_scaled(mu_part, 0.25);
  k.comp[0].add_scaled(nu_part, -0.25);
  k.comp[1].add_scaled(e[0], 2.0);
  k.comp[1].add_scaled(mu_part, 0.25);
  k.comp[1].add_scaled(nu_part, 0.25);
  k.comp[2] = e[0];
  for (int i = 0; i < 4; ++i) {
    k.comp[3 + i] = e[0];
    k.comp[3 + i].add_scaled(e[kLeftIdx[i]], -1.0);
  }
  return k;
}

std::vector<TaggedRow> equality_rows(const Problem& p,
                                     const ComponentSpace& space,
                                     const Branch& b, int constraint) {
  const Constraint& c = p.constraints[constraint];
  const IvifnExpr lhs = expand_combination(p, space, b, c.coeffs);
  std::vector<TaggedRow> rows;
  rows.reserve(9);
  for (int comp = 0; comp < 9; ++comp) {
    std::ostringstream tag;
    tag << "c" << constraint << " eq " << kCompName[comp];
    rows.push_back(make_row(lhs[comp], Rel::eq, spread_of(c.rhs, comp),
                            space.total, tag.str()));
  }
  return rows;
}

std::vector<TaggedRow> lex_rows(const Problem& p, const ComponentSpace& space,
                                const Branch& b, int constraint) {
  const std::vector<AffineExpr> d = key_differences(p, space, b, constraint);
  const int pat = b.pattern[constraint];
  const double k = p.params.k;
  const double K = p.params.K;
  std::vector<TaggedRow> rows;

  auto letter = [&](int s) { return kKeyLetter[p.params.perm[s]]; };

  if (p.params.mode == LexMode::resolved) {
    for (int s = 0; s < pat; ++s) {
      std::ostringstream tag;
      tag << "c" << constraint << " lex " << letter(s) << "=0";
      rows.push_back(make_row(d[s], Rel::eq, 0.0, space.total, tag.str()));
    }
    if (pat < 7) {
      std::ostringstream tag;
      tag << "c" << constraint << " lex " << letter(pat) << ">=k";
      rows.push_back(make_row(d[pat], Rel::ge, k, space.total, tag.str()));
    }
    return rows;
  }

  // bigM: two-sided indicator rows with the binary chain fixed to the
  // pattern's vector (0^pat, 1^(7-pat)).
  for (int s = 0; s < 7; ++s) {
    const int z = s >= pat ? 1 : 0;
    const int zsum = s > pat ? s - pat : 0;  // sum of z over earlier positions
    std::ostringstream lo_tag, hi_tag;
    lo_tag << "c" << constraint << " lex " << letter(s) << " lo";
    hi_tag << "c" << constraint << " lex " << letter(s) << " hi";
    rows.push_back(
        make_row(d[s], Rel::ge, k * z - K * zsum, space.total, lo_tag.str()));
    rows.push_back(make_row(d[s], Rel::le, K * z, space.total, hi_tag.str()));
  }
  return rows;
}

LexAffine objective_key(const Problem& p, const ComponentSpace& space,
                        const Branch& b) {
  return key_of(expand_combination(p, space, b, p.objective),
                reference_number(p));
}

std::vector<TaggedRow> variable_rows(const Problem& p,
                                     const ComponentSpace& space,
                                     const Branch& b, int var) {
  const VariableDecl& decl = p.variables[var];
  std::vector<TaggedRow> rows;

  if (decl.kind == VarKind::crisp_nonneg ||
      decl.kind == VarKind::crisp_unrestricted) {
    const int sign = b.sign[var];
    rows.push_back(make_row(single(space.unknown(var, 0)),
                            sign >= 0 ? Rel::ge : Rel::le, 0.0, space.total,
                            "var " + decl.name + " sign"));
    return rows;
  }

  // Spread non-negativity, tuple order.
  for (int comp = 1; comp <= 8; ++comp) {
    rows.push_back(make_row(single(space.unknown(var, comp)), Rel::ge, 0.0,
                            space.total,
                            "var " + decl.name + " " + kCompName[comp] +
                                ">=0"));
  }
  // Support nesting: each level's spread dominates the previous level's on
  // both sides, plus the outer-vs-inner pair spelled directly.
  const int chain[4][2] = {{3, 1}, {7, 3}, {5, 7}, {5, 1}};  // left indices
  const int chain_r[4][2] = {{4, 2}, {8, 4}, {6, 8}, {6, 2}};
  for (int i = 0; i < 4; ++i) {
    AffineExpr le = single(space.unknown(var, chain[i][0]));
    le.add_term(space.unknown(var, chain[i][1]), -1.0);
    rows.push_back(make_row(le, Rel::ge, 0.0, space.total,
                            "var " + decl.name + " ord " +
                                kCompName[chain[i][0]] + ">=" +
                                kCompName[chain[i][1]]));
    AffineExpr re = single(space.unknown(var, chain_r[i][0]));
    re.add_term(space.unknown(var, chain_r[i][1]), -1.0);
    rows.push_back(make_row(re, Rel::ge, 0.0, space.total,
                            "var " + decl.name + " ord " +
                                kCompName[chain_r[i][0]] + ">=" +
                                kCompName[chain_r[i][1]]));
  }

  if (decl.kind == VarKind::ivifn_nonneg) {
    rows.push_back(make_row(level_end(space, var, 3, false), Rel::ge, 0.0,
                            space.total, "var " + decl.name + " nonneg"));
    return rows;
  }

  // Class rows: the first characteristic point at or past zero is the
  // class's own; the one before it (if any) stays at or below zero.
  const int cls = b.cls[var];
  auto point = [&](int i) -> AffineExpr {
    // 1-based characteristic points: left ends outermost-in, mean, right
    // ends innermost-out.
    switch (i) {
      case 1: return level_end(space, var, 3, false);
      case 2: return level_end(space, var, 2, false);
      case 3: return level_end(space, var, 1, false);
      case 4: return level_end(space, var, 0, false);
      case 5: return single(space.unknown(var, 0));
      case 6: return level_end(space, var, 0, true);
      case 7: return level_end(space, var, 1, true);
      case 8: return level_end(space, var, 2, true);
      default: return level_end(space, var, 3, true);
    }
  };
  if (cls <= 9) {
    std::ostringstream tag;
    tag << "var " << decl.name << " class" << cls << " p" << cls << ">=0";
    rows.push_back(make_row(point(cls), Rel::ge, 0.0, space.total, tag.str()));
  }
  if (cls >= 2) {
    std::ostringstream tag;
    tag << "var " << decl.name << " class" << cls << " p" << cls - 1 << "<=0";
    rows.push_back(
        make_row(point(cls - 1), Rel::le, 0.0, space.total, tag.str()));
  }
  return rows;
}

std::vector<TaggedRow> branch_rows(const Problem& p,
                                   const ComponentSpace& space,
                                   const Branch& b) {
  std::vector<TaggedRow> rows;
  for (std::size_t v = 0; v < p.variables.size(); ++v) {
    auto vr = variable_rows(p, space, b, static_cast<int>(v));
    rows.insert(rows.end(), std::make_move_iterator(vr.begin()),
                std::make_move_iterator(vr.end()));
  }
  for (std::size_t c = 0; c < p.constraints.size(); ++c) {
    auto cr = p.constraints[c].relation == Relation::eq
                  ? equality_rows(p, space, b, static_cast<int>(c))
                  : lex_rows(p, space, b, static_cast<int>(c));
    rows.insert(rows.end(), std::make_move_iterator(cr.begin()),
                std::make_move_iterator(cr.end()));
  }
  return rows;
}

StagedLp build_branch_lp(const Problem& p, const ComponentSpace& space,
                         const Branch& b, int stage,
                         const std::vector<double>& carried_optima) {
  if (stage < 1 || stage > 7)
    throw OutOfRange("stage index must lie in 1..7");
  if (static_cast<int>(carried_optima.size()) < stage - 1)
    throw DimensionMismatch("carried optima must cover all earlier stages");

  const LexAffine key = objective_key(p, space, b);
  StagedLp staged;
  staged.stage = stage;
  staged.objective = key.comp[p.params.perm[stage - 1]];
  staged.rows = branch_rows(p, space, b);
  for (int s = 0; s < stage - 1; ++s) {
    std::ostringstream tag;
    tag << "carry " << kKeyLetter[p.params.perm[s]] << ">=opt" << s + 1;
    staged.carried.push_back(make_row(key.comp[p.params.perm[s]], Rel::ge,
                                      carried_optima[s] - p.params.lex_slack,
                                      space.total, tag.str()));
  }
  return staged;
}

LpInstance to_instance(const StagedLp& staged, const ComponentSpace& space) {
  LpInstance inst;
  inst.num_vars = space.total;
  inst.objective.assign(space.total, 0.0);
  for (const auto& [idx, c] : staged.objective.terms) inst.objective[idx] = c;
  inst.objective_constant = staged.objective.constant;
  inst.rows.reserve(staged.rows.size() + staged.carried.size());
  for (const TaggedRow& r : staged.rows) inst.rows.push_back(r.row);
  for (const TaggedRow& r : staged.carried) inst.rows.push_back(r.row);
  return inst;
}

std::string dump_rows(const std::vector<TaggedRow>& rows,
                      const ComponentSpace& space) {
  std::ostringstream out;
  for (const TaggedRow& tr : rows) {
    bool any = false;
    for (int j = 0; j < static_cast<int>(tr.row.coeff.size()); ++j) {
      const double c = tr.row.coeff[j];
      if (c == 0.0) continue;
      if (!any) {
        if (c < 0.0) out << "-";
      } else {
        out << (c < 0.0 ? " - " : " + ");
      }
      out << fmt(std::abs(c)) << "*" << space.names[j];
      any = true;
    }
    if (!any) out << "0";
    switch (tr.row.rel) {
      case Rel::le: out << " <= "; break;
      case Rel::eq: out << " = "; break;
      case Rel::ge: out << " >= "; break;
    }
    out << fmt(tr.row.rhs) << "\n";
  }
  return out.str();
}

}  // namespace ivif
