#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxvar/errors.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/peaks.hpp"
#include "maxvar/rational.hpp"
#include "maxvar/sequence.hpp"
#include "maxvar/variation.hpp"

namespace maxvar {

/// Proven constant in Var(Mf) <= C Var(f): 2 * 120 * 2^12 * 300 + 4.
inline const Rational& theorem_constant() {
  static const Rational c = Rational(2L * 120L * 4096L * 300L + 4L);
  return c;
}

/// Outcome of one inequality lhs <= rhs. Composite checks carry their
/// sub-inequalities in `parts`; the check passes only if every part does.
struct BoundCheck {
  std::string lemma;
  Rational lhs;
  Rational rhs;
  bool pass = true;
  std::vector<Index> points;
  std::vector<BoundCheck> parts;
  std::string note;
};

inline BoundCheck make_check(std::string lemma, Rational lhs, Rational rhs) {
  BoundCheck c{std::move(lemma), std::move(lhs), std::move(rhs)};
  c.pass = c.lhs <= c.rhs;
  return c;
}

/// Enclosure r - omega < p < q < r + omega, encoded as
/// max(r - p, q - r) + 1 <= omega.
inline BoundCheck check_lemma1(const FiniteSequence& f, const Peak& peak) {
  if (!peak.essential || !is_essential(f, peak))
    throw PreconditionViolated("check_lemma1: peak {" + std::to_string(peak.p) + "<" + std::to_string(peak.r) + "<" +
                               std::to_string(peak.q) + "} is not essential");
  const Index reach = std::max(peak.r - peak.p, peak.q - peak.r) + 1;
  if (!peak.omega) {
    BoundCheck c{"1", Rational(to_integer(reach)), Rational(-1), false};
    c.note = "radius not attained";
    c.points = {peak.p, peak.r, peak.q};
    return c;
  }
  BoundCheck c = make_check("1", Rational(to_integer(reach)), Rational(to_integer(*peak.omega)));
  c.points = {peak.p, peak.r, peak.q};
  return c;
}

/// Var(non-essential peaks) <= 2 Var f. Each non-essential peak also yields
/// an interior point x with f(x) >= Mf(r) - var/4, and the part check
/// var/2 <= 2 f(x) - f(p) - f(q).
inline BoundCheck check_lemma3(const FiniteSequence& f, const PeakSystem& sys) {
  Rational lhs;
  std::vector<BoundCheck> parts;
  for (const auto& pk : sys.peaks) {
    if (pk.essential) continue;
    lhs += pk.var;
    std::optional<Index> best;
    if (!f.is_zero())
      for (Index k = std::max(pk.p + 1, f.lo()); k <= std::min(pk.q - 1, f.hi()); ++k)
        if (!best || f(*best) < f(k)) best = k;
    if (!best || f(*best) < pk.mf_r - pk.var / 4)
      throw MissingInteriorPoint("non-essential peak at " + std::to_string(pk.r) + " has no interior point");
    const Index x = *best;
    BoundCheck part = make_check("3.point", pk.var / 2, 2 * f(x) - f(pk.p) - f(pk.q));
    part.points = {pk.p, x, pk.q};
    parts.push_back(std::move(part));
  }
  BoundCheck c = make_check("3", lhs, 2 * var_sequence(f));
  for (const auto& p : parts) c.pass = c.pass && p.pass;
  c.parts = std::move(parts);
  return c;
}

/// Var(E') <= 1200 Var f, together with the per residue class bound
/// Var(E'_l) <= 4 Var f where E'_l collects summits r = l (mod 300).
inline BoundCheck check_lemma4(const FiniteSequence& f, const PeakSystem& sys) {
  const Rational var_f = var_sequence(f);
  Rational lhs;
  std::map<Index, Rational> by_class;
  for (const auto& pk : sys.peaks) {
    if (classify_peak(pk).tag != PeakClass::Tag::EssentialSmall) continue;
    lhs += pk.var;
    by_class[pk.r - 300 * detail::floor_div(pk.r, 300)] += pk.var;
  }
  BoundCheck c = make_check("4", lhs, 1200 * var_f);
  for (const auto& [l, v] : by_class) {
    BoundCheck part = make_check("4.class", v, 4 * var_f);
    part.points = {l};
    c.pass = c.pass && part.pass;
    c.parts.push_back(std::move(part));
  }
  return c;
}

struct TheoremCheck {
  BoundCheck proven;     // Var(Mf) <= C Var f
  BoundCheck empirical;  // Var(Mf) <= Var f
};

inline TheoremCheck theorem_check_from(const Rational& var_f, const Rational& var_mf) {
  return {make_check("thm", var_mf, theorem_constant() * var_f), make_check("conj", var_mf, var_f)};
}

inline TheoremCheck check_theorem(const FiniteSequence& f) {
  return theorem_check_from(var_sequence(f), var_profile(build_profile(f, OperatorKind::Centered)));
}

/// Var(M~f) <= Var f for the non-centered operator.
inline BoundCheck check_noncentered(const FiniteSequence& f) {
  return make_check("nc", var_profile(build_profile(f, OperatorKind::NonCentered)), var_sequence(f));
}

}  // namespace maxvar
