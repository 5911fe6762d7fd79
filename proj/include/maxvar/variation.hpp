#pragma once

#include <optional>

#include "maxvar/maximal.hpp"
#include "maxvar/rational.hpp"
#include "maxvar/sequence.hpp"

namespace maxvar {

struct VariationReport {
  Rational var_f;
  Rational var_Mf;
  std::optional<Rational> ratio;  // empty when var_f = 0
  OperatorKind kind = OperatorKind::Centered;
};

/// Sum over all k of |f(k+1) - f(k)|, including the jumps onto and off the
/// support.
inline Rational var_sequence(const FiniteSequence& f) {
  if (f.is_zero()) return {};
  Rational v = f.values().front() + f.values().back();
  for (std::size_t i = 1; i < f.values().size(); ++i) v += abs(f.values()[i] - f.values()[i - 1]);
  return v;
}

/// Total variation of the maximal function over all of Z. Both tails are
/// strictly monotone with limit 0, so they contribute Mf(a) and Mf(b).
inline Rational var_profile(const MaximalProfile& p) {
  if (p.is_zero()) return {};
  const auto core = p.core_values();
  Rational v = core.front() + core.back();
  for (std::size_t i = 1; i < core.size(); ++i) v += abs(core[i] - core[i - 1]);
  return v;
}

inline VariationReport var_ratio(const FiniteSequence& f, OperatorKind kind) {
  VariationReport r;
  r.kind = kind;
  r.var_f = var_sequence(f);
  r.var_Mf = var_profile(build_profile(f, kind));
  if (!r.var_f.is_zero()) r.ratio = r.var_Mf / r.var_f;
  return r;
}

}  // namespace maxvar
