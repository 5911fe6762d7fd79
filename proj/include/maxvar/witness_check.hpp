#pragma once

#include <string>
#include <vector>

#include "maxvar/peaks.hpp"
#include "maxvar/rational.hpp"
#include "maxvar/sequence.hpp"
#include "maxvar/witnesses.hpp"

// Re-verification of witnesses from first principles: every average is
// recomputed by direct summation of f, and every spacing constraint is checked
// against the statement it certifies. Shares no code with the searchers.

namespace maxvar {

struct WitnessVerdict {
  bool ok = true;
  std::string reason;
  Rational slack;  // recomputed
};

namespace detail {

inline Rational direct_average(const FiniteSequence& f, Index x, Index y) {
  Rational s;
  for (Index k = x; k <= y; ++k) s += f(k);
  return s / Rational(to_integer(y - x + 1));
}

inline void require(WitnessVerdict& v, bool cond, const char* what) {
  if (!cond && v.ok) {
    v.ok = false;
    v.reason = what;
  }
}

}  // namespace detail

inline WitnessVerdict verify_lemma2_witness(const FiniteSequence& f, const std::vector<Peak>& peaks,
                                            const Lemma2Witness& w) {
  WitnessVerdict v;
  const Index L = w.y - w.x;
  detail::require(v, L > 0 && L % 2 == 0 && L == w.L, "interval length");
  detail::require(v, w.x - 64 * L <= w.s, "s below x - 64L");
  detail::require(v, w.t <= w.y + 64 * L, "t above y + 64L");
  detail::require(v, w.u - w.s >= 4 * L, "u - s < 4L");
  detail::require(v, w.v - w.u == L, "v - u != L");
  detail::require(v, w.t - w.v >= 4 * L, "t - v < 4L");
  Rational total;
  for (const auto& p : peaks) total += 2 * p.mf_r - p.mf_p - p.mf_q;
  const Rational lower = f(w.s) < f(w.t) ? f(w.s) : f(w.t);
  v.slack = lower - detail::direct_average(f, w.u, w.v) - total / 12;
  detail::require(v, v.slack == w.slack, "reported slack differs");
  detail::require(v, v.slack.sign() >= 0, "negative slack");
  return v;
}

inline WitnessVerdict verify_lemma5_witness(const FiniteSequence& f, const std::vector<Peak>& bucket,
                                            const Lemma5Witness& w) {
  WitnessVerdict v;
  const Index g = Index{1} << (w.n - 5);
  const auto& p = w.points;
  Rational total;
  for (const auto& pk : bucket) total += 2 * pk.mf_r - pk.mf_p - pk.mf_q;
  Rational value;
  if (w.variant == 'A') {
    // s, alpha, beta, gamma, delta, t
    detail::require(v, (w.k - 64) * g <= p[0] && p[5] <= (w.k + 65) * g, "s, t outside the block range");
    detail::require(v, p[1] - p[0] >= g, "alpha - s");
    detail::require(v, p[2] - p[1] >= g, "beta - alpha");
    detail::require(v, p[3] - p[2] >= 2 * g, "gamma - beta");
    detail::require(v, p[4] - p[3] >= g, "delta - gamma");
    detail::require(v, p[5] - p[4] >= g, "t - delta");
    const Rational low = f(p[0]) < f(p[5]) ? f(p[0]) : f(p[5]);
    const Rational a1 = detail::direct_average(f, p[1], p[2]);
    const Rational a2 = detail::direct_average(f, p[3], p[4]);
    value = low - (a1 < a2 ? a2 : a1);
  } else {
    // alpha, beta, u, v, gamma, delta
    const bool narrow = (w.k - 64) * g <= p[0] && p[5] <= (w.k + 65) * g;
    const bool wide = (w.k - 64) * (g << 5) <= p[0] && p[5] <= (w.k + 65) * (g << 5);
    detail::require(v, narrow || wide, "alpha, delta outside both ranges");
    detail::require(v, narrow == w.in_narrow_range && wide == w.in_wide_range, "range flags");
    for (std::size_t i = 1; i < 6; ++i) detail::require(v, p[i] - p[i - 1] >= g, "gap below 2^(n-5)");
    const Rational a1 = detail::direct_average(f, p[0], p[1]);
    const Rational a2 = detail::direct_average(f, p[4], p[5]);
    value = (a1 < a2 ? a1 : a2) - detail::direct_average(f, p[2], p[3]);
  }
  v.slack = value - total / 24;
  detail::require(v, v.slack == w.slack, "reported slack differs");
  detail::require(v, v.slack.sign() >= 0, "negative slack");
  return v;
}

}  // namespace maxvar
