#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "maxvar/bounds.hpp"
#include "maxvar/errors.hpp"
#include "maxvar/mass_table.hpp"
#include "maxvar/peaks.hpp"
#include "maxvar/rational.hpp"
#include "maxvar/sequence.hpp"

namespace maxvar {

/// s < u < v < t with x - 64L <= s, t <= y + 64L, u - s >= 4L, v - u = L,
/// t - v >= 4L and min(f(s), f(t)) - A_{u,v} f - (1/12) sum var >= 0.
struct Lemma2Witness {
  Index s = 0, u = 0, v = 0, t = 0;
  Index L = 0;
  Index x = 0, y = 0;
  Rational slack;
};

struct Lemma2Result {
  /// Every peak is essential, lies in [x, y] and has 32L < omega <= 64L.
  bool hypotheses_met = true;
  std::string hypothesis_note;
  /// Best tuple over the whole admissible geometry, even if its slack is
  /// negative. Empty only if the geometry admits no tuple.
  std::optional<Lemma2Witness> best;
  Rational peak_variation;

  [[nodiscard]] bool found() const { return best && best->slack.sign() >= 0; }
};

/// Variant A: s < alpha < beta < gamma < delta < t,
///   min(f(s), f(t)) - max(A_{alpha,beta} f, A_{gamma,delta} f) >= var / 24.
/// Variant B: alpha < beta < u < v < gamma < delta,
///   min(A_{alpha,beta} f, A_{gamma,delta} f) - A_{u,v} f >= var / 24.
struct Lemma5Witness {
  char variant = 'A';
  std::array<Index, 6> points{};
  int n = 0;
  Index k = 0;
  /// Value minus var / 24.
  Rational slack;
  /// For variant B: whether alpha, delta lie in [(k-64) 2^(n-5), (k+65) 2^(n-5)]
  /// and in [(k-64) 2^n, (k+65) 2^n] respectively.
  bool in_narrow_range = true;
  bool in_wide_range = true;
};

struct Lemma5Result {
  std::optional<Lemma5Witness> best_a;
  std::optional<Lemma5Witness> best_b;
  Rational bucket_variation;

  /// The variant with nonnegative slack, preferring the larger slack and A on ties.
  [[nodiscard]] std::optional<Lemma5Witness> witness() const {
    const bool a_ok = best_a && best_a->slack.sign() >= 0;
    const bool b_ok = best_b && best_b->slack.sign() >= 0;
    if (a_ok && (!b_ok || best_b->slack <= best_a->slack)) return best_a;
    if (b_ok) return best_b;
    return std::nullopt;
  }
  [[nodiscard]] bool found() const { return witness().has_value(); }
};

namespace detail {

/// num / den with den > 0, compared exactly.
template <class Int>
struct Fraction {
  Wide<Int> num{0};
  Wide<Int> den{1};
};

template <class Int>
int compare(const Fraction<Int>& a, const Fraction<Int>& b) {
  const Wide<Int> l = a.num * b.den;
  const Wide<Int> r = b.num * a.den;
  return l < r ? -1 : (r < l ? 1 : 0);
}

template <class Int>
Fraction<Int> as_fraction(const Average<Int>& a) {
  return {Wide<Int>(a.sum), Wide<Int>(static_cast<long>(a.len))};
}

template <class Int>
Fraction<Int> difference(const Fraction<Int>& a, const Fraction<Int>& b) {
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

template <class Int>
Rational to_rational(const MassTable<Int>& t, const Fraction<Int>& f) {
  auto big = [](const Wide<Int>& w) {
    if constexpr (std::is_same_v<Int, Integer>) {
      return Integer(w);
    } else {
      // Split the 128-bit value into two 64-bit halves.
      const bool neg = w < 0;
      unsigned __int128 m = neg ? static_cast<unsigned __int128>(-w) : static_cast<unsigned __int128>(w);
      Integer hi, lo;
      mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(m >> 64));
      mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(m & ~std::uint64_t{0}));
      Integer r = (hi << 64) + lo;
      return neg ? Integer(-r) : r;
    }
  };
  return Rational(big(f.num), big(f.den) * t.scale());
}

/// An interval [lo, hi] together with its average.
template <class Int>
struct Window {
  Index lo = 0, hi = -1;
  Average<Int> avg;
  [[nodiscard]] bool valid() const { return lo <= hi; }
};

/// For every end point e in [first, last], the extreme-average window [e-len, e]
/// with len in [g, 2g] and start >= start_min. `want_max` picks the largest
/// average, otherwise the smallest; ties keep the shorter window.
template <class Int>
std::vector<Window<Int>> best_ending_at(const MassTable<Int>& t, Index first, Index last, Index start_min, Index g,
                                        bool want_max) {
  std::vector<Window<Int>> out(static_cast<std::size_t>(std::max<Index>(0, last - first + 1)));
  for (Index e = first; e <= last; ++e) {
    Window<Int>& best = out[static_cast<std::size_t>(e - first)];
    for (Index len = g; len <= 2 * g; ++len) {
      const Index s = e - len;
      if (s < start_min) break;
      Average<Int> a = t.window(s, e);
      if (!best.valid() || (want_max ? compare(a, best.avg) > 0 : compare(a, best.avg) < 0)) best = {s, e, a};
    }
  }
  return out;
}

/// Mirror of best_ending_at: windows [s, s+len] with end <= end_max.
template <class Int>
std::vector<Window<Int>> best_starting_at(const MassTable<Int>& t, Index first, Index last, Index end_max, Index g,
                                          bool want_max) {
  std::vector<Window<Int>> out(static_cast<std::size_t>(std::max<Index>(0, last - first + 1)));
  for (Index s = first; s <= last; ++s) {
    Window<Int>& best = out[static_cast<std::size_t>(s - first)];
    for (Index len = g; len <= 2 * g; ++len) {
      const Index e = s + len;
      if (e > end_max) break;
      Average<Int> a = t.window(s, e);
      if (!best.valid() || (want_max ? compare(a, best.avg) > 0 : compare(a, best.avg) < 0)) best = {s, e, a};
    }
  }
  return out;
}

/// Running best from the left: entry i is the best window among entries 0..i.
/// Keeps the leftmost on ties.
template <class Int>
void running_best_left(std::vector<Window<Int>>& w, bool want_max) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    const auto& prev = w[i - 1];
    if (!prev.valid()) continue;
    if (!w[i].valid()) {
      w[i] = prev;
      continue;
    }
    const int c = compare(prev.avg, w[i].avg);
    if (want_max ? c >= 0 : c <= 0) w[i] = prev;
  }
}

/// Running best from the right: entry i is the best among entries i..end.
/// Keeps the leftmost on ties.
template <class Int>
void running_best_right(std::vector<Window<Int>>& w, bool want_max) {
  for (std::size_t i = w.size(); i-- > 1;) {
    const auto& next = w[i];
    if (!next.valid()) continue;
    auto& cur = w[i - 1];
    if (!cur.valid()) {
      cur = next;
      continue;
    }
    const int c = compare(next.avg, cur.avg);
    if (want_max ? c > 0 : c < 0) cur = next;
  }
}

template <class Int>
Lemma2Result lemma2_search(const MassTable<Int>& t, Index x, Index y, Lemma2Result result) {
  const Index L = y - x;
  const Index lo = x - 64 * L, hi = y + 64 * L;
  const Index u_min = lo + 4 * L, u_max = hi - 5 * L;
  if (u_min > u_max) return result;

  const std::size_t size = static_cast<std::size_t>(hi - lo + 1);
  auto at = [&](Index k) { return static_cast<std::size_t>(k - lo); };
  // prefix_max[i]: largest weight on [lo, lo + i]; suffix_max[i]: on [lo + i, hi].
  std::vector<Int> prefix_max(size), suffix_max(size);
  for (std::size_t i = 0; i < size; ++i) {
    const Int w = t.weight(lo + static_cast<Index>(i));
    prefix_max[i] = i == 0 ? w : std::max(prefix_max[i - 1], w);
  }
  for (std::size_t i = size; i-- > 0;) {
    const Int w = t.weight(lo + static_cast<Index>(i));
    suffix_max[i] = i + 1 == size ? w : std::max(suffix_max[i + 1], w);
  }

  // key(u) = min(f(s), f(t)) (L + 1) - S(u, u + L), in scaled units.
  auto key = [&](const Int& fs, const Int& ft, Index u) -> Wide<Int> {
    return Wide<Int>(std::min(fs, ft)) * static_cast<long>(L + 1) - Wide<Int>(t.sum(u, u + L));
  };
  std::optional<Wide<Int>> best;
  for (Index u = u_min; u <= u_max; ++u) {
    Wide<Int> k = key(prefix_max[at(u - 4 * L)], suffix_max[at(u + 5 * L)], u);
    if (!best || *best < k) best = std::move(k);
  }

  // Lexicographically smallest (s, u, t) attaining the best key.
  Lemma2Witness w;
  w.L = L;
  w.x = x;
  w.y = y;
  bool done = false;
  for (Index s = lo; s <= u_max - 4 * L && !done; ++s) {
    const Int fs = t.weight(s);
    for (Index u = s + 4 * L; u <= u_max && !done; ++u) {
      if (key(fs, suffix_max[at(u + 5 * L)], u) != *best) continue;
      for (Index tt = u + 5 * L; tt <= hi; ++tt) {
        if (key(fs, t.weight(tt), u) == *best) {
          w.s = s;
          w.u = u;
          w.v = u + L;
          w.t = tt;
          done = true;
          break;
        }
      }
    }
  }
  const Rational value = Rational(std::min(t.value(w.s), t.value(w.t))) - t.to_rational(t.window(w.u, w.v));
  w.slack = value - result.peak_variation / 12;
  result.best = w;
  return result;
}

template <class Int>
std::optional<Lemma5Witness> lemma5_variant_a(const MassTable<Int>& t, int n, Index k, const Rational& threshold) {
  const Index g = Index{1} << (n - 5);
  const Index lo = (k - 64) * g, hi = (k + 65) * g;

  std::set<Int, std::greater<>> levels;
  if (!t.is_zero())
    for (Index j = std::max(lo, t.lo()); j <= std::min(hi, t.hi()); ++j)
      if (t.weight(j) > Int(0)) levels.insert(t.weight(j));

  std::optional<Lemma5Witness> best;
  std::optional<Fraction<Int>> best_value;
  for (const Int& h : levels) {
    Index s = lo, e = hi;
    while (t.weight(s) < h) ++s;
    while (t.weight(e) < h) --e;
    if (e - s < 6 * g) continue;
    // [alpha, beta] ends in [s + 2g, e - 4g]; [gamma, delta] starts in [s + 4g, e - 2g].
    auto left = best_ending_at(t, s + 2 * g, e - 4 * g, s + g, g, false);
    auto right = best_starting_at(t, s + 4 * g, e - 2 * g, e - g, g, false);
    running_best_left(left, false);
    running_best_right(right, false);
    std::optional<std::pair<Window<Int>, Window<Int>>> pick;
    for (Index beta = s + 2 * g; beta <= e - 4 * g; ++beta) {
      const auto& l = left[static_cast<std::size_t>(beta - (s + 2 * g))];
      const auto& r = right[static_cast<std::size_t>(beta + 2 * g - (s + 4 * g))];
      if (!l.valid() || !r.valid()) continue;
      const Window<Int>& worse = compare(l.avg, r.avg) >= 0 ? l : r;
      if (!pick) {
        pick.emplace(l, r);
        continue;
      }
      const Window<Int>& cur = compare(pick->first.avg, pick->second.avg) >= 0 ? pick->first : pick->second;
      if (compare(worse.avg, cur.avg) < 0) pick.emplace(l, r);
    }
    if (!pick) continue;
    const Window<Int>& top = compare(pick->first.avg, pick->second.avg) >= 0 ? pick->first : pick->second;
    const Fraction<Int> value = difference(Fraction<Int>{Wide<Int>(h), Wide<Int>(1)}, as_fraction(top.avg));
    if (!best_value || compare(value, *best_value) > 0) {
      best_value = value;
      Lemma5Witness w;
      w.variant = 'A';
      w.n = n;
      w.k = k;
      w.points = {s, pick->first.lo, pick->first.hi, pick->second.lo, pick->second.hi, e};
      w.slack = to_rational(t, value) - threshold;
      best = w;
    }
  }
  return best;
}

template <class Int>
std::optional<std::pair<Lemma5Witness, Fraction<Int>>> lemma5_variant_b_on(const MassTable<Int>& t, int n, Index k,
                                                                           Index lo, Index hi) {
  const Index g = Index{1} << (n - 5);
  const Index narrow_lo = (k - 64) * g, narrow_hi = (k + 65) * g;
  const Index wide_lo = (k - 64) * (Index{1} << n), wide_hi = (k + 65) * (Index{1} << n);

  // [alpha, beta] ends in [lo + g, hi - 4g]; [gamma, delta] starts in [lo + 4g, hi - g].
  auto left = best_ending_at(t, lo + g, hi - 4 * g, lo, g, true);
  auto right = best_starting_at(t, lo + 4 * g, hi - g, hi, g, true);
  running_best_left(left, true);
  running_best_right(right, true);

  std::optional<Fraction<Int>> best_value;
  std::optional<Lemma5Witness> best;
  for (Index u = lo + 2 * g; u + 3 * g <= hi; ++u) {
    const auto& l = left[static_cast<std::size_t>(u - g - (lo + g))];
    if (!l.valid()) continue;
    for (Index len = g; len <= 2 * g; ++len) {
      const Index v = u + len;
      if (v + 2 * g > hi) break;
      const auto& r = right[static_cast<std::size_t>(v + g - (lo + 4 * g))];
      if (!r.valid()) continue;
      const Average<Int>& low = compare(l.avg, r.avg) <= 0 ? l.avg : r.avg;
      Fraction<Int> value = difference(as_fraction(low), as_fraction(t.window(u, v)));
      if (!best_value || compare(value, *best_value) > 0) {
        best_value = value;
        Lemma5Witness w;
        w.variant = 'B';
        w.n = n;
        w.k = k;
        w.points = {l.lo, l.hi, u, v, r.lo, r.hi};
        w.in_narrow_range = narrow_lo <= l.lo && r.hi <= narrow_hi;
        w.in_wide_range = wide_lo <= l.lo && r.hi <= wide_hi;
        best = w;
      }
    }
  }
  if (!best) return std::nullopt;
  return std::make_pair(*best, *best_value);
}

/// Variant B over the block range [(k-64) 2^(n-5), (k+65) 2^(n-5)] and over
/// the range [(k-64) 2^n, (k+65) 2^n]; the better of the two wins, the
/// narrow one on ties.
template <class Int>
std::optional<Lemma5Witness> lemma5_variant_b(const MassTable<Int>& t, int n, Index k, const Rational& threshold) {
  const Index g = Index{1} << (n - 5);
  auto narrow = lemma5_variant_b_on(t, n, k, (k - 64) * g, (k + 65) * g);
  auto wide = lemma5_variant_b_on(t, n, k, (k - 64) * (g << 5), (k + 65) * (g << 5));
  auto& pick = !narrow || (wide && compare(wide->second, narrow->second) > 0) ? wide : narrow;
  if (!pick) return std::nullopt;
  Lemma5Witness w = pick->first;
  w.slack = to_rational(t, pick->second) - threshold;
  return w;
}

}  // namespace detail

/// Exhaustive search for the tuple (s, u, v, t) of maximal slack over the
/// admissible geometry around [x, y], L = y - x. Among maximal tuples the
/// lexicographically smallest (s, u, t) is returned.
inline Lemma2Result find_lemma2_witness(const FiniteSequence& f, const std::vector<Peak>& peaks, Index x, Index y) {
  const Index L = y - x;
  if (L <= 0 || L % 2 != 0)
    throw PreconditionViolated("find_lemma2_witness: interval length " + std::to_string(L) + " is not even and positive");
  Lemma2Result result;
  for (const auto& pk : peaks) {
    result.peak_variation += pk.var;
    std::string why;
    if (!pk.essential) why = "not essential";
    else if (pk.r < x || pk.r > y) why = "summit outside [x, y]";
    else if (!pk.omega || *pk.omega <= 32 * L || *pk.omega > 64 * L) why = "radius outside (32L, 64L]";
    if (!why.empty() && result.hypotheses_met) {
      result.hypotheses_met = false;
      result.hypothesis_note = "peak at " + std::to_string(pk.r) + ": " + why;
    }
  }
  return detail::with_mass_table(f, [&](const auto& t) { return detail::lemma2_search(t, x, y, result); });
}

/// Searches both alternatives for the class E^n_k given as `bucket`.
inline Lemma5Result find_lemma5_witness(const FiniteSequence& f, const std::vector<Peak>& bucket, int n, Index k) {
  if (bucket.empty()) throw PreconditionViolated("find_lemma5_witness: empty class");
  if (n < 6) throw PreconditionViolated("find_lemma5_witness: scale n must be at least 6");
  Lemma5Result result;
  for (const auto& pk : bucket) {
    const PeakClass c = classify_peak(pk);
    if (c.tag != PeakClass::Tag::EssentialScaled || c.n != n || c.k != k)
      throw PreconditionViolated("find_lemma5_witness: peak at " + std::to_string(pk.r) + " is " + c.str() +
                                 ", not in E^" + std::to_string(n) + "_" + std::to_string(k));
    result.bucket_variation += pk.var;
  }
  const Rational threshold = result.bucket_variation / 24;
  detail::with_mass_table(f, [&](const auto& t) {
    result.best_a = detail::lemma5_variant_a(t, n, k, threshold);
    result.best_b = detail::lemma5_variant_b(t, n, k, threshold);
    return 0;
  });
  return result;
}

}  // namespace maxvar
