#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxvar/errors.hpp"
#include "maxvar/mass_table.hpp"
#include "maxvar/rational.hpp"
#include "maxvar/sequence.hpp"

namespace maxvar {

enum class OperatorKind { Centered, NonCentered };

inline std::string_view to_string(OperatorKind k) {
  return k == OperatorKind::Centered ? "centered" : "noncentered";
}

inline OperatorKind parse_operator_kind(std::string_view s) {
  if (s == "centered") return OperatorKind::Centered;
  if (s == "noncentered") return OperatorKind::NonCentered;
  throw ParseError("unknown operator '" + std::string(s) + "' (expected centered|noncentered)");
}

/// Average of f over [x, y].
inline Rational avg_interval(const FiniteSequence& f, Index x, Index y) {
  if (x > y) throw EmptyInterval("avg_interval: x > y");
  Rational s;
  if (!f.is_zero())
    for (Index k = std::max(x, f.lo()); k <= std::min(y, f.hi()); ++k) s += f(k);
  return s / Rational(to_integer(y - x + 1));
}

/// A_k f(n), the average over [n - k, n + k].
inline Rational avg_centered(const FiniteSequence& f, Index n, Index k) {
  if (k < 0) throw NegativeRadius("avg_centered: negative radius " + std::to_string(k));
  return avg_interval(f, n - k, n + k);
}

namespace detail {

/// Largest radius worth trying at n: beyond it the window holds the whole
/// support and averages only shrink.
inline Index radius_bound(Index lo, Index hi, Index n) {
  return std::max(n > lo ? n - lo : lo - n, n > hi ? n - hi : hi - n);
}

template <class Int>
Average<Int> centered_max(const MassTable<Int>& t, Index n) {
  Average<Int> best = t.window(n, n);
  const Index bound = radius_bound(t.lo(), t.hi(), n);
  for (Index k = 1; k <= bound; ++k) {
    Average<Int> cand = t.window(n - k, n + k);
    if (compare(cand, best) > 0) best = std::move(cand);
  }
  return best;
}

template <class Int>
Average<Int> noncentered_max(const MassTable<Int>& t, Index n) {
  Average<Int> best = t.window(n, n);
  const Index left_end = std::min(n, t.lo());
  const Index right_end = std::max(n, t.hi());
  for (Index l = left_end; l <= n; ++l) {
    for (Index h = n; h <= right_end; ++h) {
      Average<Int> cand = t.window(l, h);
      if (compare(cand, best) > 0) best = std::move(cand);
    }
  }
  return best;
}

template <class Int>
Average<Int> maximal_at(const MassTable<Int>& t, OperatorKind kind, Index n) {
  return kind == OperatorKind::Centered ? centered_max(t, n) : noncentered_max(t, n);
}

/// Largest w >= 0 with A_w f(n) equal to `target`, scanning up to the radius
/// past which S / (2w + 1) drops below the target.
template <class Int>
std::optional<Index> omega(const MassTable<Int>& t, Index n, const Average<Int>& target) {
  if (target.sum == Int(0)) return std::nullopt;
  // w_max = floor((S / Mf - 1) / 2) with Mf = target.sum / target.len.
  const Wide<Int> ratio_floor = Wide<Int>(t.total()) * static_cast<long>(target.len) / Wide<Int>(target.sum);
  const Wide<Int> w_max_wide = (ratio_floor - 1) / 2;
  const Index w_max = static_cast<Index>(MassTable<Int>::to_big(Int(w_max_wide)).get_si());
  std::optional<Index> found;
  for (Index w = 0; w <= w_max; ++w)
    if (compare(t.window(n - w, n + w), target) == 0) found = w;
  return found;
}

}  // namespace detail

/// Mf(n) for the centered operator. Throws ZeroFunction for f = 0.
inline Rational centered_max_at(const FiniteSequence& f, Index n) {
  if (f.is_zero()) throw ZeroFunction("centered_max_at: f is identically zero");
  return detail::with_mass_table(f, [&](const auto& t) { return t.to_rational(detail::centered_max(t, n)); });
}

/// M~f(n) for the non-centered operator. Throws ZeroFunction for f = 0.
inline Rational noncentered_max_at(const FiniteSequence& f, Index n) {
  if (f.is_zero()) throw ZeroFunction("noncentered_max_at: f is identically zero");
  return detail::with_mass_table(f, [&](const auto& t) { return t.to_rational(detail::noncentered_max(t, n)); });
}

inline Rational maximal_at(const FiniteSequence& f, OperatorKind kind, Index n) {
  return kind == OperatorKind::Centered ? centered_max_at(f, n) : noncentered_max_at(f, n);
}

/// The largest radius w >= 0 with A_w f(n) = Mf(n), or nullopt when no radius
/// attains the supremum.
inline std::optional<Index> radius_omega(const FiniteSequence& f, Index n) {
  if (f.is_zero()) throw ZeroFunction("radius_omega: f is identically zero");
  return detail::with_mass_table(f, [&](const auto& t) { return detail::omega(t, n, detail::centered_max(t, n)); });
}

/// Exact values of Mf (or M~f) on the support [a, b] plus a guard band of
/// width G on each side. Outside the support the maximal function is strictly
/// monotone with limit 0, which build_profile checks on the guard band; any
/// point beyond the band is evaluated by the closed-form tail law.
class MaximalProfile {
 public:
  MaximalProfile() = default;

  [[nodiscard]] OperatorKind kind() const { return kind_; }
  [[nodiscard]] bool is_zero() const { return source_.is_zero(); }
  [[nodiscard]] const FiniteSequence& source() const { return source_; }
  [[nodiscard]] const Interval& core() const { return core_; }
  [[nodiscard]] Index guard() const { return guard_; }
  /// Core plus guard band.
  [[nodiscard]] Interval band() const { return {core_.lo - guard_, core_.hi + guard_}; }
  [[nodiscard]] std::vector<Rational> core_values() const {
    if (is_zero()) return {};
    return {values_.begin() + guard_, values_.end() - guard_};
  }
  /// Values on band(), left to right.
  [[nodiscard]] const std::vector<Rational>& band_values() const { return values_; }

  /// Mf(n) for any integer n.
  [[nodiscard]] Rational at(Index n) const {
    if (is_zero()) return {};
    const Interval b = band();
    if (b.contains(n)) return values_[static_cast<std::size_t>(n - b.lo)];
    return tail_value(n);
  }
  Rational operator()(Index n) const { return at(n); }

  /// Closed form outside the support: for n >= b the best window is anchored
  /// at some j in [a, b] and runs to the right end b; mirrored for n <= a.
  [[nodiscard]] Rational tail_value(Index n) const {
    if (is_zero()) return {};
    const Index a = core_.lo, b = core_.hi;
    if (n < a) {
      Rational best;
      for (Index j = a; j <= b; ++j) {
        const Rational mass = prefix(j + 1) - prefix(a);
        const Index len = kind_ == OperatorKind::Centered ? 2 * (j - n) + 1 : j - n + 1;
        best = max(best, mass / Rational(to_integer(len)));
      }
      return best;
    }
    if (n > b) {
      Rational best;
      for (Index j = a; j <= b; ++j) {
        const Rational mass = prefix(b + 1) - prefix(j);
        const Index len = kind_ == OperatorKind::Centered ? 2 * (n - j) + 1 : n - j + 1;
        best = max(best, mass / Rational(to_integer(len)));
      }
      return best;
    }
    throw PreconditionViolated("tail_value: n inside the support");
  }

  friend MaximalProfile build_profile(const FiniteSequence& f, OperatorKind kind);

 private:
  [[nodiscard]] const Rational& prefix(Index k) const { return prefix_[static_cast<std::size_t>(k - core_.lo)]; }

  OperatorKind kind_ = OperatorKind::Centered;
  FiniteSequence source_;
  Interval core_;
  Index guard_ = 0;
  std::vector<Rational> values_;
  std::vector<Rational> prefix_;
};

/// Guard band width on each side of the support.
inline Index guard_width(const FiniteSequence& f) { return std::max<Index>(8, f.size()); }

inline MaximalProfile build_profile(const FiniteSequence& f, OperatorKind kind) {
  MaximalProfile p;
  p.kind_ = kind;
  p.source_ = f;
  if (f.is_zero()) return p;
  p.core_ = f.support();
  p.guard_ = guard_width(f);
  p.prefix_.reserve(static_cast<std::size_t>(f.size() + 1));
  p.prefix_.emplace_back();
  for (const auto& v : f.values()) p.prefix_.push_back(p.prefix_.back() + v);

  const Interval band = p.band();
  p.values_ = detail::with_mass_table(f, [&](const auto& t) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(band.points()));
    for (Index n = band.lo; n <= band.hi; ++n) out.push_back(t.to_rational(detail::maximal_at(t, kind, n)));
    return out;
  });

  const auto& v = p.values_;
  const auto g = static_cast<std::size_t>(p.guard_);
  for (std::size_t i = 0; i < g; ++i) {
    if (!(v[i] < v[i + 1]))
      throw TailCertificateFailed("maximal function not strictly increasing left of the support at " +
                                  std::to_string(band.lo + static_cast<Index>(i)));
    const std::size_t j = v.size() - 1 - i;
    if (!(v[j] < v[j - 1]))
      throw TailCertificateFailed("maximal function not strictly decreasing right of the support at " +
                                  std::to_string(band.lo + static_cast<Index>(j)));
  }
  return p;
}

}  // namespace maxvar
