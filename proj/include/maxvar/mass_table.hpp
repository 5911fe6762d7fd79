#pragma once

#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "maxvar/rational.hpp"
#include "maxvar/sequence.hpp"

namespace maxvar::detail {

// Window sums are kept as integers: every value is multiplied by the common
// denominator `scale` of the sequence. Averages then compare by cross
// multiplication without touching rationals. Sequences whose scaled mass fits
// in 62 bits use machine integers with 128-bit products; the rest fall back
// to GMP.

template <class Int>
struct WideOf;
template <>
struct WideOf<std::int64_t> {
  using type = __int128;
};
template <>
struct WideOf<Integer> {
  using type = Integer;
};

template <class Int>
using Wide = typename WideOf<Int>::type;

/// A window average sum / (scale * len).
template <class Int>
struct Average {
  Int sum{0};
  Index len = 1;
};

template <class Int>
inline int compare(const Average<Int>& a, const Average<Int>& b) {
  const Wide<Int> lhs = Wide<Int>(a.sum) * static_cast<long>(b.len);
  const Wide<Int> rhs = Wide<Int>(b.sum) * static_cast<long>(a.len);
  return lhs < rhs ? -1 : (rhs < lhs ? 1 : 0);
}

template <class Int>
class MassTable {
 public:
  MassTable(const FiniteSequence& f, const Integer& scale) : scale_(scale) {
    if (f.is_zero()) return;
    lo_ = f.lo();
    hi_ = f.hi();
    weights_.reserve(f.values().size());
    prefix_.reserve(f.values().size() + 1);
    for (const auto& v : f.values()) {
      Integer w = v.numerator() * (scale / v.denominator());
      weights_.push_back(convert(w));
      prefix_.push_back(prefix_.back() + weights_.back());
    }
  }

  [[nodiscard]] bool is_zero() const { return weights_.empty(); }
  [[nodiscard]] Index lo() const { return lo_; }
  [[nodiscard]] Index hi() const { return hi_; }
  [[nodiscard]] const Integer& scale() const { return scale_; }
  [[nodiscard]] const Int& total() const { return prefix_.back(); }

  [[nodiscard]] Int weight(Index k) const {
    if (k < lo_ || k > hi_) return Int(0);
    return weights_[static_cast<std::size_t>(k - lo_)];
  }

  /// Scaled sum over [x, y]; zero when the window misses the support.
  [[nodiscard]] Int sum(Index x, Index y) const {
    if (is_zero()) return Int(0);
    x = std::max(x, lo_);
    y = std::min(y, hi_);
    if (x > y) return Int(0);
    return prefix_[static_cast<std::size_t>(y - lo_ + 1)] - prefix_[static_cast<std::size_t>(x - lo_)];
  }

  [[nodiscard]] Average<Int> window(Index x, Index y) const { return {sum(x, y), y - x + 1}; }

  [[nodiscard]] Rational to_rational(const Average<Int>& a) const {
    return Rational(to_big(a.sum), scale_ * to_integer(a.len));
  }
  [[nodiscard]] Rational value(Index k) const { return Rational(to_big(weight(k)), scale_); }

  static Integer to_big(const Int& v) {
    if constexpr (std::is_same_v<Int, Integer>) {
      return v;
    } else {
      return to_integer(v);
    }
  }

 private:
  static Int convert(const Integer& w) {
    if constexpr (std::is_same_v<Int, Integer>) {
      return w;
    } else {
      return static_cast<std::int64_t>(w.get_si());
    }
  }

  Integer scale_;
  Index lo_ = 0;
  Index hi_ = -1;
  std::vector<Int> weights_;
  std::vector<Int> prefix_{Int(0)};
};

/// Least common denominator of the stored values.
inline Integer common_denominator(const FiniteSequence& f) {
  Integer d = 1;
  for (const auto& v : f.values()) d = lcm(d, v.denominator());
  return d;
}

/// Runs `fn` with the narrowest mass table able to hold `f` exactly.
template <class Fn>
decltype(auto) with_mass_table(const FiniteSequence& f, Fn&& fn) {
  const Integer scale = common_denominator(f);
  Integer total = 0;
  for (const auto& v : f.values()) total += v.numerator() * (scale / v.denominator());
  static const Integer limit = Integer(1) << 62;
  if (total < limit && scale < limit) {
    const MassTable<std::int64_t> table(f, scale);
    return std::forward<Fn>(fn)(table);
  }
  const MassTable<Integer> table(f, scale);
  return std::forward<Fn>(fn)(table);
}

}  // namespace maxvar::detail
