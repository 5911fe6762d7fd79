#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "maxvar/errors.hpp"
#include "maxvar/rational.hpp"

namespace maxvar {

using Index = std::int64_t;

/// Integer interval [lo, hi]. Its length is hi - lo, so a single point has
/// length 0.
struct Interval {
  Index lo = 0;
  Index hi = 0;

  Interval() = default;
  Interval(Index l, Index h) : lo(l), hi(h) {
    if (l > h) throw EmptyInterval("interval [" + std::to_string(l) + ", " + std::to_string(h) + "] is empty");
  }

  [[nodiscard]] Index length() const { return hi - lo; }
  [[nodiscard]] Index points() const { return hi - lo + 1; }
  [[nodiscard]] bool contains(Index n) const { return lo <= n && n <= hi; }
  [[nodiscard]] bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A non-negative function on the integers that vanishes outside
/// [offset, offset + size() - 1]. Stored values at both ends are nonzero;
/// the zero function has no stored values.
class FiniteSequence {
 public:
  FiniteSequence() = default;

  /// Strips leading and trailing zeros. Throws NegativeValue on a negative entry.
  static FiniteSequence normalize(Index raw_offset, std::vector<Rational> raw_values) {
    for (const auto& v : raw_values)
      if (v.sign() < 0) throw NegativeValue("negative value " + v.str() + " in sequence");
    auto first = std::find_if(raw_values.begin(), raw_values.end(), [](const Rational& v) { return !v.is_zero(); });
    if (first == raw_values.end()) return {};
    auto last = std::find_if(raw_values.rbegin(), raw_values.rend(), [](const Rational& v) { return !v.is_zero(); });
    FiniteSequence f;
    f.offset_ = raw_offset + (first - raw_values.begin());
    f.values_.assign(first, last.base());
    return f;
  }

  static FiniteSequence delta(Index at, const Rational& mass = 1) { return normalize(at, {mass}); }

  /// Indicator of the given points, each with value 1.
  static FiniteSequence ones_at(const std::vector<Index>& points) {
    if (points.empty()) return {};
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    std::vector<Rational> v(static_cast<std::size_t>(*hi - *lo + 1), Rational(0));
    for (Index p : points) v[static_cast<std::size_t>(p - *lo)] = 1;
    return normalize(*lo, std::move(v));
  }

  [[nodiscard]] bool is_zero() const { return values_.empty(); }
  [[nodiscard]] Index offset() const { return offset_; }
  [[nodiscard]] Index size() const { return static_cast<Index>(values_.size()); }
  [[nodiscard]] const std::vector<Rational>& values() const { return values_; }

  /// Support bounds [a, b]. Undefined for the zero function.
  [[nodiscard]] Index lo() const { return offset_; }
  [[nodiscard]] Index hi() const { return offset_ + size() - 1; }
  [[nodiscard]] Interval support() const { return {lo(), hi()}; }

  [[nodiscard]] const Rational& at(Index k) const {
    static const Rational zero;
    if (k < offset_ || k > hi()) return zero;
    return values_[static_cast<std::size_t>(k - offset_)];
  }
  const Rational& operator()(Index k) const { return at(k); }

  [[nodiscard]] Rational mass() const {
    Rational s;
    for (const auto& v : values_) s += v;
    return s;
  }

  [[nodiscard]] Rational max_value() const {
    Rational m;
    for (const auto& v : values_) m = max(m, v);
    return m;
  }

  /// `offset:v1,v2,...`, used in CSV rows and log lines.
  [[nodiscard]] std::string compact() const {
    std::string s = std::to_string(offset_) + ":";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ',';
      s += values_[i].str();
    }
    return s;
  }

  friend bool operator==(const FiniteSequence& a, const FiniteSequence& b) {
    return a.offset_ == b.offset_ && a.values_ == b.values_;
  }

 private:
  Index offset_ = 0;
  std::vector<Rational> values_;
};

inline FiniteSequence normalize(Index raw_offset, std::vector<Rational> raw_values) {
  return FiniteSequence::normalize(raw_offset, std::move(raw_values));
}

/// g(k) = f(k - d)
inline FiniteSequence translate(const FiniteSequence& f, Index d) {
  if (f.is_zero()) return f;
  return normalize(f.offset() + d, f.values());
}

/// g(k) = f(-k)
inline FiniteSequence reflect(const FiniteSequence& f) {
  if (f.is_zero()) return f;
  std::vector<Rational> v(f.values().rbegin(), f.values().rend());
  return normalize(-f.hi(), std::move(v));
}

/// g(k) = c f(k)
inline FiniteSequence scale(const FiniteSequence& f, const Rational& c) {
  if (c.sign() < 0) throw NegativeValue("negative scale factor " + c.str());
  std::vector<Rational> v;
  v.reserve(f.values().size());
  for (const auto& x : f.values()) v.push_back(x * c);
  return normalize(f.offset(), std::move(v));
}

// seqtext v1:
//   offset <integer>
//   <value> <value> ...
// `#` starts a comment. Values may continue over several lines.

inline FiniteSequence parse_seqtext(std::istream& in) {
  std::string line;
  bool have_offset = false;
  Index offset = 0;
  std::vector<Rational> values;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!have_offset) {
      if (!(ls >> tok)) continue;
      if (tok != "offset") throw ParseError("line " + std::to_string(lineno) + ": expected 'offset <integer>'");
      std::string num;
      if (!(ls >> num)) throw ParseError("line " + std::to_string(lineno) + ": missing offset value");
      const Rational r = Rational::parse(num);
      if (!r.is_integer() || num.find('/') != std::string::npos)
        throw ParseError("line " + std::to_string(lineno) + ": offset must be an integer");
      offset = r.numerator().get_si();
      if (ls >> tok) throw ParseError("line " + std::to_string(lineno) + ": trailing tokens after offset");
      have_offset = true;
      continue;
    }
    while (ls >> tok) {
      Rational v = Rational::parse(tok);
      if (v.sign() < 0) throw NegativeValue("line " + std::to_string(lineno) + ": negative value " + tok);
      values.push_back(std::move(v));
    }
  }
  if (!have_offset) throw ParseError("missing 'offset' header");
  return normalize(offset, std::move(values));
}

inline FiniteSequence parse_seqtext(const std::string& text) {
  std::istringstream in(text);
  return parse_seqtext(in);
}

inline std::string to_seqtext(const FiniteSequence& f) {
  std::string s = "offset " + std::to_string(f.offset()) + "\n";
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (i) s += ' ';
    s += f.values()[i].str();
  }
  s += '\n';
  return s;
}

}  // namespace maxvar
