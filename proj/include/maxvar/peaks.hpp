#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxvar/errors.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/rational.hpp"
#include "maxvar/sequence.hpp"

namespace maxvar {

/// Three integers p < r < q with Mf(p) < Mf(r) > Mf(q).
struct Peak {
  Index p = 0, r = 0, q = 0;
  Rational mf_p, mf_r, mf_q;
  Rational var;  // 2 Mf(r) - Mf(p) - Mf(q)
  /// max over p < k < q of f(k) is at most Mf(r) - var / 4. An empty
  /// interior (q = p + 1) counts as essential.
  bool essential = false;
  /// Largest radius attaining Mf(r); only computed for essential peaks.
  std::optional<Index> omega;

  friend bool operator==(const Peak&, const Peak&) = default;
};

/// Alternating extremal system b0 <= a1 < b1 < a2 < ... < a_{s+1} <= b_{s+1}
/// of Mf on a window, with plateaus collapsed to their leftmost index.
struct PeakSystem {
  Interval window;
  Index left_boundary = 0;   // b0
  Index right_boundary = 0;  // b_{s+1}
  std::vector<Index> minima;  // a1 .. a_{s+1}
  std::vector<Index> maxima;  // b1 .. b_s
  std::vector<Peak> peaks;
  Rational left_term;   // Mf(b0) - Mf(a1)
  Rational right_term;  // Mf(b_{s+1}) - Mf(a_{s+1})
  /// Mf is monotone (or constant) on the window, so there are no peaks.
  bool degenerate = false;
};

struct PeakClass {
  enum class Tag { NonEssential, EssentialSmall, EssentialScaled };
  Tag tag = Tag::NonEssential;
  int n = 0;    // scale: 2^(n-1) < omega <= 2^n
  Index k = 0;  // block: k 2^(n-5) < r <= (k+1) 2^(n-5)

  [[nodiscard]] std::string str() const {
    switch (tag) {
      case Tag::NonEssential: return "NonEssential";
      case Tag::EssentialSmall: return "EssentialSmall";
      case Tag::EssentialScaled: return "EssentialScaled(" + std::to_string(n) + "," + std::to_string(k) + ")";
    }
    return {};
  }
  friend bool operator==(const PeakClass&, const PeakClass&) = default;
};

struct ClassifiedPeak {
  Peak peak;
  PeakClass cls;
};

namespace detail {

inline Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Smallest n >= 0 with 2^n >= w.
inline int scale_exponent(Index w) {
  int n = 0;
  while ((Index{1} << n) < w) ++n;
  return n;
}

inline Rational interior_max(const FiniteSequence& f, Index p, Index q) {
  Rational m;
  if (f.is_zero()) return m;
  for (Index k = std::max(p + 1, f.lo()); k <= std::min(q - 1, f.hi()); ++k) m = max(m, f(k));
  return m;
}

}  // namespace detail

inline bool is_essential(const FiniteSequence& f, const Peak& pk) {
  if (pk.q == pk.p + 1) return true;
  return detail::interior_max(f, pk.p, pk.q) <= pk.mf_r - pk.var / 4;
}

/// Scans Mf over `window` and returns its alternating extremal system. Peaks
/// carry their variation, essentiality and (when essential) radius omega.
/// Requires a centered profile.
inline PeakSystem extract_system(const MaximalProfile& profile, const Interval& window) {
  if (profile.kind() != OperatorKind::Centered)
    throw PreconditionViolated("extract_system: peak analysis is defined for the centered operator");
  PeakSystem sys;
  sys.window = window;

  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(window.points()));
  for (Index n = window.lo; n <= window.hi; ++n) v.push_back(profile.at(n));
  auto val = [&](Index n) -> const Rational& { return v[static_cast<std::size_t>(n - window.lo)]; };

  std::vector<Index> runs;  // leftmost index of each plateau
  for (Index n = window.lo; n <= window.hi; ++n)
    if (runs.empty() || val(n) != val(runs.back())) runs.push_back(n);

  std::vector<Index> ext{runs.front()};
  for (std::size_t j = 1; j + 1 < runs.size(); ++j) {
    const bool up_before = val(runs[j - 1]) < val(runs[j]);
    const bool up_after = val(runs[j]) < val(runs[j + 1]);
    if (up_before != up_after) ext.push_back(runs[j]);
  }
  if (runs.size() > 1) ext.push_back(runs.back());

  if (ext.size() == 1) {
    sys.left_boundary = sys.right_boundary = ext.front();
    sys.minima = {ext.front()};
    sys.degenerate = true;
    return sys;
  }

  std::size_t first_min = 0;
  if (val(ext[1]) < val(ext[0])) first_min = 1;  // window opens on a descent
  std::size_t last_min = ext.size() - 1;
  if (val(ext[last_min - 1]) < val(ext[last_min])) --last_min;  // closes on an ascent

  sys.left_boundary = ext.front();
  sys.right_boundary = ext.back();
  for (std::size_t j = first_min; j <= last_min; ++j) (j % 2 == first_min % 2 ? sys.minima : sys.maxima).push_back(ext[j]);
  sys.left_term = val(ext.front()) - val(ext[first_min]);
  sys.right_term = val(ext.back()) - val(ext[last_min]);

  const FiniteSequence& f = profile.source();
  detail::with_mass_table(f, [&](const auto& t) {
    for (std::size_t i = 0; i < sys.maxima.size(); ++i) {
      Peak pk;
      pk.p = sys.minima[i];
      pk.r = sys.maxima[i];
      pk.q = sys.minima[i + 1];
      pk.mf_p = val(pk.p);
      pk.mf_r = val(pk.r);
      pk.mf_q = val(pk.q);
      pk.var = 2 * pk.mf_r - pk.mf_p - pk.mf_q;
      pk.essential = is_essential(f, pk);
      if (pk.essential) pk.omega = detail::omega(t, pk.r, detail::centered_max(t, pk.r));
      sys.peaks.push_back(std::move(pk));
    }
    return 0;
  });
  sys.degenerate = sys.peaks.empty();
  return sys;
}

/// The window [a - G, b + G] covering the profile's guard band.
inline PeakSystem extract_system(const MaximalProfile& profile) {
  if (profile.is_zero()) return extract_system(profile, Interval{0, 0});
  return extract_system(profile, profile.band());
}

/// Sum of peak variations.
inline Rational peak_variation(const PeakSystem& sys) {
  Rational v;
  for (const auto& pk : sys.peaks) v += pk.var;
  return v;
}

/// Class of a single peak; a function of (essential, omega, r) alone.
inline PeakClass classify_peak(const Peak& pk) {
  PeakClass c;
  if (!pk.essential) return c;
  if (!pk.omega) throw OmegaNotAttained("no radius attains Mf at summit " + std::to_string(pk.r));
  const int n = detail::scale_exponent(*pk.omega);
  if (n > 5) {
    c.tag = PeakClass::Tag::EssentialScaled;
    c.n = n;
    c.k = detail::floor_div(pk.r - 1, Index{1} << (n - 5));
  } else {
    c.tag = PeakClass::Tag::EssentialSmall;
  }
  return c;
}

inline std::vector<ClassifiedPeak> classify(const PeakSystem& sys) {
  std::vector<ClassifiedPeak> out;
  out.reserve(sys.peaks.size());
  for (const auto& pk : sys.peaks) out.push_back({pk, classify_peak(pk)});
  return out;
}

}  // namespace maxvar
