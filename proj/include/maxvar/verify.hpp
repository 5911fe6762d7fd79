#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxvar/bounds.hpp"
#include "maxvar/errors.hpp"
#include "maxvar/peaks.hpp"
#include "maxvar/witness_check.hpp"
#include "maxvar/witnesses.hpp"

namespace maxvar {

enum class Check { Lemma1, Lemma2, Lemma3, Lemma4, Lemma5, Theorem, NonCentered };

inline std::string_view to_string(Check c) {
  switch (c) {
    case Check::Lemma1: return "1";
    case Check::Lemma2: return "2";
    case Check::Lemma3: return "3";
    case Check::Lemma4: return "4";
    case Check::Lemma5: return "5";
    case Check::Theorem: return "thm";
    case Check::NonCentered: return "nc";
  }
  return "?";
}

/// Parses a comma separated list such as "1,3,thm". `nc` selects the
/// non-centered bound Var(M~f) <= Var f.
inline std::vector<Check> parse_checks(std::string_view csv) {
  std::vector<Check> out;
  std::string item;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, item, ',')) {
    if (item == "1") out.push_back(Check::Lemma1);
    else if (item == "2") out.push_back(Check::Lemma2);
    else if (item == "3") out.push_back(Check::Lemma3);
    else if (item == "4") out.push_back(Check::Lemma4);
    else if (item == "5") out.push_back(Check::Lemma5);
    else if (item == "thm") out.push_back(Check::Theorem);
    else if (item == "nc") out.push_back(Check::NonCentered);
    else throw ParseError("unknown check '" + item + "' (expected 1,2,3,4,5,thm,nc)");
  }
  if (out.empty()) throw ParseError("empty check list");
  return out;
}

struct Lemma2Run {
  std::vector<Peak> peaks;
  Lemma2Result result;
  std::optional<WitnessVerdict> verdict;
};

struct Lemma5Run {
  int n = 0;
  Index k = 0;
  std::vector<Peak> bucket;
  Lemma5Result result;
  std::optional<WitnessVerdict> verdict;
};

struct VerificationReport {
  PeakSystem system;
  std::vector<ClassifiedPeak> classified;
  std::vector<BoundCheck> checks;
  std::vector<Lemma2Run> lemma2;
  std::vector<Lemma5Run> lemma5;
  std::optional<TheoremCheck> theorem;

  [[nodiscard]] bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  /// Var(Mf) > Var f: the centered ratio exceeds 1.
  [[nodiscard]] bool finding() const { return theorem && !theorem->empirical.pass; }
};

/// Smallest even L with 32L < omega <= 64L, if any.
inline std::optional<Index> lemma2_length_for(Index omega) {
  Index L = (omega + 63) / 64;
  if (L % 2 != 0) ++L;
  if (L <= 0 || 32 * L >= omega) return std::nullopt;
  return L;
}

namespace detail {

inline BoundCheck aggregate(std::string lemma, std::vector<BoundCheck> parts, std::string note = {}) {
  Index failed = 0;
  for (const auto& p : parts) failed += p.pass ? 0 : 1;
  BoundCheck c = make_check(std::move(lemma), Rational(to_integer(failed)), Rational(0));
  c.parts = std::move(parts);
  c.note = std::move(note);
  return c;
}

}  // namespace detail

/// Runs the requested checks on f over `window` (default: the guard band of
/// the centered profile).
inline VerificationReport run_verification(const FiniteSequence& f, const std::vector<Check>& checks,
                                           std::optional<Interval> window = std::nullopt) {
  VerificationReport rep;
  const MaximalProfile profile = build_profile(f, OperatorKind::Centered);
  rep.system = window ? extract_system(profile, *window) : extract_system(profile);
  rep.classified = classify(rep.system);

  for (Check which : checks) {
    switch (which) {
      case Check::Lemma1: {
        std::vector<BoundCheck> parts;
        for (const auto& pk : rep.system.peaks)
          if (pk.essential) parts.push_back(check_lemma1(f, pk));
        rep.checks.push_back(detail::aggregate("1", std::move(parts)));
        break;
      }
      case Check::Lemma3:
        rep.checks.push_back(check_lemma3(f, rep.system));
        break;
      case Check::Lemma4:
        rep.checks.push_back(check_lemma4(f, rep.system));
        break;
      case Check::Lemma2: {
        std::vector<BoundCheck> parts;
        std::vector<Index> seen;
        for (const auto& anchor : rep.system.peaks) {
          if (!anchor.essential || !anchor.omega) continue;
          const auto L = lemma2_length_for(*anchor.omega);
          if (!L) continue;
          const Index x = anchor.r - *L / 2, y = x + *L;
          if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
          seen.push_back(x);
          Lemma2Run run;
          for (const auto& pk : rep.system.peaks)
            if (pk.essential && pk.omega && x <= pk.r && pk.r <= y && 32 * *L < *pk.omega && *pk.omega <= 64 * *L)
              run.peaks.push_back(pk);
          run.result = find_lemma2_witness(f, run.peaks, x, y);
          BoundCheck part{"2", run.result.peak_variation / 12, Rational(), false};
          if (run.result.best) {
            const auto& w = *run.result.best;
            part.rhs = w.slack + part.lhs;
            part.points = {w.s, w.u, w.v, w.t};
            run.verdict = verify_lemma2_witness(f, run.peaks, w);
            part.pass = run.result.found() && run.verdict->ok;
            if (!run.verdict->ok) part.note = run.verdict->reason;
          }
          part.note += (part.note.empty() ? "" : "; ") + std::string("x=") + std::to_string(x) +
                       " y=" + std::to_string(y);
          parts.push_back(std::move(part));
          rep.lemma2.push_back(std::move(run));
        }
        rep.checks.push_back(
            detail::aggregate("2", std::move(parts), rep.lemma2.empty() ? "no essential peak admits an even L" : ""));
        break;
      }
      case Check::Lemma5: {
        std::map<std::pair<int, Index>, std::vector<Peak>> buckets;
        for (const auto& cp : rep.classified)
          if (cp.cls.tag == PeakClass::Tag::EssentialScaled) buckets[{cp.cls.n, cp.cls.k}].push_back(cp.peak);
        std::vector<BoundCheck> parts;
        for (auto& [key, bucket] : buckets) {
          Lemma5Run run{key.first, key.second, std::move(bucket)};
          run.result = find_lemma5_witness(f, run.bucket, run.n, run.k);
          BoundCheck part{"5", run.result.bucket_variation / 24, Rational(), false};
          const auto w = run.result.witness();
          const auto& shown = w ? w : (run.result.best_a ? run.result.best_a : run.result.best_b);
          if (shown) {
            part.rhs = shown->slack + part.lhs;
            part.points.assign(shown->points.begin(), shown->points.end());
            part.note = std::string("variant ") + shown->variant + " n=" + std::to_string(run.n) +
                        " k=" + std::to_string(run.k);
          }
          if (w) {
            run.verdict = verify_lemma5_witness(f, run.bucket, *w);
            part.pass = run.verdict->ok;
            if (!run.verdict->ok) part.note += "; " + run.verdict->reason;
          }
          parts.push_back(std::move(part));
          rep.lemma5.push_back(std::move(run));
        }
        rep.checks.push_back(
            detail::aggregate("5", std::move(parts), rep.lemma5.empty() ? "no scaled essential class" : ""));
        break;
      }
      case Check::Theorem: {
        rep.theorem = theorem_check_from(var_sequence(f), var_profile(profile));
        rep.checks.push_back(rep.theorem->proven);
        break;
      }
      case Check::NonCentered:
        rep.checks.push_back(check_noncentered(f));
        break;
    }
  }
  return rep;
}

}  // namespace maxvar
