#pragma once

// JSON encoding of library results. Rationals are always "p/q" strings.

#include <json.hpp>

#include <optional>
#include <string>

#include "maxvar/maxvar.hpp"

namespace maxvar::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "maxvar";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

inline Json to_json(const Rational& r) { return r.str(); }

template <class T>
Json to_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

inline Json to_json(const FiniteSequence& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) values.push_back(v.str());
  return Json{{"offset", f.offset()}, {"values", std::move(values)}};
}

inline Json to_json(const BoundCheck& c) {
  Json j{{"check", c.lemma}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"pass", c.pass}};
  j["points"] = c.points;
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.parts.empty()) {
    Json parts = Json::array();
    for (const auto& p : c.parts) parts.push_back(to_json(p));
    j["parts"] = std::move(parts);
  }
  return j;
}

inline Json to_json(const Peak& p) {
  return Json{{"p", p.p},
              {"r", p.r},
              {"q", p.q},
              {"mf_p", to_json(p.mf_p)},
              {"mf_r", to_json(p.mf_r)},
              {"mf_q", to_json(p.mf_q)},
              {"var", to_json(p.var)},
              {"essential", p.essential},
              {"omega", p.omega ? Json(*p.omega) : Json(nullptr)}};
}

inline Json to_json(const ClassifiedPeak& cp) {
  Json j = to_json(cp.peak);
  j["class"] = cp.cls.str();
  return j;
}

inline Json to_json(const PeakSystem& s) {
  Json peaks = Json::array();
  for (const auto& p : s.peaks) peaks.push_back(to_json(p));
  return Json{{"window", {s.window.lo, s.window.hi}},
              {"left_boundary", s.left_boundary},
              {"right_boundary", s.right_boundary},
              {"minima", s.minima},
              {"maxima", s.maxima},
              {"left_term", to_json(s.left_term)},
              {"right_term", to_json(s.right_term)},
              {"degenerate", s.degenerate}};
}

inline Json to_json(const VariationReport& r) {
  return Json{{"op", std::string(to_string(r.kind))},
              {"var_f", to_json(r.var_f)},
              {"var_Mf", to_json(r.var_Mf)},
              {"ratio", to_json(r.ratio)}};
}

inline Json to_json(const WitnessVerdict& v) {
  Json j{{"ok", v.ok}, {"slack", to_json(v.slack)}};
  if (!v.ok) j["reason"] = v.reason;
  return j;
}

inline Json to_json(const Lemma2Witness& w) {
  return Json{{"s", w.s}, {"u", w.u}, {"v", w.v}, {"t", w.t}, {"L", w.L},
              {"x", w.x}, {"y", w.y}, {"slack", to_json(w.slack)}};
}

inline Json to_json(const Lemma5Witness& w) {
  Json j{{"variant", std::string(1, w.variant)}, {"points", w.points}, {"n", w.n}, {"k", w.k},
         {"slack", to_json(w.slack)}};
  if (w.variant == 'B') {
    j["in_narrow_range"] = w.in_narrow_range;
    j["in_wide_range"] = w.in_wide_range;
  }
  return j;
}

inline Json to_json(const Lemma2Run& run) {
  Json peaks = Json::array();
  for (const auto& p : run.peaks) peaks.push_back(p.r);
  Json j{{"summits", std::move(peaks)},
         {"hypotheses_met", run.result.hypotheses_met},
         {"peak_variation", to_json(run.result.peak_variation)},
         {"found", run.result.found()},
         {"witness", run.result.best ? to_json(*run.result.best) : Json(nullptr)},
         {"verdict", run.verdict ? to_json(*run.verdict) : Json(nullptr)}};
  if (!run.result.hypothesis_note.empty()) j["hypothesis_note"] = run.result.hypothesis_note;
  return j;
}

inline Json to_json(const Lemma5Run& run) {
  Json summits = Json::array();
  for (const auto& p : run.bucket) summits.push_back(p.r);
  const auto w = run.result.witness();
  return Json{{"n", run.n},
              {"k", run.k},
              {"summits", std::move(summits)},
              {"bucket_variation", to_json(run.result.bucket_variation)},
              {"found", run.result.found()},
              {"best_a", run.result.best_a ? to_json(*run.result.best_a) : Json(nullptr)},
              {"best_b", run.result.best_b ? to_json(*run.result.best_b) : Json(nullptr)},
              {"witness", w ? to_json(*w) : Json(nullptr)},
              {"verdict", run.verdict ? to_json(*run.verdict) : Json(nullptr)}};
}

inline Json to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(to_json(c));
  Json peaks = Json::array();
  for (const auto& cp : rep.classified) peaks.push_back(to_json(cp));
  Json l2 = Json::array();
  for (const auto& r : rep.lemma2) l2.push_back(to_json(r));
  Json l5 = Json::array();
  for (const auto& r : rep.lemma5) l5.push_back(to_json(r));
  Json j{{"all_pass", rep.all_pass()},
         {"finding", rep.finding()},
         {"system", to_json(rep.system)},
         {"peaks", std::move(peaks)},
         {"checks", std::move(checks)},
         {"lemma2", std::move(l2)},
         {"lemma5", std::move(l5)}};
  j["conjecture"] = rep.theorem ? to_json(rep.theorem->empirical) : Json(nullptr);
  return j;
}

inline std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 15];
  return s;
}

inline Json to_json(const CampaignReport& rep) {
  Json stats = Json::object();
  for (const auto& [k, s] : rep.lemma_stats) stats[k] = Json{{"run", s.run}, {"passed", s.passed}};
  Json violations = Json::array();
  for (const auto& v : rep.violations) violations.push_back(Json{{"seq", to_json(v.f)}, {"check", to_json(v.check)}});
  Json findings = Json::array();
  for (const auto& f : rep.findings) findings.push_back(Json{{"seq", to_json(f.f)}, {"ratio", to_json(f.ratio)}});
  Json j{{"mode", rep.mode},
         {"op", std::string(to_string(rep.kind))},
         {"raw_instances", rep.raw_instances},
         {"instances", rep.instances},
         {"ratio_instances", rep.ratio_instances},
         {"max_ratio", to_json(rep.max_ratio)},
         {"argmax", rep.argmax ? to_json(*rep.argmax) : Json(nullptr)},
         {"violations", std::move(violations)},
         {"findings", std::move(findings)},
         {"lemma_stats", std::move(stats)}};
  if (rep.mode == "climb") {
    Json restarts = Json::array();
    for (const auto& r : rep.restarts)
      restarts.push_back(Json{{"index", r.index},
                              {"iterations", r.iterations},
                              {"accepted", r.accepted},
                              {"start_ratio", to_json(r.start_ratio)},
                              {"best_ratio", to_json(r.best_ratio)},
                              {"best", to_json(r.best)},
                              {"trajectory_hash", hex64(r.trajectory_hash)}});
    j["restarts"] = std::move(restarts);
    j["trajectory_hash"] = hex64(rep.trajectory_hash);
  }
  return j;
}

/// Common envelope: tool identity, provenance and the command payload.
inline Json envelope(const std::string& command, Json input, Json result) {
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"schema", kSchemaVersion},
              {"command", command},
              {"input", std::move(input)},
              {"result", std::move(result)}};
}

}  // namespace maxvar::cli
