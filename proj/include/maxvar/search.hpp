#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "maxvar/bounds.hpp"
#include "maxvar/errors.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/sequence.hpp"
#include "maxvar/variation.hpp"
#include "maxvar/verify.hpp"

namespace maxvar {

/// All sequences of length support_len with entries from `grid`.
struct FamilySpec {
  Index support_len = 1;
  std::vector<Rational> grid{Rational(0), Rational(1)};
  /// Evaluate one representative per class under translation, reflection and
  /// positive scaling.
  bool dedup = false;
  OperatorKind kind = OperatorKind::Centered;
  std::uint64_t cap = 10'000'000;
  unsigned threads = 0;  // 0: resolve_threads()
  bool keep_rows = false;
};

enum MoveSet : unsigned {
  kBump = 1u << 0,
  kTransfer = 1u << 1,
  kResize = 1u << 2,
  kAllMoves = kBump | kTransfer | kResize,
};

/// Seeded hill climbing with restarts.
struct SearchSpec {
  Index support_len = 8;
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 0;
  unsigned moves = kAllMoves;
  OperatorKind kind = OperatorKind::Centered;
  /// Candidate values are multiples of 1 / denominator.
  std::int64_t denominator = 64;
  /// Largest starting value, in units of 1 / denominator.
  std::int64_t start_max = 4 * 64;
  std::uint64_t restart_length = 1000;
  unsigned threads = 0;
  bool keep_rows = false;
};

struct LemmaStat {
  std::uint64_t run = 0;
  std::uint64_t passed = 0;
};

struct Violation {
  FiniteSequence f;
  BoundCheck check;
};

/// Var(Mf) > Var f for the centered operator.
struct Finding {
  FiniteSequence f;
  Rational ratio;
};

struct RestartSummary {
  std::uint64_t index = 0;
  std::uint64_t iterations = 0;
  std::uint64_t accepted = 0;
  Rational start_ratio;
  Rational best_ratio;
  FiniteSequence best;
  std::uint64_t trajectory_hash = 0;
};

/// One CSV row: seq;var_f;var_Mf;ratio
struct InstanceRow {
  FiniteSequence f;
  Rational var_f;
  Rational var_mf;
  std::optional<Rational> ratio;
};

struct CampaignReport {
  std::string mode;
  OperatorKind kind = OperatorKind::Centered;
  std::uint64_t raw_instances = 0;
  std::uint64_t instances = 0;
  std::uint64_t ratio_instances = 0;
  std::optional<Rational> max_ratio;
  std::optional<FiniteSequence> argmax;
  std::vector<Violation> violations;
  std::vector<Finding> findings;
  std::map<std::string, LemmaStat> lemma_stats;
  std::vector<RestartSummary> restarts;
  std::uint64_t trajectory_hash = 0;
  std::vector<InstanceRow> rows;

  [[nodiscard]] bool all_pass() const { return violations.empty(); }
};

/// Parallelism cap: MAXVAR_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MAXVAR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Orders sequences by offset, then length, then values.
inline bool sequence_less(const FiniteSequence& a, const FiniteSequence& b) {
  if (a.offset() != b.offset()) return a.offset() < b.offset();
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(), b.values().end());
}

/// Representative of f under translation, reflection and positive scaling:
/// offset 0, maximum value 1, the lexicographically smaller of f and its
/// mirror image.
inline FiniteSequence canonical_form(const FiniteSequence& f) {
  if (f.is_zero()) return f;
  const Rational top = f.max_value();
  const FiniteSequence g = scale(translate(f, -f.offset()), Rational(1) / top);
  const FiniteSequence r = translate(reflect(g), -reflect(g).offset());
  return sequence_less(r, g) ? r : g;
}

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline void record(CampaignReport& rep, const std::string& key, bool pass) {
  auto& s = rep.lemma_stats[key];
  ++s.run;
  if (pass) ++s.passed;
}

inline void offer_max(CampaignReport& rep, const Rational& ratio, const FiniteSequence& f) {
  if (!rep.max_ratio || *rep.max_ratio < ratio || (*rep.max_ratio == ratio && sequence_less(f, *rep.argmax))) {
    rep.max_ratio = ratio;
    rep.argmax = f;
  }
}

/// Recomputes the ratio on a reflected, shifted copy through a fresh profile.
inline void reverify_ratio(const FiniteSequence& f, OperatorKind kind, const Rational& ratio) {
  const VariationReport again = var_ratio(translate(reflect(f), 7), kind);
  if (!again.ratio || *again.ratio != ratio)
    throw Error("ratio re-verification failed for " + f.compact() + ": " + ratio.str() + " vs " +
                (again.ratio ? again.ratio->str() : "undefined"));
}

struct Evaluation {
  VariationReport objective;
  std::optional<Rational> centered_ratio;
};

/// Evaluates f under every requested check, folding the results into `rep`.
inline Evaluation evaluate_instance(const FiniteSequence& f, OperatorKind kind, const std::vector<Check>& checks,
                                    CampaignReport& rep) {
  ++rep.instances;
  Evaluation ev;
  ev.objective = var_ratio(f, kind);
  const VariationReport centered = kind == OperatorKind::Centered ? ev.objective : var_ratio(f, OperatorKind::Centered);
  ev.centered_ratio = centered.ratio;
  if (ev.objective.ratio) {
    ++rep.ratio_instances;
    offer_max(rep, *ev.objective.ratio, f);
  }
  // The proven bound is checked on every instance; the conjectured one only
  // produces findings.
  const TheoremCheck thm = theorem_check_from(centered.var_f, centered.var_Mf);
  record(rep, "thm", thm.proven.pass);
  if (!thm.proven.pass) rep.violations.push_back({f, thm.proven});
  record(rep, "conj", thm.empirical.pass);
  if (!thm.empirical.pass) rep.findings.push_back({f, *centered.ratio});

  std::vector<Check> lemma_checks;
  for (Check c : checks) {
    if (c == Check::Theorem) continue;
    if (c == Check::NonCentered) {
      const BoundCheck nc = kind == OperatorKind::NonCentered ? make_check("nc", ev.objective.var_Mf, ev.objective.var_f)
                                                              : check_noncentered(f);
      record(rep, "nc", nc.pass);
      if (!nc.pass) rep.violations.push_back({f, nc});
      continue;
    }
    lemma_checks.push_back(c);
  }
  if (!lemma_checks.empty() && !f.is_zero()) {
    const VerificationReport v = run_verification(f, lemma_checks);
    for (const auto& c : v.checks) {
      record(rep, c.lemma, c.pass);
      if (!c.pass) rep.violations.push_back({f, c});
    }
  }
  return ev;
}

inline void merge_into(CampaignReport& into, CampaignReport&& part) {
  into.instances += part.instances;
  into.ratio_instances += part.ratio_instances;
  if (part.max_ratio) offer_max(into, *part.max_ratio, *part.argmax);
  for (auto& v : part.violations) into.violations.push_back(std::move(v));
  for (auto& f : part.findings) into.findings.push_back(std::move(f));
  for (const auto& [k, s] : part.lemma_stats) {
    into.lemma_stats[k].run += s.run;
    into.lemma_stats[k].passed += s.passed;
  }
  for (auto& r : part.rows) into.rows.push_back(std::move(r));
}

/// Runs fn(i) for i in [0, count) on `threads` workers over contiguous chunks
/// and returns the per-chunk results in chunk order.
template <class Fn>
auto run_chunked(std::uint64_t count, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::uint64_t{0}, std::uint64_t{0}));
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
  std::vector<Result> results(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  auto body = [&](std::uint64_t w) {
    const std::uint64_t begin = count * w / workers, end = count * (w + 1) / workers;
    try {
      results[w] = fn(begin, end);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace detail

/// Evaluates every member of the family. Results do not depend on the number
/// of worker threads.
inline CampaignReport enumerate_campaign(const FamilySpec& spec, const std::vector<Check>& checks) {
  if (spec.grid.empty()) throw PreconditionViolated("enumerate_campaign: empty value grid");
  if (spec.support_len < 1) throw PreconditionViolated("enumerate_campaign: support_len must be positive");
  for (const auto& v : spec.grid)
    if (v.sign() < 0) throw NegativeValue("enumerate_campaign: negative grid value " + v.str());

  CampaignReport rep;
  rep.mode = "exhaustive";
  rep.kind = spec.kind;
  const std::uint64_t base = spec.grid.size();
  std::uint64_t raw = 1;
  for (Index i = 0; i < spec.support_len; ++i) {
    if (raw > spec.cap * 100 / base + 1) throw CapExceeded("enumeration size exceeds the cap");
    raw *= base;
  }
  rep.raw_instances = raw;

  auto member = [&](std::uint64_t code) {
    std::vector<Rational> v(static_cast<std::size_t>(spec.support_len));
    for (auto& x : v) {
      x = spec.grid[code % base];
      code /= base;
    }
    return normalize(0, std::move(v));
  };

  std::vector<FiniteSequence> family;
  if (spec.dedup) {
    std::set<std::string> seen;
    for (std::uint64_t c = 0; c < raw; ++c) {
      FiniteSequence g = canonical_form(member(c));
      if (seen.insert(g.compact()).second) {
        if (seen.size() > spec.cap) throw CapExceeded("deduplicated family exceeds the cap");
        family.push_back(std::move(g));
      }
    }
  } else if (raw > spec.cap) {
    throw CapExceeded("enumeration size " + std::to_string(raw) + " exceeds the cap");
  }
  const std::uint64_t count = spec.dedup ? family.size() : raw;

  auto parts = detail::run_chunked(count, resolve_threads(spec.threads), [&](std::uint64_t begin, std::uint64_t end) {
    CampaignReport part;
    for (std::uint64_t i = begin; i < end; ++i) {
      const FiniteSequence f = spec.dedup ? family[i] : member(i);
      const auto ev = detail::evaluate_instance(f, spec.kind, checks, part);
      if (spec.keep_rows) part.rows.push_back({f, ev.objective.var_f, ev.objective.var_Mf, ev.objective.ratio});
    }
    return part;
  });
  for (auto& p : parts) detail::merge_into(rep, std::move(p));

  if (rep.max_ratio) detail::reverify_ratio(*rep.argmax, spec.kind, *rep.max_ratio);
  for (const auto& fnd : rep.findings) detail::reverify_ratio(fnd.f, OperatorKind::Centered, fnd.ratio);
  return rep;
}

/// Observer called after every iteration with (restart, iteration, best ratio
/// of the restart so far).
using SearchObserver = std::function<void(std::uint64_t, std::uint64_t, const Rational&)>;

/// Hill climbing on value vectors over the grid (1/denominator) Z. A move is
/// kept when it does not lower the ratio. Each restart owns a random stream
/// derived from (seed, restart index), so reports are reproducible for any
/// thread count.
inline CampaignReport local_search(const SearchSpec& spec, const SearchObserver& observer = {}) {
  if (spec.support_len < 1) throw PreconditionViolated("local_search: support_len must be positive");
  if (spec.denominator < 1 || spec.start_max < 1) throw PreconditionViolated("local_search: bad value grid");
  if ((spec.moves & kAllMoves) == 0) throw PreconditionViolated("local_search: empty move set");
  const std::uint64_t restart_len = std::max<std::uint64_t>(1, spec.restart_length);
  const std::uint64_t restarts = std::max<std::uint64_t>(1, (spec.iterations + restart_len - 1) / restart_len);

  std::vector<unsigned> enabled;
  for (unsigned m : {kBump, kTransfer, kResize})
    if (spec.moves & m) enabled.push_back(m);

  auto to_sequence = [&](const std::vector<std::int64_t>& nums) {
    std::vector<Rational> v;
    v.reserve(nums.size());
    for (auto n : nums) v.emplace_back(static_cast<long>(n), static_cast<long>(spec.denominator));
    return normalize(0, std::move(v));
  };

  struct RestartResult {
    CampaignReport part;
    RestartSummary summary;
  };

  auto run_restart = [&](std::uint64_t r) {
    RestartResult out;
    CampaignReport& part = out.part;
    RestartSummary& sum = out.summary;
    sum.index = r;
    sum.iterations = std::min(restart_len, spec.iterations - std::min(spec.iterations, r * restart_len));
    std::mt19937_64 rng(detail::splitmix64(spec.seed ^ detail::splitmix64(r)));
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
      return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };

    std::vector<std::int64_t> cur(static_cast<std::size_t>(spec.support_len));
    for (auto& x : cur) x = uniform(0, spec.start_max);
    if (std::all_of(cur.begin(), cur.end(), [](auto x) { return x == 0; })) cur[cur.size() / 2] = spec.denominator;

    std::uint64_t hash = detail::kFnvOffset;
    FiniteSequence cur_seq = to_sequence(cur);
    const auto first = detail::evaluate_instance(cur_seq, spec.kind, {}, part);
    Rational cur_ratio = *first.objective.ratio;
    hash = detail::fnv1a(hash, cur_seq.compact());
    sum.start_ratio = sum.best_ratio = cur_ratio;
    sum.best = cur_seq;
    if (spec.keep_rows) part.rows.push_back({cur_seq, first.objective.var_f, first.objective.var_Mf, cur_ratio});

    for (std::uint64_t it = 0; it < sum.iterations; ++it) {
      std::vector<std::int64_t> cand = cur;
      const unsigned move = enabled[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(enabled.size()) - 1))];
      const auto len = static_cast<std::int64_t>(cand.size());
      bool changed = false;
      if (move == kBump) {
        const auto i = static_cast<std::size_t>(uniform(0, len - 1));
        std::int64_t d = uniform(-spec.denominator, spec.denominator - 1);
        if (d >= 0) ++d;
        cand[i] = std::max<std::int64_t>(0, cand[i] + d);
        changed = cand[i] != cur[i];
      } else if (move == kTransfer && len >= 2) {
        const auto i = static_cast<std::size_t>(uniform(0, len - 1));
        auto j = static_cast<std::size_t>(uniform(0, len - 2));
        if (j >= i) ++j;
        if (cand[i] > 0) {
          const std::int64_t amount = uniform(1, cand[i]);
          cand[i] -= amount;
          cand[j] += amount;
          changed = true;
        }
      } else if (move == kResize) {
        const bool front = uniform(0, 1) == 0;
        if (len < spec.support_len && (len == 1 || uniform(0, 1) == 0)) {
          const std::int64_t v = uniform(0, spec.start_max);
          cand.insert(front ? cand.begin() : cand.end(), v);
          changed = true;
        } else if (len > 1) {
          cand.erase(front ? cand.begin() : cand.end() - 1);
          changed = true;
        }
      }
      bool accepted = false;
      if (changed && std::any_of(cand.begin(), cand.end(), [](auto x) { return x != 0; })) {
        const FiniteSequence seq = to_sequence(cand);
        const auto ev = detail::evaluate_instance(seq, spec.kind, {}, part);
        if (spec.keep_rows) part.rows.push_back({seq, ev.objective.var_f, ev.objective.var_Mf, ev.objective.ratio});
        const Rational& ratio = *ev.objective.ratio;
        if (cur_ratio <= ratio) {
          accepted = true;
          cur = std::move(cand);
          cur_ratio = ratio;
          ++sum.accepted;
          hash = detail::fnv1a(hash, seq.compact());
          if (sum.best_ratio < ratio) {
            sum.best_ratio = ratio;
            sum.best = seq;
          }
        }
      }
      hash = detail::fnv1a(hash, accepted ? "+" : "-");
      if (observer) observer(r, it, sum.best_ratio);
    }
    sum.trajectory_hash = hash;
    return out;
  };

  // Restarts share nothing, so they run in parallel and merge in index order.
  auto chunks = detail::run_chunked(restarts, resolve_threads(spec.threads), [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<RestartResult> res;
    for (std::uint64_t r = begin; r < end; ++r) res.push_back(run_restart(r));
    return res;
  });

  CampaignReport rep;
  rep.mode = "climb";
  rep.kind = spec.kind;
  rep.trajectory_hash = detail::kFnvOffset;
  for (auto& chunk : chunks) {
    for (auto& rr : chunk) {
      detail::merge_into(rep, std::move(rr.part));
      rep.trajectory_hash = detail::fnv1a(rep.trajectory_hash, std::to_string(rr.summary.trajectory_hash));
      rep.restarts.push_back(std::move(rr.summary));
    }
  }
  rep.raw_instances = rep.instances;
  if (rep.max_ratio) detail::reverify_ratio(*rep.argmax, spec.kind, *rep.max_ratio);
  for (const auto& fnd : rep.findings) detail::reverify_ratio(fnd.f, OperatorKind::Centered, fnd.ratio);
  return rep;
}

}  // namespace maxvar
