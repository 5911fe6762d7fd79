#pragma once

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "maxvar/maxvar.hpp"
#include "report.hpp"

namespace maxvar::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kFinding = 3 };

struct Input {
  std::string path;
  std::string sha256;
  FiniteSequence seq;

  [[nodiscard]] Json json() const { return Json{{"path", path}, {"sha256", sha256}}; }
};

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

struct UsageError : Error {
  using Error::Error;
};

inline Input load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open sequence file '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {path, sha256_hex(bytes), parse_seqtext(bytes)};
}

inline std::vector<Rational> parse_grid(const std::string& csv) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw ParseError("empty value grid");
  return out;
}

inline void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline void append_csv(const std::string& path, const CampaignReport& rep) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw UsageError("cannot open csv file '" + path + "'");
  for (const auto& row : rep.rows)
    out << row.f.compact() << ';' << row.var_f << ';' << row.var_mf << ';'
        << (row.ratio ? row.ratio->str() : std::string("undefined")) << '\n';
}

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact maximal functions and their variation", "maxvar"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  std::string seq_path, op = "centered";
  bool json = false;
  const std::vector<std::string> ops{"centered", "noncentered"};

  auto* eval = app.add_subcommand("eval", "Evaluate the maximal function");
  Index at = 0;
  std::vector<Index> window;
  eval->add_option("--seq", seq_path, "sequence file")->required();
  eval->add_option("--op", op, "operator")->check(CLI::IsMember(ops));
  auto* at_opt = eval->add_option("--at", at, "single point");
  auto* win_opt = eval->add_option("--window", window, "closed window lo hi")->expected(2);
  at_opt->excludes(win_opt);
  eval->add_flag("--json", json);

  auto* variation = app.add_subcommand("variation", "Var f, Var Mf and their ratio");
  variation->add_option("--seq", seq_path, "sequence file")->required();
  variation->add_option("--op", op, "operator")->check(CLI::IsMember(ops));
  variation->add_flag("--json", json);

  auto* peaks = app.add_subcommand("peaks", "Peak system and classes of the centered Mf");
  std::vector<Index> peak_window;
  peaks->add_option("--seq", seq_path, "sequence file")->required();
  peaks->add_option("--window", peak_window, "closed window lo hi (default: guard band)")->expected(2);
  peaks->add_flag("--json", json);

  auto* verify = app.add_subcommand("verify", "Run bound checks and witness searches");
  std::string lemmas;
  std::vector<Index> verify_window;
  verify->add_option("--seq", seq_path, "sequence file")->required();
  verify->add_option("--lemmas", lemmas, "comma separated: 1,2,3,4,5,thm,nc")->required();
  verify->add_option("--window", verify_window, "closed window lo hi (default: guard band)")->expected(2);
  verify->add_flag("--json", json);

  auto* search = app.add_subcommand("search", "Exhaustive or hill-climbing campaigns");
  std::string mode, grid, checks = "thm", csv;
  Index len = 0;
  std::uint64_t iters = 0, seed = 0, cap = 10'000'000, restart_len = 1000;
  std::int64_t denominator = 64;
  bool dedup = false;
  search->add_option("--mode", mode, "exhaustive | climb")->required()->check(CLI::IsMember({"exhaustive", "climb"}));
  search->add_option("--len", len, "support length")->required()->check(CLI::PositiveNumber);
  search->add_option("--grid", grid, "value grid, e.g. 0,1,2,3");
  search->add_flag("--dedup", dedup, "one representative per translation/reflection/scaling class");
  search->add_option("--checks", checks, "checks per instance (exhaustive mode)");
  search->add_option("--cap", cap, "enumeration cap");
  search->add_option("--iters", iters, "iterations (climb mode)");
  search->add_option("--seed", seed, "seed (climb mode)");
  search->add_option("--restart", restart_len, "iterations per restart")->check(CLI::PositiveNumber);
  search->add_option("--denominator", denominator, "value grid denominator (climb mode)")->check(CLI::PositiveNumber);
  search->add_option("--op", op, "operator in the objective")->check(CLI::IsMember(ops));
  search->add_option("--csv", csv, "append one row per instance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*search) {
      if (mode == "exhaustive" && grid.empty()) throw CLI::ValidationError("--grid", "required in exhaustive mode");
      if (mode == "climb" && (search->count("--iters") == 0 || search->count("--seed") == 0))
        throw CLI::ValidationError("--iters/--seed", "required in climb mode");
      if (mode == "climb" && search->count("--grid") > 0)
        throw CLI::ValidationError("--grid", "only valid in exhaustive mode");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << ' ' << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "maxvar: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    const OperatorKind kind = parse_operator_kind(op);

    if (*eval) {
      const Input in = load_input(seq_path);
      std::vector<Index> points;
      if (eval->count("--at")) {
        points.push_back(at);
      } else {
        Interval w{0, 0};
        if (!window.empty()) w = Interval{window[0], window[1]};
        else if (!in.seq.is_zero()) w = build_profile(in.seq, kind).band();
        for (Index n = w.lo; n <= w.hi; ++n) points.push_back(n);
      }
      std::vector<Rational> values;
      if (in.seq.is_zero()) {
        values.assign(points.size(), Rational());
      } else if (points.size() == 1) {
        values.push_back(maximal_at(in.seq, kind, points[0]));
      } else {
        const MaximalProfile profile = build_profile(in.seq, kind);
        for (Index n : points) values.push_back(profile.at(n));
      }
      if (json) {
        Json arr = Json::array();
        for (std::size_t i = 0; i < points.size(); ++i) arr.push_back(Json{{"n", points[i]}, {"value", values[i].str()}});
        print_json(out, envelope("eval", in.json(), Json{{"op", op}, {"values", std::move(arr)}}));
      } else {
        for (std::size_t i = 0; i < points.size(); ++i) out << points[i] << '\t' << values[i] << '\n';
      }
      return kOk;
    }

    if (*variation) {
      const Input in = load_input(seq_path);
      const VariationReport rep = var_ratio(in.seq, kind);
      if (json) {
        print_json(out, envelope("variation", in.json(), to_json(rep)));
      } else {
        out << "var_f=" << rep.var_f << '\n'
            << "var_Mf=" << rep.var_Mf << '\n'
            << "ratio=" << (rep.ratio ? rep.ratio->str() : std::string("undefined")) << '\n';
      }
      const bool finding = kind == OperatorKind::Centered && rep.ratio && Rational(1) < *rep.ratio;
      return finding ? kFinding : kOk;
    }

    if (*peaks) {
      const Input in = load_input(seq_path);
      const MaximalProfile profile = build_profile(in.seq, OperatorKind::Centered);
      const PeakSystem sys =
          peak_window.empty() ? extract_system(profile) : extract_system(profile, Interval{peak_window[0], peak_window[1]});
      const auto classified = classify(sys);
      if (json) {
        Json arr = Json::array();
        for (const auto& cp : classified) arr.push_back(to_json(cp));
        Json result = to_json(sys);
        result["peaks"] = std::move(arr);
        print_json(out, envelope("peaks", in.json(), std::move(result)));
      } else {
        for (const auto& cp : classified) {
          const Peak& p = cp.peak;
          out << p.p << ' ' << p.r << ' ' << p.q << ' ' << p.var << ' ' << (p.essential ? "true" : "false") << ' '
              << (p.omega ? std::to_string(*p.omega) : std::string("-")) << ' ' << cp.cls.str() << '\n';
        }
      }
      return kOk;
    }

    if (*verify) {
      const std::vector<Check> wanted = parse_checks(lemmas);
      const Input in = load_input(seq_path);
      std::optional<Interval> w;
      if (!verify_window.empty()) w = Interval{verify_window[0], verify_window[1]};
      const VerificationReport rep = run_verification(in.seq, wanted, w);
      if (json) {
        print_json(out, envelope("verify", in.json(), to_json(rep)));
      } else {
        auto line = [&](const BoundCheck& c, const char* indent) {
          out << indent << c.lemma << '\t' << (c.pass ? "pass" : "FAIL") << '\t' << c.lhs << " <= " << c.rhs;
          if (!c.points.empty()) {
            out << "\tat";
            for (Index p : c.points) out << ' ' << p;
          }
          if (!c.note.empty()) out << '\t' << c.note;
          out << '\n';
        };
        for (const auto& c : rep.checks) {
          const bool aggregate = c.lemma == "1" || c.lemma == "2" || c.lemma == "5";
          if (aggregate) {
            out << c.lemma << '\t' << (c.pass ? "pass" : "FAIL") << '\t' << c.parts.size() << " parts, " << c.lhs
                << " failed";
            if (!c.note.empty()) out << '\t' << c.note;
            out << '\n';
          } else {
            line(c, "");
          }
          for (const auto& p : c.parts) line(p, "  ");
        }
        if (rep.theorem)
          out << "conj\t" << (rep.theorem->empirical.pass ? "pass" : "FINDING") << '\t' << rep.theorem->empirical.lhs
              << " <= " << rep.theorem->empirical.rhs << '\n';
      }
      if (!rep.all_pass()) return kCheckFailed;
      return rep.finding() ? kFinding : kOk;
    }

    // search
    CampaignReport rep;
    Json params;
    if (mode == "exhaustive") {
      FamilySpec spec;
      spec.support_len = len;
      spec.grid = parse_grid(grid);
      spec.dedup = dedup;
      spec.kind = kind;
      spec.cap = cap;
      spec.keep_rows = !csv.empty();
      Json g = Json::array();
      for (const auto& v : spec.grid) g.push_back(v.str());
      params = Json{{"mode", mode}, {"len", len}, {"grid", std::move(g)}, {"dedup", dedup}, {"checks", checks},
                    {"op", op}, {"cap", cap}};
      rep = enumerate_campaign(spec, parse_checks(checks));
    } else {
      SearchSpec spec;
      spec.support_len = len;
      spec.iterations = iters;
      spec.seed = seed;
      spec.kind = kind;
      spec.denominator = denominator;
      spec.start_max = 4 * denominator;
      spec.restart_length = restart_len;
      spec.keep_rows = !csv.empty();
      params = Json{{"mode", mode}, {"len", len},          {"iters", iters},       {"seed", seed},
                    {"op", op},     {"restart", restart_len}, {"denominator", denominator}};
      rep = local_search(spec);
    }
    print_json(out, envelope("search", std::move(params), to_json(rep)));
    if (!csv.empty()) append_csv(csv, rep);
    if (!rep.violations.empty()) return kCheckFailed;
    return rep.findings.empty() ? kOk : kFinding;
  } catch (const UsageError& e) {
    err << "maxvar: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "maxvar: " << e.what() << '\n';
    return kUsage;
  } catch (const NegativeValue& e) {
    err << "maxvar: " << e.what() << '\n';
    return kUsage;
  } catch (const EmptyInterval& e) {
    err << "maxvar: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "maxvar: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "maxvar: internal error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace maxvar::cli
