#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "treele/bounds.hpp"
#include "treele/enumerate.hpp"
#include "treele/error.hpp"
#include "treele/families.hpp"
#include "treele/spectrum.hpp"
#include "treele/tree.hpp"

namespace treele {

using Json = nlohmann::ordered_json;

inline double round15_down(double v) { return -round15_up(-v) + 0.0; }  // + 0.0 turns -0 into 0

// {"value", "err"}: midpoint and a rigorous bound on the distance to any
// point of the enclosure, both at 15 significant digits.
inline Json to_json(const Enclosure& e) {
  Json j;
  j["value"] = round15(e.value());
  j["err"] = round15_up(e.error());
  return j;
}

inline Json to_json(const BoundReport& r) {
  Json j;
  j["id"] = r.id;
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"verdict", to_string(h.verdict)}});
  j["hypotheses"] = hyps;
  Json claims = Json::array();
  for (const auto& c : r.claims) {
    Json jc = {{"name", c.name}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"verdict", to_string(c.verdict)}};
    if (c.by_identity) jc["by_identity"] = true;
    claims.push_back(std::move(jc));
  }
  j["claims"] = claims;
  Json facts = Json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  j["facts"] = facts;
  j["in_scope"] = r.in_scope;
  j["applicable"] = r.applicable;
  j["verdict"] = to_string(r.verdict);
  j["slack"] = r.slack ? to_json(*r.slack) : Json(nullptr);
  j["tol"] = r.tol;
  j["refinements"] = r.refinements;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// One persisted row per tree, keyed by canonical code.
struct VerifyRecord {
  std::string code;
  std::string source;  // "exhaustive" or the generating family call
  std::size_t n = 0;
  std::size_t diam = 0;
  std::size_t s = 0;
  std::size_t sigma = 0;
  double le = 0.0;
  double le_err = 0.0;
  double le_path = 0.0;
  double le_star = 0.0;
  double slack = 0.0;  // certified lower bound on the smaller conjecture slack
  std::map<std::string, std::string> checks;  // id -> holds | fails | undecidable | not-applicable

  Json to_json() const {
    Json j;
    j["code"] = code;
    j["source"] = source;
    j["n"] = n;
    j["diam"] = diam;
    j["s"] = s;
    j["sigma"] = sigma;
    j["le"] = round15(le);
    j["le_err"] = round15_up(le_err);
    j["le_path"] = round15(le_path);
    j["le_star"] = round15(le_star);
    j["slack"] = round15_down(slack);
    Json c = Json::object();
    for (const auto& [id, v] : checks) c[id] = v;
    j["checks"] = c;
    return j;
  }

  static VerifyRecord from_json(const Json& j) {
    VerifyRecord r;
    r.code = j.at("code").get<std::string>();
    r.source = j.value("source", std::string("exhaustive"));
    r.n = j.at("n").get<std::size_t>();
    r.diam = j.at("diam").get<std::size_t>();
    r.s = j.at("s").get<std::size_t>();
    r.sigma = j.at("sigma").get<std::size_t>();
    r.le = j.at("le").get<double>();
    r.le_err = j.at("le_err").get<double>();
    r.le_path = j.at("le_path").get<double>();
    r.le_star = j.at("le_star").get<double>();
    r.slack = j.at("slack").get<double>();
    for (const auto& [id, v] : j.at("checks").items()) r.checks[id] = v.get<std::string>();
    return r;
  }

  bool has(const std::string& verdict) const {
    return std::any_of(checks.begin(), checks.end(), [&](const auto& kv) { return kv.second == verdict; });
  }
};

// Known counts of free trees (unlabeled), n = 1..20; used for run-size estimates.
inline std::size_t free_tree_count_estimate(std::size_t n) {
  static const std::size_t counts[] = {1,    1,     1,     2,      3,      6,      11,     23,     47,     106,
                                       235,  551,   1301,  3159,   7741,   19320,  48629,  123867, 317955, 823065};
  return n >= 1 && n <= 20 ? counts[n - 1] : 0;
}

inline constexpr std::size_t default_n_ceiling = 16;
inline constexpr std::size_t opt_in_n_ceiling = 18;

struct RunConfig {
  std::size_t n_min = 4;
  std::size_t n_max = 10;
  double tol = 1e-12;
  std::size_t shard_index = 0;
  std::size_t shard_count = 1;
  std::vector<std::string> checks{"conjecture"};
  CheckMode mode = CheckMode::strict;
  bool allow_large = false;  // lifts the ceiling from 16 to 18

  void validate() const {
    if (!(tol > 0.0)) throw Error(ErrorCode::bad_param, "tolerance must be positive");
    if (n_min < 1 || n_min > n_max) throw Error(ErrorCode::bad_param, "need 1 <= n-min <= n-max");
    const std::size_t ceiling = allow_large ? opt_in_n_ceiling : default_n_ceiling;
    if (n_max > ceiling)
      throw Error(ErrorCode::bad_param, "n-max " + std::to_string(n_max) + " exceeds the supported ceiling " +
                                            std::to_string(ceiling) + (allow_large ? "" : " (see --allow-large)"));
    if (shard_count == 0 || shard_index >= shard_count) throw Error(ErrorCode::bad_param, "bad shard spec");
    for (const auto& id : checks)
      if (std::find(tree_check_ids().begin(), tree_check_ids().end(), id) == tree_check_ids().end())
        throw Error(ErrorCode::bad_param, "unknown check id '" + id + "'");
  }
};

/// Evaluates the configured checks on one tree and condenses them into a row.
inline VerifyRecord evaluate_tree(const Tree& t, const std::string& source, const RunConfig& cfg, ReferenceEnergies& refs) {
  TreeContext ctx(t);
  CheckOptions opts{.tol = cfg.tol, .mode = cfg.mode};
  VerifyRecord r;
  r.code = canonical_code(t);
  r.source = source;
  r.n = t.size();
  r.diam = ctx.diameter();
  r.s = ctx.degrees().internal_count;
  std::vector<std::string> ids = cfg.checks;
  if (std::find(ids.begin(), ids.end(), "conjecture") == ids.end()) ids.push_back("conjecture");
  auto reports = run_checks(ctx, ids, refs, opts);
  double used_tol = cfg.tol;
  for (const auto& rep : reports) {
    std::string& slot = r.checks[rep.id];
    std::string v = rep.applicable || rep.verdict == Verdict::fails ? to_string(rep.verdict) : "not-applicable";
    if (slot.empty() || slot == "not-applicable" || v == "fails" || (v == "undecidable" && slot == "holds")) slot = v;
    if (rep.id == "conjecture") {
      used_tol = rep.tol;
      if (rep.slack) r.slack = to_double_down(rep.slack->lo());
    }
  }
  const Spectrum& s = ctx.spectrum(used_tol);
  Enclosure le = s.energy();
  r.sigma = s.sigma;
  r.le = le.value();
  r.le_err = le.error();
  r.le_path = refs.path(r.n, used_tol).value();
  r.le_star = star_energy(r.n).value();
  return r;
}

/// Append-only line-delimited store keyed by canonical code. Opening an
/// existing file loads its rows, so an interrupted run resumes without
/// duplicating trees.
class RecordStore {
 public:
  RecordStore() = default;  // in-memory only
  explicit RecordStore(const std::string& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    bool ends_clean = true;
    while (std::getline(in, line)) {
      ends_clean = !in.eof();
      if (line.empty()) continue;
      try {
        add_loaded(VerifyRecord::from_json(Json::parse(line)));
      } catch (const Json::exception&) {
        // A torn line from an interrupted write; its tree is simply redone.
      }
    }
    out_.open(path, std::ios::app);
    if (!out_) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for appending");
    if (!ends_clean) out_ << '\n';
  }

  bool contains(const std::string& code) const { return index_.count(code) > 0; }

  void append(const VerifyRecord& r) {
    if (contains(r.code)) return;
    index_.emplace(r.code, records_.size());
    records_.push_back(r);
    if (out_.is_open()) {
      out_ << r.to_json().dump() << '\n';
      out_.flush();
      if (!out_) throw Error(ErrorCode::io_error, "write to '" + path_ + "' failed");
    }
  }

  const std::vector<VerifyRecord>& records() const { return records_; }

 private:
  void add_loaded(VerifyRecord r) {
    if (contains(r.code)) return;
    index_.emplace(r.code, records_.size());
    records_.push_back(std::move(r));
  }

  std::string path_;
  std::ofstream out_;
  std::vector<VerifyRecord> records_;
  std::map<std::string, std::size_t> index_;
};

struct RunSummary {
  std::size_t trees = 0;
  std::map<std::size_t, std::size_t> per_n;
  std::size_t violations = 0;
  std::size_t undecidable = 0;
  std::optional<double> min_slack;
  std::string argmin_code;
  std::size_t argmin_n = 0;
  std::map<std::size_t, std::string> min_le_code;  // n -> code of the tree with the smallest LE

  int exit_code() const { return violations > 0 ? 2 : undecidable > 0 ? 3 : 0; }

  Json to_json() const {
    Json j;
    j["trees"] = trees;
    Json counts = Json::object();
    for (const auto& [n, c] : per_n) counts[std::to_string(n)] = c;
    j["per_n"] = counts;
    j["violations"] = violations;
    j["undecidable"] = undecidable;
    j["min_slack"] = min_slack ? Json(round15_down(*min_slack)) : Json(nullptr);
    j["argmin_code"] = argmin_code;
    j["argmin_n"] = argmin_n;
    return j;
  }
};

inline RunSummary summarize(const std::vector<VerifyRecord>& records, std::size_t n_min = 0, std::size_t n_max = SIZE_MAX) {
  RunSummary s;
  std::map<std::size_t, double> min_le;
  for (const auto& r : records) {
    if (r.n < n_min || r.n > n_max) continue;
    ++s.trees;
    ++s.per_n[r.n];
    if (r.has("fails")) ++s.violations;
    else if (r.has("undecidable")) ++s.undecidable;
    if (r.n >= 4 && (!s.min_slack || r.slack < *s.min_slack || (r.slack == *s.min_slack && r.code < s.argmin_code))) {
      s.min_slack = r.slack;
      s.argmin_code = r.code;
      s.argmin_n = r.n;
    }
    auto it = min_le.find(r.n);
    if (it == min_le.end() || r.le < it->second) {
      min_le[r.n] = r.le;
      s.min_le_code[r.n] = r.code;
    }
  }
  return s;
}

using ProgressFn = std::function<void(std::size_t n, std::size_t done)>;

/// Streams the free trees of every order in [n_min, n_max] (this shard's
/// share), evaluates them and appends the rows to `store`.
inline RunSummary run_exhaustive(const RunConfig& cfg, RecordStore& store, const ProgressFn& progress = {}) {
  cfg.validate();
  ReferenceEnergies refs;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    ShardedFreeTrees trees({n, cfg.shard_index, cfg.shard_count});
    std::size_t done = 0;
    while (auto t = trees.next()) {
      if (!store.contains(canonical_code(*t))) store.append(evaluate_tree(*t, "exhaustive", cfg, refs));
      ++done;
    }
    if (progress) progress(n, done);
  }
  return summarize(store.records(), cfg.n_min, cfg.n_max);
}

/// A named family call with its tree, for sweeps.
struct FamilyMember {
  std::string label;
  Tree tree;
};

inline std::string call_label(const std::string& name, const std::vector<std::size_t>& args) {
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + std::to_string(args[i]);
  return s + ")";
}

inline std::string call_label(const std::string& name, std::size_t p, std::size_t r, const std::vector<std::size_t>& s) {
  std::string out = name + "(" + std::to_string(p) + "," + std::to_string(r) + ",[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "])";
}

struct SweepGrid {
  std::size_t spider_min = 9, spider_max = 100;               // a + b
  std::size_t tprime_r_max = 12, tprime_s1_max = 20;         // r >= 2, s1 >= 2
  std::size_t tdprime_r_max = 8, tdprime_s_max = 10;         // r >= 3, s1, s2 >= 2
  std::size_t broom_max = 15;                                 // a, b for both brooms
  std::size_t sns_p_max = 3, sns_r_max = 4, sns_s_max = 3;  // exhaustive non-increasing s lists
  std::size_t n_min = 1;                                      // members below this order are skipped
};

inline std::vector<FamilyMember> family_members(const SweepGrid& g) {
  std::vector<FamilyMember> out;
  for (std::size_t m = std::max<std::size_t>(g.spider_min, 2); m <= g.spider_max; ++m)
    out.push_back({call_label("t4_spider", {m - m / 2, m / 2}), t4_spider(m - m / 2, m / 2)});
  for (std::size_t r = 2; r <= g.tprime_r_max; ++r)
    for (std::size_t s1 = 2; s1 <= g.tprime_s1_max; ++s1) out.push_back({call_label("t_prime", {r, s1}), t_prime(r, s1)});
  for (std::size_t r = 3; r <= g.tdprime_r_max; ++r)
    for (std::size_t s1 = 2; s1 <= g.tdprime_s_max; ++s1)
      for (std::size_t s2 = 2; s2 <= s1; ++s2)
        out.push_back({call_label("t_dprime", {r, s1, s2}), t_dprime(r, s1, s2)});
  for (std::size_t a = 1; a <= g.broom_max; ++a)
    for (std::size_t b = 1; b <= a; ++b) {
      out.push_back({call_label("double_broom3", {a, b}), double_broom3(a, b)});
      out.push_back({call_label("double_broom4", {a, b}), double_broom4(a, b)});
    }
  for (std::size_t p = 0; p <= g.sns_p_max; ++p)
    for (std::size_t r = 2; r <= g.sns_r_max; ++r) {
      std::vector<std::size_t> s(r, 0);
      // All non-increasing s lists with entries in [0, sns_s_max].
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t cap) {
        if (i == r) {
          if (s[1] > 0) out.push_back({call_label("sns_tree", p, r, s), sns_tree(p, r, s)});
          return;
        }
        for (std::size_t v = 0; v <= cap; ++v) {
          s[i] = v;
          rec(i + 1, v);
        }
      };
      rec(0, g.sns_s_max);
    }
  std::erase_if(out, [&](const FamilyMember& m) { return m.tree.size() < g.n_min; });
  return out;
}

/// Evaluates family members; rows are keyed by canonical code, so a tree
/// reached by two parameterizations is recorded once (first label wins).
inline RunSummary run_family_sweep(const std::vector<FamilyMember>& members, const RunConfig& cfg, RecordStore& store) {
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::bad_param, "tolerance must be positive");
  ReferenceEnergies refs;
  for (const auto& m : members) {
    if (m.tree.size() > 300) throw Error(ErrorCode::bad_param, "family member " + m.label + " is too large");
    std::string code = canonical_code(m.tree);
    if (!store.contains(code)) store.append(evaluate_tree(m.tree, m.label, cfg, refs));
  }
  return summarize(store.records());
}

enum class ReportFormat { jsonl, csv };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "jsonl") return ReportFormat::jsonl;
  if (s == "csv") return ReportFormat::csv;
  throw Error(ErrorCode::bad_param, "format must be jsonl or csv");
}

/// Writes rows sorted by (n, code), so output depends only on the row set.
inline void emit_report(std::vector<VerifyRecord> records, ReportFormat format, std::ostream& out) {
  std::sort(records.begin(), records.end(), [](const VerifyRecord& a, const VerifyRecord& b) {
    return a.n != b.n ? a.n < b.n : a.code < b.code;
  });
  if (format == ReportFormat::jsonl) {
    for (const auto& r : records) out << r.to_json().dump() << '\n';
  } else {
    out << "code,n,diam,s,sigma,le,le_err,le_path,le_star,slack\n";
    for (const auto& r : records)
      out << r.code << ',' << r.n << ',' << r.diam << ',' << r.s << ',' << r.sigma << ',' << format15(r.le) << ','
          << format15(round15_up(r.le_err)) << ',' << format15(r.le_path) << ',' << format15(r.le_star) << ','
          << format15(round15_down(r.slack)) << '\n';
  }
  if (!out) throw Error(ErrorCode::io_error, "report write failed");
}

inline void emit_report(const std::vector<VerifyRecord>& records, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  emit_report(records, format, out);
}

}  // namespace treele
