#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "treele/treele.hpp"

namespace {

using namespace treele;

struct TreeInput {
  std::string file;
  std::string pruefer;
  bool pruefer_set = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--input,-i", file, "Edge-list file (default: stdin)");
    cmd->add_option("--pruefer", pruefer, "Comma-separated Pruefer sequence instead of an edge list")
        ->each([this](const std::string&) { pruefer_set = true; });
  }

  Tree read() const {
    if (pruefer_set) return from_pruefer(parse_pruefer(pruefer));
    std::optional<Tree> t;
    if (file.empty() || file == "-") {
      t = read_edge_list(std::cin);
    } else {
      std::ifstream in(file);
      if (!in) throw Error(ErrorCode::io_error, "cannot open '" + file + "'");
      t = read_edge_list(in);
    }
    if (!t) throw Error(ErrorCode::io_error, "no tree in input");
    return *t;
  }
};

struct FamilyArgs {
  std::string family;
  std::size_t n = 0, a = 0, b = 0, p = 0, r = 0, s1 = 0, s2 = 0;
  std::string s;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--family", family, "path | star | double_broom3 | double_broom4 | sns | t4_spider | t_prime | t_dprime")
        ->required();
    cmd->add_option("--n", n, "Order (path, star)");
    cmd->add_option("--a", a);
    cmd->add_option("--b", b);
    cmd->add_option("--p", p, "Root leaves (sns)");
    cmd->add_option("--r", r, "Level-1 vertices (sns, t_prime, t_dprime)");
    cmd->add_option("--s", s, "Leaf counts: comma list for sns, s1 for t_prime, s1,s2 for t_dprime");
  }

  std::vector<std::size_t> s_list() const {
    std::vector<std::size_t> out;
    for (Vertex v : parse_pruefer(s)) {
      if (v < 0) throw Error(ErrorCode::bad_param, "leaf counts must be non-negative");
      out.push_back(static_cast<std::size_t>(v));
    }
    return out;
  }

  Tree build() const {
    auto need = [](std::size_t got, std::size_t want, const char* what) {
      if (got != want) throw Error(ErrorCode::bad_param, std::string("--s needs ") + what);
    };
    if (family == "path") return path(n);
    if (family == "star") return star(n);
    if (family == "double_broom3") return double_broom3(a, b);
    if (family == "double_broom4") return double_broom4(a, b);
    if (family == "sns") return sns_tree(p, r, s_list());
    if (family == "t4_spider") return t4_spider(a, b);
    auto sl = s_list();
    if (family == "t_prime") {
      need(sl.size(), 1, "s1");
      return t_prime(r, sl[0]);
    }
    if (family == "t_dprime") {
      need(sl.size(), 2, "s1,s2");
      return t_dprime(r, sl[0], sl[1]);
    }
    throw Error(ErrorCode::bad_param, "unknown family '" + family + "'");
  }
};

std::pair<std::size_t, std::size_t> parse_shards(const std::string& spec) {
  auto slash = spec.find('/');
  if (slash == std::string::npos) throw Error(ErrorCode::bad_param, "shards must look like i/k");
  try {
    return {std::stoul(spec.substr(0, slash)), std::stoul(spec.substr(slash + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::bad_param, "shards must look like i/k");
  }
}

std::vector<std::string> parse_checks(const std::string& spec) {
  if (spec == "all") return tree_check_ids();
  std::vector<std::string> ids;
  std::istringstream in(spec);
  std::string id;
  while (std::getline(in, id, ','))
    if (!id.empty()) ids.push_back(id);
  return ids;
}

std::string poly_json(const Poly& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) out += (i ? "," : "") + p.coefficients()[i].get_str();
  return out + "]";
}

Json spectrum_json(const Tree& t, double tol, bool with_eigenvalues) {
  Json j;
  j["n"] = t.size();
  Enclosure le;
  if (with_eigenvalues) {
    Spectrum s = eigenvalues(t, tol);
    Json values = Json::array();
    double worst = 0.0;
    for (const auto& e : s.eigenvalues) {
      values.push_back(round15(e.value()));
      worst = std::max(worst, e.error());
    }
    j["eigenvalues"] = values;
    j["eigenvalue_err"] = round15_up(worst);
    j["sigma"] = s.sigma;
    le = s.energy();
  } else {
    j["sigma"] = sigma(t);
    le = laplacian_energy(t, tol);
  }
  j["le"] = round15(le.value());
  j["le_err"] = round15_up(le.error());
  return j;
}

int exit_for(const std::vector<BoundReport>& reports) {
  bool undecided = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fails) return 2;
    if (r.verdict == Verdict::undecidable && r.numerically_undecided()) undecided = true;
  }
  return undecided ? 3 : 0;
}

void write_report(const std::vector<VerifyRecord>& rows, const std::string& out, const std::string& format) {
  if (out.empty()) return;
  emit_report(rows, parse_format(format), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplacian spectra, energies and energy bounds of trees"};
  app.require_subcommand(1);
  int exit_code = 0;

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Stream all free trees of order n");
  std::size_t enum_n = 0;
  std::string enum_shards = "0/1", enum_emit = "edges";
  enumerate->add_option("--n", enum_n)->required();
  enumerate->add_option("--shards", enum_shards, "i/k: this run's share of the trees");
  enumerate->add_option("--emit", enum_emit, "edges | pruefer | codes")->check(CLI::IsMember({"edges", "pruefer", "codes"}));
  enumerate->callback([&] {
    auto [i, k] = parse_shards(enum_shards);
    ShardedFreeTrees trees({enum_n, i, k});
    bool first = true;
    while (auto t = trees.next()) {
      if (enum_emit == "edges") {
        if (!first) std::cout << '\n';
        std::cout << to_edge_list_text(*t);
      } else if (enum_emit == "pruefer") {
        std::cout << format_pruefer(to_pruefer(*t)) << '\n';
      } else {
        std::cout << canonical_code(*t) << '\n';
      }
      first = false;
    }
  });

  // family
  auto* family = app.add_subcommand("family", "Emit a member of a named family as an edge list");
  FamilyArgs family_args;
  family_args.add_to(family);
  family->callback([&] { std::cout << to_edge_list_text(family_args.build()); });

  // spectrum / le
  double tol = 1e-12;
  auto* spectrum = app.add_subcommand("spectrum", "Certified eigenvalues, sigma and energy");
  TreeInput spectrum_in;
  spectrum_in.add_to(spectrum);
  spectrum->add_option("--tol", tol, "Enclosure width");
  spectrum->callback([&] { std::cout << spectrum_json(spectrum_in.read(), tol, true).dump() << '\n'; });

  auto* le = app.add_subcommand("le", "Certified Laplacian energy");
  TreeInput le_in;
  le_in.add_to(le);
  le->add_option("--tol", tol, "Enclosure width");
  le->callback([&] { std::cout << spectrum_json(le_in.read(), tol, false).dump() << '\n'; });

  // charpoly
  auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial, coefficients ascending");
  TreeInput charpoly_in;
  charpoly_in.add_to(charpoly);
  charpoly->callback([&] { std::cout << poly_json(char_poly(charpoly_in.read())) << '\n'; });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate inequalities on one tree (JSON report per line)");
  TreeInput bounds_in;
  bounds_in.add_to(bounds);
  std::string bounds_checks = "all", bounds_mode = "strict";
  bounds->add_option("--check,--checks", bounds_checks, "all or a comma list of check ids");
  bounds->add_option("--mode", bounds_mode, "strict | exploratory")->check(CLI::IsMember({"strict", "exploratory"}));
  bounds->add_option("--tol", tol, "Starting enclosure width");
  bounds->callback([&] {
    Tree t = bounds_in.read();
    CheckOptions opts{.tol = tol, .mode = bounds_mode == "strict" ? CheckMode::strict : CheckMode::exploratory};
    ReferenceEnergies refs;
    TreeContext ctx(t);
    auto reports = run_checks(ctx, parse_checks(bounds_checks), refs, opts);
    for (const auto& r : reports) std::cout << to_json(r).dump() << '\n';
    exit_code = exit_for(reports);
  });

  // check-conjecture
  auto* conj = app.add_subcommand("check-conjecture", "Exhaustive verification over all free trees");
  RunConfig cfg;
  std::optional<std::size_t> conj_n;
  std::string conj_shards = "0/1", conj_out, conj_format = "jsonl", conj_store, conj_checks = "conjecture";
  conj->add_option("--n", conj_n, "Single order");
  conj->add_option("--n-min", cfg.n_min);
  conj->add_option("--n-max", cfg.n_max);
  conj->add_option("--tol", cfg.tol);
  conj->add_option("--shards", conj_shards, "i/k");
  conj->add_option("--out", conj_out, "Sorted report file");
  conj->add_option("--format", conj_format)->check(CLI::IsMember({"jsonl", "csv"}));
  conj->add_option("--store", conj_store, "Append-only record file; an existing file resumes the run");
  conj->add_option("--checks", conj_checks, "Extra checks per tree: all or a comma list");
  conj->add_flag("--allow-large", cfg.allow_large, "Permit n up to 18");
  conj->callback([&] {
    if (conj_n) cfg.n_min = cfg.n_max = *conj_n;
    std::tie(cfg.shard_index, cfg.shard_count) = parse_shards(conj_shards);
    cfg.checks = parse_checks(conj_checks);
    cfg.validate();
    std::size_t estimate = 0;
    for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) estimate += free_tree_count_estimate(n);
    std::cerr << "about " << estimate << " trees (before sharding)\n";
    std::optional<RecordStore> store;
    if (conj_store.empty())
      store.emplace();
    else
      store.emplace(conj_store);
    RunSummary summary = run_exhaustive(cfg, *store, [](std::size_t n, std::size_t done) {
      std::cerr << "n=" << n << ": " << done << " trees\n";
    });
    std::vector<VerifyRecord> rows;
    for (const auto& r : store->records())
      if (r.n >= cfg.n_min && r.n <= cfg.n_max) rows.push_back(r);
    write_report(rows, conj_out, conj_format);
    std::cout << summary.to_json().dump() << '\n';
    exit_code = summary.exit_code();
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Family sweep over parameter grids");
  SweepGrid grid;
  RunConfig sweep_cfg;
  sweep_cfg.checks = {"conjecture", "diameter4", "internal-count"};
  std::string sweep_out, sweep_format = "jsonl", sweep_family;
  sweep->add_option("--family", sweep_family, "Only members whose label starts with this name");
  sweep->add_option("--n-min", grid.n_min, "Skip members below this order");
  sweep->add_option("--spider-max", grid.spider_max, "Largest a+b for t4_spider");
  sweep->add_option("--tprime-r-max", grid.tprime_r_max);
  sweep->add_option("--tprime-s-max", grid.tprime_s1_max);
  sweep->add_option("--tdprime-r-max", grid.tdprime_r_max);
  sweep->add_option("--tdprime-s-max", grid.tdprime_s_max);
  sweep->add_option("--broom-max", grid.broom_max);
  sweep->add_option("--tol", sweep_cfg.tol);
  sweep->add_option("--out", sweep_out);
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"jsonl", "csv"}));
  sweep->callback([&] {
    auto members = family_members(grid);
    if (!sweep_family.empty())
      std::erase_if(members, [&](const FamilyMember& m) { return m.label.rfind(sweep_family + "(", 0) != 0; });
    RecordStore store;
    RunSummary summary = run_family_sweep(members, sweep_cfg, store);
    write_report(store.records(), sweep_out, sweep_format);
    std::cout << summary.to_json().dump() << '\n';
    exit_code = summary.exit_code();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
