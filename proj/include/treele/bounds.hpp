#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treele/error.hpp"
#include "treele/families.hpp"
#include "treele/inertia.hpp"
#include "treele/numeric.hpp"
#include "treele/spectrum.hpp"
#include "treele/tree.hpp"

namespace treele {

enum class CheckMode {
  strict,       // structural preconditions are enforced (BadParam otherwise)
  exploratory,  // evaluated anyway; the report is flagged out of scope
};

/// One certified comparison lhs >= rhs.
struct Claim {
  std::string name;
  Enclosure lhs;
  Enclosure rhs;
  Verdict verdict = Verdict::undecidable;
  bool by_identity = false;

  static Claim at_least(std::string name, Enclosure lhs, Enclosure rhs) {
    Verdict v = compare_ge(lhs, rhs);
    return {std::move(name), std::move(lhs), std::move(rhs), v};
  }
  // A claim that holds with equality for structural reasons (T is the
  // extremal tree itself), which enclosures alone cannot certify.
  static Claim tight(std::string name, Enclosure value) { return {std::move(name), value, value, Verdict::holds, true}; }
  Enclosure slack() const { return lhs - rhs; }
};

struct Hypothesis {
  std::string name;
  Verdict verdict;
};

inline Verdict from_bool(bool b) { return b ? Verdict::holds : Verdict::fails; }

/// Evaluation of one inequality (or sufficient condition) on concrete input.
///
/// `verdict` is holds / fails for the claims when every hypothesis holds. A
/// failed hypothesis makes the report not applicable: the verdict is then
/// undecidable and no claim is asserted, although the claims are still
/// evaluated so their slack can be inspected.
struct BoundReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Hypothesis> hypotheses;
  std::vector<Claim> claims;
  std::vector<std::pair<std::string, std::string>> facts;
  bool in_scope = true;
  bool applicable = true;
  Verdict verdict = Verdict::undecidable;
  std::optional<Enclosure> slack;
  double tol = 0.0;
  int refinements = 0;
  std::string note;

  void finalize() {
    Verdict hyp = Verdict::holds;
    for (const auto& h : hypotheses) hyp = conjunction(hyp, h.verdict);
    applicable = hyp == Verdict::holds;
    Verdict v = Verdict::holds;
    for (const auto& c : claims) v = conjunction(v, c.verdict);
    verdict = hyp == Verdict::holds ? v : Verdict::undecidable;
    if (hyp == Verdict::fails && note.empty()) note = "hypotheses not met; no claim made";
    slack.reset();
    for (const auto& c : claims) {
      if (c.by_identity) continue;
      Enclosure s = c.slack();
      slack = slack ? min(*slack, s) : s;
    }
  }

  // Undecidable because enclosures overlap, not because a hypothesis failed.
  bool numerically_undecided() const {
    if (verdict != Verdict::undecidable) return false;
    for (const auto& h : hypotheses)
      if (h.verdict == Verdict::fails) return false;
    return true;
  }
};

struct CheckOptions {
  double tol = 1e-12;
  CheckMode mode = CheckMode::strict;
  int refinements = 3;  // tolerance halvings tried on an undecidable report
};

// 2 + 4n/pi, the upper bound on LE(P_n).
inline Enclosure path_energy_upper(std::size_t n) {
  return Rational(4 * static_cast<long>(n)) / pi_enclosure() + Rational(2);
}

// LE(S_n) = 2n - 4 + 4/n for n >= 2, exact.
inline Enclosure star_energy(std::size_t n) {
  if (n <= 1) return Enclosure(Rational(0));
  return Enclosure(make_rational(2 * static_cast<long>(n) - 4) + make_rational(4, static_cast<long>(n)));
}

/// Energies of P_n, cached per (n, tol), shared by every tree of a run.
class ReferenceEnergies {
 public:
  const Enclosure& path(std::size_t n, double tol) {
    auto key = std::make_pair(n, tol);
    auto it = path_.find(key);
    if (it == path_.end()) it = path_.emplace(key, laplacian_energy(treele::path(n), tol)).first;
    return it->second;
  }

 private:
  std::map<std::pair<std::size_t, double>, Enclosure> path_;
};

/// Lazily computed spectral data of one tree, keyed by tolerance.
class TreeContext {
 public:
  explicit TreeContext(const Tree& t) : tree_(t), degrees_(degree_summary(t)) {}

  const Tree& tree() const { return tree_; }
  const DegreeSummary& degrees() const { return degrees_; }
  std::size_t n() const { return tree_.size(); }

  const Spectrum& spectrum(double tol) {
    auto it = spectra_.find(tol);
    if (it == spectra_.end()) it = spectra_.emplace(tol, eigenvalues(tree_, tol)).first;
    return it->second;
  }

  std::size_t diameter() {
    if (!diameter_) diameter_ = treele::diameter(tree_);
    return *diameter_;
  }

 private:
  Tree tree_;
  DegreeSummary degrees_;
  std::map<double, Spectrum> spectra_;
  std::optional<std::size_t> diameter_;
};

namespace detail {

template <class Eval>
BoundReport refine(const CheckOptions& opts, Eval eval) {
  double tol = opts.tol;
  BoundReport r = eval(tol);
  for (int i = 0; i < opts.refinements && r.numerically_undecided(); ++i) {
    tol /= 2;
    r = eval(tol);
    r.refinements = i + 1;
  }
  return r;
}

inline std::string str(std::size_t v) { return std::to_string(v); }

inline Rational q(std::size_t v) { return Rational(static_cast<long>(v)); }

inline void require_scope(bool ok, const CheckOptions& opts, BoundReport& r, ErrorCode code, const std::string& why) {
  if (ok) return;
  if (opts.mode == CheckMode::strict) throw Error(code, why);
  r.in_scope = false;
  r.note = "out of hypothesis (exploratory): " + why;
}

// Eigenvalues of a forest, merged non-increasing.
inline std::vector<Enclosure> forest_eigenvalues(const std::vector<const Spectrum*>& parts) {
  std::vector<Enclosure> all;
  for (const auto* s : parts) all.insert(all.end(), s->eigenvalues.begin(), s->eigenvalues.end());
  std::stable_sort(all.begin(), all.end(), [](const Enclosure& x, const Enclosure& y) {
    return x.hi() != y.hi() ? x.hi() > y.hi() : x.lo() > y.lo();
  });
  return all;
}

// Number of eigenvalues >= x, exactly.
inline std::size_t count_at_least(const Tree& t, const Rational& x) {
  EigenCounts c = InertiaCounter(t).count(x);
  return c.above + c.equal;
}

inline Enclosure prefix_sum(const Spectrum& s, std::size_t k) { return k == 0 ? Enclosure(Rational(0)) : s.s_k(k); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-tree checks.

// Multiplicity of the eigenvalue 1 is at least p - q.
inline BoundReport one_multiplicity_check(const Tree& t) {
  BoundReport r{.id = "one-multiplicity"};
  DegreeSummary d = degree_summary(t);
  std::size_t m = multiplicity_of_one(t);
  r.facts = {{"multiplicity", detail::str(m)}, {"p", detail::str(d.pendant_count)}, {"q", detail::str(d.leaf_neighbor_count)}};
  r.claims.push_back(Claim::at_least("mult(1) >= p - q", Enclosure(detail::q(m)),
                                     Enclosure(detail::q(d.pendant_count) - detail::q(d.leaf_neighbor_count))));
  r.finalize();
  return r;
}

// mu_i >= d_i - i + 2 for every i.
inline BoundReport brouwer_haemers_check(TreeContext& ctx, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "degree-eigen", .tol = tol};
    const Spectrum& s = ctx.spectrum(tol);
    const auto& deg = ctx.degrees().degrees;
    // The inequality at index i excludes the graph K_i plus isolated
    // vertices; among trees that is K_1 and K_2 at i = n.
    const std::size_t last = ctx.n() <= 2 ? ctx.n() - 1 : ctx.n();
    if (last < ctx.n()) r.note = "i = n skipped: the tree is complete on n vertices";
    for (std::size_t i = 1; i <= last; ++i) {
      Rational rhs = detail::q(deg[i - 1]) - detail::q(i) + 2;
      r.claims.push_back(Claim::at_least("mu_" + detail::str(i) + " >= d_" + detail::str(i) + " - " + detail::str(i) + " + 2",
                                         s.eigenvalues[i - 1], Enclosure(rhs)));
    }
    r.finalize();
    return r;
  });
}
inline BoundReport brouwer_haemers_check(const Tree& t, const CheckOptions& opts = {}) {
  TreeContext ctx(t);
  return brouwer_haemers_check(ctx, opts);
}

/// Interlacing under deletion of each edge e: mu_i(T) >= mu_i(T-e) >=
/// mu_{i+1}(T). Coinciding eigenvalues make exact certification impossible
/// from enclosures, so each comparison carries a margin of 2*tol.
inline BoundReport interlacing_check(TreeContext& ctx, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "interlacing", .tol = tol};
    const Spectrum& s = ctx.spectrum(tol);
    const Rational margin = Rational(tol) * 2;
    const std::size_t n = ctx.n();
    for (const Edge& e : ctx.tree().edges()) {
      EdgeSplit split = delete_edge(ctx.tree(), e);
      Spectrum s1 = eigenvalues(split.first, tol), s2 = eigenvalues(split.second, tol);
      auto minus = detail::forest_eigenvalues({&s1, &s2});
      for (std::size_t i = 0; i < n; ++i) {
        const std::string tag = describe(e) + ", i=" + detail::str(i + 1);
        r.claims.push_back(Claim::at_least("mu_i(T) >= mu_i(T-e) " + tag, s.eigenvalues[i] + margin, minus[i]));
        if (i + 1 < n)
          r.claims.push_back(Claim::at_least("mu_i(T-e) >= mu_i+1(T) " + tag, minus[i] + margin, s.eigenvalues[i + 1]));
      }
    }
    r.finalize();
    return r;
  });
}

// At least ceil(n/2) eigenvalues lie strictly below the average degree.
inline BoundReport below_average_check(const Tree& t) {
  BoundReport r{.id = "below-average"};
  const std::size_t n = t.size();
  EigenCounts c = count_eigs(t, average_degree(n));
  r.facts = {{"below", detail::str(c.below)}};
  // On K_1 the average degree is 0 and nothing lies below it.
  r.hypotheses.push_back({"n >= 2", from_bool(n >= 2)});
  r.claims.push_back(Claim::at_least("#{mu < dbar} >= ceil(n/2)", Enclosure(detail::q(c.below)), Enclosure(detail::q((n + 1) / 2))));
  r.finalize();
  return r;
}

/// S_k >= 1 + d_1 + ... + d_k for k = 1..n-1 (or the single given k).
inline BoundReport majorization_check(TreeContext& ctx, const CheckOptions& opts = {},
                                      std::optional<std::size_t> only_k = std::nullopt) {
  const std::size_t n = ctx.n();
  if (only_k && (*only_k < 1 || *only_k + 1 > n)) throw Error(ErrorCode::bad_param, "k must lie in 1..n-1");
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "majorization", .tol = tol};
    const Spectrum& s = ctx.spectrum(tol);
    const auto& deg = ctx.degrees().degrees;
    Rational partial(1);
    for (std::size_t k = 1; k + 1 <= n; ++k) {
      partial += detail::q(deg[k - 1]);
      if (only_k && k != *only_k) continue;
      r.claims.push_back(Claim::at_least("S_" + detail::str(k) + " >= 1 + sum d_i", s.s_k(k), Enclosure(partial)));
    }
    if (only_k) r.inputs.emplace_back("k", detail::str(*only_k));
    r.finalize();
    return r;
  });
}
inline BoundReport majorization_check(const Tree& t, std::size_t k, const CheckOptions& opts = {}) {
  TreeContext ctx(t);
  return majorization_check(ctx, opts, k);
}

// 2(1 + d_1 + ... + d_k - k*dbar).
inline Rational degree_sum_lower_bound(const Tree& t, std::size_t k) {
  const std::size_t n = t.size();
  if (k < 1 || k + 1 > n) throw Error(ErrorCode::bad_param, "k must lie in 1..n-1");
  DegreeSummary d = degree_summary(t);
  Rational sum(1);
  for (std::size_t i = 0; i < k; ++i) sum += detail::q(d.degrees[i]);
  return (sum - detail::q(k) * d.average_degree) * 2;
}

// LE >= 2(1 + sum_{i<=k} d_i - k*dbar) for every k = 1..n-1.
inline BoundReport degree_energy_check(TreeContext& ctx, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "degree-energy", .tol = tol};
    Enclosure le = ctx.spectrum(tol).energy();
    for (std::size_t k = 1; k + 1 <= ctx.n(); ++k)
      r.claims.push_back(Claim::at_least("LE >= degree bound, k=" + detail::str(k), le,
                                         Enclosure(degree_sum_lower_bound(ctx.tree(), k))));
    r.finalize();
    return r;
  });
}

/// ((pi-2)/pi) n >= s + 2 - 2s/n, decided with a certified enclosure of pi.
inline Verdict internal_vertex_condition(std::size_t n, std::size_t s) {
  if (n == 0) throw Error(ErrorCode::bad_param, "n must be positive");
  Enclosure lhs = detail::q(n) - Rational(2 * static_cast<long>(n)) / pi_enclosure();
  Rational rhs = detail::q(s) + 2 - make_rational(2 * static_cast<long>(s), static_cast<long>(n));
  return compare_ge(lhs, Enclosure(rhs));
}

/// Smallest n with ((pi-2)/pi) n >= s + 2. Dropping the -2s/n term gives a
/// condition that is monotone in n, so it holds for every larger n as well.
inline std::size_t internal_vertex_threshold(std::size_t s) {
  for (std::size_t n = 1;; ++n) {
    Enclosure lhs = detail::q(n) - Rational(2 * static_cast<long>(n)) / pi_enclosure();
    Verdict v = compare_ge(lhs, Enclosure(detail::q(s) + 2));
    if (v == Verdict::undecidable) throw Error(ErrorCode::bad_param, "pi enclosure too coarse");
    if (v == Verdict::holds) return n;
  }
}

/// Smallest n >= s + 2 satisfying internal_vertex_condition itself. The
/// left side minus the right is increasing for n >= s + 2, so every larger n
/// satisfies it too.
inline std::size_t internal_vertex_threshold_exact(std::size_t s) {
  for (std::size_t n = std::max<std::size_t>(s + 2, 1);; ++n) {
    Verdict v = internal_vertex_condition(n, s);
    if (v == Verdict::undecidable) throw Error(ErrorCode::bad_param, "pi enclosure too coarse");
    if (v == Verdict::holds) return n;
  }
}

// s <= 9n/25 - 2, a linear sufficient form of the internal-vertex condition.
inline bool internal_vertex_linear_condition(std::size_t n, std::size_t s) {
  return detail::q(s) <= make_rational(9 * static_cast<long>(n), 25) - 2;
}

/// LE(T) >= 2n + 2s - 2 - 2s*dbar >= 2 + 4n/pi when the internal-vertex
/// condition holds, s being the number of internal vertices.
inline BoundReport internal_vertex_lower_bound(TreeContext& ctx, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    const std::size_t n = ctx.n(), s = ctx.degrees().internal_count;
    BoundReport r{.id = "internal-count", .tol = tol};
    r.inputs = {{"n", detail::str(n)}, {"s", detail::str(s)}};
    detail::require_scope(n >= 4 && s >= 1, opts, r, ErrorCode::bad_param, "needs n >= 4 and s >= 1");
    r.hypotheses.push_back({"((pi-2)/pi) n >= s + 2 - 2s/n", internal_vertex_condition(n, s)});
    Enclosure le = ctx.spectrum(tol).energy();
    Enclosure degree_bound(detail::q(2 * n + 2 * s) - 2 - detail::q(2 * s) * ctx.degrees().average_degree);
    r.claims.push_back(Claim::at_least("LE >= 2n + 2s - 2 - 2s*dbar", le, degree_bound));
    r.claims.push_back(Claim::at_least("2n + 2s - 2 - 2s*dbar >= 2 + 4n/pi", degree_bound, path_energy_upper(n)));
    r.claims.push_back(Claim::at_least("LE >= 2 + 4n/pi", le, path_energy_upper(n)));
    r.finalize();
    return r;
  });
}

namespace detail {

// Shared evaluation of the edge-deletion bound for one edge.
struct EdgeSplitData {
  EdgeSplit split;
  std::size_t n1, n2, sigma, k1, k2, sigma1, sigma2;
  Spectrum s1, s2;
  Enclosure bound;
};

inline EdgeSplitData edge_split_data(const Tree& t, Edge e, double tol) {
  EdgeSplitData d{.split = delete_edge(t, e)};
  const std::size_t n = t.size();
  d.n1 = d.split.first.size();
  d.n2 = d.split.second.size();
  const Rational threshold = Rational(2) - make_rational(4, static_cast<long>(n));  // dbar(T - e)
  d.k1 = count_at_least(d.split.first, threshold);
  d.k2 = count_at_least(d.split.second, threshold);
  d.sigma = d.k1 + d.k2;
  d.sigma1 = sigma(d.split.first);
  d.sigma2 = sigma(d.split.second);
  d.s1 = eigenvalues(d.split.first, tol);
  d.s2 = eigenvalues(d.split.second, tol);
  d.bound = (prefix_sum(d.s1, d.k1) + prefix_sum(d.s2, d.k2)) * Rational(2) - q(4 * d.sigma) +
            make_rational(4 * static_cast<long>(d.sigma), static_cast<long>(n));
  return d;
}

inline void edge_split_scope(const Tree& t, Edge e, const CheckOptions& opts, BoundReport& r) {
  if (!t.has_edge(e.first, e.second)) throw Error(ErrorCode::edge_absent, "edge " + describe(e));
  const bool pendant = t.is_leaf(e.first) || t.is_leaf(e.second);
  require_scope(!pendant, opts, r, ErrorCode::pendant_edge, "edge " + describe(e) + " is pendant");
  if (r.in_scope) require_scope(t.size() >= 8, opts, r, ErrorCode::bad_param, "needs n >= 8");
}

}  // namespace detail

/// LE(T) >= 2 S_k1(T1) + 2 S_k2(T2) - 4 sigma + 4 sigma/n for T - e = T1 u T2,
/// where k_i counts eigenvalues of T_i at or above dbar(T - e) = 2 - 4/n and
/// sigma = k1 + k2.
inline BoundReport edge_split_lower_bound(TreeContext& ctx, Edge e, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "edge-split", .tol = tol};
    r.inputs = {{"edge", describe(e)}};
    detail::edge_split_scope(ctx.tree(), e, opts, r);
    auto d = detail::edge_split_data(ctx.tree(), e, tol);
    r.facts = {{"n1", detail::str(d.n1)}, {"n2", detail::str(d.n2)}, {"sigma", detail::str(d.sigma)},
               {"k1", detail::str(d.k1)}, {"k2", detail::str(d.k2)}};
    r.claims.push_back(Claim::at_least("LE(T) >= 2S_k1(T1) + 2S_k2(T2) - 4sigma + 4sigma/n", ctx.spectrum(tol).energy(), d.bound));
    r.finalize();
    return r;
  });
}
inline BoundReport edge_split_lower_bound(const Tree& t, Edge e, const CheckOptions& opts = {}) {
  TreeContext ctx(t);
  return edge_split_lower_bound(ctx, e, opts);
}

/// If sigma_i = k_i and LE(T_i) >= 2 + 4n_i/pi for both components of T - e,
/// then LE(T) >= 2 + 4n/pi. Also checks n1^2 (n2 - 2 sigma2) + n2^2 (n1 - 2 sigma1) >= 0.
inline BoundReport edge_split_sufficient(TreeContext& ctx, Edge e, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "edge-split-sufficient", .tol = tol};
    r.inputs = {{"edge", describe(e)}};
    detail::edge_split_scope(ctx.tree(), e, opts, r);
    auto d = detail::edge_split_data(ctx.tree(), e, tol);
    r.facts = {{"n1", detail::str(d.n1)},         {"n2", detail::str(d.n2)},         {"sigma1", detail::str(d.sigma1)},
               {"sigma2", detail::str(d.sigma2)}, {"k1", detail::str(d.k1)},         {"k2", detail::str(d.k2)}};
    r.hypotheses.push_back({"sigma1 = k1", from_bool(d.sigma1 == d.k1)});
    r.hypotheses.push_back({"sigma2 = k2", from_bool(d.sigma2 == d.k2)});
    r.hypotheses.push_back({"LE(T1) >= 2 + 4n1/pi", compare_ge(d.s1.energy(), path_energy_upper(d.n1))});
    r.hypotheses.push_back({"LE(T2) >= 2 + 4n2/pi", compare_ge(d.s2.energy(), path_energy_upper(d.n2))});
    r.claims.push_back(Claim::at_least("LE(T) >= 2 + 4n/pi", ctx.spectrum(tol).energy(), path_energy_upper(ctx.n())));
    r.finalize();
    // The auxiliary inequality holds whenever n_i >= 2 sigma_i, with or
    // without the hypotheses, so it is reported separately.
    const long n1 = static_cast<long>(d.n1), n2 = static_cast<long>(d.n2);
    const long aux = n1 * n1 * (n2 - 2 * static_cast<long>(d.sigma2)) + n2 * n2 * (n1 - 2 * static_cast<long>(d.sigma1));
    r.facts.emplace_back("auxiliary", std::to_string(aux));
    if (aux < 0) {
      r.verdict = Verdict::fails;
      r.note = "auxiliary inequality n1^2(n2-2sigma2) + n2^2(n1-2sigma1) >= 0 violated";
    }
    return r;
  });
}
inline BoundReport edge_split_sufficient(const Tree& t, Edge e, const CheckOptions& opts = {}) {
  TreeContext ctx(t);
  return edge_split_sufficient(ctx, e, opts);
}

/// LE >= 4n/pi + 2 for a tree of diameter 4; asserted for n >= 19, recorded
/// as slack only below that.
inline BoundReport diameter4_energy_check(TreeContext& ctx, const CheckOptions& opts = {}) {
  if (ctx.diameter() != 4) throw Error(ErrorCode::bad_param, "tree does not have diameter 4");
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "diameter4", .tol = tol};
    r.inputs = {{"n", detail::str(ctx.n())}};
    r.hypotheses.push_back({"n >= 19", from_bool(ctx.n() >= 19)});
    r.claims.push_back(Claim::at_least("LE >= 4n/pi + 2", ctx.spectrum(tol).energy(), path_energy_upper(ctx.n())));
    r.finalize();
    if (!r.applicable) r.note = "n < 19: slack recorded only";
    return r;
  });
}
inline BoundReport diameter4_energy_check(const Tree& t, const CheckOptions& opts = {}) {
  TreeContext ctx(t);
  return diameter4_energy_check(ctx, opts);
}

// 2 + 4n/pi >= LE(P_n).
inline BoundReport path_energy_check(std::size_t n, ReferenceEnergies& refs, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    BoundReport r{.id = "path-energy", .tol = tol};
    r.inputs = {{"n", detail::str(n)}};
    r.claims.push_back(Claim::at_least("2 + 4n/pi >= LE(P_n)", path_energy_upper(n), refs.path(n, tol)));
    r.finalize();
    return r;
  });
}

/// LE(P_n) <= LE(T) <= LE(S_n). A side where T is itself the extremal tree
/// is tight by identity.
inline BoundReport conjecture_check(TreeContext& ctx, ReferenceEnergies& refs, const CheckOptions& opts = {}) {
  return detail::refine(opts, [&](double tol) {
    const std::size_t n = ctx.n();
    BoundReport r{.id = "conjecture", .tol = tol};
    r.inputs = {{"n", detail::str(n)}};
    const Enclosure le = ctx.spectrum(tol).energy();
    const Enclosure& le_path = refs.path(n, tol);
    const Enclosure le_star = star_energy(n);
    const bool is_path = ctx.diameter() + 1 == n;
    const bool is_star = ctx.degrees().internal_count <= 1;
    r.claims.push_back(is_path ? Claim::tight("LE(T) >= LE(P_n)", le_path) : Claim::at_least("LE(T) >= LE(P_n)", le, le_path));
    r.claims.push_back(is_star ? Claim::tight("LE(S_n) >= LE(T)", le_star) : Claim::at_least("LE(S_n) >= LE(T)", le_star, le));
    r.finalize();
    if (!r.slack) r.slack = Enclosure(Rational(0));  // n <= 3: path and star coincide
    return r;
  });
}
inline BoundReport conjecture_check(const Tree& t, const CheckOptions& opts = {}) {
  ReferenceEnergies refs;
  TreeContext ctx(t);
  return conjecture_check(ctx, refs, opts);
}

// ---------------------------------------------------------------------------
// Checks on a tree built by joining T1 and T2 with one edge.

namespace detail {

inline bool qualifying_sns(const Tree& t) {
  return diameter(t) == 4 && diameter4_shape(t).kind == Diameter4Kind::other;
}

struct JoinData {
  Tree joined;
  std::size_t n1, n2, sigma1, r1;
  Enclosure le1;
  Enclosure le;
};

inline JoinData join_data(const Tree& t1, Vertex u, const Tree& t2, Vertex v, double tol) {
  JoinData d{.joined = join(t1, u, t2, v)};
  d.n1 = t1.size();
  d.n2 = t2.size();
  d.sigma1 = sigma(t1);
  d.r1 = internal_count(t1);
  d.le1 = laplacian_energy(t1, tol);
  d.le = laplacian_energy(d.joined, tol);
  return d;
}

inline BoundReport join_report(const std::string& id, const JoinData& d, Vertex u, Vertex v, double tol) {
  BoundReport r{.id = id, .tol = tol};
  r.inputs = {{"n1", str(d.n1)}, {"n2", str(d.n2)}, {"u", std::to_string(u)}, {"v", std::to_string(v)}};
  r.facts = {{"sigma1", str(d.sigma1)}, {"r1", str(d.r1)}};
  return r;
}

inline void join_scope(const Tree& t1, const Tree& t2, bool t2_ok, const std::string& t2_need, const CheckOptions& opts,
                       BoundReport& r) {
  require_scope(t1.size() >= t2.size() && t2.size() >= 6, opts, r, ErrorCode::bad_param, "needs n1 >= n2 >= 6");
  if (r.in_scope) require_scope(t2_ok, opts, r, ErrorCode::bad_param, t2_need);
}

inline BoundReport join_internal_count_check(const std::string& id, const Tree& t1, Vertex u, const Tree& t2, Vertex v,
                                             bool t2_ok, const std::string& t2_need, const CheckOptions& opts) {
  return refine(opts, [&](double tol) {
    JoinData d = join_data(t1, u, t2, v, tol);
    BoundReport r = join_report(id, d, u, v, tol);
    join_scope(t1, t2, t2_ok, t2_need, opts, r);
    r.hypotheses.push_back({"sigma1 = r1", from_bool(d.sigma1 == d.r1)});
    r.hypotheses.push_back({"LE(T1) >= 2 + 4n1/pi", compare_ge(d.le1, path_energy_upper(d.n1))});
    r.claims.push_back(Claim::at_least("LE(T) >= 2 + 4n/pi", d.le, path_energy_upper(d.n1 + d.n2)));
    r.finalize();
    return r;
  });
}

}  // namespace detail

// T2 of diameter at most 3 (a star or a double broom).
inline BoundReport join_small_diameter_check(const Tree& t1, Vertex u, const Tree& t2, Vertex v, const CheckOptions& opts = {}) {
  return detail::join_internal_count_check("join-small-diameter", t1, u, t2, v, diameter(t2) <= 3,
                                           "T2 must have diameter at most 3", opts);
}

// T2 a diameter-4 tree other than the spider, T' and T'' shapes.
inline BoundReport join_sns_check(const Tree& t1, Vertex u, const Tree& t2, Vertex v, const CheckOptions& opts = {}) {
  return detail::join_internal_count_check("join-sns", t1, u, t2, v, detail::qualifying_sns(t2),
                                           "T2 must be a diameter-4 tree other than the spider, T' and T''", opts);
}

/// Gap form: if mu_{sigma1+1}(T1) - dbar(T1) < -2/n then LE(T) >= 2 + 4n/pi.
/// The gap is decided exactly: it holds iff no eigenvalue of T1 lies in
/// [dbar(T1) - 2/n, dbar(T1)).
inline BoundReport join_gap_check(const Tree& t1, Vertex u, const Tree& t2, Vertex v, const CheckOptions& opts = {}) {
  const bool t2_ok = diameter(t2) <= 3 || detail::qualifying_sns(t2);
  return detail::refine(opts, [&](double tol) {
    detail::JoinData d = detail::join_data(t1, u, t2, v, tol);
    BoundReport r = detail::join_report("join-gap", d, u, v, tol);
    detail::join_scope(t1, t2, t2_ok, "T2 must have diameter at most 3 or be a qualifying diameter-4 tree", opts, r);
    const long n = static_cast<long>(d.n1 + d.n2);
    const Rational edge = average_degree(d.n1) - make_rational(2, n);
    const bool gap = detail::count_at_least(t1, edge) == d.sigma1;
    r.hypotheses.push_back({"mu_{sigma1+1}(T1) - dbar(T1) < -2/n", from_bool(gap)});
    r.hypotheses.push_back({"LE(T1) >= 2 + 4n1/pi", compare_ge(d.le1, path_energy_upper(d.n1))});
    r.claims.push_back(Claim::at_least("LE(T) >= 2 + 4n/pi", d.le, path_energy_upper(d.n1 + d.n2)));
    r.finalize();
    return r;
  });
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& tree_check_ids() {
  static const std::vector<std::string> ids{"one-multiplicity", "degree-eigen", "interlacing",  "below-average",
                                            "majorization",     "degree-energy", "internal-count", "edge-split",
                                            "edge-split-sufficient", "diameter4", "path-energy", "conjecture"};
  return ids;
}

/// Runs the selected single-tree checks. Per-edge checks produce one report
/// per edge; in strict mode only edges within the statement's scope are used.
/// The diameter-4 check runs only on trees of diameter 4.
inline std::vector<BoundReport> run_checks(TreeContext& ctx, const std::vector<std::string>& ids, ReferenceEnergies& refs,
                                           const CheckOptions& opts = {}) {
  std::vector<BoundReport> out;
  for (const auto& id : ids) {
    if (id == "one-multiplicity") {
      out.push_back(one_multiplicity_check(ctx.tree()));
    } else if (id == "degree-eigen") {
      out.push_back(brouwer_haemers_check(ctx, opts));
    } else if (id == "interlacing") {
      out.push_back(interlacing_check(ctx, opts));
    } else if (id == "below-average") {
      out.push_back(below_average_check(ctx.tree()));
    } else if (id == "majorization") {
      out.push_back(majorization_check(ctx, opts));
    } else if (id == "degree-energy") {
      out.push_back(degree_energy_check(ctx, opts));
    } else if (id == "internal-count") {
      if (opts.mode == CheckMode::exploratory || (ctx.n() >= 4 && ctx.degrees().internal_count >= 1))
        out.push_back(internal_vertex_lower_bound(ctx, opts));
    } else if (id == "edge-split" || id == "edge-split-sufficient") {
      for (const Edge& e : ctx.tree().edges()) {
        const bool pendant = ctx.tree().is_leaf(e.first) || ctx.tree().is_leaf(e.second);
        if (opts.mode == CheckMode::strict && (pendant || ctx.n() < 8)) continue;
        if (opts.mode == CheckMode::exploratory && pendant) continue;  // T2 = P_1 carries no information
        out.push_back(id == "edge-split" ? edge_split_lower_bound(ctx, e, opts) : edge_split_sufficient(ctx, e, opts));
      }
    } else if (id == "diameter4") {
      if (ctx.diameter() == 4) out.push_back(diameter4_energy_check(ctx, opts));
    } else if (id == "path-energy") {
      out.push_back(path_energy_check(ctx.n(), refs, opts));
    } else if (id == "conjecture") {
      out.push_back(conjecture_check(ctx, refs, opts));
    } else {
      throw Error(ErrorCode::bad_param, "unknown check id '" + id + "'");
    }
  }
  return out;
}

}  // namespace treele
