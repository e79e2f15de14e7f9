#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace treele;

namespace {

std::string fact(const BoundReport& r, const std::string& key) {
  for (const auto& [k, v] : r.facts)
    if (k == key) return v;
  return "";
}

double le_double(const Tree& t) {
  double dbar = 2.0 - 2.0 / static_cast<double>(t.size()), le = 0.0;
  for (double m : oracle::spectrum(t)) le += std::abs(m - dbar);
  return le;
}

std::vector<Edge> internal_edges(const Tree& t) {
  std::vector<Edge> out;
  for (const auto& e : t.edges())
    if (!t.is_leaf(e.first) && !t.is_leaf(e.second)) out.push_back(e);
  return out;
}

}  // namespace

TEST(Verdicts, TernaryComparison) {
  Enclosure a(Rational(1), Rational(2)), b(Rational(3)), c(Rational(3, 2));
  EXPECT_EQ(compare_ge(b, a), Verdict::holds);
  EXPECT_EQ(compare_ge(a, b), Verdict::fails);
  EXPECT_EQ(compare_ge(a, c), Verdict::undecidable);
  EXPECT_EQ(compare_ge(b, b), Verdict::holds);
  EXPECT_EQ(conjunction(Verdict::holds, Verdict::undecidable), Verdict::undecidable);
  EXPECT_EQ(conjunction(Verdict::undecidable, Verdict::fails), Verdict::fails);
}

TEST(Pi, EnclosureIsTightAndCorrect) {
  const Enclosure& pi = pi_enclosure();
  EXPECT_NEAR(pi.value(), std::numbers::pi, 1e-15);
  EXPECT_LE(pi.width(), Rational(1e-28));
  // pi lies strictly between these 31-digit truncations.
  const Rational below("3141592653589793238462643383279/1000000000000000000000000000000");
  const Rational above("3141592653589793238462643383280/1000000000000000000000000000000");
  EXPECT_LT(pi.lo(), above);
  EXPECT_GT(pi.hi(), below);
}

TEST(PathEnergyUpper, Examples) {
  EXPECT_NEAR(path_energy_upper(4).value(), 2 + 16 / std::numbers::pi, 1e-13);
  EXPECT_NEAR(path_energy_upper(19).value(), 26.1916, 1e-4);
  EXPECT_EQ(compare_ge(path_energy_upper(4), laplacian_energy(path(4))), Verdict::holds);
}

TEST(StarEnergy, ExactFormula) {
  EXPECT_EQ(star_energy(4), Enclosure(Rational(5)));
  EXPECT_EQ(star_energy(5), Enclosure(Rational(34, 5)));
}

TEST(OneMultiplicity, Examples) {
  auto r = one_multiplicity_check(star(6));
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(fact(r, "multiplicity"), "4");
  EXPECT_EQ(one_multiplicity_check(path(4)).verdict, Verdict::holds);
}

TEST(DegreeEigen, Examples) {
  auto s6 = brouwer_haemers_check(star(6));
  EXPECT_EQ(s6.verdict, Verdict::holds);
  ASSERT_TRUE(s6.slack.has_value());
  EXPECT_EQ(s6.slack->lo(), 0);  // mu_1 = 6 = d_1 + 1
  EXPECT_EQ(brouwer_haemers_check(path(5)).verdict, Verdict::holds);
}

TEST(Majorization, Examples) {
  auto s5 = majorization_check(star(5), 1);
  EXPECT_EQ(s5.verdict, Verdict::holds);
  EXPECT_EQ(s5.slack->lo(), 0);
  auto p6 = majorization_check(path(6), 2);
  EXPECT_EQ(p6.verdict, Verdict::holds);
  // S_2(P_6) = (2 - 2cos(5pi/6)) + (2 - 2cos(4pi/6)) = 5 + sqrt(3).
  EXPECT_NEAR(p6.claims[0].lhs.value(), 5 + std::sqrt(3.0), 1e-11);
  EXPECT_EQ(p6.claims[0].rhs, Enclosure(Rational(5)));
  for (std::size_t n = 2; n <= 9; ++n) {
    auto r = majorization_check(path(n), n - 1);
    EXPECT_EQ(r.verdict, Verdict::holds);
  }
  EXPECT_THROW(majorization_check(path(5), 0), Error);
  EXPECT_THROW(majorization_check(path(5), 5), Error);
}

TEST(DegreeEnergy, Examples) {
  EXPECT_EQ(degree_sum_lower_bound(star(5), 1), Rational(34, 5));
  EXPECT_EQ(degree_sum_lower_bound(path(4), 1), Rational(3));
  EXPECT_THROW(degree_sum_lower_bound(path(4), 4), Error);
  ReferenceEnergies refs;
  TreeContext ctx(star(5));
  EXPECT_EQ(degree_energy_check(ctx).verdict, Verdict::holds);
}

TEST(InternalCount, ThresholdTable) {
  const std::size_t table[] = {9, 12, 14, 17, 20, 23, 25};
  for (std::size_t s = 1; s <= 7; ++s) EXPECT_EQ(internal_vertex_threshold(s), table[s - 1]) << "s=" << s;
  // The condition with its -2s/n term kept is met earlier.
  const std::size_t exact[] = {8, 10, 13, 16, 18, 21, 24};
  for (std::size_t s = 1; s <= 7; ++s) EXPECT_EQ(internal_vertex_threshold_exact(s), exact[s - 1]) << "s=" << s;
  EXPECT_EQ(internal_vertex_condition(9, 1), Verdict::holds);
  EXPECT_EQ(internal_vertex_condition(7, 1), Verdict::fails);
}

TEST(InternalCount, LinearConditionImpliesExact) {
  for (std::size_t n = 2; n <= 400; ++n)
    for (std::size_t s = 1; s < n; ++s)
      if (internal_vertex_linear_condition(n, s)) ASSERT_EQ(internal_vertex_condition(n, s), Verdict::holds) << n << "," << s;
}

TEST(InternalCount, BoundHoldsOnDoubleBrooms) {
  for (std::size_t a = 1; a <= 12; ++a)
    for (std::size_t b = 1; b <= a; ++b) {
      Tree t = double_broom4(a, b);
      TreeContext ctx(t);
      auto r = internal_vertex_lower_bound(ctx);
      EXPECT_NE(r.verdict, Verdict::fails);
      if (t.size() >= 14) {
        EXPECT_TRUE(r.applicable) << t.size();
        EXPECT_EQ(r.verdict, Verdict::holds);
      }
    }
}

TEST(EdgeSplit, PathMiddleEdge) {
  auto r = edge_split_lower_bound(path(8), {3, 4});
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(std::stoul(fact(r, "k1")) + std::stoul(fact(r, "k2")), std::stoul(fact(r, "sigma")));
  EXPECT_EQ(fact(r, "n1"), "4");
}

TEST(EdgeSplit, RejectsPendantAndAbsentEdges) {
  try {
    edge_split_lower_bound(path(8), {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::pendant_edge);
  }
  try {
    edge_split_lower_bound(path(8), {0, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::edge_absent);
  }
  auto r = edge_split_lower_bound(path(8), {0, 1}, {.mode = CheckMode::exploratory});
  EXPECT_FALSE(r.in_scope);
  EXPECT_NE(r.note.find("exploratory"), std::string::npos);
}

TEST(EdgeSplit, ThresholdIsAverageDegreeOfForest) {
  // k_i counts eigenvalues >= 2 - 4/n; compare against the dense oracle.
  std::mt19937_64 rng(67);
  for (int i = 0; i < 40; ++i) {
    Tree t = oracle::random_tree(rng, static_cast<int>(oracle::pick(rng, 8, 25)));
    auto edges = internal_edges(t);
    if (edges.empty()) continue;
    Edge e = edges[rng() % edges.size()];
    auto r = edge_split_lower_bound(t, e);
    auto split = delete_edge(t, e);
    const double thr = 2.0 - 4.0 / static_cast<double>(t.size());
    auto c1 = oracle::counts(oracle::spectrum(split.first), thr);
    EXPECT_EQ(fact(r, "k1"), std::to_string(c1.above + c1.equal));
    EXPECT_EQ(r.verdict, Verdict::holds);
  }
}

TEST(EdgeSplitSufficient, StarComponentHasSigmaOne) {
  // Spine 0-1-2-3-4-5-6 with a star of 5 leaves hung from vertex 6 via 7.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
  for (Vertex v = 8; v < 13; ++v) edges.emplace_back(7, v);
  Tree t = from_edge_list(13, edges);
  auto r = edge_split_sufficient(t, {6, 7});
  EXPECT_EQ(fact(r, "sigma2"), "1");
  EXPECT_GE(std::stol(fact(r, "auxiliary")), 0);
  EXPECT_NE(r.verdict, Verdict::fails);
}

// Spine 0..5; extra vertices hang off the inner spine or off a child of
// the two middle spine vertices, which keeps the diameter at 5.
static Tree random_diameter5(std::mt19937_64& rng, std::size_t n) {
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  std::vector<Vertex> hosts{1, 2, 3, 4};
  for (Vertex v = 6; v < static_cast<Vertex>(n); ++v) {
    const Vertex host = hosts[rng() % hosts.size()];
    edges.emplace_back(host, v);
    if (host == 2 || host == 3) hosts.push_back(v);
  }
  return from_edge_list(n, edges);
}

TEST(EdgeSplitSufficient, ConclusionFollowsHypotheses) {
  std::mt19937_64 rng(71);
  int applicable = 0;
  for (int i = 0; i < 200; ++i) {
    Tree t = random_diameter5(rng, oracle::pick(rng, 8, 20));
    ASSERT_EQ(diameter(t), 5u);
    for (const Edge& e : internal_edges(t)) {
      auto r = edge_split_sufficient(t, e);
      EXPECT_GE(std::stol(fact(r, "auxiliary")), 0);
      if (r.applicable) {
        ++applicable;
        EXPECT_EQ(r.verdict, Verdict::holds);
      } else {
        EXPECT_EQ(r.verdict, Verdict::undecidable);
        EXPECT_EQ(r.note, "hypotheses not met; no claim made");
      }
    }
  }
  EXPECT_GT(applicable, 0);
}

TEST(Diameter4, Examples) {
  for (const Tree& t : {sns_tree(0, 9, std::vector<std::size_t>(9, 1)), t_prime(5, 9), t_dprime(3, 8, 6)}) {
    ASSERT_EQ(t.size(), 19u);
    auto r = diameter4_energy_check(t);
    EXPECT_TRUE(r.applicable);
    EXPECT_EQ(r.verdict, Verdict::holds);
    EXPECT_GT(r.slack->lo(), 0);
  }
  auto small = diameter4_energy_check(t4_spider(2, 2));
  EXPECT_FALSE(small.applicable);
  EXPECT_TRUE(small.slack.has_value());
  EXPECT_THROW(diameter4_energy_check(path(6)), Error);
}

TEST(PathEnergy, SmallOrders) {
  ReferenceEnergies refs;
  for (std::size_t n = 2; n <= 200; ++n) EXPECT_EQ(path_energy_check(n, refs).verdict, Verdict::holds) << n;
}

TEST(Conjecture, ExtremalTreesAreTightByIdentity) {
  for (std::size_t n = 4; n <= 12; ++n) {
    auto p = conjecture_check(path(n));
    EXPECT_EQ(p.verdict, Verdict::holds);
    EXPECT_TRUE(p.claims[0].by_identity);
    EXPECT_FALSE(p.claims[1].by_identity);
    auto s = conjecture_check(star(n));
    EXPECT_EQ(s.verdict, Verdict::holds);
    EXPECT_TRUE(s.claims[1].by_identity);
    EXPECT_GT(s.slack->lo(), 0);
  }
  auto tiny = conjecture_check(path(3));
  EXPECT_EQ(tiny.slack, Enclosure(Rational(0)));
}

TEST(Conjecture, AgreesWithDenseOracleOnSmallTrees) {
  for (std::size_t n = 4; n <= 10; ++n) {
    const double lp = le_double(path(n)), ls = 2.0 * n - 4 + 4.0 / n;
    for_each_free_tree(n, [&](const Tree& t) {
      auto r = conjecture_check(t);
      ASSERT_EQ(r.verdict, Verdict::holds);
      const double le = le_double(t);
      EXPECT_NEAR(r.slack->value(), std::min(canonical_code(t) == canonical_code(path(n)) ? ls - lp : le - lp,
                                             canonical_code(t) == canonical_code(star(n)) ? ls - lp : ls - le),
                  1e-8);
    });
  }
}

TEST(Refinement, HalvesToleranceWhenUndecided) {
  // A very coarse tolerance leaves the path comparison undecided at first.
  ReferenceEnergies refs;
  Tree t = double_broom3(1, 2);  // close to P_5 in energy
  TreeContext ctx(t);
  auto r = conjecture_check(ctx, refs, {.tol = 0.5, .refinements = 3});
  EXPECT_GT(r.refinements, 0);
  EXPECT_LT(r.tol, 0.5);
  auto none = conjecture_check(ctx, refs, {.tol = 0.5, .refinements = 0});
  EXPECT_EQ(none.refinements, 0);
}

TEST(ExhaustiveTheorems, NoCounterexampleUpToTwelve) {
  ReferenceEnergies refs;
  const std::vector<std::string> ids{"one-multiplicity", "degree-eigen", "interlacing", "below-average",
                                     "majorization",     "degree-energy", "edge-split", "edge-split-sufficient"};
  for (std::size_t n = 2; n <= 12; ++n)
    for_each_free_tree(n, [&](const Tree& t) {
      TreeContext ctx(t);
      for (const auto& r : run_checks(ctx, ids, refs)) {
        ASSERT_NE(r.verdict, Verdict::fails) << r.id << " on " << canonical_code(t);
        if (r.applicable) ASSERT_EQ(r.verdict, Verdict::holds) << r.id << " on " << canonical_code(t);
      }
    });
}

TEST(Interlacing, RandomEdges) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 50; ++i) {
    Tree t = oracle::random_tree(rng, static_cast<int>(oracle::pick(rng, 2, 25)));
    TreeContext ctx(t);
    EXPECT_EQ(interlacing_check(ctx).verdict, Verdict::holds);
  }
}

TEST(RunChecks, RejectsUnknownId) {
  ReferenceEnergies refs;
  TreeContext ctx(path(5));
  EXPECT_THROW(run_checks(ctx, {"no-such-check"}, refs), Error);
}

TEST(Joins, HypothesesAndScope) {
  Tree t1 = path(12);
  Tree t2 = star(6);
  auto r = join_small_diameter_check(t1, 11, t2, 0);
  ASSERT_EQ(r.hypotheses.size(), 2u);
  EXPECT_EQ(fact(r, "r1"), "10");
  EXPECT_EQ(r.hypotheses[0].verdict, from_bool(sigma(t1) == 10));
  if (!r.applicable) EXPECT_EQ(r.verdict, Verdict::undecidable);

  EXPECT_THROW(join_sns_check(path(12), 0, t_prime(3, 2), 0), Error);
  auto explore = join_sns_check(path(12), 0, t_prime(3, 2), 0, {.mode = CheckMode::exploratory});
  EXPECT_FALSE(explore.in_scope);
  EXPECT_THROW(join_small_diameter_check(path(5), 0, star(6), 0), Error);
}

TEST(Joins, QualifyingPairsHoldWhenApplicable) {
  std::mt19937_64 rng(79);
  int applicable = 0;
  for (int i = 0; i < 60; ++i) {
    Tree t1 = oracle::random_tree(rng, static_cast<int>(oracle::pick(rng, 10, 20)));
    Tree t2 = i % 2 ? double_broom3(oracle::pick(rng, 2, 4), 2) : sns_tree(1, 2, {2, 1});
    if (t2.size() > t1.size()) continue;
    const auto u = static_cast<Vertex>(rng() % t1.size());
    for (auto r : {i % 2 ? join_small_diameter_check(t1, u, t2, 0) : join_sns_check(t1, u, t2, 0), join_gap_check(t1, u, t2, 0)}) {
      EXPECT_NE(r.verdict, Verdict::fails);
      if (r.applicable) {
        ++applicable;
        EXPECT_EQ(r.verdict, Verdict::holds);
      }
    }
  }
  EXPECT_GT(applicable, 0);
}

TEST(Joins, GapHypothesisIsExact) {
  // The gap holds iff no eigenvalue of T1 lies in [dbar1 - 2/n, dbar1).
  std::mt19937_64 rng(83);
  for (int i = 0; i < 30; ++i) {
    Tree t1 = oracle::random_tree(rng, static_cast<int>(oracle::pick(rng, 6, 16)));
    Tree t2 = star(6);
    if (t2.size() > t1.size()) continue;
    auto r = join_gap_check(t1, 0, t2, 0);
    const double n = static_cast<double>(t1.size() + t2.size());
    const double dbar1 = 2.0 - 2.0 / static_cast<double>(t1.size());
    bool gap = true;
    for (double m : oracle::spectrum(t1))
      if (m >= dbar1 - 2.0 / n - 1e-12 && m < dbar1 - 1e-12) gap = false;
    EXPECT_EQ(r.hypotheses[0].verdict, from_bool(gap));
  }
}
