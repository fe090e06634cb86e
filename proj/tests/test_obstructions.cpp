#include <gtest/gtest.h>

#include <algorithm>

#include "cohomone/obstructions.hpp"
#include "oracles.hpp"

using namespace cohomone;

namespace {

GroupDiagram S(const std::string& H, const std::string& Km, const std::string& Kp) {
  return build_diagram("S3xS3", H, Km, Kp);
}

GroupDiagram b7() { return S("Q8", "ext(C[i](3,-1),+Q8)", "ext(C[j](1,-3),+Q8)"); }
GroupDiagram e(int p) {
  std::string h = p % 2 ? "gen((-1,1))" : "gen((1,-1))";
  return S(h, "ext(diag,+" + h + ")", "C[i](" + std::to_string(p) + "," + std::to_string(p + 1) + ")");
}
GroupDiagram q(int k) {
  return S("Z4+Z2", "ext(C[i](1,1),+Z4+Z2)", "ext(C[j](" + std::to_string(k) + "," + std::to_string(k + 1) + "),+Z4+Z2)");
}
GroupDiagram pk(int k) {
  return S("Q8", "ext(C[i](1,1),+Q8)", "ext(C[j](" + std::to_string(k) + "," + std::to_string(-k - 2) + "),+Q8)");
}
GroupDiagram b13() {
  DiagramOptions opt;
  opt.l_minus = 7;
  opt.l_plus = 1;
  return build_diagram("SU(4)", "SU(2)xZ2", "Sp(2)xZ2", "SU(2)xS1", "B13", opt);
}

// Complex weights of S2 of C(0) + C(+-2p) + C(+-2q) by direct substitution.
std::vector<int> s2_oracle(int p, int q) {
  const std::vector<int> t = {0, 2 * p, -2 * p, 2 * q, -2 * q};
  std::vector<int> out;
  for (size_t a = 0; a < t.size(); ++a)
    for (size_t b = a; b < t.size(); ++b) out.push_back(t[a] + t[b]);
  std::sort(out.begin(), out.end());
  return out;
}

// The same multiset read off the library's real blocks: each listed weight
// is a real plane, except the last, which takes the remaining dimension.
std::vector<int> s2_library(const WeightMultiset& m) {
  std::vector<int> out;
  for (const WeightBlock& b : m.blocks) {
    int rest = b.dim;
    for (size_t n = 0; n < b.weights.size(); ++n) {
      int d = n + 1 < b.weights.size() ? 2 : rest;
      rest -= d;
      int w = b.weights[n];
      if (d == 2) {
        out.push_back(w);
        out.push_back(-w);
      } else {
        for (int r = 0; r < d; ++r) out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// SECTION weights

TEST(SlopeWeights, Examples) {
  auto w = slope_weights(1, 1);
  EXPECT_EQ(w.T.weights(), (std::vector<int>{0, 2, 2}));
  EXPECT_EQ(w.T.dim(), 5);
  EXPECT_EQ(w.S2.dim(), 15);
  auto u = slope_weights(1, 3).S2;
  EXPECT_EQ(u.blocks[3].weights, (std::vector<int>{4, 0}));
  EXPECT_EQ(u.blocks[4].weights, (std::vector<int>{8, -4}));
  EXPECT_EQ(u.blocks[5].weights, (std::vector<int>{12, 0}));
  EXPECT_EQ(slope_weights(0, 1).T.weights(), (std::vector<int>{0, 0, 2}));
}

TEST(SlopeWeights, AgreeWithSymmetricSquareOracle) {
  for (int p = -6; p <= 6; ++p)
    for (int q = -6; q <= 6; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto w = slope_weights(p, q);
      EXPECT_EQ(w.S2.dim(), 15);
      EXPECT_EQ(s2_library(w.S2), s2_oracle(p, q)) << p << "," << q;
    }
}

// SECTION rank lemma

TEST(RankLemma, Examples) {
  EXPECT_EQ(check_rank_lemma(b13()).status, Status::pass);
  for (int p = 0; p <= 4; ++p) EXPECT_EQ(check_rank_lemma(e(p)).status, Status::pass) << p;
  auto d = e(1);
  d.corank_H = 1;
  EXPECT_EQ(check_rank_lemma(d).status, Status::fail);
  auto even = e(1);
  even.dim_M = 8;
  even.corank_minus = even.corank_plus = 1;
  EXPECT_EQ(check_rank_lemma(even).status, Status::fail);
}

// SECTION linear primitivity against a double-precision rank oracle

namespace {

// Algebra of a slope circle or the diagonal, in doubles.
std::vector<std::vector<double>> circle_alg(int axis, int p, int q) {
  std::vector<double> v(6, 0.0);
  v[axis - 1] = p;
  v[3 + axis - 1] = q;
  return {v};
}
std::vector<std::vector<double>> diag_alg() {
  return {{1, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}};
}

int oracle_rank(const std::vector<std::vector<double>>& km, const std::vector<std::vector<double>>& kp,
                const oracle::P& wm, const oracle::P& wp, int order) {
  std::vector<std::vector<double>> all;
  oracle::P x = oracle::pmul(wm, wp), g{oracle::ONE, oracle::ONE};
  for (int k = 0; k < order / 2; ++k) {
    for (auto& v : km) all.push_back(oracle::ad(g, v));
    for (auto& v : kp) all.push_back(oracle::ad(g, v));
    g = oracle::pmul(g, x);
  }
  return oracle::rank(all);
}

}  // namespace

TEST(LinearPrimitivity, AgreesWithRankOracle) {
  using namespace oracle;
  const std::vector<P> Z2m = close({{Q{-1, 0, 0, 0}, ONE}});
  const std::vector<P> Q8 = close({{unit(1), unit(1)}, {unit(2), unit(2)}});
  {
    auto d = e(1);
    auto w = weyl_group(d);
    auto v = check_linear_primitivity(d, w);
    EXPECT_EQ(v.status, Status::pass);
    EXPECT_EQ(v.evidence["rank"], 6);
    // oracle Weyl elements: diagonal lattice and the circle lattice
    std::vector<P> diag;
    for (auto& a : cohomone::binary_octahedral())
      for (const P& f : Z2m) diag.push_back(pmul({of(a), of(a)}, f));
    auto wm = search(diag, Z2m), wp = search(circle_lattice(1, 1, 2, {{ONE, ONE}}, 8), Z2m);
    ASSERT_TRUE(wm && wp);
    int order = order_mod(pmul(*wm, *wp), Z2m);
    EXPECT_EQ(order, 4);
    EXPECT_EQ(oracle_rank(diag_alg(), circle_alg(1, 1, 2), *wm, *wp, order), 6);
  }
  {
    auto d = b7();
    auto v = check_linear_primitivity(d, weyl_group(d));
    EXPECT_EQ(v.status, Status::pass);
    EXPECT_EQ(v.evidence["rank"], 6);
    auto wm = search(circle_lattice(1, 3, -1, Q8, 16), Q8), wp = search(circle_lattice(2, 1, -3, Q8, 16), Q8);
    ASSERT_TRUE(wm && wp);
    int order = order_mod(pmul(*wm, *wp), Q8);
    EXPECT_EQ(order, 6);
    EXPECT_EQ(oracle_rank(circle_alg(1, 3, -1), circle_alg(2, 1, -3), *wm, *wp, order), 6);
  }
  {
    auto d = S("1", "C[i](1,1)", "C[i](1,1)");
    auto v = check_linear_primitivity(d, weyl_group(d));
    EXPECT_EQ(v.status, Status::fail);
    EXPECT_LE(v.evidence["rank"].get<int>(), 2);
  }
}

// SECTION Weyl bounds

TEST(WeylBounds, Lower) {
  EXPECT_EQ(check_lower_weyl_bound(6, 6, 1, 1).status, Status::pass);
  EXPECT_EQ(check_lower_weyl_bound(8, 6, 1, 1).status, Status::pass);
  EXPECT_EQ(check_lower_weyl_bound(4, 16, 3, 3).status, Status::fail);
  EXPECT_EQ(check_lower_weyl_bound(4, 6, 1, 1).status, Status::fail);
  auto d = b7();
  EXPECT_EQ(check_lower_weyl_bound(d, weyl_group(d)).status, Status::pass);
}

TEST(WeylBounds, Upper) {
  auto qd = q(1);
  auto v = check_upper_weyl_bound(qd, weyl_group(qd));
  EXPECT_EQ(v.status, Status::not_applicable);
  EXPECT_EQ(v.note, "no case");
  auto w7 = S("gen((-1,1))", "ext(diag,+gen((-1,1)))", "C[i](1,2)");
  auto u = check_upper_weyl_bound(w7, weyl_group(w7));
  // both (N(H) cap K+-)/H are infinite, which beats the cyclic bound 8
  EXPECT_EQ(u.status, Status::pass);
  EXPECT_EQ(u.evidence["bound"], 4);
  EXPECT_EQ(u.evidence["case"], "(c) (N(H) cap K+-)/H infinite");
  auto c = S("1", "C[i](1,1)", "C[j](1,1)");
  auto b = check_upper_weyl_bound(c, weyl_group(c));
  EXPECT_EQ(b.evidence["bound"], 4);
}

TEST(WeylBounds, CoreWeyl) {
  EXPECT_EQ(check_core_weyl(parse_group("SU(3)"), true, 2).status, Status::fail);
  EXPECT_EQ(check_core_weyl(parse_group("S3xS3"), true, 8).status, Status::fail);
  EXPECT_EQ(check_core_weyl(parse_group("S3xS3"), true, 4).status, Status::pass);
  EXPECT_EQ(check_core_weyl(parse_group("T2"), true, 4).status, Status::pass);
  EXPECT_EQ(check_core_weyl(parse_group("SU(3)"), false, 2).status, Status::not_applicable);
  EXPECT_EQ(check_core_weyl(parse_group("SO(4)"), true, std::nullopt).status, Status::inconclusive);
  // |W| must divide 2 rk G
  for (int W : {2, 4, 6, 8}) {
    bool divides = 4 % W == 0;
    EXPECT_EQ(check_core_weyl(parse_group("S1xS3"), true, W).status, divides ? Status::pass : Status::fail) << W;
  }
}

TEST(WeylBounds, CoreWeylList) {
  for (const char* g : {"S1", "S3", "T2", "S1xS3", "U(2)", "S3xS3", "SO(3)xS3", "SO(4)", "Spin(4)", "SU(2)xSU(2)"})
    EXPECT_TRUE(core_weyl_group_allowed(parse_group(g))) << g;
  for (const char* g : {"SU(3)", "T3", "G2", "S3xS3xS3", "SO(5)"})
    EXPECT_FALSE(core_weyl_group_allowed(parse_group(g))) << g;
}

// SECTION isotropy lemma

TEST(IsotropyLemma, CircleWeights) {
  auto ws = su_adjoint_weights({1, 1, -1, -1});
  std::set<int> abs_set;
  for (int w : ws) abs_set.insert(std::abs(w));
  EXPECT_EQ(abs_set, (std::set<int>{0, 2}));
  for (auto p : std::vector<std::vector<int>>{{1, 1, -1, -1}, {1, -1, 0, 0}, {1, 1, 1, -3}, {3, 3, -1, -5}})
    EXPECT_TRUE(two_distinct_weights(su_adjoint_weights(p)));
  EXPECT_FALSE(two_distinct_weights(su_adjoint_weights({1, 2, -3, 0})));
  EXPECT_FALSE(two_distinct_weights(sp_adjoint_weights({1, 2})));
  EXPECT_FALSE(two_distinct_weights(sp_adjoint_weights({1, 3})));
}

// SECTION totally geodesic orbits and Frankel

TEST(TotallyGeodesic, Bound) {
  TGCertificate c{"central", "test"};
  for (int n = 3; n <= 8; ++n) EXPECT_EQ(check_totally_geodesic_bound(2 * n - 2, 1, n - 2, c).status, Status::fail) << n;
  EXPECT_EQ(check_totally_geodesic_bound(2, 1, 0, c).status, Status::pass);
  EXPECT_EQ(check_totally_geodesic_bound(13, 1, 6, c).status, Status::fail);
  EXPECT_EQ(check_totally_geodesic_bound(14, 7, 1, c).status, Status::pass);
  EXPECT_EQ(check_totally_geodesic_bound(13, 1, 6, std::nullopt).status, Status::not_applicable);
}

TEST(TotallyGeodesic, Detection) {
  // odd slopes with |p - q| != 2 over Q8: normal weight 4 misses S2
  auto c = detect_totally_geodesic(S("Q8", "ext(C[i](1,1),+Q8)", "ext(C[j](3,7),+Q8)"), 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->kind, "weight-parity");
  // |p - q| = 2: 2p - 2q = -4 meets the normal weight
  EXPECT_FALSE(detect_totally_geodesic(pk(3), 1));
  // (1,5): 4p = 4 on S2(W1), so no certificate; the W_v argument takes over
  EXPECT_FALSE(detect_totally_geodesic(S("Q8", "ext(C[i](1,1),+Q8)", "ext(C[j](1,5),+Q8)"), 1));
  // E_p: (-1,-1) lies in diag but also in H only when realized as such
  for (int p = 0; p <= 4; ++p) {
    auto d = e(p);
    auto cert = detect_totally_geodesic(d, -1);
    bool central_outside = d.cKm.contains(QPair::from_signs(-1, -1)) && !d.cH.contains(QPair::from_signs(-1, -1));
    EXPECT_EQ(cert.has_value() && cert->kind == "central", central_outside) << p;
  }
}

TEST(PartialFrankel, Examples) {
  EXPECT_EQ(check_partial_frankel(13, 5, 11).status, Status::fail);
  EXPECT_EQ(check_partial_frankel(13, 3, 5).status, Status::pass);
  EXPECT_EQ(check_partial_frankel(7, 3, 4).status, Status::fail);
  // H = Z4+Z2 with p- >= 2 and (p+, q+) = (1,1)
  auto d = S("Z4+Z2", "ext(C[i](3,5),+Z4+Z2)", "ext(C[j](1,1),+Z4+Z2)");
  EXPECT_EQ(check_partial_frankel(d).status, Status::fail);
  // (1,5) over Q8 with (1,1) on the other side
  EXPECT_EQ(check_partial_frankel(S("Q8", "ext(C[i](1,1),+Q8)", "ext(C[j](1,5),+Q8)")).status, Status::fail);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(check_partial_frankel(q(k)).status, Status::pass) << k;
  EXPECT_EQ(check_partial_frankel(b7()).status, Status::pass);
}

// SECTION block lemma, codimension two, kernels

TEST(BlockLemma, Examples) {
  EXPECT_EQ(check_block_lemma(10, 8, 1).status, Status::pass);
  EXPECT_EQ(check_block_lemma(10, 3, 1).status, Status::fail);
  auto v = check_block_lemma(10, 9, 1);
  EXPECT_EQ(v.status, Status::not_applicable);
  EXPECT_NE(v.note.find("not essential"), std::string::npos);
  EXPECT_EQ(check_block_lemma(10, 2, 1).status, Status::not_applicable);
  EXPECT_EQ(check_block_lemma(5, 2, 1, 4).status, Status::fail);
}

TEST(Codim2, Cases) {
  for (int k = 1; k <= 4; ++k) {
    auto v = check_codim2_case(q(k));
    EXPECT_EQ(v.status, Status::pass) << k;
    EXPECT_EQ(v.note, "case (b)");
  }
  for (int k : {1, 3, 5}) {
    auto v = check_codim2_case(pk(k));
    EXPECT_EQ(v.status, Status::pass) << k;
    EXPECT_EQ(v.note, "case (c)");
  }
  EXPECT_EQ(check_codim2_case(b7()).note, "case (c)");
  auto z3 = S("Z(3)", "ext(C[i](1,1),+Z(3))", "ext(C[i](1,2),+Z(3))");
  EXPECT_EQ(check_codim2_case(z3).status, Status::fail);
  EXPECT_EQ(check_codim2_case(e(1)).status, Status::not_applicable);
}

TEST(IneffectiveKernels, Examples) {
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(check_ineffective_kernels(q(k)).status, Status::pass);
  for (int k : {1, 3}) EXPECT_EQ(check_ineffective_kernels(pk(k)).status, Status::pass);
  auto shared = S("gen((i,1))", "ext(C[i](1,1),+gen((i,1)))", "ext(C[i](1,2),+gen((i,1)))");
  EXPECT_EQ(check_ineffective_kernels(shared).status, Status::fail);
}

TEST(MinSlope, Examples) {
  EXPECT_EQ(check_min_slope(b7()).status, Status::pass);
  EXPECT_EQ(check_min_slope(S("Q8", "ext(C[i](3,5),+Q8)", "ext(C[j](3,-5),+Q8)")).status, Status::fail);
  EXPECT_EQ(check_min_slope(e(2)).status, Status::not_applicable);
}

// SECTION full report

TEST(VerifyDiagram, TableRowsPassEverything) {
  std::vector<GroupDiagram> rows = {b7(), q(1), q(2), pk(1), pk(3)};
  for (int p = 0; p <= 4; ++p) rows.push_back(e(p));
  for (const auto& d : rows) {
    auto r = verify_diagram(d);
    EXPECT_EQ(r.verdicts.size(), 14u);
    EXPECT_FALSE(r.any_fail()) << diagram_signature(d) << ": " << (r.first_fail() ? r.first_fail()->check : "");
  }
}

TEST(VerifyDiagram, DegenerateDiagramFailsPrimitivity) {
  auto r = verify_diagram(S("1", "C[i](1,1)", "C[i](1,1)"));
  ASSERT_TRUE(r.any_fail());
  bool lin = false;
  for (auto& v : r.verdicts) lin = lin || (v.check == "linear_primitivity" && v.status == Status::fail);
  EXPECT_TRUE(lin);
}
