#include <gtest/gtest.h>

#include <cmath>
#include <optional>

#include "cohomone/weyl.hpp"
#include "oracles.hpp"

using namespace cohomone;
using namespace oracle;

namespace {

const std::vector<P> Q8 = close({{unit(1), unit(1)}, {unit(2), unit(2)}});
const std::vector<P> Z4Z2 = close({{unit(1), unit(1)}, {oracle::Q{-1, 0, 0, 0}, ONE}});

GroupDiagram S(const std::string& H, const std::string& Km, const std::string& Kp) {
  return build_diagram("S3xS3", H, Km, Kp);
}

}  // namespace

TEST(Weyl, CircleOverZ2) {
  const LieGroupRef G = s3s3();
  auto g = weyl_generator(parse_embedding("C[i](1,2)", G), parse_embedding("gen((-1,1))", G));
  ASSERT_TRUE(g.element);
  // theta = pi lands on (-1,1), which is H itself; pi/2 gives (i,-1)
  EXPECT_FALSE(g.element->is_central());
  // the oracle finds the same class modulo H on the theta lattice
  std::vector<P> H = close({{Q{-1, 0, 0, 0}, ONE}});
  auto o = search(circle_lattice(1, 1, 2, {{ONE, ONE}}, 8), H);
  ASSERT_TRUE(o);
  P a = of(*g.element);
  EXPECT_TRUE(in(H, pmul({conj(a.first), conj(a.second)}, *o)));
}

TEST(Weyl, DiagonalOverZ2) {
  const LieGroupRef G = s3s3();
  auto K = parse_embedding("ext(diag,+gen((-1,1)))", G), H = parse_embedding("gen((-1,1))", G);
  auto g = weyl_generator(K, H);
  ASSERT_TRUE(g.element);
  auto k = realize(K), h = realize(H);
  EXPECT_TRUE(k.contains(*g.element));
  EXPECT_FALSE(h.contains(*g.element));
  EXPECT_TRUE(h.contains(*g.element * *g.element));
}

TEST(Weyl, CircleTimesQ8SkipsElementsOfH) {
  const LieGroupRef G = s3s3();
  auto K = parse_embedding("ext(C[i](1,1),+Q8)", G), H = parse_embedding("Q8", G);
  auto g = weyl_generator(K, H);
  ASSERT_TRUE(g.element);
  EXPECT_FALSE(realize(H).contains(*g.element));
  EXPECT_TRUE(realize(H).contains(*g.element * *g.element));
  EXPECT_TRUE(realize(K).contains(*g.element));
  EXPECT_TRUE(search(circle_lattice(1, 1, 1, Q8, 16), Q8));
}

struct WeylCase {
  std::string H, Km, Kp;
  int order;
  int axis_m, pm, qm, axis_p, pp, qp;  // circle data for the oracle
};

TEST(Weyl, TableOrdersAgreeWithOracle) {
  const std::vector<WeylCase> cases = {
      {"Q8", "ext(C[i](3,-1),+Q8)", "ext(C[j](1,-3),+Q8)", 6, 1, 3, -1, 2, 1, -3},
      {"Z4+Z2", "ext(C[i](1,1),+Z4+Z2)", "ext(C[j](1,2),+Z4+Z2)", 8, 1, 1, 1, 2, 1, 2},
      {"Z4+Z2", "ext(C[i](1,1),+Z4+Z2)", "ext(C[j](2,3),+Z4+Z2)", 8, 1, 1, 1, 2, 2, 3},
      {"Z4+Z2", "ext(C[i](1,1),+Z4+Z2)", "ext(C[j](3,4),+Z4+Z2)", 8, 1, 1, 1, 2, 3, 4},
  };
  for (const WeylCase& c : cases) {
    auto d = S(c.H, c.Km, c.Kp);
    WeylData w = weyl_group(d);
    ASSERT_TRUE(w.order) << c.Kp;
    EXPECT_EQ(*w.order, c.order) << c.Kp;
    EXPECT_EQ(w.order_reversed, w.order) << c.Kp;
    const auto& H = c.H == "Q8" ? Q8 : Z4Z2;
    auto om = search(circle_lattice(c.axis_m, c.pm, c.qm, H, 16), H);
    auto op = search(circle_lattice(c.axis_p, c.pp, c.qp, H, 16), H);
    ASSERT_TRUE(om && op);
    EXPECT_EQ(order_mod(pmul(*om, *op), H), c.order) << c.Kp;
    EXPECT_EQ(order_mod(pmul(of(*w.w_minus), of(*w.w_plus)), H), c.order) << c.Kp;
  }
}

TEST(Weyl, W71IsD2) {
  auto w = weyl_group(S("gen((-1,1))", "ext(diag,+gen((-1,1)))", "C[i](1,2)"));
  ASSERT_TRUE(w.order);
  EXPECT_EQ(*w.order, 4);
  EXPECT_EQ(w.label(), "D2");
}

TEST(Weyl, GeneratorsSatisfyDefiningConditions) {
  const std::vector<std::array<std::string, 3>> rows = {
      {"Q8", "ext(C[i](3,-1),+Q8)", "ext(C[j](1,-3),+Q8)"},
      {"Q8", "ext(C[i](1,1),+Q8)", "ext(C[j](3,-5),+Q8)"},
      {"gen((-1,1))", "ext(diag,+gen((-1,1)))", "C[i](3,4)"},
      {"gen((1,-1))", "ext(diag,+gen((1,-1)))", "C[i](2,3)"},
      {"Z4+Z2", "ext(C[i](3,1),+Z4+Z2)", "ext(C[j](1,2),+Z4+Z2)"},
  };
  for (auto& r : rows) {
    auto d = S(r[0], r[1], r[2]);
    WeylData w = weyl_group(d);
    ASSERT_TRUE(w.w_minus && w.w_plus) << r[2];
    for (int s : {-1, 1}) {
      const QPair& a = s < 0 ? *w.w_minus : *w.w_plus;
      EXPECT_TRUE(d.cK(s).contains(a));
      EXPECT_FALSE(d.cH.contains(a));
      EXPECT_TRUE(d.cH.contains(a * a));
      EXPECT_TRUE(detail::is_weyl_candidate(a, d.cH));
    }
    ASSERT_TRUE(w.order);
    EXPECT_EQ(w.order, w.order_reversed);
    EXPECT_EQ(*w.order % 2, 0);
  }
}

TEST(Weyl, TranslatesCount) {
  auto d = S("gen((-1,1))", "ext(diag,+gen((-1,1)))", "C[i](3,4)");
  auto w = weyl_group(d);
  auto t = weyl_translates(d, w);
  ASSERT_TRUE(w.order);
  EXPECT_EQ(int(t.size()), *w.order);
  size_t vectors = 0;
  for (auto& s : t) vectors += s.size();
  EXPECT_GE(vectors, 6u);
  // without a Weyl group the two algebras come back unchanged
  WeylData none;
  auto u = weyl_translates(d, none);
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u[0].size(), 3u);
  EXPECT_EQ(u[1].size(), 1u);
}

TEST(Weyl, CapShowsUpAsUnbounded) {
  WeylConfig tight;
  tight.order_cap = 4;
  auto w = weyl_group(S("Q8", "ext(C[i](3,-1),+Q8)", "ext(C[j](1,-3),+Q8)"), tight);
  EXPECT_FALSE(w.order);
  EXPECT_TRUE(w.unbounded);
  EXPECT_EQ(w.label(), "unbounded(>4)");
}
