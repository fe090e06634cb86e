#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cohomone/embeddings.hpp"
#include "oracles.hpp"

using namespace cohomone;

namespace {

const LieGroupRef G = s3s3();

Embedding E(const std::string& s) { return parse_embedding(s, G); }

Vec vec6(std::initializer_list<int> v) {
  Vec out;
  for (int x : v) out.push_back(Scalar(x));
  return out;
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  return rank(a) == rank(b) && span_contains_all(a, b) && span_contains_all(b, a);
}

std::vector<QPair> octahedral_pairs() {
  auto bo = binary_octahedral();
  std::vector<QPair> out;
  for (auto& a : bo)
    for (auto& b : bo) out.push_back({a, b});
  return out;
}

// points (e^{x1 p t}, e^{x2 q t}) of a circle at t = pi m / 6
std::vector<QPair> circle_samples(const Closed& c) {
  std::vector<QPair> out;
  for (int m = 0; m < 12; ++m) {
    auto e = [&](const Quaternion& x, int k) {
      Quaternion r = Quaternion::polar(Axis::i, Rational(k * m, 6));
      return Quaternion(r.w, r.x * x.x, r.x * x.y, r.x * x.z);
    };
    out.push_back({e(c.x1, c.p), e(c.x2, c.q)});
  }
  return out;
}

}  // namespace

TEST(Embeddings, AlgebraOfExamples) {
  EXPECT_TRUE(same_span(algebra_of(E("C[i](1,1)")), {vec6({1, 0, 0, 1, 0, 0})}));
  EXPECT_TRUE(same_span(algebra_of(E("diag")),
                        {vec6({1, 0, 0, 1, 0, 0}), vec6({0, 1, 0, 0, 1, 0}), vec6({0, 0, 1, 0, 0, 1})}));
  EXPECT_TRUE(algebra_of(E("Q8")).empty());
  EXPECT_EQ(algebra_of(E("C[j](2,-3)")).size(), 1u);
}

TEST(Embeddings, SlopeCircleInvariants) {
  EXPECT_NO_THROW(E("C[i](0,1)"));
  EXPECT_NO_THROW(E("C[k](1,0)"));
  EXPECT_THROW(E("C[i](2,4)"), std::runtime_error);
  EXPECT_THROW(E("C[i](0,0)"), std::runtime_error);
}

TEST(Embeddings, FiniteGroupsAreClosed) {
  EXPECT_EQ(E("Q8").elements.size(), 8u);
  EXPECT_EQ(E("Z4+Z2").elements.size(), 8u);
  EXPECT_EQ(E("gen((i,i),(-1,1))").elements.size(), 8u);
  // closure of a generator set is again closed
  auto els = E("Q8").elements;
  for (auto& a : els)
    for (auto& b : els) EXPECT_TRUE(contains_element(els, a * b));
}

TEST(Embeddings, ExtensionDimensionAndComponents) {
  auto K = E("ext(C[i](1,1),+Q8)");
  EXPECT_EQ(K.dim(), 1);
  EXPECT_EQ(K.rank(), 1);
  // Q8 meets the circle in {+-1, +-(i,i)}: 8 / 4 components
  EXPECT_EQ(K.component_count(), 2);
  EXPECT_EQ(E("ext(diag,+gen((-1,1)))").component_count(), 2);
}

TEST(Embeddings, ConjugateExamples) {
  const Quaternion one, j = Quaternion::unit(Axis::j);
  auto c = conjugate(E("C[i](1,1)"), QPair(j, one));
  EXPECT_TRUE(same_span(algebra_of(c), {vec6({-1, 0, 0, 1, 0, 0})}));
  auto d = conjugate(E("diag"), QPair::from_signs(-1, -1));
  EXPECT_TRUE(same_span(algebra_of(d), algebra_of(E("diag"))));
  // e^{i pi/4} j e^{-i pi/4} = k, checked against the double oracle
  auto e = conjugate(E("C[j](1,1)"), QPair(Quaternion::polar(Axis::i, Rational(1, 4)), one));
  auto rot = oracle::rotate(oracle::polar(1, M_PI / 4), {0, 1, 0});
  EXPECT_NEAR(rot[2], 1.0, 1e-12);
  EXPECT_TRUE(same_span(algebra_of(e), {vec6({0, 0, 1, 0, 1, 0})}));
}

// C[j,-j](1,-3) is C[j](1,3) written with opposite axes on the right factor
TEST(Embeddings, CircleWithOppositeAxes) {
  const Quaternion j = Quaternion::unit(Axis::j);
  Closed c = realize(E("C[j,-j](1,-3)"));
  EXPECT_TRUE(c.contains(QPair(j, -j)));
  EXPECT_TRUE(c.contains(QPair(-Quaternion(), -Quaternion())));
  EXPECT_FALSE(c.contains(QPair(j, j)));
  Closed ref = realize(E("C[j](1,3)"));
  for (const QPair& g : circle_samples(ref)) EXPECT_TRUE(c.contains(g)) << g.str();
}

// a conjugated named group no longer answers to its name
TEST(Embeddings, ConjugatedFiniteLabel) {
  const Quaternion one, i = Quaternion::unit(Axis::i), j = Quaternion::unit(Axis::j);
  auto moved = conjugate(E("Q8"), QPair(one, i));
  EXPECT_NE(moved.str(), "Q8");
  Closed r = realize(parse_embedding(moved.str(), G));
  EXPECT_EQ(r.finite.size(), 8u);
  EXPECT_TRUE(r.contains(QPair(j, -j)));
  EXPECT_FALSE(r.contains(QPair(j, j)));
  // conjugating by an element of the normalizer keeps the set, and the name
  EXPECT_EQ(conjugate(E("Q8"), QPair(i, i)).str(), "Q8");
}

TEST(Embeddings, ContainsExamples) {
  EXPECT_EQ(contains(E("ext(C[i](1,1),+Q8)"), E("Q8")), Tri::yes);
  EXPECT_EQ(contains(E("diag"), E("Z(2)")), Tri::yes);
  EXPECT_EQ(contains(E("C[j](1,2)"), E("C[i](1,1)")), Tri::no);
  EXPECT_EQ(contains(E("C[i](1,2)"), E("gen((-1,-1))")), Tri::no);
  EXPECT_EQ(contains(E("C[i](1,3)"), E("gen((-1,-1))")), Tri::yes);
}

TEST(Embeddings, ContainsReflexiveTransitiveOnDiagramTriples) {
  const std::vector<std::array<std::string, 3>> triples = {
      {"Q8", "ext(C[i](3,-1),+Q8)", "ext(C[j](1,-3),+Q8)"},
      {"Z4+Z2", "ext(C[i](1,1),+Z4+Z2)", "ext(C[j](2,3),+Z4+Z2)"},
      {"gen((-1,1))", "ext(diag,+gen((-1,1)))", "C[i](1,2)"},
  };
  for (auto& t : triples) {
    std::vector<Embedding> es = {E(t[0]), E(t[1]), E(t[2]), whole(G)};
    for (auto& a : es) EXPECT_EQ(contains(a, a), Tri::yes) << a.str();
    for (auto& a : es)
      for (auto& b : es)
        for (auto& c : es)
          if (contains(a, b) == Tri::yes && contains(b, c) == Tri::yes) EXPECT_EQ(contains(a, c), Tri::yes);
  }
}

TEST(Embeddings, ConjugationPreservesDimRank) {
  auto pairs = octahedral_pairs();
  std::mt19937 rng(7);
  std::uniform_int_distribution<size_t> pick(0, pairs.size() - 1);
  const std::vector<std::string> subs = {"C[i](1,1)", "C[j](2,-3)", "diag", "Q8", "ext(C[i](1,1),+Q8)",
                                         "ext(diag,+gen((-1,1)))", "Z4+Z2"};
  for (int n = 0; n < 100; ++n) {
    const QPair& g = pairs[pick(rng)];
    for (auto& s : subs) {
      auto e = E(s), c = conjugate(e, g);
      EXPECT_EQ(c.dim(), e.dim()) << s;
      EXPECT_EQ(c.rank(), e.rank()) << s;
      EXPECT_EQ(c.component_count(), e.component_count()) << s;
    }
  }
}

// Conjugating C(p,q) along x by (a,b) in {+-1,+-i,+-j,+-k}^2 lands on the
// slope circle through (a x a^-1, b x b^-1), compared with the double oracle.
TEST(Embeddings, SlopeCircleFamilyClosedUnderUnits) {
  std::vector<Quaternion> units;
  for (int n = 0; n < 4; ++n)
    for (int s : {1, -1}) {
      Quaternion q(0, 0, 0, 0);
      q[n] = Scalar(s);
      units.push_back(q);
    }
  for (auto& a : units)
    for (auto& b : units)
      for (auto [p, q] : {std::pair{1, 1}, {1, -3}, {2, 3}}) {
        auto c = conjugate(slope_circle(Axis::i, p, q), QPair(a, b));
        auto alg = algebra_of(c);
        ASSERT_EQ(alg.size(), 1u);
        auto ra = oracle::rotate(oracle::of(a), {1, 0, 0}), rb = oracle::rotate(oracle::of(b), {1, 0, 0});
        std::vector<std::vector<double>> m = {{alg[0][0].value(), alg[0][1].value(), alg[0][2].value(), alg[0][3].value(),
                                               alg[0][4].value(), alg[0][5].value()},
                                              {p * ra[0], p * ra[1], p * ra[2], q * rb[0], q * rb[1], q * rb[2]}};
        EXPECT_EQ(oracle::rank(m), 1);
        EXPECT_EQ(c.kind, EmbKind::slope_circle);
      }
}

TEST(Embeddings, TextRoundTrip) {
  for (const char* s : {"C[i](1,1)", "ext(C[j](1,-3),+Q8)", "diag", "Q8", "Z4+Z2", "ext(diag,+gen((1,-1)))", "1"}) {
    auto e = E(s);
    EXPECT_EQ(E(e.str()).str(), e.str()) << s;
  }
}
