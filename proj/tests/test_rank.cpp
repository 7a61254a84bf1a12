#include <gtest/gtest.h>

#include <random>

#include "gsi/oracle.hpp"
#include "gsi/rank.hpp"
#include "support.hpp"

using namespace gsi;

namespace {

Quiver path3() {
  return Quiver::from_ids({"1", "2", "3"}, {{"a1", "1", "2"}, {"a2", "2", "3"}});
}

// Every admissible r, then the ones not dominated by another admissible r.
std::vector<RankSequence> dominance_maxima(const Quiver& q, const Coloring& c,
                                           const DimensionVector& beta) {
  std::vector<RankSequence> all;
  RankSequence r(q.num_arrows(), 0);
  auto rec = [&](auto&& self, std::size_t a) -> void {
    if (a == r.size()) {
      if (is_rank_sequence(q, c, beta, r)) all.push_back(r);
      return;
    }
    const int top = std::min(beta[q.arrow(a).tail], beta[q.arrow(a).head]);
    for (int v = 0; v <= top; ++v) {
      r[a] = v;
      self(self, a + 1);
    }
  };
  rec(rec, 0);
  std::vector<RankSequence> out;
  for (const RankSequence& x : all) {
    bool dominated = false;
    for (const RankSequence& y : all) {
      if (y != x && leq(x, y)) dominated = true;
    }
    if (!dominated) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Incidences, RunningExample) {
  Model m = test::load("running.model");
  std::vector<Incidence> incs = incidences(m.quiver, *m.coloring);
  // v1: a,b; v2: a,b; v3: a,c; v4: b,c; v5: b,c
  EXPECT_EQ(incs.size(), 10u);
}

TEST(IsRankSequence, RunningExample) {
  Model m = test::load("running.model");
  const Quiver& q = m.quiver;
  const Coloring& c = *m.coloring;
  EXPECT_TRUE(is_rank_sequence(q, c, m.beta(), *m.rank()));
  RankSequence r = *m.rank();
  r[q.arrow_index("b2")] = 3;
  EXPECT_FALSE(is_rank_sequence(q, c, m.beta(), r));
  EXPECT_TRUE(is_rank_sequence(q, c, m.beta(), RankSequence(q.num_arrows(), 0)));
}

TEST(IsRankSequence, SizeMismatchIsInputError) {
  Model m = test::load("running.model");
  EXPECT_THROW(is_rank_sequence(m.quiver, *m.coloring, m.beta(), RankSequence{1, 2}),
               input_error);
}

TEST(MaximalRankSequences, PathUnitDimension) {
  Quiver q = path3();
  Coloring c = Coloring::from_labels(q, {0, 0});
  EXPECT_EQ(maximal_rank_sequences(q, c, {1, 1, 1}),
            (std::vector<RankSequence>{{1, 0}, {0, 1}}));
}

TEST(MaximalRankSequences, PathMiddleTwo) {
  Quiver q = path3();
  Coloring c = Coloring::from_labels(q, {0, 0});
  EXPECT_EQ(maximal_rank_sequences(q, c, {1, 2, 1}), (std::vector<RankSequence>{{1, 1}}));
}

TEST(MaximalRankSequences, RunningExample) {
  Model m = test::load("running.model");
  const Quiver& q = m.quiver;
  std::vector<RankSequence> all = maximal_rank_sequences(q, *m.coloring, m.beta());
  RankSequence two(q.num_arrows(), 2);
  RankSequence variant = two;
  variant[q.arrow_index("b2")] = 3;
  variant[q.arrow_index("b3")] = 1;
  EXPECT_NE(std::find(all.begin(), all.end(), two), all.end());
  EXPECT_NE(std::find(all.begin(), all.end(), variant), all.end());
  std::vector<RankSequence> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, dominance_maxima(q, *m.coloring, m.beta()));
  for (const RankSequence& r : all) {
    EXPECT_TRUE(is_maximal_rank_sequence(q, *m.coloring, m.beta(), r));
  }
}

TEST(RestrictToColor, RunningExampleColorB) {
  Model m = test::load("running.model");
  const Quiver& q = m.quiver;
  ColorIndex b = (*m.coloring)[q.arrow_index("b1")];
  ColorRestriction cr = restrict_to_color(q, *m.coloring, m.beta(), *m.rank(), b);
  std::vector<std::string> path;
  for (VertexIndex v : cr.vertex_path) path.push_back(q.vertex_id(v));
  EXPECT_EQ(path, (std::vector<std::string>{"1", "2", "4", "5"}));
  EXPECT_EQ(cr.beta_s, (std::vector<int>{2, 6, 4, 2}));
  EXPECT_EQ(cr.r_s, (std::vector<int>{2, 2, 2}));
}

TEST(RestrictToColor, RunningExampleColorC) {
  Model m = test::load("running.model");
  const Quiver& q = m.quiver;
  ColorIndex c = (*m.coloring)[q.arrow_index("c1")];
  ColorRestriction cr = restrict_to_color(q, *m.coloring, m.beta(), *m.rank(), c);
  EXPECT_EQ(cr.vertex_path.size(), 3u);
  EXPECT_EQ(cr.beta_s, (std::vector<int>{2, 4, 2}));
  EXPECT_EQ(cr.r_s, (std::vector<int>{2, 2}));
}

TEST(RestrictToColor, SingleArrowColor) {
  Quiver q = Quiver::from_ids({"1", "2"}, {{"a", "1", "2"}});
  Coloring c = Coloring::from_labels(q, {0});
  ColorRestriction cr = restrict_to_color(q, c, {3, 1}, {1}, 0);
  EXPECT_EQ(cr.vertex_path.size(), 2u);
}

// Maximality by single increments agrees with dominance over all admissible r.
TEST(RankProperty, DominanceOnRandomQuivers) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    oracle::ColoredQuiver cq = oracle::random_colored_quiver(rng, 5, 3);
    std::uniform_int_distribution<int> db(0, 3);
    DimensionVector beta;
    for (std::size_t v = 0; v < cq.quiver.num_vertices(); ++v) beta.push_back(db(rng));
    std::vector<RankSequence> got = maximal_rank_sequences(cq.quiver, cq.coloring, beta);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, dominance_maxima(cq.quiver, cq.coloring, beta)) << "case " << t;
  }
}
