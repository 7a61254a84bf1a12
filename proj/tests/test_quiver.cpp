#include <gtest/gtest.h>

#include <random>

#include "gsi/oracle.hpp"
#include "gsi/quiver.hpp"
#include "support.hpp"

using namespace gsi;
using gsi::test::classes;
using gsi::test::names;

namespace {

// 1 -> 2 -> 3 -> 5 with a branch 2 -> 4.
Quiver branched() {
  return Quiver::from_ids({"1", "2", "3", "4", "5"}, {{"a1", "1", "2"},
                                                      {"a2", "2", "3"},
                                                      {"a3", "3", "5"},
                                                      {"b", "2", "4"}});
}

Composite rel(const Quiver& q, const std::string& b, const std::string& a) {
  return {q.arrow_index(a), q.arrow_index(b)};
}

}  // namespace

TEST(Quiver, RejectsCyclesLoopsAndDuplicates) {
  EXPECT_THROW(Quiver::from_ids({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}}), input_error);
  EXPECT_THROW(Quiver::from_ids({"1"}, {{"a", "1", "1"}}), input_error);
  EXPECT_THROW(Quiver::from_ids({"1", "1"}, {}), input_error);
  EXPECT_THROW(Quiver::from_ids({"1", "2"}, {{"a", "1", "2"}, {"a", "1", "2"}}), input_error);
  EXPECT_THROW(Quiver::from_ids({"1"}, {{"a", "1", "9"}}), input_error);
}

TEST(ValidateColoring, PathClassesAccepted) {
  Quiver q = branched();
  Coloring c = Coloring::from_map(q, {{"a1", "1"}, {"b", "1"}, {"a2", "2"}, {"a3", "2"}});
  EXPECT_TRUE(validate_coloring(q, c).ok());
}

TEST(ValidateColoring, NonPathClassRejected) {
  Quiver q = branched();
  Coloring c = Coloring::from_map(q, {{"a1", "1"}, {"a3", "1"}, {"a2", "2"}, {"b", "2"}});
  ValidationReport r = validate_coloring(q, c);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(r.has("coloring"));
}

TEST(ValidateColoring, SingleArrow) {
  Quiver q = Quiver::from_ids({"1", "2"}, {{"a", "1", "2"}});
  EXPECT_TRUE(validate_coloring(q, Coloring::from_labels(q, {7})).ok());
}

TEST(ValidateColoring, WrongSizeIsInputError) {
  Quiver q = branched();
  EXPECT_THROW(Coloring::from_labels(q, {0, 0}), input_error);
}

TEST(MonochromaticIdeal, RunningExample) {
  Model m = test::load("running.model");
  RelationSet ic = monochromatic_ideal(m.quiver, *m.coloring);
  EXPECT_EQ(names(m.quiver, ic), (std::set<std::string>{"a2a1", "b2b1", "b3b2", "c2c1"}));
}

TEST(MonochromaticIdeal, DistinctColorsGiveNothing) {
  Quiver q = branched();
  EXPECT_TRUE(monochromatic_ideal(q, Coloring::from_labels(q, {0, 1, 2, 3})).empty());
}

TEST(MonochromaticIdeal, DoublePath) {
  Quiver q = Quiver::from_ids({"1", "2", "3"}, {{"a1", "1", "2"},
                                                {"a2", "2", "3"},
                                                {"b1", "1", "2"},
                                                {"b2", "2", "3"}});
  Coloring c = Coloring::from_labels(q, {0, 0, 1, 1});
  EXPECT_EQ(names(q, monochromatic_ideal(q, c)), (std::set<std::string>{"a2a1", "b2b1"}));
}

TEST(IsGentle, RunningExample) {
  Model m = test::load("running.model");
  EXPECT_TRUE(is_gentle(m.quiver, monochromatic_ideal(m.quiver, *m.coloring)).ok());
}

TEST(IsGentle, OutDegreeThree) {
  Quiver q = Quiver::from_ids({"1", "2", "3", "4"},
                              {{"a", "1", "2"}, {"b", "1", "3"}, {"c", "1", "4"}});
  ValidationReport r = is_gentle(q, {});
  EXPECT_TRUE(r.has("a"));
}

TEST(IsGentle, TwoRelationsIntoOneArrow) {
  Model m = test::load("cover.model");
  ValidationReport r = is_gentle(m.quiver, *m.relations);
  EXPECT_TRUE(r.has("c"));
  EXPECT_TRUE(is_string_algebra(m.quiver, *m.relations).ok());
}

TEST(ColoringFromGentle, RunningIdeal) {
  Model m = test::load("running_rel.model");
  Coloring c = coloring_from_gentle(m.quiver, *m.relations);
  EXPECT_EQ(classes(m.quiver, c),
            (std::set<std::set<std::string>>{{"a1", "a2"}, {"b1", "b2", "b3"}, {"c1", "c2"}}));
}

TEST(ColoringFromGentle, NoRelationsMeansOneColorPerArrow) {
  Quiver q = Quiver::from_ids({"1", "2", "3", "4"},
                              {{"a1", "1", "2"}, {"a2", "3", "2"}, {"a3", "3", "4"}});
  EXPECT_EQ(coloring_from_gentle(q, {}).num_colors(), 3u);
}

// With only a2a1, b2 follows both a1 and b1 outside the ideal and
// axiom (b) fails; adding b2b1 makes it gentle.
TEST(ColoringFromGentle, DoublePath) {
  Quiver q = Quiver::from_ids({"1", "2", "3"}, {{"a1", "1", "2"},
                                                {"a2", "2", "3"},
                                                {"b1", "1", "2"},
                                                {"b2", "2", "3"}});
  EXPECT_TRUE(is_gentle(q, {rel(q, "a2", "a1")}).has("b"));
  EXPECT_THROW(coloring_from_gentle(q, {rel(q, "a2", "a1")}), precondition_error);
  Coloring c = coloring_from_gentle(q, {rel(q, "a2", "a1"), rel(q, "b2", "b1")});
  EXPECT_EQ(classes(q, c), (std::set<std::set<std::string>>{{"a1", "a2"}, {"b1", "b2"}}));
}

TEST(ColoringFromGentle, BranchWithOneRelation) {
  Quiver q = branched();
  Coloring c = coloring_from_gentle(q, {rel(q, "a2", "a1")});
  EXPECT_EQ(classes(q, c), (std::set<std::set<std::string>>{{"a1", "a2"}, {"a3"}, {"b"}}));
}

TEST(ColoringFromGentle, NotGentleIsPrecondition) {
  Model m = test::load("cover.model");
  EXPECT_THROW(coloring_from_gentle(m.quiver, *m.relations), precondition_error);
}

TEST(GentleCover, ExampleColoring) {
  Model m = test::load("cover.model");
  GentleCover gc = gentle_cover(m.quiver, *m.relations);
  EXPECT_EQ(classes(m.quiver, gc.coloring),
            (std::set<std::set<std::string>>{{"a1", "a2", "a3"}, {"b1"}, {"b2", "b3"}}));
  EXPECT_EQ(names(m.quiver, gc.kernel), (std::set<std::string>{"b3a2"}));
  EXPECT_TRUE(is_gentle(m.quiver, monochromatic_ideal(m.quiver, gc.coloring)).ok());
}

TEST(GentleCover, GentleInputHasEmptyKernel) {
  Model m = test::load("running_rel.model");
  GentleCover gc = gentle_cover(m.quiver, *m.relations);
  EXPECT_TRUE(gc.kernel.empty());
  EXPECT_EQ(gc.coloring, coloring_from_gentle(m.quiver, *m.relations));
}

TEST(GentleCover, SinglePath) {
  Quiver q = Quiver::from_ids({"1", "2", "3"}, {{"a1", "1", "2"}, {"a2", "2", "3"}});
  GentleCover gc = gentle_cover(q, {rel(q, "a2", "a1")});
  EXPECT_EQ(gc.coloring.num_colors(), 1u);
  EXPECT_TRUE(gc.kernel.empty());
}

TEST(GentleCover, NotStringAlgebraIsPrecondition) {
  Quiver q = Quiver::from_ids({"1", "2", "3", "4"},
                              {{"a", "1", "2"}, {"b", "1", "3"}, {"c", "1", "4"}});
  EXPECT_THROW(gentle_cover(q, {}), precondition_error);
}

// Recovering a coloring from its own monochromatic ideal is the identity.
TEST(ColoringProperty, RoundTripThroughIdeal) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    oracle::ColoredQuiver cq = oracle::random_colored_quiver(rng, 6, 3);
    ASSERT_TRUE(validate_coloring(cq.quiver, cq.coloring).ok());
    RelationSet ic = monochromatic_ideal(cq.quiver, cq.coloring);
    ASSERT_TRUE(is_gentle(cq.quiver, ic).ok());
    EXPECT_EQ(coloring_from_gentle(cq.quiver, ic), cq.coloring);
    GentleCover gc = gentle_cover(cq.quiver, ic);
    EXPECT_TRUE(gc.kernel.empty());
  }
}
