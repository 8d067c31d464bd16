#include <gtest/gtest.h>

#include <random>

#include "support/helpers.hpp"
#include "vcwidth/oracle.hpp"

using namespace vcw;

TEST(Oracle, Examples) {
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(oracle::treewidth_exact(test::complete_graph(n)), static_cast<int>(n) - 1);
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) EXPECT_EQ(oracle::treewidth_exact(test::random_tree(2 + rep % 10, rng)), 1);
  for (std::size_t n = 2; n <= 10; ++n) EXPECT_EQ(oracle::pathwidth_exact(test::path_graph(n)), 1);
  EXPECT_EQ(oracle::pathwidth_exact(test::complete_graph(4)), 3);
  EXPECT_EQ(oracle::treewidth_exact(Graph()), -1);
  EXPECT_EQ(oracle::pathwidth_exact(Graph(3)), 0);
}

TEST(Oracle, GridAgainstAllOrderings) {
  const Graph grid = test::grid_graph(3, 3);
  EXPECT_EQ(test::treewidth_by_orderings(grid), 3);
  EXPECT_EQ(oracle::treewidth_exact(grid), 3);
}

TEST(Oracle, BinaryTreeAgainstAllLayouts) {
  // height 2 is a caterpillar, so width 1; height 3 is the smallest with width 2
  const Graph tree = test::binary_tree(2);
  EXPECT_EQ(test::pathwidth_by_layouts(tree), 1);
  EXPECT_EQ(oracle::pathwidth_exact(tree), 1);
  EXPECT_EQ(oracle::pathwidth_exact(test::binary_tree(3)), 2);
}

TEST(Oracle, AgreesWithFactorialSearch) {
  for (std::size_t n = 1; n <= 5; ++n)
    oracle::enumerate_small_graphs(n, [&](const Graph& g) {
      ASSERT_EQ(oracle::treewidth_exact(g), test::treewidth_by_orderings(g));
      ASSERT_EQ(oracle::pathwidth_exact(g), test::pathwidth_by_layouts(g));
    });
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const Graph g = test::random_graph(7, 0.25 + 0.25 * (rep % 3), rng);
    ASSERT_EQ(oracle::treewidth_exact(g), test::treewidth_by_orderings(g));
    ASSERT_EQ(oracle::pathwidth_exact(g), test::pathwidth_by_layouts(g));
  }
}

TEST(Oracle, TreewidthAtMostPathwidthAndShift) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    const Graph g = test::random_graph(1 + rep % 8, 0.4, rng);
    const int tw = oracle::treewidth_exact(g), pw = oracle::pathwidth_exact(g);
    EXPECT_LE(tw, pw);
    const Graph h = add_universal_vertex(g).first;
    EXPECT_EQ(oracle::treewidth_exact(h), tw + 1);
    EXPECT_EQ(oracle::pathwidth_exact(h), pw + 1);
  }
}

TEST(Oracle, Enumeration) {
  auto count = [](std::size_t n) {
    std::size_t c = 0;
    oracle::enumerate_small_graphs(n, [&](const Graph&) { ++c; });
    return c;
  };
  EXPECT_EQ(count(2), 2u);
  EXPECT_EQ(count(3), 8u);
  EXPECT_EQ(count(6), 32768u);
}

TEST(Oracle, Cap) {
  EXPECT_THROW(oracle::treewidth_exact(Graph(10), 8), ResourceError);
  EXPECT_THROW(oracle::pathwidth_exact(Graph(27)), ResourceError);
}
