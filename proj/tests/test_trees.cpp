#include <gtest/gtest.h>

#include <random>

#include "brp/expr.hpp"
#include "brp/trees.hpp"
#include "oracles.hpp"

using namespace brp;

namespace {
Tree T(const char* s) { return parse_tree(s); }
}  // namespace

TEST(Trees, GraftBuildsCanonicalTrees) {
    EXPECT_EQ(graft(Forest{}, 2), Tree(2));
    EXPECT_EQ(print_tree(graft(Forest(Tree(1)), 2)), "[b_1]_2");
    Forest ab = Forest(Tree(1)) * Forest(Tree(2));
    Forest ba = Forest(Tree(2)) * Forest(Tree(1));
    EXPECT_EQ(graft(ab, 3), graft(ba, 3));
    EXPECT_EQ(print_tree(graft(ba, 3)), "[b_1 b_2]_3");
}

TEST(Trees, OrderIsGradeThenRootThenChildren) {
    EXPECT_EQ(Tree(1) <=> Tree(1), std::strong_ordering::equal);
    EXPECT_LT(Tree(1), Tree(2));
    EXPECT_LT(Tree(2), T("[b_1]_1"));
    EXPECT_LT(T("[b_2]_1"), T("[b_1]_2"));
    EXPECT_LT(T("[b_1 b_1]_1"), T("[[b_1]_1]_1"));
}

TEST(Trees, Grades) {
    EXPECT_EQ(Tree(3).grade(), 1);
    EXPECT_EQ(T("[b_1 b_2]_3").grade(), 3);
    EXPECT_EQ(parse_forest("b_1 [b_2]_3").grade(), 3);
    EXPECT_EQ(Forest{}.grade(), 0);
}

TEST(Trees, EnumerationSmallCases) {
    EXPECT_EQ(enumerate_trees(3, 1).size(), 4u);
    EXPECT_EQ(enumerate_trees(1, 2).size(), 2u);
    std::vector<int> per(5, 0);
    for (const auto& t : enumerate_trees(4, 1)) ++per[t.grade()];
    EXPECT_EQ(per, (std::vector<int>{0, 1, 1, 2, 4}));
}

TEST(Trees, EnumerationMatchesBruteForce) {
    for (int d = 1; d <= 2; ++d)
        for (int n = 1; n <= (d == 1 ? 6 : 5); ++n) {
            auto cls = oracle::classes(n, d);
            auto mine = trees_of_grade(n, d);
            ASSERT_EQ(mine.size(), cls.size()) << "n=" << n << " d=" << d;
            std::set<std::string> keys;
            for (const auto& [k, raw] : cls) {
                Tree t = oracle::build(raw);
                EXPECT_TRUE(std::binary_search(mine.begin(), mine.end(), t));
                keys.insert(print_tree(t));
            }
            EXPECT_EQ(keys.size(), cls.size());
        }
}

TEST(Trees, EnumerationSortedAndClosedUnderGraft) {
    const auto& ts = enumerate_trees(4, 2);
    EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end()));
    for (const auto& f : enumerate_forests(3, 2))
        for (int a = 1; a <= 2; ++a) EXPECT_TRUE(std::binary_search(ts.begin(), ts.end(), graft(f, a)));
}

TEST(Trees, CanonicalizationIgnoresChildOrder) {
    std::mt19937 gen(3);
    for (const auto& t : enumerate_trees(5, 2)) {
        std::vector<Tree> kids = t.children();
        std::shuffle(kids.begin(), kids.end(), gen);
        Tree u = graft(Forest(kids), t.root());
        EXPECT_EQ(u, t);
        EXPECT_EQ(u.hash(), t.hash());
    }
}

TEST(Trees, SymmetryFactorMatchesAutomorphismCount) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& [k, raw] : oracle::classes(n, 2)) {
            Tree t = oracle::build(raw);
            EXPECT_EQ(symmetry_factor(t), oracle::automorphisms(raw)) << print_tree(t);
        }
    EXPECT_EQ(symmetry_factor(T("[b_1 b_1]_1")), 2);
    EXPECT_EQ(symmetry_factor(T("[b_1 b_2]_1")), 1);
}

TEST(Trees, TreeFactorialCountsHeapOrderings) {
    // n!/tau! is the number of root-first vertex orderings
    for (int n = 1; n <= 6; ++n)
        for (const auto& [k, raw] : oracle::classes(n, 1)) {
            Tree t = oracle::build(raw);
            EXPECT_EQ(oracle::factorial(n) / tree_factorial(t), oracle::heap_orderings(raw)) << print_tree(t);
        }
}

TEST(Trees, Chains) {
    Tree c = chain({1, 2, 3});
    EXPECT_EQ(print_tree(c), "[[b_1]_2]_3");
    EXPECT_TRUE(is_chain(c));
    EXPECT_FALSE(is_chain(T("[b_1 b_1]_1")));
    EXPECT_EQ(preorder_labels(c), (std::vector<int>{3, 2, 1}));
}

TEST(Trees, ForestProductIsCommutative) {
    Forest a = parse_forest("b_1 [b_2]_1"), b = parse_forest("b_2");
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b).grade(), 4);
    EXPECT_EQ(a * Forest{}, a);
}
