#include <gtest/gtest.h>

#include <random>

#include "brp/expr.hpp"

using namespace brp;

namespace {

Tree random_tree(std::mt19937& gen, int budget, int d) {
    int root = int(gen() % d) + 1;
    std::vector<Tree> kids;
    int left = budget - 1;
    while (left > 0 && gen() % 3) {
        int g = int(gen() % left) + 1;
        kids.push_back(random_tree(gen, g, d));
        left -= g;
    }
    return graft(Forest(kids), root);
}

Rational random_coef(std::mt19937& gen) {
    int p = int(gen() % 21) - 10;
    if (p == 0) p = 1;
    return make_rational(p, long(gen() % 4) + 1);
}

HElem random_h(std::mt19937& gen, int d) {
    HElem x(d);
    int terms = int(gen() % 4) + 1;
    for (int k = 0; k < terms; ++k) {
        if (gen() % 8 == 0) {
            x.add(Forest{}, random_coef(gen));
            continue;
        }
        std::vector<Tree> ts;
        int n = int(gen() % 3) + 1;
        for (int j = 0; j < n; ++j) ts.push_back(random_tree(gen, int(gen() % 4) + 1, d));
        x.add(Forest(ts), random_coef(gen));
    }
    return x;
}

TensorElem random_tensor(std::mt19937& gen, int d) {
    TensorElem x(d, 0);
    int terms = int(gen() % 4) + 1;
    for (int k = 0; k < terms; ++k) {
        std::vector<Tree> ls;
        int n = int(gen() % 4);
        for (int j = 0; j < n; ++j) ls.push_back(random_tree(gen, int(gen() % 3) + 1, d));
        x.add(Word(ls), random_coef(gen));
    }
    return x;
}

}  // namespace

TEST(Expr, ParsesLetters) {
    EXPECT_EQ(parse_h("b_1"), HElem(Forest(Tree(1)), 1));
    HElem x = parse_h("[b_1 b_2]_3 + 2/3 * b_1 b_1");
    EXPECT_EQ(x.at(Forest(graft(Forest({Tree(1), Tree(2)}), 3))), Rational(1));
    EXPECT_EQ(x.at(Forest({Tree(1), Tree(1)})), Rational(2, 3));
    EXPECT_EQ(parse_tree("[[b_1]_2]_3"), chain({1, 2, 3}));
    EXPECT_EQ(parse_h("1"), HElem::unit());
    EXPECT_TRUE(parse_h("0").empty());
}

TEST(Expr, ParsesTensors) {
    EXPECT_EQ(parse_tensor("b_1 (x) b_2"), TensorElem(letters_word({1, 2}), 1));
    TensorElem t = parse_tensor("b_2 (x) b_1 + [b_2]_1");
    EXPECT_EQ(t.terms.size(), 2u);
    EXPECT_EQ(t.at(Word(parse_tree("[b_2]_1"))), Rational(1));
    EXPECT_EQ(parse_tensor("1"), TensorElem::unit());
}

TEST(Expr, WhitespaceIsInsignificantBetweenTokens) {
    EXPECT_EQ(parse_h("  [ b_1   b_2 ]_3+2 / 3*b_1\n b_1 "), parse_h("[b_1 b_2]_3 + 2/3 * b_1 b_1"));
}

TEST(Expr, CollectsLikeTerms) {
    EXPECT_EQ(parse_h("b_1 b_2 + b_2 b_1"), parse_h("2 * b_1 b_2"));
    EXPECT_TRUE(parse_h("b_1 - b_1").empty());
    EXPECT_EQ(parse_h("2/4 * b_1").at(Forest(Tree(1))), Rational(1, 2));
}

TEST(Expr, PrintsCanonically) {
    EXPECT_EQ(print_h(parse_h("b_1")), "b_1");
    EXPECT_EQ(print_h(parse_h("b_2 b_1 - [b_2]_1")), "-1 * [b_2]_1 + b_1 b_2");
    EXPECT_EQ(print_h(HElem()), "0");
    EXPECT_EQ(print_h(parse_h("1 + 4/6 * b_1")), "1 + 2/3 * b_1");
    EXPECT_EQ(print_tensor(parse_tensor("b_2 (x) b_1 + [b_2]_1")), "[b_2]_1 + b_2 (x) b_1");
}

TEST(Expr, RoundTripRandomElements) {
    std::mt19937 gen(2024);
    for (int rep = 0; rep < 500; ++rep) {
        HElem x = random_h(gen, 3);
        std::string s = print_h(x);
        EXPECT_EQ(parse_h(s, 3), x) << s;
        EXPECT_EQ(print_h(parse_h(s, 3)), s);
        TensorElem t = random_tensor(gen, 3);
        std::string ts = print_tensor(t);
        EXPECT_EQ(parse_tensor(ts, 3), t) << ts;
    }
}

TEST(Expr, LabelRange) {
    EXPECT_THROW(parse_h("b_3", 2), ParseError);
    EXPECT_THROW(parse_h("b_0"), ParseError);
    EXPECT_NO_THROW(parse_h("b_3", 3));
    EXPECT_THROW(parse_tensor("[b_1]_1", 0, 1), ParseError);
}

TEST(Expr, ReportsPosition) {
    try {
        parse_h("b_1 +\n  [b_2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_GE(e.column(), 3);
    }
}

TEST(Expr, RejectsMalformedInput) {
    for (const char* bad : {"", "+", "b", "b_", "b_x", "[b_1", "[b_1]", "[]_1", "1/0 * b_1", "2 b_1", "b_1 +",
                            "b_1 (x) b_2", "01 * b_1", "b_1 ]", "1/-2 * b_1", "* b_1"})
        EXPECT_THROW(parse_h(bad), ParseError) << bad;
    for (const char* bad : {"b_1 (x)", "(x) b_1", "b_1 b_2", "b_1 (y) b_2"}) EXPECT_THROW(parse_tensor(bad), ParseError) << bad;
}

TEST(Expr, FuzzedInputFailsCleanly) {
    std::mt19937 gen(99);
    const std::string alphabet = "b_[]0123456789+-*/() x\n";
    std::vector<std::string> seeds{"[b_1 b_2]_3 + 2/3 * b_1 b_1", "b_2 (x) b_1 + [b_2]_1", "1 - [[b_1]_2]_1"};
    for (int rep = 0; rep < 3000; ++rep) {
        std::string s = seeds[gen() % seeds.size()];
        int edits = int(gen() % 4) + 1;
        for (int k = 0; k < edits; ++k) {
            std::size_t pos = s.empty() ? 0 : gen() % s.size();
            switch (gen() % 3) {
                case 0:
                    if (!s.empty()) s.erase(pos, 1);
                    break;
                case 1:
                    s.insert(s.begin() + pos, alphabet[gen() % alphabet.size()]);
                    break;
                default:
                    if (!s.empty()) s[pos] = alphabet[gen() % alphabet.size()];
            }
        }
        for (int kind = 0; kind < 2; ++kind) {
            try {
                if (kind == 0) {
                    HElem x = parse_h(s);
                    EXPECT_EQ(parse_h(print_h(x)), x);
                } else {
                    TensorElem x = parse_tensor(s);
                    EXPECT_EQ(parse_tensor(print_tensor(x)), x);
                }
            } catch (const ParseError&) {
            } catch (const std::exception& e) {
                ADD_FAILURE() << "unstructured error on '" << s << "': " << e.what();
            }
        }
    }
}
