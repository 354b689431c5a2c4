#include <gtest/gtest.h>

#include <random>

#include "brp/expr.hpp"
#include "brp/tensor.hpp"

using namespace brp;

namespace {

TensorElem Tn(const char* s, int d = 0) { return parse_tensor(s, d); }
Word W(std::vector<int> ls) { return letters_word(ls); }

TensorElem e(std::vector<int> ls, int d = 2) { return TensorElem(W(std::move(ls)), 1, d, 1); }

TensorElem bracket(const TensorElem& x, const TensorElem& y, int N) { return concat(x, y, N) - concat(y, x, N); }

std::size_t rank(std::vector<TensorElem> rows) {
    std::vector<Word> cols;
    for (const auto& r : rows)
        for (const auto& [w, c] : r.terms) cols.push_back(w);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<std::vector<Rational>> m;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (const auto& w : cols) row.push_back(r.at(w));
        m.push_back(row);
    }
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols.size() && rk < m.size(); ++c) {
        std::size_t p = rk;
        while (p < m.size() && is_zero(m[p][c])) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rk]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rk || is_zero(m[r][c])) continue;
            Rational f = m[r][c] / m[rk][c];
            for (std::size_t k = 0; k < cols.size(); ++k) m[r][k] -= f * m[rk][k];
        }
        ++rk;
    }
    return rk;
}

}  // namespace

TEST(Tensor, ShuffleExamples) {
    EXPECT_EQ(shuffle(e({1}), e({2})), e({1, 2}) + e({2, 1}));
    EXPECT_EQ(shuffle(e({1}, 3), e({2, 3}, 3)), e({1, 2, 3}, 3) + e({2, 1, 3}, 3) + e({2, 3, 1}, 3));
    TensorElem x = Tn("b_1 (x) [b_2]_1 - 2 * b_2");
    EXPECT_EQ(shuffle(TensorElem::unit(), x), x);
    EXPECT_EQ(shuffle(e({1}), e({1})), 2 * e({1, 1}));
}

TEST(Tensor, ShuffleIsCommutativeAndAssociative) {
    TensorElem x = Tn("b_1 + b_1 (x) b_2", 2), y = Tn("[b_1]_2 - 3 * b_2", 2), z = Tn("b_2 (x) b_2", 2);
    EXPECT_EQ(shuffle(x, y), shuffle(y, x));
    EXPECT_EQ(shuffle(shuffle(x, y), z), shuffle(x, shuffle(y, z)));
}

TEST(Tensor, ShuffleRejectsContextMismatch) {
    EXPECT_THROW(shuffle(e({1}, 2), e({1}, 3)), std::invalid_argument);
}

TEST(Tensor, ConcatTruncatesByTotalGrade) {
    EXPECT_EQ(concat(e({1}), e({2}), 2), e({1, 2}));
    EXPECT_TRUE(concat(Tn("b_1 (x) b_2", 4), Tn("[b_3]_4", 4), 3).empty());
    EXPECT_EQ(concat(Tn("b_1 (x) b_2", 4), Tn("[b_3]_4", 4), 4), Tn("b_1 (x) b_2 (x) [b_3]_4", 4));
}

TEST(Tensor, ConcatIsAssociative) {
    std::mt19937 gen(11);
    const auto& words = enumerate_words(4, 2, 2);
    auto rnd = [&] {
        TensorElem x(2, 2);
        for (int k = 0; k < 4; ++k) x.add(words[gen() % words.size()], Rational(int(gen() % 7) - 3));
        return x;
    };
    for (int rep = 0; rep < 20; ++rep) {
        TensorElem x = rnd(), y = rnd(), z = rnd();
        EXPECT_EQ(concat(concat(x, y, 4), z, 4), concat(x, concat(y, z, 4), 4));
    }
}

TEST(Tensor, DeconcatSplits) {
    WordPairElem d = deconcat(e({1, 2}));
    WordPairElem want;
    want.add(W({1, 2}), Word{}, 1);
    want.add(W({1}), W({2}), 1);
    want.add(Word{}, W({1, 2}), 1);
    EXPECT_EQ(d, want);
    // tree letters are indivisible
    WordPairElem t = deconcat(Tn("[b_1 b_2]_1"));
    EXPECT_EQ(t.terms.size(), 2u);
}

TEST(Tensor, DeconcatIsShuffleMorphism) {
    const auto& words = enumerate_words(3, 1, 2);
    for (const auto& u : words)
        for (const auto& v : words) {
            if (u.grade() + v.grade() > 3) continue;
            // Delta(u sh v) = Delta(u) sh Delta(v) with componentwise shuffle
            std::map<std::pair<Word, Word>, Rational> lhs, rhs;
            for (const auto& [w, m] : shuffle_words(u, v))
                for (const auto& [k, c] : deconcat(TensorElem(w, 1)).terms) lhs[k] += c * m;
            for (const auto& [ku, cu] : deconcat(TensorElem(u, 1)).terms)
                for (const auto& [kv, cv] : deconcat(TensorElem(v, 1)).terms)
                    for (const auto& [a, ma] : shuffle_words(ku.first, kv.first))
                        for (const auto& [b, mb] : shuffle_words(ku.second, kv.second)) rhs[{a, b}] += cu * cv * ma * mb;
            std::erase_if(lhs, [](const auto& kv) { return is_zero(kv.second); });
            std::erase_if(rhs, [](const auto& kv) { return is_zero(kv.second); });
            EXPECT_EQ(lhs, rhs);
        }
}

TEST(Tensor, DeconcatIsCoassociative) {
    for (const auto& w : enumerate_words(4, 1, 2)) {
        std::map<std::tuple<Word, Word, Word>, int> l;
        for (std::size_t i = 0; i <= w.size(); ++i)
            for (std::size_t j = i; j <= w.size(); ++j) l[{w.slice(0, i), w.slice(i, j), w.slice(j, w.size())}] += 1;
        std::map<std::tuple<Word, Word, Word>, Rational> left, right;
        for (const auto& [k, c] : deconcat(TensorElem(w, 1)).terms) {
            for (const auto& [k2, c2] : deconcat(TensorElem(k.first, 1)).terms) left[{k2.first, k2.second, k.second}] += c * c2;
            for (const auto& [k2, c2] : deconcat(TensorElem(k.second, 1)).terms) right[{k.first, k2.first, k2.second}] += c * c2;
        }
        EXPECT_EQ(left, right);
        EXPECT_EQ(left.size(), l.size());
    }
}

TEST(Tensor, ConcatIsDualToDeconcat) {
    TensorElem f = Tn("b_1 + 2 * b_1 (x) b_2", 2), g = Tn("b_2 - b_2 (x) b_1", 2);
    TensorElem fg = concat(f, g, 4);
    for (const auto& w : enumerate_words(4, 1, 2)) {
        Rational want = 0;
        for (const auto& [k, c] : deconcat(TensorElem(w, 1)).terms) want += c * f.at(k.first) * g.at(k.second);
        EXPECT_EQ(fg.at(w), want);
    }
}

TEST(Tensor, ExpLog) {
    EXPECT_EQ(tensor_exp(TensorElem(2, 1), 3), TensorElem::unit(2, 1));
    TensorElem g = tensor_exp(Rational(3) * e({1}), 3);
    EXPECT_EQ(g.at(W({1, 1, 1})), Rational(9, 2));
    EXPECT_EQ(g.at(W({1, 1})), Rational(9, 2));
    EXPECT_EQ(g.at(W({1})), Rational(3));
    TensorElem x = e({1}) + e({2});
    EXPECT_EQ(tensor_log(tensor_exp(x, 3), 3), x);
    EXPECT_THROW(tensor_exp(TensorElem::unit(), 2), std::invalid_argument);
    EXPECT_THROW(tensor_log(e({1}), 2), std::invalid_argument);
}

TEST(Tensor, GroupLikeExamples) {
    EXPECT_TRUE(is_tensor_group_like(TensorElem::unit(2, 1), 3));
    EXPECT_TRUE(is_tensor_group_like(tensor_exp(e({1}), 4), 4));
    EXPECT_FALSE(is_tensor_group_like(TensorElem::unit(2, 1) + e({1}) + e({2}), 2));
}

TEST(Tensor, ExpOfLieIsGroupLike) {
    std::mt19937 gen(5);
    auto c = [&] { return make_rational(int(gen() % 9) - 4, int(gen() % 3) + 1); };
    TensorElem a = e({1}), b = e({2}), ab = bracket(a, b, 3);
    for (int rep = 0; rep < 20; ++rep) {
        TensorElem l = c() * a + c() * b + c() * ab + c() * bracket(a, ab, 3) + c() * bracket(b, ab, 3);
        EXPECT_TRUE(is_tensor_group_like(tensor_exp(l, 3), 3));
    }
}

TEST(Tensor, LogOfCharacterIsLie) {
    // products of letter exponentials are characters; their logs must lie in the bracket span
    std::mt19937 gen(8);
    TensorElem a = e({1}), b = e({2}), ab = bracket(a, b, 3);
    std::vector<TensorElem> basis{a, b, ab, bracket(a, ab, 3), bracket(b, ab, 3)};
    std::size_t r0 = rank(basis);
    EXPECT_EQ(r0, 5u);
    for (int rep = 0; rep < 10; ++rep) {
        TensorElem g = TensorElem::unit(2, 1);
        for (int k = 0; k < 4; ++k) {
            Rational s = make_rational(int(gen() % 7) - 3, 2);
            g = concat(g, tensor_exp(s * e({int(gen() % 2) + 1}), 3), 3);
        }
        ASSERT_TRUE(is_tensor_group_like(g, 3));
        auto rows = basis;
        rows.push_back(tensor_log(g, 3));
        EXPECT_EQ(rank(rows), r0);
    }
    // a non-Lie element is detected by the same test
    auto rows = basis;
    rows.push_back(e({1, 2}));
    EXPECT_EQ(rank(rows), r0 + 1);
}

TEST(Tensor, WordEnumerationGradesByTotal) {
    for (const auto& w : enumerate_words(4, 2, 2)) {
        EXPECT_LE(w.grade(), 4);
        EXPECT_LE(w.max_letter_grade(), 2);
    }
    // over single letters with d = 2: 1 + 2 + 4 + 8
    EXPECT_EQ(enumerate_words(3, 1, 2).size(), 15u);
}
