#include <gtest/gtest.h>

#include "brp/expr.hpp"
#include "brp/morphisms.hpp"
#include "oracles.hpp"

using namespace brp;

namespace {

HElem H(const char* s, int d = 0) { return parse_h(s, d); }
TensorElem Tn(const char* s, int d = 0) { return parse_tensor(s, d); }

// phi_g by brute force: sum over vertex orders placing every vertex after its descendants
std::map<Word, long> phi_g_oracle(const oracle::RawTree& t) {
    int n = static_cast<int>(t.parent.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::map<Word, long> out;
    do {
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[perm[i]] = i;
        bool ok = true;
        for (int v = 1; v < n && ok; ++v)
            if (pos[v] > pos[t.parent[v]]) ok = false;
        if (!ok) continue;
        std::vector<int> labels;
        for (int v : perm) labels.push_back(t.label[v]);
        out[letters_word(labels)] += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::map<Word, long> as_counts(const TensorElem& x) {
    std::map<Word, long> m;
    for (const auto& [w, c] : x.terms) m[w] = mpz_class(c.get_num() / c.get_den()).get_si();
    return m;
}

}  // namespace

TEST(Morphisms, PhiGExamples) {
    EXPECT_EQ(phi_g(H("b_1 b_2")), Tn("b_1 (x) b_2 + b_2 (x) b_1"));
    EXPECT_EQ(phi_g(H("[b_1 b_2]_3")), Tn("b_1 (x) b_2 (x) b_3 + b_2 (x) b_1 (x) b_3"));
    EXPECT_EQ(phi_g(H("[[b_1]_2]_3")), Tn("b_1 (x) b_2 (x) b_3"));
    EXPECT_EQ(phi_g(H("1")), Tn("1"));
}

TEST(Morphisms, PhiGMatchesLinearExtensions) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& [k, raw] : oracle::classes(n, 2)) {
            Tree t = oracle::build(raw);
            EXPECT_EQ(as_counts(phi_g_tree(t)), phi_g_oracle(raw)) << print_tree(t);
        }
}

TEST(Morphisms, PsiExamples) {
    EXPECT_EQ(psi(H("b_1"), 1), Tn("b_1"));
    EXPECT_EQ(psi(H("[b_2]_1"), 2), Tn("b_2 (x) b_1 + [b_2]_1"));
    EXPECT_EQ(psi(H("[b_1 b_1]_1"), 3), Tn("[b_1 b_1]_1 + 2 * b_1 (x) b_1 (x) b_1 + 2 * b_1 (x) [b_1]_1"));
    EXPECT_THROW(psi(H("[b_1]_1"), 1), std::invalid_argument);
}

TEST(Morphisms, ImagesAreGraded) {
    for (const auto& t : enumerate_trees(5, 2)) {
        for (const auto& [w, c] : psi_tree(t).terms) {
            EXPECT_EQ(w.grade(), t.grade());
            // only the tree itself may carry a letter of full grade
            if (!(w == Word(t))) {
                EXPECT_LE(w.max_letter_grade(), t.grade() - 1);
            }
        }
        EXPECT_EQ(psi_tree(t).at(Word(t)), Rational(1));
        for (const auto& [w, c] : phi_g_tree(t).terms) {
            EXPECT_EQ(w.grade(), t.grade());
            EXPECT_EQ(w.max_letter_grade(), 1);
        }
    }
}

TEST(Morphisms, BothAreHopfMorphisms) {
    auto phi = verify_hopf_morphism(MorphismKind::phi_g, 4, 2);
    auto ps = verify_hopf_morphism(MorphismKind::psi, 4, 2);
    EXPECT_TRUE(phi.pass) << phi.check << " " << phi.detail;
    EXPECT_TRUE(ps.pass) << ps.check << " " << ps.detail;
    EXPECT_GT(ps.forests_checked, 0);
}

TEST(Morphisms, CorruptedEntryIsCaught) {
    MorphismTable m(MorphismKind::psi, 4, 2);
    Tree t = parse_tree("[b_2]_1");
    m.corrupt(t, Tn("[b_2]_1", 2));
    auto rep = verify_hopf_morphism(m, 4, 2);
    EXPECT_FALSE(rep.pass);
    ASSERT_TRUE(rep.witness.has_value());
}

TEST(Morphisms, Adjoints) {
    for (const auto& t : enumerate_trees(4, 2)) EXPECT_EQ(psi_adjoint(Word(t), 4, 2), HElem(Forest(t), 1, 2));
    EXPECT_EQ(phi_g_adjoint(letters_word({2}), 2), H("b_2", 2));
    // <phi_g*(w), tau> = coefficient of w in phi_g(tau)
    for (const auto& w : enumerate_words(4, 1, 2)) {
        if (w.empty()) continue;
        HElem adj = phi_g_adjoint(w, 2);
        for (const auto& t : enumerate_trees(4, 2)) EXPECT_EQ(adj.at(Forest(t)), phi_g_tree(t).at(w));
        HElem padj = psi_adjoint(w, 4, 2);
        for (const auto& h : enumerate_forests(4, 2))
            if (h.grade() == w.grade()) {
                EXPECT_EQ(padj.at(h), psi(HElem(h, 1, 2), 4).at(w));
            }
    }
}

TEST(Morphisms, ChainEmbeddingInvertsPhiGOnWords) {
    TensorElem x = Tn("b_1 (x) b_2 (x) b_2 - 1/2 * b_2 + 3 * 1", 2);
    HElem c = chain_embedding(x);
    EXPECT_EQ(c.at(Forest(chain({1, 2, 2}))), Rational(1));
    EXPECT_EQ(phi_g(c), x);
    EXPECT_THROW(chain_embedding(Tn("[b_1]_2")), std::invalid_argument);
}

TEST(Morphisms, DroppingTreeLettersCollapsesPsiOntoPhiG) {
    for (const auto& t : enumerate_trees(5, 2)) {
        TensorElem kept;
        for (const auto& [w, c] : psi_tree(t).terms)
            if (w.max_letter_grade() == 1) kept.add(w, c);
        EXPECT_EQ(kept.terms, phi_g_tree(t).terms) << print_tree(t);
    }
}
