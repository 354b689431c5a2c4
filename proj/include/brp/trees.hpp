#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <vector>

namespace brp {

class Forest;

// Labelled rooted tree with unordered branches. Children are kept sorted so two
// trees are equal iff their representations are.
class Tree {
public:
    Tree();  // single vertex labelled 1
    explicit Tree(int label);

    int root() const { return n_->root; }
    const std::vector<Tree>& children() const { return n_->kids; }
    int grade() const { return n_->grade; }
    std::size_t hash() const { return n_->hash; }
    bool is_leaf() const { return n_->kids.empty(); }
    int max_label() const;

    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);
    friend bool operator==(const Tree& a, const Tree& b);

private:
    struct Node {
        int root;
        std::vector<Tree> kids;
        int grade;
        std::size_t hash;
    };
    std::shared_ptr<const Node> n_;
    friend Tree graft(const Forest& children, int root);
};

// Commutative monomial of trees; the empty forest is the unit.
class Forest {
public:
    Forest() = default;
    explicit Forest(Tree t) : trees_{std::move(t)} {}
    explicit Forest(std::vector<Tree> ts);

    const std::vector<Tree>& trees() const { return trees_; }
    std::size_t size() const { return trees_.size(); }
    bool is_unit() const { return trees_.empty(); }
    bool is_tree() const { return trees_.size() == 1; }
    const Tree& tree() const { return trees_.front(); }
    int grade() const;
    int max_label() const;

    Forest operator*(const Forest& o) const;

    friend std::strong_ordering operator<=>(const Forest& a, const Forest& b);
    friend bool operator==(const Forest& a, const Forest& b) = default;

private:
    std::vector<Tree> trees_;
};

Tree graft(const Forest& children, int root);
inline Tree leaf(int label) { return Tree(label); }

inline int grade(const Tree& t) { return t.grade(); }
inline int grade(const Forest& f) { return f.grade(); }

// all canonical trees with grade <= n and labels in 1..d, sorted
const std::vector<Tree>& enumerate_trees(int n, int d);
// trees of grade exactly n
std::vector<Tree> trees_of_grade(int n, int d);
// all forests with grade <= n (unit included), sorted
const std::vector<Forest>& enumerate_forests(int n, int d);

// |Aut|: product of multiplicity factorials over every vertex's branches
long symmetry_factor(const Tree& t);
long symmetry_factor(const Forest& f);
long tree_factorial(const Tree& t);

// root label, then children in order, recursively
std::vector<int> preorder_labels(const Tree& t);
std::vector<int> preorder_labels(const Forest& f);

// linear tree [...[b_{w1}]_{w2}...]_{wn}
Tree chain(const std::vector<int>& word);
bool is_chain(const Tree& t);

}  // namespace brp

template <>
struct std::hash<brp::Tree> {
    std::size_t operator()(const brp::Tree& t) const noexcept { return t.hash(); }
};
