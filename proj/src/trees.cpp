#include "brp/trees.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace brp {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::strong_ordering compare_seq(const std::vector<Tree>& a, const std::vector<Tree>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return a.size() <=> b.size();
}

}  // namespace

Tree::Tree() : Tree(1) {}

Tree::Tree(int label) {
    auto n = std::make_shared<Node>();
    n->root = label;
    n->grade = 1;
    n->hash = mix(0x51ed27, static_cast<std::size_t>(label));
    n_ = std::move(n);
}

int Tree::max_label() const {
    int m = root();
    for (const auto& c : children()) m = std::max(m, c.max_label());
    return m;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    if (a.n_ == b.n_) return std::strong_ordering::equal;
    if (auto c = a.grade() <=> b.grade(); c != 0) return c;
    if (auto c = a.root() <=> b.root(); c != 0) return c;
    return compare_seq(a.children(), b.children());
}

bool operator==(const Tree& a, const Tree& b) {
    if (a.n_ == b.n_) return true;
    if (a.hash() != b.hash()) return false;
    return (a <=> b) == 0;
}

Tree graft(const Forest& children, int root) {
    auto n = std::make_shared<Tree::Node>();
    n->root = root;
    n->kids = children.trees();
    n->grade = 1 + children.grade();
    std::size_t h = mix(0x51ed27, static_cast<std::size_t>(root));
    for (const auto& k : n->kids) h = mix(h, k.hash());
    n->hash = h;
    Tree t;
    t.n_ = std::move(n);
    return t;
}

Forest::Forest(std::vector<Tree> ts) : trees_(std::move(ts)) {
    std::sort(trees_.begin(), trees_.end());
}

int Forest::grade() const {
    int g = 0;
    for (const auto& t : trees_) g += t.grade();
    return g;
}

int Forest::max_label() const {
    int m = 0;
    for (const auto& t : trees_) m = std::max(m, t.max_label());
    return m;
}

Forest Forest::operator*(const Forest& o) const {
    Forest r;
    r.trees_.reserve(trees_.size() + o.trees_.size());
    std::merge(trees_.begin(), trees_.end(), o.trees_.begin(), o.trees_.end(),
               std::back_inserter(r.trees_));
    return r;
}

std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
    if (auto c = a.grade() <=> b.grade(); c != 0) return c;
    return compare_seq(a.trees(), b.trees());
}

namespace {

// non-decreasing sequences from pool (sorted by grade) with total grade g
void multisets(const std::vector<Tree>& pool, std::size_t start, int g, std::vector<Tree>& cur,
               std::vector<Forest>& out) {
    if (g == 0) {
        out.emplace_back(cur);
        return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
        if (pool[i].grade() > g) break;
        cur.push_back(pool[i]);
        multisets(pool, i, g - pool[i].grade(), cur, out);
        cur.pop_back();
    }
}

struct Cache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::vector<Tree>> trees;
    std::map<std::pair<int, int>, std::vector<Forest>> forests;
};

Cache& cache() {
    static Cache c;
    return c;
}

std::vector<Tree> build_trees(int n, int d) {
    std::vector<Tree> all;
    for (int g = 1; g <= n; ++g) {
        std::vector<Forest> kids;
        std::vector<Tree> cur;
        multisets(all, 0, g - 1, cur, kids);
        std::vector<Tree> level;
        for (int a = 1; a <= d; ++a)
            for (const auto& k : kids) level.push_back(graft(k, a));
        std::sort(level.begin(), level.end());
        all.insert(all.end(), level.begin(), level.end());
    }
    return all;
}

}  // namespace

const std::vector<Tree>& enumerate_trees(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("enumerate_trees: need n >= 1 and d >= 1");
    auto& c = cache();
    std::lock_guard lk(c.mu);
    auto it = c.trees.find({n, d});
    if (it == c.trees.end()) it = c.trees.emplace(std::pair{n, d}, build_trees(n, d)).first;
    return it->second;
}

std::vector<Tree> trees_of_grade(int n, int d) {
    std::vector<Tree> out;
    if (n < 1) return out;
    for (const auto& t : enumerate_trees(n, d))
        if (t.grade() == n) out.push_back(t);
    return out;
}

const std::vector<Forest>& enumerate_forests(int n, int d) {
    if (n < 0 || d < 1) throw std::invalid_argument("enumerate_forests: need n >= 0 and d >= 1");
    const std::vector<Tree>* pool = n >= 1 ? &enumerate_trees(n, d) : nullptr;
    auto& c = cache();
    std::lock_guard lk(c.mu);
    auto it = c.forests.find({n, d});
    if (it == c.forests.end()) {
        std::vector<Forest> out;
        for (int g = 0; g <= n; ++g) {
            std::vector<Tree> cur;
            std::vector<Forest> level;
            if (g == 0)
                level.emplace_back();
            else
                multisets(*pool, 0, g, cur, level);
            std::sort(level.begin(), level.end());
            out.insert(out.end(), level.begin(), level.end());
        }
        it = c.forests.emplace(std::pair{n, d}, std::move(out)).first;
    }
    return it->second;
}

namespace {
long factorial_l(long n) {
    long r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

long multiset_factor(const std::vector<Tree>& ts) {
    long r = 1;
    std::size_t i = 0;
    while (i < ts.size()) {
        std::size_t j = i;
        while (j < ts.size() && ts[j] == ts[i]) ++j;
        r *= factorial_l(static_cast<long>(j - i));
        i = j;
    }
    return r;
}
}  // namespace

long symmetry_factor(const Forest& f) {
    long r = multiset_factor(f.trees());
    for (const auto& t : f.trees()) r *= symmetry_factor(t);
    return r;
}

long symmetry_factor(const Tree& t) { return symmetry_factor(Forest(t.children())); }

long tree_factorial(const Tree& t) {
    long r = t.grade();
    for (const auto& c : t.children()) r *= tree_factorial(c);
    return r;
}

std::vector<int> preorder_labels(const Tree& t) {
    std::vector<int> out{t.root()};
    for (const auto& c : t.children()) {
        auto sub = preorder_labels(c);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

std::vector<int> preorder_labels(const Forest& f) {
    std::vector<int> out;
    for (const auto& t : f.trees()) {
        auto sub = preorder_labels(t);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

Tree chain(const std::vector<int>& word) {
    if (word.empty()) throw std::invalid_argument("chain: empty word");
    Tree t(word.front());
    for (std::size_t k = 1; k < word.size(); ++k) t = graft(Forest(t), word[k]);
    return t;
}

bool is_chain(const Tree& t) {
    if (t.children().empty()) return true;
    return t.children().size() == 1 && is_chain(t.children().front());
}

}  // namespace brp
