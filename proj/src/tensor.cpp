#include "brp/tensor.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace brp {

int Word::grade() const {
    int g = 0;
    for (const auto& t : letters_) g += t.grade();
    return g;
}

int Word::max_letter_grade() const {
    int g = 0;
    for (const auto& t : letters_) g = std::max(g, t.grade());
    return g;
}

int Word::max_label() const {
    int m = 0;
    for (const auto& t : letters_) m = std::max(m, t.max_label());
    return m;
}

Word Word::operator+(const Word& o) const {
    std::vector<Tree> ls = letters_;
    ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(ls));
}

Word Word::slice(std::size_t from, std::size_t to) const {
    return Word(std::vector<Tree>(letters_.begin() + from, letters_.begin() + to));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.grade() <=> b.grade(); c != 0) return c;
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.size() <=> b.size();
}

Word letters_word(const std::vector<int>& labels) {
    std::vector<Tree> ls;
    for (int l : labels) ls.emplace_back(l);
    return Word(std::move(ls));
}

int check_tensor_context(int a, int b) {
    if (a && b && a != b) throw std::invalid_argument("alphabet size mismatch");
    return a ? a : b;
}

std::vector<std::pair<Word, long>> shuffle_words(const Word& u, const Word& v) {
    std::size_t n = u.size() + v.size();
    // mask[i] true: position i takes the next letter of u
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + u.size(), true);
    std::map<Word, long> acc;
    do {
        std::vector<Tree> ls;
        ls.reserve(n);
        std::size_t i = 0, j = 0;
        for (bool m : mask) ls.push_back(m ? u[i++] : v[j++]);
        acc[Word(std::move(ls))] += 1;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return {acc.begin(), acc.end()};
}

namespace {
struct WordCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, std::vector<Word>> words;
};
WordCache& wcache() {
    static WordCache c;
    return c;
}

void extend(const std::vector<Tree>& alphabet, int budget, std::vector<Tree>& cur, std::vector<Word>& out) {
    out.emplace_back(cur);
    for (const auto& t : alphabet) {
        if (t.grade() > budget) break;
        cur.push_back(t);
        extend(alphabet, budget - t.grade(), cur, out);
        cur.pop_back();
    }
}
}  // namespace

const std::vector<Word>& enumerate_words(int N, int n, int d) {
    if (N < 0 || n < 1 || d < 1) throw std::invalid_argument("enumerate_words: bad arguments");
    const auto& alphabet = enumerate_trees(n, d);
    auto& c = wcache();
    std::lock_guard lk(c.mu);
    auto key = std::tuple{N, n, d};
    auto it = c.words.find(key);
    if (it == c.words.end()) {
        std::vector<Word> out;
        std::vector<Tree> cur;
        extend(alphabet, N, cur, out);
        std::sort(out.begin(), out.end());
        it = c.words.emplace(key, std::move(out)).first;
    }
    return it->second;
}

}  // namespace brp
