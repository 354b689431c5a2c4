#pragma once

// Brute-force reference implementations used only by the tests. They work on
// explicit parent arrays and strings, not on the library's canonical trees.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "brp/hopf.hpp"
#include "brp/trees.hpp"

namespace oracle {

struct RawTree {
    std::vector<int> parent;  // parent[0] == -1
    std::vector<int> label;
};

inline std::vector<std::vector<int>> kids_of(const RawTree& t) {
    std::vector<std::vector<int>> k(t.parent.size());
    for (std::size_t v = 1; v < t.parent.size(); ++v) k[t.parent[v]].push_back(static_cast<int>(v));
    return k;
}

inline std::string key(const RawTree& t, int v, const std::vector<std::vector<int>>& k) {
    std::vector<std::string> parts;
    for (int c : k[v]) parts.push_back(key(t, c, k));
    std::sort(parts.begin(), parts.end());
    std::string s = "(" + std::to_string(t.label[v]);
    for (auto& p : parts) s += p;
    return s + ")";
}
inline std::string key(const RawTree& t) { return key(t, 0, kids_of(t)); }

inline brp::Tree build(const RawTree& t, int v, const std::vector<std::vector<int>>& k) {
    std::vector<brp::Tree> ch;
    for (int c : k[v]) ch.push_back(build(t, c, k));
    return brp::graft(brp::Forest(ch), t.label[v]);
}
inline brp::Tree build(const RawTree& t) { return build(t, 0, kids_of(t)); }

// every labelled rooted tree on n vertices, as parent arrays with parent[v] < v
inline std::vector<RawTree> all_raw(int n, int d) {
    std::vector<RawTree> out;
    RawTree t;
    t.parent.assign(n, -1);
    t.label.assign(n, 1);
    std::function<void(int)> par = [&](int v) {
        if (v == n) {
            std::function<void(int)> lab = [&](int u) {
                if (u == n) {
                    out.push_back(t);
                    return;
                }
                for (int a = 1; a <= d; ++a) {
                    t.label[u] = a;
                    lab(u + 1);
                }
            };
            lab(0);
            return;
        }
        for (int p = 0; p < v; ++p) {
            t.parent[v] = p;
            par(v + 1);
        }
    };
    par(1);
    return out;
}

// distinct isomorphism classes
inline std::map<std::string, RawTree> classes(int n, int d) {
    std::map<std::string, RawTree> m;
    for (auto& t : all_raw(n, d)) m.emplace(key(t), t);
    return m;
}

// subtree of t rooted at v
inline RawTree subtree(const RawTree& t, int v) {
    auto k = kids_of(t);
    RawTree r;
    std::vector<int> stack{v};
    std::map<int, int> idx;
    std::vector<int> order;
    std::function<void(int)> walk = [&](int u) {
        idx[u] = static_cast<int>(order.size());
        order.push_back(u);
        for (int c : k[u]) walk(c);
    };
    walk(v);
    for (int u : order) {
        r.parent.push_back(u == v ? -1 : idx[t.parent[u]]);
        r.label.push_back(t.label[u]);
    }
    return r;
}

// Connes-Kreimer coproduct by enumerating edge subsets: a subset is an
// admissible cut when no root-to-leaf path meets it twice
inline std::map<std::pair<brp::Forest, brp::Forest>, long> coproduct(const RawTree& t) {
    int n = static_cast<int>(t.parent.size());
    std::map<std::pair<brp::Forest, brp::Forest>, long> out;
    out[{brp::Forest(build(t)), brp::Forest{}}] += 1;
    for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
        auto cut = [&](int v) { return v > 0 && (mask >> (v - 1)) & 1; };
        bool ok = true;
        for (int v = 1; v < n && ok; ++v) {
            if (!cut(v)) continue;
            for (int u = t.parent[v]; u > 0; u = t.parent[u])
                if (cut(u)) ok = false;
        }
        if (!ok) continue;
        std::vector<brp::Tree> pruned;
        RawTree trunk;
        std::map<int, int> idx;
        for (int v = 0; v < n; ++v) {
            if (cut(v)) {
                pruned.push_back(build(subtree(t, v)));
                continue;
            }
            bool below = false;
            for (int u = t.parent[v]; u > 0; u = t.parent[u])
                if (cut(u)) below = true;
            if (v > 0 && cut(v)) below = true;
            if (below) continue;
            idx[v] = static_cast<int>(trunk.parent.size());
            trunk.parent.push_back(v == 0 ? -1 : idx[t.parent[v]]);
            trunk.label.push_back(t.label[v]);
        }
        out[{brp::Forest(pruned), brp::Forest(build(trunk))}] += 1;
    }
    return out;
}

inline long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// vertex orderings increasing away from the root, counted over all permutations
inline long heap_orderings(const RawTree& t) {
    int n = static_cast<int>(t.parent.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    long count = 0;
    do {
        bool ok = true;
        for (int v = 1; v < n && ok; ++v)
            if (perm[t.parent[v]] > perm[v]) ok = false;
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

// automorphisms by brute force over vertex permutations preserving parents and labels
inline long automorphisms(const RawTree& t) {
    int n = static_cast<int>(t.parent.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    long count = 0;
    do {
        bool ok = perm[0] == 0;
        for (int v = 1; v < n && ok; ++v)
            if (perm[t.parent[v]] != t.parent[perm[v]] || t.label[perm[v]] != t.label[v]) ok = false;
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace oracle
