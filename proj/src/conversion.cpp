#include "brp/conversion.hpp"

#include <mutex>

namespace brp {

const std::vector<std::pair<Forest, TensorElem>>& psi_images(int N, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::pair<Forest, TensorElem>>> cache;
    std::lock_guard lk(mu);
    auto it = cache.find({N, d});
    if (it == cache.end()) {
        std::vector<std::pair<Forest, TensorElem>> v;
        for (const auto& h : enumerate_forests(N, d)) v.emplace_back(h, psi(HElem(h, Rational(1), d), N));
        it = cache.emplace(std::pair{N, d}, std::move(v)).first;
    }
    return it->second;
}

std::vector<Tree> extended_basis(int n, int d) {
    std::vector<Tree> out;
    for (int g = 1; g <= n; ++g)
        for (const auto& t : trees_of_grade(g, d)) out.push_back(t);
    return out;
}

json certificate_json(const Certificate& c) {
    json j;
    j["status"] = !c.checked ? "skipped" : c.pass ? "pass" : "fail";
    j["checked_pairs"] = c.checked_pairs;
    j["checked_forests"] = c.checked_forests;
    if (!c.witness.empty()) j["witness"] = c.witness;
    j["cocycle"] = {{"checked", c.cocycle_checked}, {"triples", c.cocycle_triples}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

}  // namespace brp
