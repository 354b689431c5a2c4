#include "brp/desk.hpp"

#include <cmath>

#include "brp/conversion.hpp"
#include "brp/rde.hpp"
#include "brp/synth.hpp"

namespace brp {

DeskSummary desk_gbm(int paths, int steps, std::uint32_t first_seed) {
    long root = std::lround(std::sqrt(static_cast<double>(steps)));
    if (paths < 1 || steps < 1 || root * root != steps)
        throw std::invalid_argument("desk_gbm: steps must be a perfect square and paths >= 1");
    DeskSummary out;
    out.paths = paths;
    out.steps = steps;
    ButcherTable f({parse_field("y1", 1)});
    EncodeOptions eo;
    eo.check_cocycle = false;
    eo.certify = false;
    for (int p = 0; p < paths; ++p) {
        DeskPath r;
        r.seed = first_seed + static_cast<std::uint32_t>(p);
        auto path = path_cast<double>(synth_sign_walk(1, steps, Rational(1, root), r.seed));
        auto X = ito_lift(path, 2, Rational(1, 2));
        for (std::size_t k = 0; k < path.steps(); ++k) r.qv += path.delta(k, 0) * path.delta(k, 0);
        r.X_T = path.values.back()[0];
        auto T = solve_branched(X, f, std::vector<double>{1.0});
        r.Y_T = T.Y.back()[0];
        r.exact = std::exp(r.X_T - 0.5 * r.qv);
        r.rel_error = std::abs(r.Y_T - r.exact) / r.exact;
        auto S2 = simplify_n2(encode(X, eo));
        for (const auto& q : S2.sym_steps) r.sym_total += q[0];
        r.sym_exact = r.sym_total == r.qv;
        out.mean_rel_error += r.rel_error / paths;
        out.max_rel_error = std::max(out.max_rel_error, r.rel_error);
        out.sym_exact_all = out.sym_exact_all && r.sym_exact;
        out.runs.push_back(r);
    }
    return out;
}

json to_json(const DeskSummary& s) {
    json j;
    j["kind"] = "desk_gbm";
    j["paths"] = s.paths;
    j["steps"] = s.steps;
    j["mean_rel_error"] = s.mean_rel_error;
    j["max_rel_error"] = s.max_rel_error;
    j["symmetric_component_equals_qv"] = s.sym_exact_all;
    j["runs"] = json::array();
    for (const auto& r : s.runs)
        j["runs"].push_back({{"seed", r.seed},
                             {"X_T", r.X_T},
                             {"qv", r.qv},
                             {"Y_T", r.Y_T},
                             {"exact", r.exact},
                             {"rel_error", r.rel_error},
                             {"symmetric_total", r.sym_total}});
    return j;
}

}  // namespace brp
