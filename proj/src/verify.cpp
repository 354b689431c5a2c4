#include "brp/verify.hpp"

#include <map>
#include <random>
#include <tuple>

#include "brp/conversion.hpp"
#include "brp/rde.hpp"
#include "brp/synth.hpp"

namespace brp {

namespace {

using Triple = std::tuple<Forest, Forest, Forest>;

// coproduct terms, with one forest's expansion perturbed under mutation
struct Cop {
    std::optional<Forest> bad;
    std::vector<CopTerm> terms(const Forest& h) const {
        auto t = coproduct_terms(h);
        if (bad && h == *bad) t.push_back({h, Forest{}, 1});
        return t;
    }
};

template <class T>
const T& pick(const std::vector<T>& v, std::uint32_t seed) {
    std::mt19937 gen(seed);
    return v[gen() % v.size()];
}

void fail(CheckResult& c, const std::string& w) {
    if (c.pass) {
        c.pass = false;
        c.witness = w;
    }
}

}  // namespace

SuiteReport verify_hopf(const VerifyOptions& o) {
    SuiteReport rep{"hopf", {}};
    const auto& forests = enumerate_forests(o.N, o.d);
    Cop cop;
    if (o.mutate) {
        std::vector<Forest> nonunit(forests.begin() + 1, forests.end());
        cop.bad = pick(nonunit, *o.mutate);
    }
    CheckResult grading{"grading"}, coassoc{"coassociativity"}, mult{"coproduct_multiplicative"},
        anti{"antipode"};
    for (const auto& h : forests) {
        ++grading.checked;
        for (const auto& t : cop.terms(h))
            if (t.left.grade() + t.right.grade() != h.grade()) fail(grading, print_forest(h));

        ++coassoc.checked;
        std::map<Triple, Rational> a, b;
        for (const auto& t : cop.terms(h)) {
            for (const auto& u : cop.terms(t.left)) a[{u.left, u.right, t.right}] += Rational(t.c * u.c);
            for (const auto& u : cop.terms(t.right)) b[{t.left, u.left, u.right}] += Rational(t.c * u.c);
        }
        std::erase_if(a, [](const auto& kv) { return is_zero(kv.second); });
        std::erase_if(b, [](const auto& kv) { return is_zero(kv.second); });
        if (a != b) fail(coassoc, print_forest(h));

        ++anti.checked;
        HElem left(o.d), right(o.d);
        for (const auto& t : cop.terms(h)) {
            left += product(antipode_of(t.left), HElem(t.right, Rational(t.c), o.d));
            right += product(HElem(t.left, Rational(t.c), o.d), antipode_of(t.right));
        }
        HElem eps = h.is_unit() ? HElem::unit(o.d) : HElem(o.d);
        if (!(left == eps) || !(right == eps)) fail(anti, print_forest(h));
    }
    // Delta(h1 h2) = Delta(h1) Delta(h2)
    for (std::size_t i = 1; i < forests.size(); ++i)
        for (std::size_t j = i; j < forests.size(); ++j) {
            const auto &h1 = forests[i], &h2 = forests[j];
            if (h1.grade() + h2.grade() > o.N) continue;
            ++mult.checked;
            std::map<std::pair<Forest, Forest>, Rational> a, b;
            for (const auto& t : cop.terms(h1 * h2)) a[{t.left, t.right}] += Rational(t.c);
            for (const auto& t1 : cop.terms(h1))
                for (const auto& t2 : cop.terms(h2)) b[{t1.left * t2.left, t1.right * t2.right}] += Rational(t1.c * t2.c);
            std::erase_if(a, [](const auto& kv) { return is_zero(kv.second); });
            std::erase_if(b, [](const auto& kv) { return is_zero(kv.second); });
            if (a != b) fail(mult, print_forest(h1) + " , " + print_forest(h2));
        }
    rep.checks = {grading, coassoc, mult, anti};
    return rep;
}

SuiteReport verify_morphisms(const VerifyOptions& o) {
    SuiteReport rep{"morphisms", {}};
    for (auto kind : {MorphismKind::phi_g, MorphismKind::psi}) {
        MorphismTable table(kind, o.N, o.d);
        if (o.mutate) {
            std::vector<Tree> big;
            for (const auto& t : enumerate_trees(o.N, o.d))
                if (t.grade() >= 2) big.push_back(t);
            if (!big.empty()) {
                const Tree& t = pick(big, *o.mutate);
                TensorElem v = table.tree_image(t);
                v.add(letters_word(std::vector<int>(t.grade(), 1)), Rational(1));
                table.corrupt(t, v);
            }
        }
        auto r = verify_hopf_morphism(table, o.N, o.d);
        CheckResult c{kind == MorphismKind::phi_g ? "phi_g_hopf_morphism" : "psi_hopf_morphism"};
        c.checked = r.forests_checked;
        if (!r.pass) fail(c, r.check + " at " + (r.witness ? print_forest(*r.witness) : "") + ": " + r.detail);
        rep.checks.push_back(c);
    }
    return rep;
}

SuiteReport verify_lifts(const VerifyOptions& o) {
    SuiteReport rep{"lifts", {}};
    auto path = synth_random_walk(o.d, 6, 7);
    Rational gamma(1, o.N);
    auto canon = canonical_branched(path, o.N, gamma);
    auto ito = ito_lift(path, o.N, gamma);
    if (o.mutate) {
        // perturb one tree value of one step; the sampled source stays intact
        std::mt19937 gen(*o.mutate);
        auto& st = ito.steps[gen() % ito.steps.size()];
        const auto& trees = enumerate_trees(o.N, o.d);
        st.add(Forest(trees[gen() % trees.size()]), Rational(1, 3));
    }
    for (auto* X : {&canon, &ito}) {
        std::string tag = X == &canon ? "canonical" : "ito";
        auto v = validate(*X, o.threads);
        CheckResult ch{tag + "_character"}, chen{tag + "_chen"};
        ch.checked = v.steps_checked;
        chen.checked = v.triples_checked;
        if (!v.character) fail(ch, v.character_witness);
        if (!v.chen) fail(chen, v.chen_witness);
        rep.checks.push_back(ch);
        rep.checks.push_back(chen);
    }
    CheckResult shuf{"shuffle_separation"};
    auto dc = shuffle_defects(canon, true, o.threads);
    auto di = shuffle_defects(ito, false, o.threads);
    shuf.checked = 2;
    if (!dc.empty()) fail(shuf, "canonical lift fails the shuffle test at " + print_forest(dc[0].h));
    if (di.empty()) fail(shuf, "ito lift passes the shuffle test");
    rep.checks.push_back(shuf);
    CheckResult cert{"conversion_certificate"};
    try {
        EncodeOptions eo;
        eo.threads = o.threads;
        auto R = encode(ito, eo);
        cert.checked = R.certificate.checked_pairs * R.certificate.checked_forests;
        if (!R.certificate.pass) fail(cert, R.certificate.witness);
    } catch (const ConversionError& e) {
        fail(cert, e.what());
    }
    rep.checks.push_back(cert);
    return rep;
}

SuiteReport verify_lgl(const VerifyOptions& o) {
    SuiteReport rep{"lgl", {}};
    // seeded quadratic fields in two variables
    std::mt19937 gen(11);
    auto coef = [&] { return make_rational(static_cast<long>(gen() % 7) - 3, static_cast<long>(gen() % 3) + 1); };
    std::vector<PolyVectorField> base;
    for (int i = 0; i < o.d; ++i) {
        PolyVectorField f(2);
        for (int c = 0; c < 2; ++c)
            for (const auto& m : std::vector<Exponents>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}})
                f[c].add(m, coef());
        base.push_back(f);
    }
    ButcherTable table(base);
    const auto& trees = enumerate_trees(o.N, o.d);
    if (o.mutate) {
        std::vector<Tree> big;
        for (const auto& t : trees)
            if (t.grade() >= 2 && t.grade() < o.N) big.push_back(t);
        if (!big.empty()) {
            const Tree& t = pick(big, *o.mutate);
            table.corrupt(t, table.tree(t) + PolyVectorField::identity(2));
        }
    }
    CheckResult c{"lgl_q1"};
    for (const auto& l : trees)
        for (const auto& h : trees) {
            if (l.grade() + h.grade() > o.N) continue;
            ++c.checked;
            auto r = check_lgl(table, l, HElem::of(h), o.N);
            if (!r.pass) fail(c, r.witness);
        }
    rep.checks.push_back(c);
    return rep;
}

std::vector<SuiteReport> run_suite(const std::string& which, const VerifyOptions& o) {
    std::vector<SuiteReport> out;
    bool all = which == "all";
    if (!all && which != "hopf" && which != "morphisms" && which != "lifts" && which != "lgl")
        throw std::invalid_argument("unknown suite '" + which + "'");
    if (all || which == "hopf") out.push_back(verify_hopf(o));
    if (all || which == "morphisms") out.push_back(verify_morphisms(o));
    if (all || which == "lifts") out.push_back(verify_lifts(o));
    if (all || which == "lgl") out.push_back(verify_lgl(o));
    return out;
}

json to_json(const SuiteReport& r) {
    json j;
    j["suite"] = r.suite;
    j["pass"] = r.pass();
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json cj{{"name", c.name}, {"pass", c.pass}, {"checked", c.checked}};
        if (!c.pass) cj["witness"] = c.witness;
        j["checks"].push_back(cj);
    }
    return j;
}

}  // namespace brp
