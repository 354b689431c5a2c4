#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "brp/conversion.hpp"
#include "brp/desk.hpp"
#include "brp/rde.hpp"
#include "brp/synth.hpp"
#include "brp/verify.hpp"

namespace brp {

namespace {

// semantic problems: consistent syntax, impossible request
struct SemanticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvariantFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CertificateFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_file(path, text);
}

json load_json(const std::string& path) {
    std::string text = path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("invalid JSON: ") + e.what());
    }
}

bool is_float(const json& j) { return j.value("scalar", std::string("rational")) == "float"; }

int infer_d(int given, int labels) { return given > 0 ? given : std::max(1, labels); }

// ---- algebra

struct AlgebraArgs {
    std::string op;
    int N = -1;
    int d = 0;
    std::vector<std::string> exprs;
};

std::string run_algebra(const AlgebraArgs& a) {
    if (a.exprs.empty()) throw SemanticError("algebra: an expression is required");
    bool two = a.op == "star" || a.op == "graft";
    if (two && a.exprs.size() != 2) throw SemanticError("algebra --op " + a.op + " needs two expressions");
    if (!two && a.exprs.size() != 1) throw SemanticError("algebra --op " + a.op + " takes one expression");
    if (a.op == "graft") {
        Tree t1 = parse_tree(a.exprs[0], a.d), t2 = parse_tree(a.exprs[1], a.d);
        return print_h(graft_product(t1, t2, a.d));
    }
    HElem x = parse_h(a.exprs[0], a.d);
    int d = infer_d(a.d, x.max_label());
    try {
        if (a.op == "coproduct") return print_pair(coproduct(x));
        if (a.op == "antipode") return print_h(antipode(x));
        if (a.op == "star") {
            HElem y = parse_h(a.exprs[1], a.d);
            int N = a.N >= 0 ? a.N : std::max(0, x.max_grade()) + std::max(0, y.max_grade());
            x.d = y.d = infer_d(a.d, std::max(x.max_label(), y.max_label()));
            return print_h(convolve(x, y, N));
        }
        if (a.op == "exp" || a.op == "log") {
            int N = a.N >= 0 ? a.N : 3;
            x.d = d;
            return print_h(a.op == "exp" ? exp_star(x, N) : log_star(x, N));
        }
        if (a.op == "psi") return print_tensor(psi(x, a.N >= 0 ? a.N : std::max(0, x.max_grade())));
        if (a.op == "phig") return print_tensor(phi_g(x));
    } catch (const std::invalid_argument& e) {
        throw SemanticError(e.what());
    }
    throw SemanticError("unknown operation '" + a.op + "'");
}

// ---- lift

struct LiftArgs {
    std::string input, synth = "", mode = "canonical", gamma = "1/2", out;
    int steps = 16, d = 1, N = 0, threads = 0;
    unsigned seed = 1;
    bool flt = false, geometric = false;
};

SampledPath<Rational> synth_path(const std::string& kind, int d, int M, unsigned seed) {
    if (kind == "rw") return synth_random_walk(d, M, seed);
    if (kind == "linear") return synth_linear(d, M);
    if (kind == "sine") return synth_sine(d, M);
    throw SemanticError("unknown synthetic path '" + kind + "'");
}

int resolve_level(const Rational& gamma, int override_N) {
    int N = gamma_to_level(gamma);
    if (override_N > 0) {
        if (override_N * gamma > 1) throw SemanticError("level " + std::to_string(override_N) + " exceeds 1/gamma");
        N = override_N;
    }
    return N;
}

template <class S>
int do_lift(const LiftArgs& a, const SampledPath<S>& path, std::ostream& out) {
    Rational gamma = parse_rational(a.gamma);
    int N = resolve_level(gamma, a.N);
    int threads = a.threads > 0 ? a.threads : default_threads();
    json j;
    bool ok = true;
    if (a.geometric) {
        if (a.mode != "canonical") throw SemanticError("--geometric needs --mode canonical");
        auto G = canonical_lift(path, N);
        auto rep = validate(G, threads);
        j = to_json(G);
        j["validation"] = to_json(rep);
        ok = rep.ok();
    } else {
        BranchedRoughPath<S> X;
        if (a.mode == "canonical")
            X = canonical_branched(path, N, gamma);
        else if (a.mode == "ito")
            X = ito_lift(path, N, gamma);
        else
            throw SemanticError("unknown lift mode '" + a.mode + "'");
        auto rep = validate(X, threads);
        j = to_json(X);
        j["validation"] = to_json(rep);
        auto defects = shuffle_defects(X, false, threads);
        json sd;
        sd["pass"] = defects.empty();
        sd["failures"] = defects.size();
        json list = json::array();
        for (std::size_t k = 0; k < std::min<std::size_t>(defects.size(), 20); ++k)
            list.push_back({{"s", defects[k].s},
                            {"t", defects[k].t},
                            {"h", print_forest(defects[k].h)},
                            {"value", scalar_json(defects[k].value)},
                            {"expected", scalar_json(defects[k].expected)}});
        sd["first"] = list;
        j["validation"]["shuffle"] = sd;
        ok = rep.ok();
    }
    emit(j.dump(1) + "\n", a.out, out);
    if (!ok) throw InvariantFailure("lift validation failed");
    return exit_ok;
}

int run_lift(const LiftArgs& a, std::ostream& out) {
    if (a.input.empty() == a.synth.empty()) throw SemanticError("lift: give exactly one of --input or --synth");
    if (!a.input.empty()) {
        std::string text = read_file(a.input);
        if (a.flt) return do_lift(a, path_from_csv<double>(text), out);
        return do_lift(a, path_from_csv<Rational>(text), out);
    }
    auto p = synth_path(a.synth, a.d, a.steps, a.seed);
    if (a.flt) return do_lift(a, path_cast<double>(p), out);
    return do_lift(a, p, out);
}

// ---- convert

struct ConvertArgs {
    std::string input, out;
    int threads = 0;
    bool no_cocycle = false;
};

template <class S>
int do_convert(const ConvertArgs& a, const json& j, std::ostream& out) {
    auto X = branched_from_json<S>(j);
    EncodeOptions eo;
    eo.threads = a.threads > 0 ? a.threads : default_threads();
    eo.check_cocycle = !a.no_cocycle;
    ConversionResult<S> R;
    try {
        R = encode(X, eo);
    } catch (const ConversionError& e) {
        throw CertificateFailure(e.what());
    }
    emit(to_json(R).dump(1) + "\n", a.out, out);
    if (!R.certificate.pass) throw CertificateFailure("certificate failed: " + R.certificate.witness);
    return exit_ok;
}

int run_convert(const ConvertArgs& a, std::ostream& out) {
    json j = load_json(a.input);
    if (is_float(j)) return do_convert<double>(a, j, out);
    return do_convert<Rational>(a, j, out);
}

// ---- solve

struct SolveArgs {
    std::string driver, side = "branched", xi, format = "json", out, desk;
    std::vector<std::string> fields;
    int paths = 20, steps = 4096, threads = 0;
    unsigned seed = 1;
    bool breakdown = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

template <class S>
std::string emit_traj(const Trajectory<S>& T, const std::string& format) {
    return format == "csv" ? trajectory_csv(T) : to_json(T).dump(1) + "\n";
}

template <class S>
int do_solve(const SolveArgs& a, const json& j, std::ostream& out) {
    if (a.fields.empty()) throw SemanticError("solve: at least one --field is required");
    int e = static_cast<int>(split(a.fields[0], ';').size());
    std::vector<PolyVectorField> base;
    for (const auto& f : a.fields) base.push_back(parse_field(f, e));
    ButcherTable table(base);
    std::vector<S> xi;
    for (const auto& c : split(a.xi, ',')) xi.push_back(parse_scalar<S>(c));
    if (static_cast<int>(xi.size()) != e)
        throw SemanticError("solve: xi has " + std::to_string(xi.size()) + " entries, fields have " + std::to_string(e));
    if (a.format != "json" && a.format != "csv") throw SemanticError("solve: unknown format '" + a.format + "'");
    std::string kind = j.value("kind", std::string("branched"));
    if (kind == "geometric") {
        if (a.side != "geometric") throw SemanticError("solve: a geometric driver needs --side geometric");
        auto G = geometric_from_json<S>(j);
        std::map<Tree, PolyVectorField> letters;
        for (const auto& l : G.letters) {
            if (l.max_label() > table.labels()) throw SemanticError("solve: no field for " + print_tree(l));
            letters.emplace(l, table.tree(l));
        }
        emit(emit_traj(solve_geometric(G, WordFields(letters), xi, a.breakdown), a.format), a.out, out);
        return exit_ok;
    }
    auto X = branched_from_json<S>(j);
    if (table.labels() < X.d)
        throw SemanticError("solve: driver has " + std::to_string(X.d) + " labels, only " +
                            std::to_string(table.labels()) + " fields given");
    if (a.side == "branched") {
        emit(emit_traj(solve_branched(X, table, xi, a.breakdown), a.format), a.out, out);
        return exit_ok;
    }
    if (a.side != "geometric" && a.side != "both") throw SemanticError("solve: unknown side '" + a.side + "'");
    EncodeOptions eo;
    eo.threads = a.threads > 0 ? a.threads : default_threads();
    ConversionResult<S> R;
    try {
        R = encode(X, eo);
    } catch (const ConversionError& err) {
        throw CertificateFailure(err.what());
    }
    if (!R.certificate.pass) throw CertificateFailure("certificate failed: " + R.certificate.witness);
    auto Tg = solve_geometric(R.geometric, convert_rde(table, R), xi, a.breakdown);
    if (a.side == "geometric") {
        emit(emit_traj(Tg, a.format), a.out, out);
        return exit_ok;
    }
    auto Tb = solve_branched(X, table, xi, a.breakdown);
    S disc = max_step_discrepancy(Tb, Tg);
    json r;
    r["branched"] = to_json(Tb);
    r["geometric"] = to_json(Tg);
    r["max_step_discrepancy"] = scalar_json(disc);
    emit(r.dump(1) + "\n", a.out, out);
    return exit_ok;
}

int run_solve(const SolveArgs& a, std::ostream& out) {
    if (!a.desk.empty()) {
        if (a.desk != "gbm") throw SemanticError("solve: unknown desk test '" + a.desk + "'");
        try {
            auto s = desk_gbm(a.paths, a.steps, a.seed);
            emit(to_json(s).dump(1) + "\n", a.out, out);
        } catch (const std::invalid_argument& e) {
            throw SemanticError(e.what());
        }
        return exit_ok;
    }
    if (a.driver.empty()) throw SemanticError("solve: --driver is required");
    if (a.xi.empty()) throw SemanticError("solve: --xi is required");
    json j = load_json(a.driver);
    if (is_float(j)) return do_solve<double>(a, j, out);
    return do_solve<Rational>(a, j, out);
}

// ---- verify

struct VerifyArgs {
    std::string suite = "all";
    int N = 3, d = 2, threads = 0;
    long mutate = -1;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
    if (a.N < 1 || a.N > 6 || a.d < 1 || a.d > 3) throw SemanticError("verify: need 1 <= N <= 6 and 1 <= d <= 3");
    VerifyOptions o;
    o.N = a.N;
    o.d = a.d;
    o.threads = a.threads > 0 ? a.threads : default_threads();
    if (a.mutate >= 0) o.mutate = static_cast<std::uint32_t>(a.mutate);
    std::vector<SuiteReport> reps;
    try {
        reps = run_suite(a.suite, o);
    } catch (const std::invalid_argument& e) {
        throw SemanticError(e.what());
    }
    json j;
    bool ok = true;
    j["suites"] = json::array();
    for (const auto& r : reps) {
        j["suites"].push_back(to_json(r));
        ok = ok && r.pass();
    }
    j["pass"] = ok;
    out << j.dump(1) << "\n";
    if (!ok) throw InvariantFailure("verification failed");
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"branched rough paths: algebra, lifts, conversion and RDE solving", "brp"};
    app.require_subcommand(1);

    AlgebraArgs alg;
    auto* c_alg = app.add_subcommand("algebra", "Hopf algebra and morphism queries");
    c_alg->add_option("--op", alg.op, "coproduct|antipode|star|exp|log|psi|phig|graft")
        ->required()
        ->check(CLI::IsMember({"coproduct", "antipode", "star", "exp", "log", "psi", "phig", "graft"}));
    c_alg->add_option("--N", alg.N, "truncation level");
    c_alg->add_option("--d", alg.d, "alphabet size (default: largest label)");
    c_alg->add_option("exprs", alg.exprs, "expression(s)")->required();

    LiftArgs lift;
    auto* c_lift = app.add_subcommand("lift", "lift a sampled path to a rough path");
    c_lift->add_option("--input", lift.input, "CSV file");
    c_lift->add_option("--synth", lift.synth, "rw|linear|sine");
    c_lift->add_option("--steps", lift.steps, "grid intervals for --synth");
    c_lift->add_option("--seed", lift.seed, "seed for --synth rw");
    c_lift->add_option("--d", lift.d, "components for --synth");
    c_lift->add_option("--mode", lift.mode, "canonical|ito");
    c_lift->add_option("--gamma", lift.gamma, "Hoelder exponent in (0,1)");
    c_lift->add_option("--N", lift.N, "level override");
    c_lift->add_flag("--float", lift.flt, "floating point instead of rationals");
    c_lift->add_flag("--geometric", lift.geometric, "emit the tensor lift instead of the branched one");
    c_lift->add_option("--out", lift.out, "output file");
    c_lift->add_option("--threads", lift.threads);

    ConvertArgs conv;
    auto* c_conv = app.add_subcommand("convert", "encode a branched rough path as a geometric one");
    c_conv->add_option("--input", conv.input, "rough-path JSON")->required();
    c_conv->add_option("--out", conv.out);
    c_conv->add_option("--threads", conv.threads);
    c_conv->add_flag("--no-cocycle", conv.no_cocycle, "skip the per-level additivity check");

    SolveArgs sol;
    auto* c_sol = app.add_subcommand("solve", "solve an RDE on a rough path driver");
    c_sol->add_option("--driver", sol.driver, "rough-path JSON");
    c_sol->add_option("--field", sol.fields, "vector field per label, components separated by ';'");
    c_sol->add_option("--xi", sol.xi, "initial value, comma separated");
    c_sol->add_option("--side", sol.side, "branched|geometric|both");
    c_sol->add_option("--format", sol.format, "json|csv");
    c_sol->add_flag("--breakdown", sol.breakdown, "per-step contributions");
    c_sol->add_option("--out", sol.out);
    c_sol->add_option("--threads", sol.threads);
    c_sol->add_option("--desk", sol.desk, "gbm: Monte-Carlo Ito correction test");
    c_sol->add_option("--paths", sol.paths);
    c_sol->add_option("--steps", sol.steps);
    c_sol->add_option("--seed", sol.seed);

    VerifyArgs ver;
    auto* c_ver = app.add_subcommand("verify", "run invariant suites");
    c_ver->add_option("--suite", ver.suite, "hopf|morphisms|lifts|lgl|all");
    c_ver->add_option("--N", ver.N);
    c_ver->add_option("--d", ver.d);
    c_ver->add_option("--mutate", ver.mutate, "seeded negative control");
    c_ver->add_option("--threads", ver.threads);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_parse;
    }

    try {
        if (c_alg->parsed()) {
            out << run_algebra(alg) << "\n";
            return exit_ok;
        }
        if (c_lift->parsed()) return run_lift(lift, out);
        if (c_conv->parsed()) return run_convert(conv, out);
        if (c_sol->parsed()) return run_solve(sol, out);
        if (c_ver->parsed()) return run_verify(ver, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const IoError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_parse;
    } catch (const InvariantFailure& e) {
        err << "invariant failure: " << e.what() << "\n";
        return exit_invariant;
    } catch (const CertificateFailure& e) {
        err << "certificate failure: " << e.what() << "\n";
        return exit_certificate;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << "\n";
        return exit_semantic;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_semantic;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return exit_semantic;
    }
    return exit_semantic;
}

}  // namespace brp
