#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "brp/conversion.hpp"
#include "brp/rde.hpp"
#include "brp/synth.hpp"
#include "brp/verify.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace brp;

namespace {

HElem h_of(const std::string& s, int d) { return parse_h(s, d); }

std::string lift_json(const std::string& csv, const std::string& mode, const std::string& gamma, int N) {
    auto path = path_from_csv<Rational>(csv);
    Rational g = parse_rational(gamma);
    int level = N > 0 ? N : gamma_to_level(g);
    auto X = mode == "ito" ? ito_lift(path, level, g) : canonical_branched(path, level, g);
    auto j = to_json(X);
    j["validation"] = to_json(validate(X));
    return j.dump();
}

std::string encode_json(const std::string& text) {
    auto X = branched_from_json<Rational>(json::parse(text));
    return to_json(encode(X)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "branched rough paths: exact Hopf algebra, lifts, conversion and RDE solving";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_ValueError);
    py::register_exception<ConversionError>(m, "ConversionError", PyExc_RuntimeError);

    m.def("coproduct", [](const std::string& x, int d) { return print_pair(coproduct(h_of(x, d))); },
          py::arg("expr"), py::arg("d") = 0);
    m.def("antipode", [](const std::string& x, int d) { return print_h(antipode(h_of(x, d))); }, py::arg("expr"),
          py::arg("d") = 0);
    m.def(
        "star",
        [](const std::string& a, const std::string& b, int N) {
            HElem x = h_of(a, 0), y = h_of(b, 0);
            if (N < 0) N = std::max(0, x.max_grade()) + std::max(0, y.max_grade());
            return print_h(convolve(x, y, N));
        },
        py::arg("a"), py::arg("b"), py::arg("N") = -1);
    m.def("exp_star", [](const std::string& x, int N) { return print_h(exp_star(h_of(x, 0), N)); }, py::arg("expr"),
          py::arg("N"));
    m.def("log_star", [](const std::string& x, int N) { return print_h(log_star(h_of(x, 0), N)); }, py::arg("expr"),
          py::arg("N"));
    m.def("psi", [](const std::string& x, int N) { return print_tensor(psi(h_of(x, 0), N)); }, py::arg("expr"),
          py::arg("N"));
    m.def("phi_g", [](const std::string& x) { return print_tensor(phi_g(h_of(x, 0))); }, py::arg("expr"));
    m.def("canonical", [](const std::string& x) { return print_h(h_of(x, 0)); }, py::arg("expr"),
          "parse and reprint in canonical form");
    m.def("gamma_to_level", [](const std::string& g) { return gamma_to_level(parse_rational(g)); });

    m.def("lift_json", &lift_json, py::arg("csv"), py::arg("mode") = "canonical", py::arg("gamma") = "1/2",
          py::arg("N") = 0);
    m.def("encode_json", &encode_json, py::arg("rough_path_json"));
    m.def(
        "synth_random_walk_csv",
        [](int d, int M, unsigned seed) { return path_to_csv(synth_random_walk(d, M, seed)); }, py::arg("d"),
        py::arg("M"), py::arg("seed"));
    m.def(
        "verify",
        [](const std::string& suite, int N, int d) {
            VerifyOptions o;
            o.N = N;
            o.d = d;
            json j = json::array();
            for (const auto& r : run_suite(suite, o)) j.push_back(to_json(r));
            return j.dump();
        },
        py::arg("suite") = "all", py::arg("N") = 3, py::arg("d") = 2);
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int rc = run_cli(args, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"));
}
