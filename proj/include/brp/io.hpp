#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "brp/expr.hpp"
#include "brp/roughpath.hpp"

namespace brp {

using json = nlohmann::json;

// malformed files and payloads
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
std::vector<std::string> split_csv_line(const std::string& line);

template <class S>
constexpr const char* scalar_name() {
    return std::is_same_v<S, double> ? "float" : "rational";
}

template <class S>
json scalar_json(const S& v) {
    if constexpr (std::is_same_v<S, double>)
        return v;
    else
        return to_string(v);
}

template <class S>
S scalar_from_json(const json& j) {
    try {
        if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
        if (j.is_number_integer()) return S(j.get<long>());
        if (j.is_number()) {
            if constexpr (std::is_same_v<S, double>)
                return j.get<double>();
            else
                return Rational(j.get<double>());
        }
    } catch (const std::exception& e) {
        throw IoError(std::string("bad number: ") + e.what());
    }
    throw IoError("expected a number, got " + j.dump());
}

// ---- CSV

template <class S>
std::string path_to_csv(const SampledPath<S>& p) {
    std::string out = "t";
    for (const auto& b : p.basis) out += "," + print_tree(b);
    out += "\n";
    for (std::size_t k = 0; k < p.times.size(); ++k) {
        out += to_string(p.times[k]);
        for (const auto& v : p.values[k]) out += "," + to_string(v);
        out += "\n";
    }
    return out;
}

template <class S>
SampledPath<S> path_from_csv(const std::string& text) {
    SampledPath<S> p;
    std::size_t pos = 0;
    int lineno = 0;
    bool header = false;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto cells = split_csv_line(line);
        if (!header) {
            if (cells.empty() || cells[0] != "t") throw IoError("CSV header must start with 't'");
            for (std::size_t c = 1; c < cells.size(); ++c) {
                try {
                    p.basis.push_back(parse_tree(cells[c]));
                } catch (const ParseError& e) {
                    throw IoError("CSV header column " + std::to_string(c + 1) + ": " + e.what());
                }
            }
            header = true;
            continue;
        }
        if (cells.size() != p.basis.size() + 1)
            throw IoError("CSV line " + std::to_string(lineno) + ": expected " + std::to_string(p.basis.size() + 1) +
                          " cells");
        try {
            p.times.push_back(parse_scalar<S>(cells[0]));
            std::vector<S> row;
            for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_scalar<S>(cells[c]));
            p.values.push_back(std::move(row));
        } catch (const std::invalid_argument& e) {
            throw IoError("CSV line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!header) throw IoError("CSV: missing header");
    try {
        p.check();
    } catch (const std::invalid_argument& e) {
        throw IoError(e.what());
    }
    return p;
}

// ---- rough path JSON

template <class S>
json to_json(const BranchedRoughPath<S>& X) {
    json j;
    j["kind"] = "branched";
    j["scalar"] = scalar_name<S>();
    j["d"] = X.d;
    j["level"] = X.N;
    j["gamma"] = to_string(X.gamma);
    j["times"] = json::array();
    for (const auto& t : X.times) j["times"].push_back(scalar_json(t));
    j["increments"] = json::array();
    for (const auto& st : X.steps) {
        json m = json::object();
        std::vector<const Forest*> keys;
        for (const auto& [f, c] : st.terms) keys.push_back(&f);
        std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return print_less(*a, *b); });
        for (auto* f : keys) m[print_forest(*f)] = scalar_json(st.at(*f));
        j["increments"].push_back(std::move(m));
    }
    return j;
}

template <class S>
std::vector<S> times_from_json(const json& j) {
    if (!j.contains("times") || !j["times"].is_array()) throw IoError("missing 'times' array");
    std::vector<S> ts;
    for (const auto& v : j["times"]) ts.push_back(scalar_from_json<S>(v));
    if (ts.size() < 2) throw IoError("fewer than 2 grid points");
    for (std::size_t k = 1; k < ts.size(); ++k)
        if (!(ts[k - 1] < ts[k])) throw IoError("grid times must be strictly increasing");
    return ts;
}

template <class S>
BranchedRoughPath<S> branched_from_json(const json& j) {
    try {
        if (j.value("kind", std::string("branched")) != "branched") throw IoError("expected a branched rough path");
        BranchedRoughPath<S> X;
        X.d = j.at("d").get<int>();
        X.N = j.at("level").get<int>();
        X.gamma = j.contains("gamma") ? parse_rational(j["gamma"].is_string() ? j["gamma"].get<std::string>()
                                                                              : j["gamma"].dump())
                                      : Rational(1, X.N);
        X.times = times_from_json<S>(j);
        const auto& incs = j.at("increments");
        if (!incs.is_array() || incs.size() + 1 != X.times.size())
            throw IoError("need one increment per adjacent grid pair");
        for (const auto& m : incs) {
            HBasic<S> h(X.d);
            for (const auto& [k, v] : m.items()) {
                Forest f = parse_forest(k, X.d);
                if (f.grade() > X.N) throw IoError("forest " + k + " exceeds level");
                h.add(f, scalar_from_json<S>(v));
            }
            X.steps.push_back(std::move(h));
        }
        return X;
    } catch (const ParseError& e) {
        throw IoError(e.what());
    } catch (const json::exception& e) {
        throw IoError(e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(e.what());
    }
}

template <class S>
json to_json(const GeometricRoughPath<S>& X) {
    json j;
    j["kind"] = "geometric";
    j["scalar"] = scalar_name<S>();
    j["d"] = X.d;
    j["level"] = X.N;
    j["letter_grade"] = X.n;
    j["letters"] = json::array();
    for (const auto& l : X.letters) j["letters"].push_back(print_tree(l));
    j["times"] = json::array();
    for (const auto& t : X.times) j["times"].push_back(scalar_json(t));
    j["increments"] = json::array();
    for (const auto& st : X.steps) {
        json m = json::object();
        std::vector<const Word*> keys;
        for (const auto& [w, c] : st.terms) keys.push_back(&w);
        std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return print_less(*a, *b); });
        for (auto* w : keys) m[print_word(*w)] = scalar_json(st.at(*w));
        j["increments"].push_back(std::move(m));
    }
    return j;
}

template <class S>
GeometricRoughPath<S> geometric_from_json(const json& j) {
    try {
        if (j.value("kind", std::string()) != "geometric") throw IoError("expected a geometric rough path");
        GeometricRoughPath<S> X;
        X.d = j.at("d").get<int>();
        X.N = j.at("level").get<int>();
        X.n = j.at("letter_grade").get<int>();
        for (const auto& l : j.at("letters")) X.letters.push_back(parse_tree(l.get<std::string>(), X.d));
        X.times = times_from_json<S>(j);
        const auto& incs = j.at("increments");
        if (!incs.is_array() || incs.size() + 1 != X.times.size())
            throw IoError("need one increment per adjacent grid pair");
        for (const auto& m : incs) {
            TBasic<S> x(X.d, X.n);
            for (const auto& [k, v] : m.items()) x.add(parse_word(k, X.d, X.n), scalar_from_json<S>(v));
            X.steps.push_back(std::move(x));
        }
        return X;
    } catch (const ParseError& e) {
        throw IoError(e.what());
    } catch (const json::exception& e) {
        throw IoError(e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(e.what());
    }
}

json to_json(const ValidationReport& r);

}  // namespace brp
