#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brp/io.hpp"

namespace brp {

struct CheckResult {
    CheckResult(std::string n = {}) : name(std::move(n)) {}
    std::string name;
    bool pass = true;
    long checked = 0;
    std::string witness;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    int N = 3;
    int d = 2;
    // seeded negative control: one table entry is perturbed before checking
    std::optional<std::uint32_t> mutate;
    int threads = 1;
};

SuiteReport verify_hopf(const VerifyOptions& o);
SuiteReport verify_morphisms(const VerifyOptions& o);
SuiteReport verify_lifts(const VerifyOptions& o);
SuiteReport verify_lgl(const VerifyOptions& o);
// "hopf", "morphisms", "lifts", "lgl" or "all"
std::vector<SuiteReport> run_suite(const std::string& which, const VerifyOptions& o);

json to_json(const SuiteReport& r);

}  // namespace brp
