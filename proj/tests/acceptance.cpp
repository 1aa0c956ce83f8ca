// Acceptance battery: eleven desk-scale criteria covering the phase-space
// transform, the POVM family, the variance laws, the two-detector protocol,
// and sampling.  Prints one verdict line per criterion; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "akweak/verify.hpp"

using akweak::Check;

namespace {

struct Criterion {
    const char* label;
    const char* description;
    std::vector<std::string> prefixes;
};

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const akweak::VerifyOptions opt;  // full desk scale

    // every engine check, grouped afterwards by criterion
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> suite_times;
    for (const char* suite : {"gabor", "povm", "limits", "variance", "ak-equivalence",
                              "short-time", "sampling"}) {
        const auto t0 = clock::now();
        const auto part = akweak::run_verify_suite(suite, opt);
        const double dt = std::chrono::duration<double>(clock::now() - t0).count();
        suite_times.emplace_back(suite, dt);
        checks.insert(checks.end(), part.begin(), part.end());
    }

    const std::vector<Criterion> criteria = {
        {"C01", "Gabor round-trip fidelity >= 1-1e-8 and norm isometry < 1e-6, 3 states",
         {"gabor.roundtrip", "gabor.isometry"}},
        {"C02", "phase-convention consistency < 1e-8 in modulus and phase, 10 pairs",
         {"gabor.phase-convention"}},
        {"C03", "POVM completeness < 1e-3 and Kraus integral scalar, lambda in {0.5,1,2,10}",
         {"povm.identity", "povm.kraus-integral"}},
        {"C04", "closed weak kernel vs defining quadrature < 1e-5, lambda in {0.5,1,2}",
         {"povm.closed-vs-quadrature"}},
        {"C05", "limit behavior: fidelity >= 0.999 at lambda 1e3 (strong) and 1e-3 (identity)",
         {"limits."}},
        {"C06", "variance laws: strong, weak ladder, and the feeble asymptote",
         {"variance."}},
        {"C07", "strong collapse universality at tau=1, two inputs, fidelity >= 1-1e-4",
         {"ak.collapse"}},
        {"C08", "weak operator equals the broadened-detector protocol, fidelity >= 1-1e-6",
         {"ak.kraus-protocol"}},
        {"C09", "disentangling: Richardson ratio 4 +- 25 percent and fidelity >= 0.999",
         {"ak.disentangle"}},
        {"C10", "short-time law: fourfold error drop as tau halves; shift means tau*<x>, tau*<p>",
         {"short-time."}},
        {"C11", "sampling: chi-square p > 0.001 on coarse bins, means within 3 sigma/sqrt(N)",
         {"sampling."}},
    };

    int failed_criteria = 0;
    for (const auto& c : criteria) {
        int total = 0, passed = 0;
        std::string failures;
        for (const auto& chk : checks) {
            bool mine = false;
            for (const auto& p : c.prefixes) mine |= starts_with(chk.name, p);
            if (!mine) continue;
            ++total;
            if (chk.pass) {
                ++passed;
            } else {
                failures += "\n       " + chk.name + ": value=" + std::to_string(chk.value) +
                            " tol=" + std::to_string(chk.tolerance) +
                            (chk.detail.empty() ? "" : "  [" + chk.detail + "]");
            }
        }
        const bool ok = total > 0 && passed == total;
        failed_criteria += ok ? 0 : 1;
        std::printf("[%s] %s: %s (%d/%d checks)%s\n", ok ? "PASS" : "FAIL", c.label,
                    c.description, passed, total, failures.c_str());
    }

    std::printf("---\n");
    double total_time = 0.0;
    for (const auto& [suite, dt] : suite_times) {
        std::printf("suite %-16s %6.1f s\n", suite.c_str(), dt);
        total_time += dt;
    }
    std::printf("total %23.1f s\n", total_time);
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed_criteria,
                criteria.size());
    return failed_criteria;
}
