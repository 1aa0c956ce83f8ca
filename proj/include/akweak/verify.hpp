#pragma once

#include <string>
#include <vector>

#include "akweak/state.hpp"

namespace akweak {

// One verification check: value measured against a fixed tolerance.
// Comparison direction depends on the check (deviations must be below
// tolerance, fidelities above a floor); `pass` is authoritative.
struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    double b = 1.0;
    // When >= 0, restrict lambda sweeps to this single value.
    double lambda_override = -1.0;
    // Smaller grids for interactive runs; the defaults match the acceptance
    // suite.
    bool quick = false;
};

std::vector<Check> verify_gabor(const VerifyOptions& opt = {});
std::vector<Check> verify_povm(const VerifyOptions& opt = {});
std::vector<Check> verify_limits(const VerifyOptions& opt = {});
std::vector<Check> verify_variance(const VerifyOptions& opt = {});
std::vector<Check> verify_ak_equivalence(const VerifyOptions& opt = {});
std::vector<Check> verify_short_time(const VerifyOptions& opt = {});
std::vector<Check> verify_sampling(const VerifyOptions& opt = {});

// suite in {all, gabor, povm, limits, variance, ak-equivalence, short-time,
// sampling}; throws std::invalid_argument for unknown names.
std::vector<Check> run_verify_suite(const std::string& suite, const VerifyOptions& opt = {});

bool all_pass(const std::vector<Check>& checks);

// Survival function of the chi-square distribution (regularized upper
// incomplete gamma), used by the sampling goodness-of-fit check.
double chi_square_sf(double chi2, int dof);

}  // namespace akweak
