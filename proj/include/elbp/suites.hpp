#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elbp/moments.hpp"
#include "elbp/report.hpp"

namespace elbp {

struct VerifyConfig {
    double omega1 = 1.0;
    double omega3_imag = 0.9;
    cplx alpha{-0.23, -0.37};
    cplx beta{0.41, -0.12};
    cplx gamma{0.15, 0.05};
    double w = 0.31;
    int j = 1;
    int m = 0;
    int nmax = 6;
    int S = 0;  // 0: chosen from the tail bound
    int panels = 1024;
    std::optional<double> tol;  // replaces every floating tolerance
    bool exact = false;
};

ModelParams model_params(const VerifyConfig& cfg);

const std::vector<std::string>& suite_names();

// Runs one suite ("all" runs every suite); checks execute concurrently, rows come back sorted by name.
Report run_suite(const std::string& suite, const VerifyConfig& cfg);

}  // namespace elbp
