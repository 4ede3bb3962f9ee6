#pragma once

#include "elbp/moments.hpp"
#include "oracles.hpp"

namespace fx {

using elbp::cplx;

inline const cplx kAlpha{-0.23, -0.37};
inline const cplx kBeta{0.41, -0.12};
inline const cplx kGamma{0.15, 0.05};
inline constexpr double kW = 0.31;

inline elbp::ModelParams params(cplx alpha = kAlpha, cplx beta = kBeta, cplx gamma = kGamma) {
    return elbp::make_params(elbp::make_lattice(1.0, 0.9), alpha, beta, gamma, kW);
}

inline const oracle::Lat& olat() {
    static const oracle::Lat L = oracle::make_lat(1.0, 0.9);
    return L;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double rel_vec(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return oracle::max_abs_diff(a, b) / std::max(oracle::max_abs(b), 1e-300);
}

// c_n for n in [-N, N] from the oracle, stored at offset N.
inline std::vector<cplx> oracle_moments(const elbp::ModelParams& p, int N) {
    std::vector<cplx> c;
    for (int n = -N; n <= N; ++n) c.push_back(oracle::moment(olat(), p.alpha, p.beta, p.gamma, p.w, n));
    return c;
}

}  // namespace fx
