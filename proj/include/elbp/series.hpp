#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "elbp/lattice.hpp"

namespace elbp {

// Lattice plus the real step w used by elliptic numbers [x] = sigma(wx)/sigma(w).
struct EllNumberCtx {
    Lattice lat;
    double w = 0.0;
    cplx sigma_w;
};

EllNumberCtx make_ctx(const Lattice& lat, double w, int bound = 64);

// Product kept as mantissa * 2^exponent so long elliptic products do not under/overflow.
struct ScaledValue {
    cplx mant{1.0, 0.0};
    long exp2 = 0;

    void mul(cplx x);
    void div(cplx x);
    void mul(const ScaledValue& o);
    void div(const ScaledValue& o);
    cplx value() const;
};

cplx ell_number(const EllNumberCtx& ctx, cplx x);
ScaledValue ell_pochhammer_scaled(const EllNumberCtx& ctx, cplx x, int k);
cplx ell_pochhammer(const EllNumberCtx& ctx, cplx x, int k);
cplx ell_factorial(const EllNumberCtx& ctx, int n);

// Generalized binomial coefficient built from sigma differences of the nodes v.
cplx ell_binomial_general(const Lattice& lat, const std::vector<cplx>& v, int n, int k);

struct E32Params {
    std::array<cplx, 3> a;
    std::array<cplx, 2> b;
};

// Exponent M of the quadratic factor exp(M s(s-1)); exactly zero for balanced parameters.
cplx e3_2_M(const EllNumberCtx& ctx, const E32Params& p);

// Coefficients t_s (without z^s) for s = 0..last.
std::vector<cplx> e3_2_terms(const EllNumberCtx& ctx, const E32Params& p, int last);

// Terminating sum when terminate_n is given (a1 = -n); otherwise nmax bounds the partial sum.
cplx e3_2(const EllNumberCtx& ctx, const E32Params& p, cplx z, std::optional<int> terminate_n,
          std::optional<int> nmax = std::nullopt);

cplx mu_coeff(const EllNumberCtx& ctx, cplx alpha, int n);

// 1/(mu_1 ... mu_s) for s = 0..S.
std::vector<cplx> mu_inverse_factorials(const std::function<cplx(int)>& mu, int S);

struct MuExp {
    cplx E, C, S;
};

// E_mu, C_mu, S_mu truncated at order S (elliptic mu with parameter alpha).
MuExp mu_exponential(const EllNumberCtx& ctx, cplx alpha, cplx x, int S);
MuExp mu_exponential(const std::vector<cplx>& inv_fact, cplx x);
// Coefficients of E_mu through order S.
std::vector<cplx> mu_exponential_coeffs(const EllNumberCtx& ctx, cplx alpha, int S);

enum class CnDn { cn, dn };

struct GenFnCoeffs {
    std::vector<cplx> even_part;  // multiplies C_mu(zt)
    std::vector<cplx> odd_part;   // multiplies S_mu(zt)
    std::vector<cplx> inv_fact;   // 1/(mu'_1...mu'_n), mu'_n = sn(wn)/sn(w)
};

// For the cn family returns (xi0, xi1); for the dn family (eta0, eta1) = (xi1, xi0).
GenFnCoeffs generating_fn_coeffs(const Lattice& lat, double w, CnDn family, int S);

// Double sum assembled from the coefficients, truncated at t-degree S.
cplx assemble_generating_fn(const GenFnCoeffs& g, cplx z, cplx t, int S);

}  // namespace elbp
