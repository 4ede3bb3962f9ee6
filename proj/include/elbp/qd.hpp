#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "elbp/lbp.hpp"

namespace elbp {

// b_n^{(j)}, d_n^{(j)} for 0 <= n <= nmax and jlo <= j <= jhi; cells outside the
// computed region or downstream of a degenerate division are flagged invalid.
struct QDTableau {
    int nmax = 0, jlo = 0, jhi = -1;
    std::vector<cplx> d, b;
    std::vector<char> valid_d, valid_b;
    std::vector<double> cond;  // estimated condition of the determinants behind each cell, 0 if unknown
    std::vector<std::pair<int, int>> degenerate;  // (n, j) where a division was refused

    QDTableau() = default;
    QDTableau(int nmax_, int jlo_, int jhi_);

    bool in_range(int n, int j) const { return n >= 0 && n <= nmax && j >= jlo && j <= jhi; }
    std::size_t idx(int n, int j) const { return std::size_t(n) * std::size_t(jhi - jlo + 1) + std::size_t(j - jlo); }
    bool ok_d(int n, int j) const { return in_range(n, j) && valid_d[idx(n, j)]; }
    bool ok_b(int n, int j) const { return in_range(n, j) && valid_b[idx(n, j)]; }
    cplx D(int n, int j) const;
    cplx B(int n, int j) const;
    void set_d(int n, int j, cplx v);
    void set_b(int n, int j, cplx v);
};

// Alternating sweep seeded by d_0^{(j)} = c_{j+1}/c_j and b_0 = 0; cells for
// n <= nmax and j in [jlo, jhi] are reachable, the seed band is wider.
QDTableau qd_sweep_from_moments(const MomentSeq& ms, int nmax, int jlo, int jhi);

// Same cells from the product formulas with alpha -> alpha + j w.
QDTableau qd_closed(const ModelParams& p, int nmax, int jlo, int jhi);

// 1/rcond of Delta_{n+1}^{(j)} and Delta_{n+1}^{(j+1)}, worst of the two, stored in tab.cond.
void qd_condition(const MomentSeq& ms, QDTableau& tab);

struct QDResidual {
    double r1 = 0.0;  // b_n d~_n - d_{n-1} b~_n
    double r2 = 0.0;  // (b~_n - d~_n) - (b_{n+1} - d_n)
    bool valid = false;
};

// Residuals of both relations at (n, j), tilde meaning j+1; relative to the largest entry involved.
QDResidual verify_two_point_qd(const QDTableau& tab, int n, int j);

// d~_n = d_{n-1} (b_{n+1} - d_n) / (b_n - d_{n-1})
cplx qd_transform_d(cplx d_nm1, cplx d_n, cplx b_n, cplx b_np1);

struct OrdinaryQD {
    int nmax = 0, jlo = 0, jhi = -1;
    std::vector<cplx> e, f;
    std::vector<char> valid_e, valid_f;

    bool in_range(int n, int j) const { return n >= 0 && n <= nmax && j >= jlo && j <= jhi; }
    std::size_t idx(int n, int j) const { return std::size_t(n) * std::size_t(jhi - jlo + 1) + std::size_t(j - jlo); }
    bool ok_e(int n, int j) const { return in_range(n, j) && valid_e[idx(n, j)]; }
    bool ok_f(int n, int j) const { return in_range(n, j) && valid_f[idx(n, j)]; }
    cplx E(int n, int j) const;
    cplx F(int n, int j) const;
};

// f_n^{(j)} = b_n^{(j+n-1)}, e_n^{(j)} = b_n^{(j+n)} - d_n^{(j+n)}
OrdinaryQD to_ordinary_qd(const QDTableau& tab);

// e_{n-1}^{(j+1)} f_n^{(j+1)} - e_n^{(j)} f_n^{(j)} and e_n^{(j+1)} + f_n^{(j+1)} - e_n^{(j)} - f_{n+1}^{(j)}
QDResidual verify_rutishauser(const OrdinaryQD& q, int n, int j);

// Hankel determinant of c_{j+1+i+k}, 0 <= i,k < n.
DetResult hankel_H(const MomentSeq& ms, int n, int j);

// W_n^{(j)} = P_n^{(j+n)} through the Toeplitz determinant of moments shifted by j+n.
Poly<cplx> hadamard_W_lbp(const MomentSeq& ms, int n, int j);
// Bordered Hankel determinant divided by H_n^{(j)}.
Poly<cplx> hadamard_W_hankel(const MomentSeq& ms, int n, int j);
// W_{n+1} = (z - g_n) W_n - u_n W_{n-1}, g_n = -e_n - f_{n+1}, u_n = e_n f_n.
Poly<cplx> hadamard_W_recurrence(const OrdinaryQD& q, int n, int j);

// A family P_n^{(j)} with its recurrence data, indexed by the shift j.
struct ShiftedFamily {
    std::function<Poly<cplx>(int, int)> P;
    std::function<cplx(int, int)> d, b;
};

ShiftedFamily shifted_family(const ModelParams& p);
ShiftedFamily shifted_family(const MomentSeq& ms);

struct CGResidual {
    double christoffel_P = 0.0;  // P_n^{(j+1)} - P_n^{(j)} - b_n P_{n-1}^{(j)}
    double geronimus_P = 0.0;    // (d_n - b_n) P_n^{(j-1)} - z P_n^{(j)} + P_{n+1}^{(j)}
    double geronimus_W = 0.0;    // W_n^{(j-1)} - W_n^{(j)} + f_n^{(j)} W_{n-1}^{(j)}
    double christoffel_W = 0.0;  // z W_n^{(j+1)} - W_{n+1}^{(j)} + e_n^{(j+1)} W_n^{(j)}
    double max() const;
};

CGResidual christoffel_geronimus_check(const ShiftedFamily& fam, int n, int j);

// Moments c_n(t) = sum_i w_i exp(a_i t) a_i^{-sign n}; sign = +1 gives dc_n/dt = c_{n-1}, sign = -1 gives c_{n+1}.
struct ExpFamily {
    std::vector<cplx> a, weight;
    int sign = 1;
    cplx moment(int n, double t) const;
    MomentSeq moments(double t, int N) const;
};

ExpFamily default_exp_family(int sign);

enum class FlowKind { first, second };

struct FlowResidual {
    double res_d = 0.0;
    double res_b = 0.0;
    double scale = 1.0;  // max(|d_n|, |b_{n+1}|, |rhs|) * rate^3, rate = max |a_i|
    double b0 = 0.0;  // |b_0| along the flow
};

// Central differences of d_n, b_n at t over step dt, minus the flow right-hand side.
FlowResidual rtc_flow_check(FlowKind kind, const ExpFamily& fam, double t, double dt, int n);

}  // namespace elbp
