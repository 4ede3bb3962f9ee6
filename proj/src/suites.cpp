#include "elbp/suites.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <random>

#include "elbp/lbp.hpp"
#include "elbp/qd.hpp"
#include "elbp/rational.hpp"
#include "elbp/spectral.hpp"

namespace elbp {

namespace {

using Rows = std::vector<CheckRow>;

struct Check {
    std::string name;
    std::string anchor;
    std::function<Rows()> run;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Portable uniform draws: the mapping from mt19937_64 output is fixed here, not left to the library.
struct Draws {
    std::mt19937_64 g;
    explicit Draws(std::uint64_t seed) : g(seed) {}
    double uni(double a, double b) { return a + (b - a) * double(g() >> 11) * 0x1.0p-53; }
    cplx box(double r) {
        double x = uni(-r, r);
        return {x, uni(-r, r)};
    }
};

Rows one(CheckRow r) { return Rows{std::move(r)}; }

// ---------------------------------------------------------------- core

std::vector<Check> core_checks(const VerifyConfig& cfg) {
    std::vector<Check> cs;
    Lattice L = make_lattice(cfg.omega1, cfg.omega3_imag);
    ModelParams p = model_params(cfg);
    int nmax = cfg.nmax;

    cs.push_back({"core.legendre", "eta1 omega3 - eta3 omega1 = i pi/2", [L] {
                      return one(make_row("core.legendre", std::abs(legendre_residual(L)), 1e-12,
                                          "eta1 omega3 - eta3 omega1 = i pi/2"));
                  }});

    cs.push_back({"core.sigma_quasi_periodicity", "sigma(z + 2 omega_k) = -exp(2 eta_k (z + omega_k)) sigma(z)", [L] {
                      const std::string a = "sigma(z + 2 omega_k) = -exp(2 eta_k (z + omega_k)) sigma(z)";
                      double e1 = 0, e3 = 0;
                      for (cplx z : {cplx(0.4, 0.2), cplx(-0.3, 0.55), cplx(0.71, -0.33), cplx(0.05, 0.8)}) {
                          cplx w1 = L.omega1, w3 = L.omega3;
                          e1 = std::max(e1, rel(-std::exp(2.0 * L.eta1 * (z + w1)) * sigma(L, z), sigma(L, z + 2.0 * w1)));
                          e3 = std::max(e3, rel(-std::exp(2.0 * L.eta3 * (z + w3)) * sigma(L, z), sigma(L, z + 2.0 * w3)));
                      }
                      return Rows{make_row("core.sigma_quasi_periodicity.omega1", e1, 1e-12, a),
                                  make_row("core.sigma_quasi_periodicity.omega3", e3, 1e-12, a)};
                  }});

    cs.push_back({"core.ell_binomial_linear", "[n k] = [n]!/([k]! [n-k]!) for v_i = w i + xi", [L, p] {
                      EllNumberCtx ctx = ctx_of(p);
                      std::vector<cplx> v;
                      cplx xi(0.13, 0.07);
                      for (int i = 0; i <= 8; ++i) v.push_back(p.w * double(i) + xi);
                      double e = 0;
                      for (int n = 0; n <= 8; ++n)
                          for (int k = 0; k <= n; ++k) {
                              cplx ref = ell_factorial(ctx, n) / (ell_factorial(ctx, k) * ell_factorial(ctx, n - k));
                              e = std::max(e, rel(ell_binomial_general(L, v, n, k), ref));
                          }
                      return one(make_row("core.ell_binomial_linear", e, 1e-10,
                                          "[n k] = [n]!/([k]! [n-k]!) for v_i = w i + xi"));
                  }});

    cs.push_back({"core.mu_exponential", "D E_mu = E_mu, C_mu + S_mu = E_mu", [p] {
                      EllNumberCtx ctx = ctx_of(p);
                      const int S = 10;
                      auto e = mu_exponential_coeffs(ctx, p.alpha, S);
                      Poly<cplx> E(e);
                      Poly<cplx> DE = d_operator_apply(ctx, p.alpha, E);
                      Poly<cplx> Et(std::vector<cplx>(e.begin(), e.end() - 1));
                      double par = 0;
                      for (cplx x : {cplx(0.3, 0.1), cplx(-0.2, 0.25), cplx(0.0, -0.35)}) {
                          MuExp m = mu_exponential(ctx, p.alpha, x, S);
                          par = std::max(par, rel(m.C + m.S, m.E));
                      }
                      return Rows{make_row("core.mu_exponential.d_invariance", rel_diff(DE, Et), 1e-12, "D E_mu(x) = E_mu(x)"),
                                  make_row("core.mu_exponential.parity", par, 1e-14,
                                           "C_mu(x) + S_mu(x) = E_mu(x)")};
                  }});

    cs.push_back({"core.d_classical", "D P_n(z; alpha, beta) = mu_n P_{n-1}(z; alpha, beta + alpha)", [p, nmax] {
                      EllNumberCtx ctx = ctx_of(p);
                      double e1 = 0, e3 = 0;
                      for (int n = 1; n <= nmax; ++n) {
                          Poly<cplx> lhs = d_operator_apply(ctx, p.alpha, closed_P_3E2(p, n));
                          Poly<cplx> rhs = mu_coeff(ctx, p.alpha, n) * closed_P_3E2(with_beta(p, p.beta + p.alpha), n - 1);
                          e1 = std::max(e1, rel_diff(lhs, rhs));
                      }
                      for (int m = 1; m <= 3; ++m)
                          for (int n = m; n <= nmax; ++n) {
                              Poly<cplx> lhs = closed_P_3E2(p, n);
                              cplx mu = 1.0;
                              for (int i = 0; i < m; ++i) {
                                  lhs = d_operator_apply(ctx, p.alpha, lhs);
                                  mu *= mu_coeff(ctx, p.alpha, n - i);
                              }
                              Poly<cplx> rhs = mu * closed_P_3E2(with_beta(p, p.beta + double(m) * p.alpha), n - m);
                              e3 = std::max(e3, rel_diff(lhs, rhs));
                          }
                      return Rows{make_row("core.d_classical.single", e1, 1e-9,
                                           "D P_n(z; alpha, beta) = mu_n P_{n-1}(z; alpha, beta + alpha)"),
                                  make_row("core.d_classical.iterated", e3, 1e-9,
                                           "D^m P_n = mu_n ... mu_{n-m+1} P_{n-m}(z; alpha, beta + m alpha), m <= 3")};
                  }});

    cs.push_back({"core.generating_function", "F(z;t) = xi0(t) C_mu(zt) + xi1(t) S_mu(zt) = sum t^n P_n(z)/(mu_1...mu_n)",
                  [L, p] {
                      const std::string a = "F(z;t) = xi0(t) C_mu(zt) + xi1(t) S_mu(zt) = sum t^n P_n(z)/(mu_1...mu_n)";
                      const int S = 6;
                      Rows rows;
                      for (CnDn fam : {CnDn::cn, CnDn::dn}) {
                          GenFnCoeffs g = generating_fn_coeffs(L, p.w, fam, S);
                          ModelParams fp = fam == CnDn::cn ? cn_params(L, p.w) : dn_params(L, p.w);
                          std::vector<Poly<cplx>> P;
                          for (int n = 0; n <= S; ++n) P.push_back(closed_P_3E2(fp, n));
                          Draws rng(fam == CnDn::cn ? 11 : 12);
                          double e = 0;
                          for (int k = 0; k < 10; ++k) {
                              cplx z = rng.box(0.2), t = rng.box(0.2);
                              std::vector<cplx> terms;
                              for (int n = 0; n <= S; ++n) terms.push_back(std::pow(t, n) * g.inv_fact[n] * P[n](z));
                              cplx direct = pairwise_sum(terms);
                              e = std::max(e, rel(assemble_generating_fn(g, z, t, S), direct));
                          }
                          rows.push_back(make_row(std::string("core.generating_function.") + (fam == CnDn::cn ? "cn" : "dn"),
                                                  e, 1e-10, a));
                      }
                      return rows;
                  }});
    return cs;
}

// ---------------------------------------------------------------- determinants and polynomial routes

std::vector<Check> determinant_checks(const VerifyConfig& cfg) {
    std::vector<Check> cs;
    ModelParams p = model_params(cfg);
    int nmax = cfg.nmax;

    cs.push_back({"det.frobenius_vs_lu", "H_n = sigma(U+V+beta) prod sigma(u_i-u_j) sigma(v_i-v_j) / (sigma(beta) prod sigma(u_i+v_j)) e^{gamma1 U + gamma2 V}",
                  [p, nmax] {
                      Draws rng(2024);
                      double e = 0;
                      for (int draw = 0; draw < 30; ++draw) {
                          int n = 1 + draw % std::max(nmax, 1);
                          std::vector<cplx> u(n), v(n);
                          for (auto& x : u) x = rng.box(0.7);
                          for (auto& x : v) x = rng.box(0.7);
                          cplx beta = rng.box(0.6), g1 = rng.box(0.3), g2 = rng.box(0.3);
                          cplx closed = frobenius_H(p.lat, u, v, beta, g1, g2, n);
                          DetResult lu = lu_det(frobenius_matrix(p.lat, u, v, beta, g1, g2, n));
                          e = std::max(e, rel(closed, lu.value));
                      }
                      return one(make_row("det.frobenius_vs_lu", e, 1e-8,
                                          "H_n = sigma(U+V+beta) prod sigma(u_i-u_j) sigma(v_i-v_j) / (sigma(beta) prod sigma(u_i+v_j)) e^{gamma1 U + gamma2 V}",
                                          Cmp::le, "30 draws"));
                  }});

    cs.push_back({"det.frobenius_toeplitz", "u_i = alpha - i w, v_k = k w: H_n = Delta_n", [p] {
                      MomentSeq ms = elliptic_moments(p, 12);
                      double e = 0;
                      for (int n = 1; n <= 4; ++n) {
                          std::vector<cplx> u(n), v(n);
                          for (int i = 0; i < n; ++i) {
                              u[i] = p.alpha - p.w * double(i);
                              v[i] = p.w * double(i);
                          }
                          e = std::max(e, rel(frobenius_H(p.lat, u, v, p.beta, p.gamma, p.gamma, n), toeplitz_delta(ms, n)));
                      }
                      return one(make_row("det.frobenius_toeplitz", e, 1e-9, "u_i = alpha - i w, v_k = k w: H_n = Delta_n"));
                  }});

    cs.push_back({"det.jacobi_identity", "Delta_{n+1}^{(j)} Delta_{n-1}^{(j)} = (Delta_n^{(j)})^2 - Delta_n^{(j+1)} Delta_n^{(j-1)}",
                  [p, nmax] {
                      MomentSeq ms = elliptic_moments(p, 2 * nmax + 6);
                      double e = 0;
                      for (int j = -1; j <= 1; ++j)
                          for (int n = 1; n <= nmax; ++n) {
                              cplx lhs = toeplitz_delta(ms, n + 1, j) * toeplitz_delta(ms, n - 1, j);
                              cplx t1 = toeplitz_delta(ms, n, j) * toeplitz_delta(ms, n, j);
                              cplx t2 = toeplitz_delta(ms, n, j + 1) * toeplitz_delta(ms, n, j - 1);
                              double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
                              e = std::max(e, std::abs(lhs - (t1 - t2)) / scale);
                          }
                      return one(make_row("det.jacobi_identity", e, 1e-9,
                                          "Delta_{n+1}^{(j)} Delta_{n-1}^{(j)} = (Delta_n^{(j)})^2 - Delta_n^{(j+1)} Delta_n^{(j-1)}"));
                  }});

    cs.push_back({"det.shift_law", "Delta_n^{(j)}(alpha) = Delta_n(alpha + j w)", [p, nmax] {
                      MomentSeq ms = elliptic_moments(p, nmax + 6);
                      double e = 0;
                      int vanished = 0;
                      for (int j = -2; j <= 3; ++j) {
                          MomentSeq mj = elliptic_moments(with_alpha(p, p.alpha + p.w * double(j)), nmax + 1);
                          double cmax = 0;
                          for (int i = -nmax; i <= nmax; ++i) cmax = std::max(cmax, std::abs(mj[i]));
                          for (int n = 1; n <= nmax; ++n) {
                              cplx b = toeplitz_delta(mj, n, 0);
                              // a vanishing determinant has no relative error to speak of
                              if (std::abs(b) < 1e-12 * std::pow(cmax, n)) {
                                  ++vanished;
                                  continue;
                              }
                              e = std::max(e, rel(toeplitz_delta(ms, n, j), b));
                          }
                      }
                      if (vanished == 6 * nmax) throw DegenerateError("det.shift_law: every determinant vanishes");
                      return one(make_row("det.shift_law", e, 1e-9, "Delta_n^{(j)}(alpha) = Delta_n(alpha + j w)", Cmp::le,
                                          vanished ? std::to_string(vanished) + " vanishing determinants skipped" : ""));
                  }});

    cs.push_back({"det.compressed_difference", "d_n - b_n = Delta_{n+1}^{(1)} Delta_n^{(-1)} / (Delta_{n+1} Delta_n)",
                  [p, nmax] {
                      MomentSeq ms = elliptic_moments(p, nmax + 4);
                      double e = 0;
                      for (int n = 0; n <= nmax; ++n) {
                          cplx lhs = closed_d(p, n) - closed_b(p, n);
                          cplx rhs = toeplitz_delta(ms, n + 1, 1) * toeplitz_delta(ms, n, -1) /
                                     (toeplitz_delta(ms, n + 1, 0) * toeplitz_delta(ms, n, 0));
                          e = std::max(e, rel(rhs, lhs));
                      }
                      return one(make_row("det.compressed_difference", e, 1e-9,
                                          "d_n - b_n = Delta_{n+1}^{(1)} Delta_n^{(-1)} / (Delta_{n+1} Delta_n)"));
                  }});

    cs.push_back({"det.norm_h", "h_n = Delta_{n+1}/Delta_n = closed product = prod b_i/d_i h_0", [p, nmax] {
                      MomentSeq ms = elliptic_moments(p, nmax + 4);
                      double e1 = 0, e2 = 0;
                      cplx prod = ms[0];
                      for (int n = 0; n <= nmax; ++n) {
                          if (n > 0) prod *= closed_b(p, n) / closed_d(p, n);
                          e1 = std::max(e1, rel(norm_h(ms, n), h_closed(p, n)));
                          e2 = std::max(e2, rel(prod, h_closed(p, n)));
                      }
                      return Rows{make_row("det.norm_h.closed", e1, 1e-9, "h_n = Delta_{n+1}/Delta_n, closed product form"),
                                  make_row("det.norm_h.product", e2, 1e-9, "h_n = h_0 prod_{i<=n} b_i/d_i")};
                  }});

    cs.push_back({"lbp.triple_route", "det P_n = recurrence P_n = B_n 3E2(-n, a+1, -(a+1)n-b+1; a+1-n, -(a+1)n-b; z e^{-gamma w})",
                  [p] {
                      const int N = 8;
                      MomentSeq ms = elliptic_moments(p, N + 4);
                      auto fam = recurrence_family(closed_coeffs(p, N + 1), N);
                      double e1 = 0, e2 = 0, worst_cond = 1;
                      for (int n = 0; n <= N; ++n) {
                          Poly<cplx> c = closed_P_3E2(p, n);
                          e1 = std::max(e1, rel_diff(det_poly_P(ms, n), c));
                          e2 = std::max(e2, rel_diff(fam[n], c));
                          if (n > 0) worst_cond = std::max(worst_cond, 1.0 / toeplitz_delta_ex(ms, n, 0).rcond);
                      }
                      double tol = std::max(1e-8, worst_cond * 1e-15);
                      return Rows{make_row("lbp.triple_route.determinant", e1, tol, "P_n(z) = Delta_n^{-1} bordered Toeplitz determinant",
                                           Cmp::le, "n <= 8"),
                                  make_row("lbp.triple_route.recurrence", e2, 1e-8, "P_{n+1}(z) + (d_n - z) P_n(z) = z b_n P_{n-1}(z)",
                                           Cmp::le, "n <= 8")};
                  }});

    cs.push_back({"lbp.coeffs_from_moments", "d_n = T_{n+1} Delta_n/(T_n Delta_{n+1}), b_n = T_{n+1} Delta_{n-1}/(T_n Delta_n)",
                  [p, nmax] {
                      MomentSeq ms = elliptic_moments(p, nmax + 4);
                      RecurrenceCoeffs a = coeffs_from_moments(ms, nmax), c = closed_coeffs(p, nmax);
                      double e = 0, e0 = 0;
                      for (int n = 0; n <= nmax; ++n) {
                          e = std::max(e, rel(a.d[n], c.d[n]));
                          if (n > 0) e = std::max(e, rel(a.b[n], c.b[n]));
                      }
                      auto fam = recurrence_family(c, nmax + 1);
                      for (int n = 0; n <= nmax; ++n) e0 = std::max(e0, rel(-fam[n + 1].c[0] / fam[n].c[0], c.d[n]));
                      return Rows{make_row("lbp.coeffs_from_moments", e, 1e-9,
                                           "d_n = T_{n+1} Delta_n/(T_n Delta_{n+1}), b_n = T_{n+1} Delta_{n-1}/(T_n Delta_n)"),
                                  make_row("lbp.d_from_constant_terms", e0, 1e-10, "d_n = -P_{n+1}(0)/P_n(0)")};
                  }});

    cs.push_back({"lbp.partner", "Q_n = (z^n P_{n+1}(1/z) - z^{n-1} P_n(1/z))/P_{n+1}(0); Q_n from reflected (alpha, beta, gamma)",
                  [p, nmax] {
                      MomentSeq ms = elliptic_moments(p, nmax + 4);
                      auto fam = recurrence_family(closed_coeffs(p, nmax + 1), nmax + 1);
                      double e1 = 0, e2 = 0;
                      for (int n = 0; n <= nmax; ++n) {
                          Poly<cplx> dq = det_poly_Q(ms, n);
                          e1 = std::max(e1, rel_diff(partner_Q(fam, n), dq));
                          e2 = std::max(e2, rel_diff(closed_Q_3E2(p, n), dq));
                      }
                      return Rows{make_row("lbp.partner.from_P", e1, 1e-9,
                                           "Q_n = (z^n P_{n+1}(1/z) - z^{n-1} P_n(1/z))/P_{n+1}(0)"),
                                  make_row("lbp.partner.reflected_closed_form", e2, 1e-9,
                                           "Q_n = P_n with (alpha, beta, gamma) -> (-alpha, -beta, -gamma)")};
                  }});

    cs.push_back({"lbp.baxter", "P_{n+1} = z P_n - e1_n Q*_n, Q_{n+1} = z Q_n - e2_n P*_n", [p, nmax] {
                      auto fam = recurrence_family(closed_coeffs(p, nmax + 2), nmax + 1);
                      std::vector<Poly<cplx>> Q;
                      for (int n = 0; n <= nmax + 1; ++n) Q.push_back(closed_Q_3E2(p, n));
                      RecurrenceCoeffs c = closed_coeffs(p, nmax);
                      double r = 0, eb = 0;
                      std::vector<BaxterStep> st;
                      for (int n = 0; n < nmax; ++n) {
                          st.push_back(baxter_coeffs(fam, Q, n));
                          r = std::max({r, st.back().residual_P, st.back().residual_Q});
                      }
                      for (int n = 1; n < nmax; ++n) {
                          cplx ratio = st[n].e1 / st[n - 1].e1;
                          eb = std::max(eb, rel(-ratio, c.d[n]));
                          eb = std::max(eb, rel(-ratio * (1.0 - st[n - 1].e1 * st[n - 1].e2), c.b[n]));
                      }
                      return Rows{make_row("lbp.baxter.recurrences", r, 1e-10, "P_{n+1} = z P_n - e1_n Q*_n, Q_{n+1} = z Q_n - e2_n P*_n"),
                                  make_row("lbp.baxter.coefficients", eb, 1e-9,
                                           "d_n = -e1_n/e1_{n-1}, b_n = -(e1_n/e1_{n-1})(1 - e1_{n-1} e2_{n-1})")};
                  }});

    cs.push_back({"lbp.rescale", "c~_n = q^n c_n: d~_n = q d_n, b~_n = q b_n, h~_n = h_n", [p, nmax] {
                      cplx q(2.0, 0.0);
                      MomentSeq ms = elliptic_moments(p, nmax + 4);
                      MomentSeq mq = scaled_geometric(ms, q);
                      RecurrenceCoeffs a = coeffs_from_moments(mq, nmax), c = rescale_coeffs(coeffs_from_moments(ms, nmax), q);
                      double e = 0, eh = 0, ep = 0;
                      for (int n = 0; n <= nmax; ++n) {
                          e = std::max(e, rel(a.d[n], c.d[n]));
                          if (n > 0) e = std::max(e, rel(a.b[n], c.b[n]));
                          eh = std::max(eh, rel(norm_h(mq, n), norm_h(ms, n)));
                          ep = std::max(ep, rel_diff(det_poly_P(mq, n), rescale_P(det_poly_P(ms, n), q)));
                      }
                      return Rows{make_row("lbp.rescale.coefficients", e, 1e-9, "d~_n = q d_n, b~_n = q b_n"),
                                  make_row("lbp.rescale.norms", eh, 1e-9, "h~_n = h_n"),
                                  make_row("lbp.rescale.polynomials", ep, 1e-9, "P~_n(z) = q^n P_n(z/q)")};
                  }});
    return cs;
}

// ---------------------------------------------------------------- QD and flows

std::vector<Check> qd_checks(const VerifyConfig& cfg) {
    std::vector<Check> cs;
    ModelParams p = model_params(cfg);
    int nmax = cfg.nmax;

    cs.push_back({"qd.sweep_vs_closed", "d_0^{(j)} = c_{j+1}/c_j; sweep cells = closed d_n, b_n at alpha + j w", [p, nmax] {
                      MomentSeq ms = elliptic_moments(p, 2 * nmax + 12);
                      QDTableau sw = qd_sweep_from_moments(ms, nmax, -3, 3);
                      QDTableau cl = qd_closed(p, nmax, -3, 3);
                      qd_condition(ms, sw);
                      double e = 0;
                      int used = 0, skipped = 0;
                      for (int n = 0; n <= nmax; ++n)
                          for (int j = -3; j <= 3; ++j) {
                              if (!sw.ok_d(n, j) || !cl.ok_d(n, j) || sw.cond[sw.idx(n, j)] >= 1e6) {
                                  ++skipped;
                                  continue;
                              }
                              ++used;
                              e = std::max(e, rel(sw.D(n, j), cl.D(n, j)));
                              if (n > 0 && sw.ok_b(n, j) && cl.ok_b(n, j)) e = std::max(e, rel(sw.B(n, j), cl.B(n, j)));
                          }
                      if (used == 0) throw DegenerateError("qd.sweep_vs_closed: no comparable cells");
                      return one(make_row("qd.sweep_vs_closed", e, 1e-8,
                                          "d_0^{(j)} = c_{j+1}/c_j; sweep cells = closed d_n, b_n at alpha + j w", Cmp::le,
                                          std::to_string(used) + " cells compared, " + std::to_string(skipped) +
                                              " above condition 1e6"));
                  }});

    cs.push_back({"qd.relations", "b_n d~_n = d_{n-1} b~_n, b~_n - d~_n = b_{n+1} - d_n; Rutishauser e,f relations",
                  [p] {
                      QDTableau cl = qd_closed(p, 7, -8, 8);
                      OrdinaryQD oq = to_ordinary_qd(cl);
                      double r1 = 0, r2 = 0, q1 = 0, q2 = 0;
                      for (int n = 0; n <= 5; ++n)
                          for (int j = -3; j <= 3; ++j) {
                              QDResidual a = verify_two_point_qd(cl, n, j);
                              if (a.valid) {
                                  r1 = std::max(r1, a.r1);
                                  r2 = std::max(r2, a.r2);
                              }
                              QDResidual b = verify_rutishauser(oq, n, j);
                              if (b.valid) {
                                  q1 = std::max(q1, b.r1);
                                  q2 = std::max(q2, b.r2);
                              }
                          }
                      return Rows{make_row("qd.relations.two_point_product", r1, 1e-10, "b_n d~_n = d_{n-1} b~_n"),
                                  make_row("qd.relations.two_point_sum", r2, 1e-10, "b~_n - d~_n = b_{n+1} - d_n"),
                                  make_row("qd.relations.rutishauser_product", q1, 1e-10,
                                           "e_{n-1}^{(j+1)} f_n^{(j+1)} = e_n^{(j)} f_n^{(j)}"),
                                  make_row("qd.relations.rutishauser_sum", q2, 1e-10,
                                           "e_n^{(j+1)} + f_n^{(j+1)} = e_n^{(j)} + f_{n+1}^{(j)}")};
                  }});

    cs.push_back({"qd.christoffel_geronimus", "P_n^{(j+1)} = P_n^{(j)} + b_n P_{n-1}^{(j)} and companions", [p] {
                      ShiftedFamily fam = shifted_family(p);
                      double e = 0;
                      for (int j = -1; j <= 1; ++j)
                          for (int n = 1; n <= 5; ++n) e = std::max(e, christoffel_geronimus_check(fam, n, j).max());
                      return one(make_row("qd.christoffel_geronimus", e, 1e-9,
                                          "P_n^{(j+1)} = P_n^{(j)} + b_n P_{n-1}^{(j)}; (d_n - b_n) P_n^{(j-1)} = z P_n^{(j)} - P_{n+1}^{(j)}; "
                                          "W_n^{(j-1)} = W_n^{(j)} - f_n W_{n-1}^{(j)}; z W_n^{(j+1)} = W_{n+1}^{(j)} - e_n^{(j+1)} W_n^{(j)}"));
                  }});

    cs.push_back({"qd.hadamard", "W_n^{(j)} = P_n^{(j+n)}; H_n^{(j)} = (-1)^{n(n-1)/2} Delta_n^{(n+j)}", [p] {
                      MomentSeq ms = elliptic_moments(p, 24);
                      OrdinaryQD oq = to_ordinary_qd(qd_closed(p, 7, -8, 8));
                      double e = 0, eh = 0;
                      for (int j = -1; j <= 1; ++j)
                          for (int n = 1; n <= 4; ++n) {
                              Poly<cplx> a = hadamard_W_lbp(ms, n, j);
                              e = std::max({e, rel_diff(a, hadamard_W_hankel(ms, n, j)), rel_diff(a, hadamard_W_recurrence(oq, n, j)),
                                            rel_diff(a, closed_P_3E2(with_alpha(p, p.alpha + p.w * double(j + n)), n))});
                              double sgn = ((n * (n - 1) / 2) % 2) ? -1.0 : 1.0;
                              eh = std::max(eh, rel(hankel_H(ms, n, j).value, sgn * toeplitz_delta(ms, n, n + j)));
                          }
                      return Rows{make_row("qd.hadamard.routes", e, 1e-8, "W_n^{(j)} = P_n^{(j+n)}"),
                                  make_row("qd.hadamard.hankel_sign", eh, 1e-9, "H_n^{(j)} = (-1)^{n(n-1)/2} Delta_n^{(n+j)}")};
                  }});

    cs.push_back({"qd.rational_tableau", "rational moments: sweep cells = rational closed d_n, b_n at alpha + j", [cfg] {
                      RatParams<cplx> rp{cfg.alpha, cfg.beta, false, 0};
                      MomentSeq ms = rat_moments(rp, 30);
                      QDTableau sw = qd_sweep_from_moments(ms, 4, -2, 2);
                      double e = 0;
                      for (int n = 0; n <= 4; ++n)
                          for (int j = -2; j <= 2; ++j) {
                              if (!sw.ok_d(n, j)) continue;
                              cplx a = cfg.alpha + double(j);
                              e = std::max(e, rel(sw.D(n, j), rat_closed_d(a, cfg.beta, n)));
                              if (n > 0 && sw.ok_b(n, j)) e = std::max(e, rel(sw.B(n, j), rat_closed_b(a, cfg.beta, n)));
                          }
                      return one(make_row("qd.rational_tableau", e, 1e-8,
                                          "rational moments: sweep cells = rational closed d_n, b_n at alpha + j"));
                  }});

    cs.push_back({"qd.flows", "relativistic Toda flows: central-difference residual ratio under dt/4", [] {
                      Rows rows;
                      for (FlowKind k : {FlowKind::first, FlowKind::second}) {
                          ExpFamily fam = default_exp_family(k == FlowKind::first ? 1 : -1);
                          std::string tag = k == FlowKind::first ? "first" : "second";
                          double ratio = 1e300, mag = 0, b0 = 0;
                          for (int n = 0; n <= 2; ++n) {
                              FlowResidual a = rtc_flow_check(k, fam, 0.3, 1e-3, n);
                              FlowResidual b = rtc_flow_check(k, fam, 0.3, 2.5e-4, n);
                              ratio = std::min(ratio, (a.res_d + a.res_b) / (b.res_d + b.res_b));
                              if (n == 2) mag = (a.res_d + a.res_b) / (1e-6 * a.scale);
                              b0 = std::max({b0, a.b0, b.b0});
                          }
                          rows.push_back(make_row("qd.flows." + tag + ".order_ratio", ratio, 3.5,
                                                  "residual(dt)/residual(dt/4) for the " + tag + " flow, n <= 2", Cmp::ge));
                          rows.push_back(make_row("qd.flows." + tag + ".magnitude", mag, 10.0,
                                                  "flow residual / (dt^2 scale) at dt = 1e-3, n = 2, scale = max(|d_n|, |b_{n+1}|, |rhs|) max|a_i|^3", Cmp::le));
                          rows.push_back(make_row("qd.flows." + tag + ".b0", b0, 0.0, "b_0 = 0 along the flow", Cmp::exact_zero));
                      }
                      return rows;
                  }});
    return cs;
}

// ---------------------------------------------------------------- spectral

std::vector<Check> spectral_checks(const VerifyConfig& cfg) {
    std::vector<Check> cs;
    Lattice L = make_lattice(cfg.omega1, cfg.omega3_imag);
    int panels = cfg.panels;
    auto periodic = [L, cfg](int j, int m) {
        return make_params(L, cfg.alpha, cfg.beta, periodic_gamma(L, cfg.beta, j, m), cfg.w, j, m);
    };

    cs.push_back({"spectral.fourier", "A_n closed form vs trapezoid over one period", [periodic, panels] {
                      double e = 0, off = 0, strip = 0;
                      for (auto [j, m] : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {3, 1}, {3, 2}}) {
                          ModelParams p = periodic(j, m);
                          for (int k = -6; k <= 6; ++k) {
                              int n = m + j * k;
                              e = std::max(e, rel(fourier_A_quadrature_oracle(p, n, panels).value, fourier_A_closed(p, n)));
                          }
                          if (j > 1) off = std::max(off, std::abs(fourier_A_quadrature(p, m + 1, 2048).value));
                          auto [v1, v2] = pole_strip(p);
                          double y = 0.5 * std::min(v1, v2);
                          for (int k = -3; k <= 3; ++k) {
                              int n = m + j * k;
                              for (double s : {y, -y})
                                  strip = std::max(strip, rel(fourier_A_quadrature(p, n, panels, s).value, fourier_A_closed(p, n)));
                          }
                      }
                      return Rows{make_row("spectral.fourier.closed_vs_quadrature", e, 1e-8,
                                           "A_n = (1/T) int_0^T f(z) e^{-2 pi i n z/T} dz, |k| <= 6, j in {1,2,3}"),
                                  make_row("spectral.fourier.off_class", off, 1e-8, "A_n = 0 for n != m mod j"),
                                  make_row("spectral.fourier.strip", strip, 1e-6,
                                           "Fourier series valid for -v1 < Im z < v2; contour at +-min(v1,v2)/2")};
                  }});

    cs.push_back({"spectral.measure", "c_n = sum_s A_s z_s^n; sum_s A_s P_n(z_s) Q_m(1/z_s) = h_n delta_nm", [cfg, periodic] {
                      ModelParams p = periodic(cfg.j, cfg.m);
                      TruncationChoice tc = choose_truncation(p, 1e-13);
                      int S = cfg.S > 0 ? cfg.S : tc.S;
                      SpectralMeasure meas = make_measure(p, S);
                      double em = 0;
                      for (int n = -4; n <= 6; ++n) em = std::max(em, rel(reconstruct_moment(meas, n), elliptic_moment(p, n)));
                      auto biorth = [](const ModelParams& q, const SpectralMeasure& ms) {
                          double b = 0;
                          for (int n = 0; n <= 4; ++n)
                              for (int m = 0; m <= 4; ++m) {
                                  cplx h = h_closed(q, n);
                                  auto r = biorthogonality_residual(ms, closed_P_3E2(q, n), closed_Q_3E2(q, m), n == m ? h : 0.0);
                                  b = std::max(b, std::abs(r.value) / std::abs(h));
                              }
                          return b;
                      };
                      double bu = biorth(p, meas);
                      ModelParams pn = make_params(p.lat, cfg.alpha, cfg.beta, cfg.gamma, cfg.w, cfg.j, cfg.m);
                      SpectralMeasure mr = make_rescaled_measure(pn, S);
                      double br = biorth(pn, mr);
                      std::string d = "S = " + std::to_string(S) + ", tail bound " + fmt17(tc.tail_bound);
                      return Rows{make_row("spectral.measure.moments", em, 1e-8, "c_n = sum_{|s|<=S} A_s z_s^n", Cmp::le, d),
                                  make_row("spectral.measure.biorthogonality_unit", bu, 1e-6,
                                           "sum_s A_s P_n(z_s) Q_m(1/z_s) = h_n delta_nm, |z_s| = 1", Cmp::le, d),
                                  make_row("spectral.measure.biorthogonality_radius", br, 1e-6,
                                           "sum_s A_s P_n(z_s/q) Q_m(q/z_s) = h_n delta_nm, |z_s/q| = r", Cmp::le,
                                           "r = " + fmt17(mr.circle_radius))};
                  }});

    cs.push_back({"spectral.positivity", "alpha = 2 J1 omega1 - 2 nu omega3, Re beta = (2 J + 1) omega1: A_s > 0, Delta_n > 0",
                  [L, cfg] {
                      cplx beta(L.omega1, 0.2);
                      ModelParams p = make_params(L, -0.6 * L.omega3, beta, periodic_gamma(L, beta, 1, 0), cfg.w, 1, 0);
                      PositivityInfo info = positivity_classify(p);
                      auto nw = normalized_weights(p, 8);
                      double wmin = 1;
                      for (cplx x : nw) wmin = std::min(wmin, x.real() / std::abs(x));
                      MomentSeq ms = elliptic_moments(p, 10);
                      cplx c0 = ms[0];
                      MomentSeq mn = make_moments([&](int n) { return ms[n] / c0; }, -10, 10, Origin::elliptic);
                      double dmin = 1;
                      for (int n = 1; n <= 8; ++n) {
                          cplx d = toeplitz_delta(mn, n);
                          dmin = std::min(dmin, d.real() / std::abs(d));
                      }
                      auto fam = recurrence_family(closed_coeffs(p, 14), 13);
                      double sz = 0, amax = 0;
                      for (int n = 0; n <= 12; ++n) {
                          sz = std::max(sz, szego_residual(fam, n));
                          amax = std::max(amax, std::abs(fam[n + 1].c[0]));
                      }
                      const std::string a = "alpha = 2 J1 omega1 - 2 nu omega3, Re beta = (2 J + 1) omega1";
                      return Rows{make_row("spectral.positivity.classified", info.positive ? 1.0 : 0.0, 1.0, a, Cmp::ge, info.reason),
                                  make_row("spectral.positivity.weights", wmin, 1 - 1e-8, "A_s/A_0 real and positive", Cmp::ge),
                                  make_row("spectral.positivity.toeplitz", dmin, 1 - 1e-8, "Delta_n > 0, n <= 8", Cmp::ge),
                                  make_row("spectral.positivity.szego", sz, 1e-10, "P_{n+1}(z) = z P_n(z) - a_n z^n conj(P_n)(1/z)"),
                                  make_row("spectral.positivity.reflection_modulus", amax, 1.0, "|a_n| < 1, n <= 12", Cmp::lt)};
                  }});

    cs.push_back({"spectral.cndn", "A_n = kappa0/(h^n + h^{-n}); a_n = +-dn, +-cn of w(n+1)", [L, cfg] {
                      ModelParams pd = dn_params(L, cfg.w), pc = cn_params(L, cfg.w);
                      cplx k0 = 2.0 * kPi * kI * fourier_R0(pd, moment_kappa(pd));
                      double ew = 0;
                      for (int s = -8; s <= 8; ++s) {
                          double hs = std::pow(L.nome_h, s) + std::pow(L.nome_h, -s);
                          ew = std::max(ew, rel(fourier_A_closed(pd, s), k0 / hs));
                      }
                      double er = 0, amax = 0;
                      for (int n = 0; n <= 10; ++n)
                          for (CnDnCase c : {CnDnCase::dn, CnDnCase::cn}) {
                              const ModelParams& q = c == CnDnCase::dn ? pd : pc;
                              cplx a = cndn_reflection(L, cfg.w, c, n);
                              er = std::max(er, std::abs(a + closed_P_3E2(q, n + 1).c[0]));
                              amax = std::max(amax, std::abs(a));
                          }
                      cplx c0 = elliptic_moment(pd, 0);
                      double edn = 0;
                      for (int n = 0; n <= 8; ++n)
                          edn = std::max(edn, std::abs(elliptic_moment(pd, n) / c0 - jacobi_sn_cn_dn(L, cfg.w * n).dn));
                      return Rows{make_row("spectral.cndn.dn_weights", ew, 1e-10, "A_n = kappa0/(h^n + h^{-n})"),
                                  make_row("spectral.cndn.dn_moments", edn, 1e-12, "c_n = dn(wn; k)"),
                                  make_row("spectral.cndn.reflection", er, 1e-9,
                                           "dn case: a_n = dn(w(n+1)) (n even), -cn(w(n+1)) (n odd); cn case swaps cn, dn"),
                                  make_row("spectral.cndn.reflection_modulus", amax, 1.0, "|a_n| < 1, n <= 10", Cmp::lt)};
                  }});
    return cs;
}

// ---------------------------------------------------------------- rational

template <class T>
double poly_scale(const Poly<T>& p) {
    return std::max(1.0, residual_norm(p));
}

struct ExactDraw {
    Rational alpha, beta;
};

std::vector<ExactDraw> exact_draws(const VerifyConfig& cfg) {
    std::vector<ExactDraw> d{{Rational(1, 2), Rational(2)}, {Rational(-1, 3), Rational(5, 7)}, {Rational(3, 4), Rational(7, 3)}};
    // the configured parameters join when they are real; a double converts to a rational exactly
    if (cfg.alpha.imag() == 0.0 && cfg.beta.imag() == 0.0 && cfg.beta.real() != 0.0) {
        Rational a(cfg.alpha.real()), b(cfg.beta.real());
        if (denominator(a) != 1) d.push_back({a, b});
    }
    return d;
}

std::vector<Check> rational_checks(const VerifyConfig& cfg) {
    std::vector<Check> cs;
    int nmax = cfg.nmax;
    cplx alpha = cfg.alpha, beta = cfg.beta;
    check_rat_alpha(alpha);

    cs.push_back({"rational.moments", "c_n = (n + beta + alpha)/(beta (n + alpha)) = beta^{-1} + 1/(n + alpha)", [cfg, alpha, beta] {
                      const std::string a = "c_n = (n + beta + alpha)/(beta (n + alpha)) = beta^{-1} + 1/(n + alpha)";
                      if (cfg.exact) {
                          double worst = 0;
                          for (const auto& d : exact_draws(cfg))
                              for (int n = -8; n <= 8; ++n) {
                                  Rational c = rat_moment(RatParams<Rational>{d.alpha, d.beta, false, 0}, n);
                                  Rational r = Rational(1) / d.beta + Rational(1) / (Rational(n) + d.alpha);
                                  worst = std::max(worst, std::abs(static_cast<double>(Rational(c - r))));
                              }
                          return one(make_row("rational.moments", worst, 0.0, a, Cmp::exact_zero, "exact rational arithmetic"));
                      }
                      double e = 0;
                      for (int n = -8; n <= 8; ++n)
                          e = std::max(e, rel(rat_moment(RatParams<cplx>{alpha, beta, false, 0}, n), 1.0 / beta + 1.0 / (double(n) + alpha)));
                      return one(make_row("rational.moments", e, 1e-14, a));
                  }});

    cs.push_back({"rational.polynomials", "P_n = B_n 3F2(-n, a+1, -(a+1)n-b+1; a+1-n, -(a+1)n-b; z)", [alpha, beta, nmax] {
                      RatParams<cplx> rp{alpha, beta, false, 0};
                      MomentSeq ms = rat_moments(rp, nmax + 4);
                      RecurrenceCoeffs rc;
                      for (int n = 0; n <= nmax; ++n) {
                          rc.d.push_back(rat_closed_d(alpha, beta, n));
                          rc.b.push_back(rat_closed_b(alpha, beta, n));
                      }
                      double ed = 0, er = 0, eq = 0;
                      for (int n = 0; n <= nmax; ++n) {
                          Poly<cplx> P = rat_P(alpha, beta, n);
                          ed = std::max(ed, rel_diff(det_poly_P(ms, n), P));
                          er = std::max(er, rel_diff(recurrence_P(rc, n), P));
                          eq = std::max(eq, rel_diff(det_poly_Q(ms, n), rat_Q(alpha, beta, n)));
                      }
                      return Rows{make_row("rational.polynomials.determinant", ed, 1e-9,
                                           "P_n = B_n 3F2(-n, a+1, -(a+1)n-b+1; a+1-n, -(a+1)n-b; z)"),
                                  make_row("rational.polynomials.recurrence", er, 1e-9,
                                           "d_n = (a-n)(b+(a+1)(n+1))(b+an)/((a+1+n)(b+(a+1)n)(b+a(n+1))), rational b_n"),
                                  make_row("rational.polynomials.partner", eq, 1e-9, "Q_n = P_n with (alpha, beta) -> (-alpha, -beta)")};
                  }});

    cs.push_back({"rational.hr_limit", "beta -> infinity: P_n -> (-a)_n/(a+1)_n 2F1(-n, a+1; a+1-n; z)", [alpha] {
                      double e6 = rel_diff(rat_P(alpha, cplx(1e6), 5), hr_P(alpha, 5));
                      double e7 = rel_diff(rat_P(alpha, cplx(1e7), 5), hr_P(alpha, 5));
                      return one(make_row("rational.hr_limit", e6 / e7, 10.0,
                                          "beta -> infinity: P_n -> (-a)_n/(a+1)_n 2F1(-n, a+1; a+1-n; z); error ratio beta = 1e6 vs 1e7",
                                          Cmp::ge, "errors " + fmt17(e6) + ", " + fmt17(e7)));
                  }});

    cs.push_back({"rational.krall", "L W_n^{(j)} = lambda_n W_n^{(j)}, lambda_n = n(n+a+1)((n+1)(n+a)+2 beta)", [cfg, alpha, beta] {
                      const std::string aode = "L W_n^{(j)} = lambda_n W_n^{(j)}, lambda_n = n(n+a+1)((n+1)(n+a)+2 beta), a = alpha + j";
                      const std::string apen = "(n^2 L2 + n L1 + L0) P_n^{(j)} = 0, L(j -> j - n) - lambda_n";
                      const std::string agevp = "A P_n^{(j)} = n B P_n^{(j)}, A = z(1-z) d^2 + (a+1-(a+2)z) d, B = (1-z) d - (a+1)";
                      const std::string alam = "lambda_n quartic expansion = factored form";
                      Rows rows;
                      if (cfg.exact) {
                          double ode = 0, pen = 0, gev = 0, ident = 0, lam = 0, routes = 0;
                          for (const auto& d : exact_draws(cfg))
                              for (int j = 0; j <= 2; ++j) {
                                  RatParams<Rational> rp{d.alpha, d.beta, false, j};
                                  RatParams<Rational> hp{d.alpha, d.beta, true, j};
                                  Pencil<Rational> pc = make_pencil(d.alpha, d.beta, j);
                                  Rational a = d.alpha + Rational(j);
                                  for (int n = 0; n <= 8; ++n) {
                                      ode = std::max(ode, residual_norm(krall_ode_residual(rp, n)));
                                      pen = std::max(pen, residual_norm(pencil_at(pc, n).apply(rat_P(a, d.beta, n))));
                                      gev = std::max(gev, residual_norm(gevp_residual(hp, n)));
                                      ident = std::max(ident, std::abs(static_cast<double>(pencil_identity_defect(pc, d.alpha, d.beta, j, n))));
                                      lam = std::max(lam, std::abs(static_cast<double>(Rational(
                                                              krall_lambda_expanded(n, a, d.beta) - krall_lambda_factored(n, a, d.beta)))));
                                      routes = std::max(routes, residual_norm(krall_W(rp, n) - krall_W_from_P(rp, n)));
                                  }
                              }
                          const std::string det = "exact rational arithmetic, n <= 8, j in {0,1,2}";
                          rows.push_back(make_row("rational.krall.ode", ode, 0.0, aode, Cmp::exact_zero, det));
                          rows.push_back(make_row("rational.krall.pencil", pen, 0.0, apen, Cmp::exact_zero, det));
                          rows.push_back(make_row("rational.krall.pencil_identity", ident, 0.0,
                                                  "n^2 L2 + n L1 + L0 = L(a - n) - lambda_n(a - n), coefficientwise", Cmp::exact_zero, det));
                          rows.push_back(make_row("rational.krall.gevp", gev, 0.0, agevp, Cmp::exact_zero, det));
                          rows.push_back(make_row("rational.krall.lambda_forms", lam, 0.0, alam, Cmp::exact_zero, det));
                          rows.push_back(make_row("rational.krall.W_routes", routes, 0.0, "W_n^{(j)} = P_n^{(j+n)}", Cmp::exact_zero, det));
                          return rows;
                      }
                      double ode = 0, pen = 0, gev = 0, ident = 0, lam = 0, routes = 0;
                      for (int j = 0; j <= 2; ++j) {
                          RatParams<cplx> rp{alpha, beta, false, j};
                          RatParams<cplx> hp{alpha, beta, true, j};
                          Pencil<cplx> pc = make_pencil(alpha, beta, j);
                          cplx a = alpha + double(j);
                          for (int n = 0; n <= 8; ++n) {
                              Poly<cplx> W = krall_W(rp, n);
                              cplx l = krall_lambda_factored(n, a, beta);
                              ode = std::max(ode, residual_norm(krall_ode_residual(rp, n)) / (poly_scale(W) * std::max(1.0, std::abs(l))));
                              Poly<cplx> P = rat_P(a, beta, n);
                              pen = std::max(pen, residual_norm(pencil_at(pc, n).apply(P)) / (poly_scale(P) * std::max(1.0, std::abs(l))));
                              Poly<cplx> H = hr_P(a, n);
                              gev = std::max(gev, residual_norm(gevp_residual(hp, n)) / (poly_scale(H) * (n + 1)));
                              ident = std::max(ident, std::abs(pencil_identity_defect(pc, alpha, beta, j, n)) / std::max(1.0, std::abs(l)));
                              lam = std::max(lam, rel(krall_lambda_expanded(n, a, beta), l));
                              routes = std::max(routes, rel_diff(W, krall_W_from_P(rp, n)));
                          }
                      }
                      rows.push_back(make_row("rational.krall.ode", ode, 1e-9, aode));
                      rows.push_back(make_row("rational.krall.pencil", pen, 1e-9, apen));
                      rows.push_back(make_row("rational.krall.pencil_identity", ident, 1e-10,
                                              "n^2 L2 + n L1 + L0 = L(a - n) - lambda_n(a - n), coefficientwise"));
                      rows.push_back(make_row("rational.krall.gevp", gev, 1e-9, agevp));
                      rows.push_back(make_row("rational.krall.lambda_forms", lam, 1e-12, alam));
                      rows.push_back(make_row("rational.krall.W_routes", routes, 1e-10, "W_n^{(j)} = P_n^{(j+n)}"));
                      return rows;
                  }});

    cs.push_back({"rational.krall_orthogonality", "int_0^1 x^{alpha+j} W_n W_m dx + beta^{-1} W_n(1) W_m(1) = 0, n != m", [] {
                      double e = 0, einf = 0, eh = 0;
                      for (int j = 0; j <= 2; ++j) {
                          RatParams<cplx> rp{cplx(0.5), cplx(2.0), false, j};
                          RatParams<cplx> hp{cplx(0.5), cplx(2.0), true, j};
                          for (int n = 0; n <= 4; ++n)
                              for (int m = 0; m <= 4; ++m) {
                                  if (n == m) continue;
                                  e = std::max(e, std::abs(krall_orthogonality(rp, n, m, 4)));
                                  einf = std::max(einf, std::abs(krall_orthogonality(hp, n, m, 4)));
                              }
                          MomentSeq tau = make_moments([&](int k) { return krall_tau(rp, k - j - 1); }, -12, 12, Origin::rational);
                          for (int n = 1; n <= 4; ++n) eh = std::max(eh, rel_diff(hadamard_W_hankel(tau, n, j), krall_W(rp, n)));
                      }
                      return Rows{make_row("rational.krall_orthogonality.point_mass", e, 1e-10,
                                           "int_0^1 x^{alpha+j} W_n W_m dx + beta^{-1} W_n(1) W_m(1) = 0, n != m", Cmp::le,
                                           "alpha = 1/2, beta = 2, x = u^2, Gauss-Legendre"),
                                  make_row("rational.krall_orthogonality.jacobi", einf, 1e-10,
                                           "int_0^1 x^{alpha+j} W_n W_m dx = 0, n != m, beta = infinity"),
                                  make_row("rational.krall_orthogonality.hankel", eh, 1e-9,
                                           "W_n^{(j)} from Hankel determinants of tau_n^{(j)} = beta^{-1} + 1/(n+alpha+j+1)")};
                  }});

    cs.push_back({"rational.hr_contour", "int_C P_n(z) Q_m(1/z) z^{alpha-1} dz/(e^{2 pi i alpha} - 1) + beta^{-1} P_n(1) Q_m(1) = h_n delta_nm",
                  [alpha, beta, cfg] {
                      int panels = std::max(1, cfg.panels / 32);
                      double e = 0, einf = 0;
                      for (int n = 0; n <= 3; ++n)
                          for (int m = 0; m <= 3; ++m) {
                              e = std::max(e, std::abs(hr_contour_residual(RatParams<cplx>{alpha, beta, false, 0}, n, m, panels)));
                              einf = std::max(einf, std::abs(hr_contour_residual(RatParams<cplx>{alpha, beta, true, 0}, n, m, panels)));
                          }
                      std::string d = "z = e^{i theta}, theta in (0, 2 pi), " + std::to_string(panels * 30) + " Gauss-Legendre nodes";
                      return Rows{make_row("rational.hr_contour.finite_beta", e, 1e-7,
                                           "int_C P_n(z) Q_m(1/z) z^{alpha-1} dz/(e^{2 pi i alpha} - 1) + beta^{-1} P_n(1) Q_m(1) = h_n delta_nm",
                                           Cmp::le, d),
                                  make_row("rational.hr_contour.infinite_beta", einf, 1e-7,
                                           "int_C P_n(z) Q_m(1/z) z^{alpha-1} dz/(e^{2 pi i alpha} - 1) = h_n delta_nm", Cmp::le, d)};
                  }});

    cs.push_back({"rational.imaginary", "|a_{n-1}|^2 = (1 + xi_n^2)/(1 + eta_n^2), eta_n = n/s1, xi_n = n/(n s1 + s2)", [] {
                      const double s1 = 1.5, s2 = 1.4;
                      double em = 0, amax = 0, eo = 0, ed = 0;
                      cplx al(0, s1), be(0, s2);
                      MomentSeq ms = make_moments([&](int k) { return (double(k) + al + be) / (double(k) + al); }, -12, 12,
                                                  Origin::rational);
                      for (int n = 1; n <= 20; ++n) {
                          ImaginaryCase ic = imaginary_case(s1, s2, n);
                          if (n <= 10) {
                              em = std::max(em, std::abs(ic.modulus2 - ic.closed_modulus2) / ic.closed_modulus2);
                              ed = std::max(ed, std::abs(ic.a_nm1 + det_poly_P(ms, n).c[0]));
                          }
                          amax = std::max(amax, std::sqrt(ic.modulus2));
                      }
                      for (int n = 0; n <= 4; ++n)
                          for (int m = 0; m <= 4; ++m)
                              if (n != m) eo = std::max(eo, std::abs(imaginary_orthogonality_residual(s1, s2, n, m, 16)));
                      return Rows{make_row("rational.imaginary.modulus_law", em, 1e-12,
                                           "|a_{n-1}|^2 = (1 + xi_n^2)/(1 + eta_n^2), eta_n = n/s1, xi_n = n/(n s1 + s2)"),
                                  make_row("rational.imaginary.constant_term", ed, 1e-9, "a_{n-1} = -B_n = -P_n(0)"),
                                  make_row("rational.imaginary.positive", amax, 1.0, "s1 s2 > 0 => |a_n| < 1, n <= 20", Cmp::lt),
                                  make_row("rational.imaginary.orthogonality", eo, 1e-8,
                                           "rho(theta) = s2/(1 - e^{-2 pi s1}) e^{-s1 theta} + delta(theta)", Cmp::le,
                                           "s1 = 1.5, s2 = 1.4, composite Gauss-Legendre in theta")};
                  }});

    cs.push_back({"rational.elliptic_limit", "sigma(z) -> z: elliptic moments, d_n, b_n, P_n -> rational forms", [] {
                      cplx a(2.7, 0.3), b(3.4, -0.8);
                      LimitErrors e3 = limit_errors(1e3, a, b, 6), e4 = limit_errors(1e4, a, b, 6);
                      double r = std::min({e3.moment / e4.moment, e3.d / e4.d, e3.b / e4.b, e3.P / e4.P});
                      return one(make_row("rational.elliptic_limit", r, 10.0,
                                          "omega1 = Lambda, omega3 = i Lambda, w = 1, gamma = 0: error ratio Lambda = 1e3 vs 1e4",
                                          Cmp::ge, "max error " + fmt17(e3.max()) + " -> " + fmt17(e4.max())));
                  }});
    return cs;
}

std::vector<Check> checks_for(const std::string& suite, const VerifyConfig& cfg) {
    if (suite == "core") return core_checks(cfg);
    if (suite == "determinants") return determinant_checks(cfg);
    if (suite == "qd") return qd_checks(cfg);
    if (suite == "spectral") return spectral_checks(cfg);
    if (suite == "rational") return rational_checks(cfg);
    throw UsageError("unknown suite: " + suite);
}

Rows run_check(const Check& c) {
    try {
        return c.run();
    } catch (const DegenerateError& e) {
        return one(skipped_row(c.name, c.anchor, e.what()));
    } catch (const SingularityError& e) {
        return one(skipped_row(c.name, c.anchor, e.what()));
    } catch (const std::exception& e) {
        CheckRow r = make_row(c.name, std::nan(""), 0.0, c.anchor);
        r.detail = std::string("error: ") + e.what();
        return one(r);
    }
}

}  // namespace

ModelParams model_params(const VerifyConfig& cfg) {
    return make_params(make_lattice(cfg.omega1, cfg.omega3_imag), cfg.alpha, cfg.beta, cfg.gamma, cfg.w, cfg.j, cfg.m);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"core", "determinants", "qd", "spectral", "rational"};
    return names;
}

Report run_suite(const std::string& suite, const VerifyConfig& cfg) {
    std::vector<Check> all;
    if (suite == "all") {
        for (const auto& s : suite_names()) {
            auto c = checks_for(s, cfg);
            all.insert(all.end(), c.begin(), c.end());
        }
    } else {
        all = checks_for(suite, cfg);
    }
    std::vector<std::future<Rows>> futs;
    for (const auto& c : all) futs.push_back(std::async(std::launch::async, [&c] { return run_check(c); }));
    Report rep;
    rep.suite = suite;
    rep.exact = cfg.exact;
    for (auto& f : futs) {
        Rows r = f.get();
        rep.rows.insert(rep.rows.end(), r.begin(), r.end());
    }
    if (cfg.tol)
        for (auto& r : rep.rows)
            if (r.cmp == Cmp::le && r.status != Status::skipped_degenerate)
                r = make_row(r.name, r.residual, *cfg.tol, r.anchor, r.cmp, r.detail);
    std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const CheckRow& a, const CheckRow& b) { return a.name < b.name; });
    return rep;
}

}  // namespace elbp
