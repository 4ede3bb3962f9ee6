#include "doctest.h"
#include "elbp/lbp.hpp"
#include "elbp/rational.hpp"
#include "fixtures.hpp"

using namespace elbp;
using fx::rel;

namespace {

const std::vector<std::pair<Rational, Rational>> kExact{
    {Rational(1, 2), Rational(2)}, {Rational(-1, 3), Rational(5, 7)}, {Rational(3, 4), Rational(7, 3)}};

cplx poch(cplx a, int k) {
    cplx p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + double(i);
    return p;
}

template <class T>
T eval(const Poly<T>& p, const T& x) {
    T acc = p.c.back();
    for (int k = p.degree() - 1; k >= 0; --k) acc = acc * x + p.c[k];
    return acc;
}

}  // namespace

TEST_CASE("rational moments and polynomials against determinants") {
    cplx alpha(-0.23, -0.37), beta(0.41, -0.12);
    std::vector<cplx> c;
    for (int n = -12; n <= 12; ++n) c.push_back(1.0 / beta + 1.0 / (double(n) + alpha));
    MomentSeq ms = rat_moments(RatParams<cplx>{alpha, beta, false, 0}, 12);
    for (int n = -12; n <= 12; ++n) CHECK(rel(ms[n], c[n + 12]) < 1e-15);
    for (int n = 0; n <= 6; ++n) {
        Poly<cplx> P = rat_P(alpha, beta, n);
        CHECK(rel_diff(P, det_poly_P(ms, n)) < 1e-8);
        CHECK(rel_diff(rat_Q(alpha, beta, n), det_poly_Q(ms, n)) < 1e-8);
        auto D = [&](int k, int j) { return oracle::det(oracle::toeplitz(c, 12, k, j)); };
        CHECK(rel(rat_closed_d(alpha, beta, n), D(n + 1, 1) * D(n, 0) / (D(n, 1) * D(n + 1, 0))) < 1e-8);
    }
}

TEST_CASE("integer alpha is rejected") {
    CHECK_THROWS_AS(check_rat_alpha(cplx(3.0, 0.0)), DomainError);
    CHECK_THROWS_AS(check_rat_alpha(Rational(-2)), DomainError);
    CHECK_NOTHROW(check_rat_alpha(Rational(1, 2)));
    CHECK_THROWS_AS(rat_moment(RatParams<cplx>{cplx(3.0, 0.0), 1.0, false, 0}, -3), SingularityError);
    CHECK_THROWS_AS(rat_moment(RatParams<cplx>{cplx(0.5, 0.0), 0.0, false, 0}, 0), SingularityError);
    CHECK_NOTHROW(rat_moment(RatParams<cplx>{cplx(0.5, 0.0), 1.0, false, 0}, 0));
}

TEST_CASE("Krall operator annihilates W_n - lambda_n W_n exactly") {
    for (const auto& [a, b] : kExact)
        for (int j = 0; j <= 2; ++j)
            for (int n = 0; n <= 8; ++n) {
                RatParams<Rational> rp{a, b, false, j};
                CHECK(residual_norm(krall_ode_residual(rp, n)) == 0.0);
                CHECK(is_zero(krall_W(rp, n) - krall_W_from_P(rp, n)));
                Rational A = a + j;
                CHECK(krall_lambda_expanded(n, A, b) == krall_lambda_factored(n, A, b));
            }
}

TEST_CASE("the misprinted eigenvalue factorization is not an eigenvalue") {
    const auto& [a, b] = kExact[0];
    RatParams<Rational> rp{a, b, false, 1};
    Rational A = a + 1;
    for (int n = 1; n <= 6; ++n) {
        CHECK(krall_lambda_printed(n, A, b) != krall_lambda_factored(n, A, b));
        Poly<Rational> W = krall_W(rp, n);
        Poly<Rational> r = krall_operator(A, b).apply(W) - krall_lambda_printed(n, A, b) * W;
        CHECK(residual_norm(r) > 0.0);
    }
}

TEST_CASE("quadratic pencil and generalized eigenvalue problem are exact") {
    for (const auto& [a, b] : kExact)
        for (int j = 0; j <= 2; ++j) {
            Pencil<Rational> pc = make_pencil(a, b, j);
            CHECK(pc.L2.order() <= 4);
            for (int n = 0; n <= 8; ++n) {
                CHECK(pencil_identity_defect(pc, a, b, j, n) == 0);
                CHECK(residual_norm(pencil_residual(RatParams<Rational>{a, b, false, j}, n)) == 0.0);
                CHECK(residual_norm(gevp_residual(RatParams<Rational>{a, Rational(0), true, j}, n)) == 0.0);
            }
        }
}

TEST_CASE("Krall orthogonality by Newton-built Gauss-Legendre") {
    // a = alpha + j = 3/2, so 2 u^{2a+1} W_n(u^2) W_m(u^2) is a polynomial in u
    cplx alpha = 0.5, beta = 2.0;
    std::vector<double> x, wt;
    oracle::gauss_legendre(64, x, wt);
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) {
            RatParams<cplx> rp{alpha, beta, false, 1};
            Poly<cplx> Wn = krall_W(rp, n), Wm = krall_W(rp, m);
            cplx s = 0.0;
            for (int i = 0; i < 64; ++i) {
                double u = 0.5 * (x[i] + 1.0);
                s += 0.5 * wt[i] * 2.0 * std::pow(u, 4.0) * Wn(u * u) * Wm(u * u);
            }
            s += Wn(1.0) * Wm(1.0) / beta;
            if (n != m) CHECK(std::abs(s) < 1e-12);
            CHECK(std::abs(krall_orthogonality(rp, n, m, 8) - s) < 1e-12);
        }
}

TEST_CASE("tau moments give the same W through Hankel determinants") {
    RatParams<cplx> rp{cplx(0.5, 0.0), cplx(2.0, 0.0), false, 1};
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(krall_tau(rp, n) - (0.5 + 1.0 / (n + 2.5))) < 1e-15);
}

TEST_CASE("imaginary parameters: modulus law and positivity") {
    for (auto [s1, s2] : {std::pair{1.5, 1.4}, std::pair{0.7, 2.2}, std::pair{-0.9, 1.3}})
        for (int n = 1; n <= 8; ++n) {
            ImaginaryCase ic = imaginary_case(s1, s2, n);
            cplx a(0.0, s1), b(0.0, s2);
            cplx B = poch(-a, n) / poch(a + 1.0, n) * (a * double(n) + b + double(n)) / (a * double(n) + b);
            CHECK(rel(ic.a_nm1, -B) < 1e-12);
            double eta = n / s1, xi = n / (n * s1 + s2);
            CHECK(std::abs(ic.modulus2 - (1 + xi * xi) / (1 + eta * eta)) < 1e-12);
            CHECK(std::abs(ic.closed_modulus2 - ic.modulus2) < 1e-12);
            CHECK(ic.positive == (s1 * s2 > 0));
            if (ic.positive) CHECK(ic.modulus2 < 1.0);
        }
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) CHECK(std::abs(imaginary_orthogonality_residual(1.5, 1.4, n, m, 64)) < 1e-10);
}

TEST_CASE("beta to infinity approaches the 2F1 family") {
    cplx alpha(-0.23, -0.37);
    for (int n = 1; n <= 5; ++n) {
        double e6 = rel_diff(rat_P(alpha, cplx(1e6), n), hr_P(alpha, n));
        double e7 = rel_diff(rat_P(alpha, cplx(1e7), n), hr_P(alpha, n));
        CHECK(e6 < 1e-4);
        CHECK(e6 / e7 >= 9.9);
        CHECK(rel(hr_d(alpha, n), rat_closed_d(alpha, cplx(1e12), n)) < 1e-9);
    }
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            CHECK(std::abs(hr_contour_residual(RatParams<cplx>{alpha, cplx(0.7, 0.2), false, 0}, n, m, 32)) < 1e-9);
            CHECK(std::abs(hr_contour_residual(RatParams<cplx>{alpha, 0.0, true, 0}, n, m, 32)) < 1e-9);
        }
}

TEST_CASE("elliptic model degenerates to the rational one") {
    cplx alpha(2.7, 0.3), beta(3.4, -0.8);
    LimitErrors a = limit_errors(100.0, alpha, beta, 4);
    LimitErrors b = limit_errors(1000.0, alpha, beta, 4);
    CHECK(a.max() / b.max() >= 10.0);
    CHECK(b.max() < 1e-7);
    ModelParams p = limit_params(1000.0, alpha, beta);
    for (int n = -3; n <= 3; ++n) CHECK(rel(elliptic_moment(p, n), 1.0 / beta + 1.0 / (double(n) + alpha)) < 1e-7);
}
