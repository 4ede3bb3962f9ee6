#include <CLI11.hpp>
#include <cfloat>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "elbp/lbp.hpp"
#include "elbp/qd.hpp"
#include "elbp/rational.hpp"
#include "elbp/report.hpp"
#include "elbp/spectral.hpp"
#include "elbp/suites.hpp"

using namespace elbp;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kDegenerate = 3 };

struct Options {
    VerifyConfig cfg;
    double alpha_re, alpha_im, beta_re, beta_im, gamma_re, gamma_im;
    std::string suite = "all";
    std::string kind;
    std::string format;
    std::string out;
    std::string config;
    double tol = 0.0;

    Options() {
        alpha_re = cfg.alpha.real();
        alpha_im = cfg.alpha.imag();
        beta_re = cfg.beta.real();
        beta_im = cfg.beta.imag();
        gamma_re = cfg.gamma.real();
        gamma_im = cfg.gamma.imag();
    }
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--omega1", o.cfg.omega1, "real half-period");
    sub->add_option("--omega3", o.cfg.omega3_imag, "imaginary part of the second half-period");
    sub->add_option("--alpha-re", o.alpha_re);
    sub->add_option("--alpha-im", o.alpha_im);
    sub->add_option("--beta-re", o.beta_re);
    sub->add_option("--beta-im", o.beta_im);
    sub->add_option("--gamma-re", o.gamma_re);
    sub->add_option("--gamma-im", o.gamma_im);
    sub->add_option("--w", o.cfg.w, "step parameter");
    sub->add_option("--j", o.cfg.j, "period multiple");
    sub->add_option("--m", o.cfg.m, "periodicity index");
    sub->add_option("--nmax", o.cfg.nmax);
    sub->add_option("--S", o.cfg.S, "spectral truncation, 0 = from the tail bound");
    sub->add_option("--panels", o.cfg.panels);
    sub->add_option("--tol", o.tol, "replace every floating tolerance");
    sub->add_flag("--exact", o.cfg.exact, "exact rational arithmetic for rational identities");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", o.config, "JSON config; flags override the file");
}

// Keys of the config file are the flag names without leading dashes ('-' or '_' accepted).
void apply_config(CLI::App* sub, Options& o) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot read config file " + o.config);
    nlohmann::json js;
    try {
        in >> js;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    if (!js.is_object()) throw UsageError("config must be a JSON object");
    for (auto it = js.begin(); it != js.end(); ++it) {
        std::string key = it.key();
        for (auto& ch : key)
            if (ch == '_') ch = '-';
        CLI::Option* opt = nullptr;
        try {
            opt = sub->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            // subcommand-specific keys are ignored by the other subcommand
            if (key == "suite" || key == "kind") continue;
            throw UsageError("unknown config key: " + it.key());
        }
        if (opt->count() > 0) continue;
        const auto& v = it.value();
        try {
            if (key == "exact") {
                o.cfg.exact = v.get<bool>();
            } else if (v.is_string()) {
                opt->add_result(v.get<std::string>());
                opt->run_callback();
            } else if (v.is_number_integer()) {
                opt->add_result(std::to_string(v.get<long long>()));
                opt->run_callback();
            } else if (v.is_number()) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
                opt->add_result(buf);
                opt->run_callback();
            } else {
                throw UsageError("config key " + it.key() + " has an unsupported type");
            }
        } catch (const CLI::Error& e) {
            throw UsageError("config key " + it.key() + ": " + e.what());
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config key " + it.key() + ": " + e.what());
        }
    }
}

void finalize(CLI::App* sub, Options& o) {
    VerifyConfig& c = o.cfg;
    c.alpha = {o.alpha_re, o.alpha_im};
    c.beta = {o.beta_re, o.beta_im};
    c.gamma = {o.gamma_re, o.gamma_im};
    if (sub->get_option("--tol")->count() > 0) {
        if (!(o.tol >= 10 * DBL_EPSILON)) throw UsageError("--tol must be at least 10 machine epsilons");
        c.tol = o.tol;
    }
    if (!(c.omega1 > 0) || !(c.omega3_imag > 0)) throw UsageError("half-periods must be positive");
    if (c.nmax < 0 || c.nmax > 16) throw UsageError("--nmax must lie in [0, 16]");
    if (c.panels < 32) throw UsageError("--panels must be at least 32");
    if (c.S < 0) throw UsageError("--S must be nonnegative");
    if (c.j < 1) throw UsageError("--j must be positive");
    // validates alpha != k w and the incommensurability of w
    make_ctx(make_lattice(c.omega1, c.omega3_imag), c.w);
    model_params(c);
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + o.out);
    f << text;
}

Table table_for(const Options& o) {
    const VerifyConfig& c = o.cfg;
    ModelParams p = model_params(c);
    Table t;
    if (o.kind == "moments") {
        t.columns = {"n", "c"};
        for (int n = -c.nmax; n <= c.nmax; ++n) t.rows.push_back({long(n), elliptic_moment(p, n)});
    } else if (o.kind == "coeffs") {
        t.columns = {"n", "d", "b"};
        for (int n = 0; n <= c.nmax; ++n) t.rows.push_back({long(n), closed_d(p, n), closed_b(p, n)});
    } else if (o.kind == "poly") {
        t.columns = {"n", "k", "coef"};
        for (int n = 0; n <= c.nmax; ++n) {
            Poly<cplx> P = closed_P_3E2(p, n);
            for (int k = 0; k <= n; ++k) t.rows.push_back({long(n), long(k), P.c[k]});
        }
    } else if (o.kind == "weights") {
        ModelParams q = make_params(p.lat, c.alpha, c.beta, periodic_gamma(p.lat, c.beta, c.j, c.m), c.w, c.j, c.m);
        int S = c.S > 0 ? c.S : choose_truncation(q, 1e-13).S;
        SpectralMeasure m = make_measure(q, S);
        t.columns = {"s", "theta", "A"};
        for (std::size_t i = 0; i < m.s.size(); ++i)
            t.rows.push_back({long(m.s[i]), kPi * m.s[i] * c.w / (c.j * p.lat.omega1), m.weights[i]});
    } else if (o.kind == "tableau") {
        MomentSeq ms = elliptic_moments(p, 2 * c.nmax + 12);
        QDTableau sw = qd_sweep_from_moments(ms, c.nmax, -3, 3);
        QDTableau cl = qd_closed(p, c.nmax, -3, 3);
        qd_condition(ms, sw);
        t.columns = {"n", "j", "sweep_d", "sweep_b", "closed_d", "closed_b", "cond", "valid"};
        const cplx nan(std::nan(""), std::nan(""));
        for (int n = 0; n <= c.nmax; ++n)
            for (int j = -3; j <= 3; ++j) {
                bool ok = sw.ok_d(n, j) && sw.ok_b(n, j);
                t.rows.push_back({long(n), long(j), ok ? sw.D(n, j) : nan, ok ? sw.B(n, j) : nan, cl.D(n, j), cl.B(n, j),
                                  sw.cond[sw.idx(n, j)], long(ok)});
            }
    } else if (o.kind == "krall") {
        t.columns = {"n", "j", "lambda", "ode_residual", "pencil_residual"};
        if (c.exact) {
            if (c.alpha.imag() != 0 || c.beta.imag() != 0) throw UsageError("--exact needs real alpha and beta");
            Rational a(c.alpha.real()), b(c.beta.real());
            check_rat_alpha(a);
            for (int j = 0; j <= 2; ++j)
                for (int n = 0; n <= c.nmax; ++n) {
                    RatParams<Rational> rp{a, b, false, j};
                    Rational lam = krall_lambda_factored(n, Rational(a + j), b);
                    t.rows.push_back({long(n), long(j), static_cast<double>(lam), residual_norm(krall_ode_residual(rp, n)),
                                      residual_norm(pencil_residual(rp, n))});
                }
        } else {
            check_rat_alpha(c.alpha);
            for (int j = 0; j <= 2; ++j)
                for (int n = 0; n <= c.nmax; ++n) {
                    RatParams<cplx> rp{c.alpha, c.beta, false, j};
                    t.rows.push_back({long(n), long(j), krall_lambda_factored(n, cplx(c.alpha + double(j)), c.beta),
                                      residual_norm(krall_ode_residual(rp, n)), residual_norm(pencil_residual(rp, n))});
                }
        }
    } else if (o.kind == "limit") {
        t.columns = {"Lambda", "moment", "d", "b", "P"};
        for (double L : {1e1, 1e2, 1e3, 1e4}) {
            LimitErrors e = limit_errors(L, c.alpha, c.beta, c.nmax);
            t.rows.push_back({L, e.moment, e.d, e.b, e.P});
        }
    } else {
        throw UsageError("unsupported table kind: " + o.kind);
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptic Laurent biorthogonal polynomials: verification suites and tables"};
    app.require_subcommand(1);
    Options vo, to;
    CLI::App* verify = app.add_subcommand("verify", "run identity suites and print a report");
    add_common(verify, vo);
    verify->add_option("--suite", vo.suite)->check(CLI::IsMember({"all", "core", "determinants", "qd", "spectral", "rational"}));
    CLI::App* table = app.add_subcommand("table", "emit a data table");
    add_common(table, to);
    table->add_option("--kind", to.kind)
        ->check(CLI::IsMember({"moments", "coeffs", "poly", "weights", "tableau", "krall", "limit"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    const char* prec = std::getenv("ELBP_PRECISION");
    std::string precision = prec && *prec ? prec : "double";
    if (precision != "double") {
        std::cerr << "error: unsupported precision '" << precision << "' (only 'double')\n";
        return kUsage;
    }

    CLI::App* sub = verify->parsed() ? verify : table;
    Options& o = verify->parsed() ? vo : to;
    try {
        apply_config(sub, o);
        finalize(sub, o);
        if (sub == verify) {
            if (o.format.empty()) o.format = "json";
            Report r = run_suite(o.suite, o.cfg);
            r.precision = precision;
            emit(o, o.format == "json" ? report_json(r) : report_csv(r));
            if (!r.all_pass()) return kFail;
            if (!r.rows.empty() && r.count(Status::skipped_degenerate) == static_cast<int>(r.rows.size())) return kDegenerate;
            return kPass;
        }
        if (o.kind.empty()) throw UsageError("--kind is required");
        if (o.format.empty()) o.format = "csv";
        Table t = table_for(o);
        emit(o, o.format == "json" ? table_json(t) : table_csv(t));
        return kPass;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return kDegenerate;
    } catch (const SingularityError& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    }
}
