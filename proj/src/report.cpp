#include "elbp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace elbp {

std::string status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped_degenerate: return "skipped(degenerate)";
    }
    return "?";
}

std::string cmp_name(Cmp c) {
    switch (c) {
        case Cmp::le: return "<=";
        case Cmp::lt: return "<";
        case Cmp::ge: return ">=";
        case Cmp::exact_zero: return "==0";
    }
    return "?";
}

CheckRow make_row(std::string name, double residual, double tol, std::string anchor, Cmp cmp, std::string detail) {
    CheckRow r;
    r.name = std::move(name);
    r.residual = residual;
    r.tol = tol;
    r.cmp = cmp;
    r.anchor = std::move(anchor);
    r.detail = std::move(detail);
    bool ok = false;
    if (std::isfinite(residual)) {
        switch (cmp) {
            case Cmp::le: ok = residual <= tol; break;
            case Cmp::lt: ok = residual < tol; break;
            case Cmp::ge: ok = residual >= tol; break;
            case Cmp::exact_zero: ok = residual == 0.0; break;
        }
    }
    r.status = ok ? Status::pass : Status::fail;
    return r;
}

CheckRow skipped_row(std::string name, std::string anchor, std::string why) {
    CheckRow r;
    r.name = std::move(name);
    r.residual = std::nan("");
    r.tol = 0.0;
    r.status = Status::skipped_degenerate;
    r.anchor = std::move(anchor);
    r.detail = std::move(why);
    return r;
}

int Report::count(Status s) const {
    int n = 0;
    for (const auto& r : rows) n += r.status == s;
    return n;
}

std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string json_num(double x) { return std::isfinite(x) ? fmt17(x) : "null"; }

std::string json_str(const std::string& s) {
    std::string o = "\"";
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': o += "\\\""; break;
            case '\\': o += "\\\\"; break;
            case '\n': o += "\\n"; break;
            case '\t': o += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    o += buf;
                } else {
                    o += static_cast<char>(ch);
                }
        }
    }
    return o + "\"";
}

std::string csv_str(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) {
        if (ch == '"') o += '"';
        o += ch;
    }
    return o + "\"";
}

}  // namespace

std::string report_json(const Report& r) {
    std::ostringstream os;
    os << "{\n  \"suite\": " << json_str(r.suite) << ",\n  \"precision\": " << json_str(r.precision)
       << ",\n  \"exact\": " << (r.exact ? "true" : "false") << ",\n  \"checks\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& c = r.rows[i];
        os << (i ? ",\n" : "\n") << "    {\"name\": " << json_str(c.name) << ", \"status\": " << json_str(status_name(c.status))
           << ", \"residual\": " << json_num(c.residual) << ", \"tol\": " << json_num(c.tol)
           << ", \"comparison\": " << json_str(cmp_name(c.cmp)) << ", \"anchor\": " << json_str(c.anchor);
        if (!c.detail.empty()) os << ", \"detail\": " << json_str(c.detail);
        os << "}";
    }
    os << "\n  ],\n  \"summary\": {\"passed\": " << r.count(Status::pass) << ", \"failed\": " << r.count(Status::fail)
       << ", \"skipped\": " << r.count(Status::skipped_degenerate) << "}\n}\n";
    return os.str();
}

std::string report_csv(const Report& r) {
    std::ostringstream os;
    os << "name,status,residual,tol,comparison,anchor,detail\n";
    for (const auto& c : r.rows)
        os << csv_str(c.name) << ',' << status_name(c.status) << ',' << fmt17(c.residual) << ',' << fmt17(c.tol) << ','
           << cmp_name(c.cmp) << ',' << csv_str(c.anchor) << ',' << csv_str(c.detail) << '\n';
    return os.str();
}

std::string table_csv(const Table& t) {
    std::ostringstream os;
    std::vector<bool> is_cplx(t.columns.size(), false);
    for (const auto& row : t.rows)
        for (std::size_t k = 0; k < row.size(); ++k)
            if (std::holds_alternative<cplx>(row[k])) is_cplx[k] = true;
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
        if (k) os << ',';
        if (is_cplx[k])
            os << t.columns[k] << "_re," << t.columns[k] << "_im";
        else
            os << t.columns[k];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ',';
            const Cell& c = row[k];
            if (auto* i = std::get_if<long>(&c)) os << *i;
            else if (auto* d = std::get_if<double>(&c)) os << fmt17(*d);
            else if (auto* z = std::get_if<cplx>(&c)) os << fmt17(z->real()) << ',' << fmt17(z->imag());
            else os << csv_str(std::get<std::string>(c));
        }
        os << '\n';
    }
    return os.str();
}

std::string table_json(const Table& t) {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? ",\n " : "\n ") << "{";
        const auto& row = t.rows[r];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ", ";
            os << json_str(t.columns[k]) << ": ";
            const Cell& c = row[k];
            if (auto* i = std::get_if<long>(&c)) os << *i;
            else if (auto* d = std::get_if<double>(&c)) os << json_num(*d);
            else if (auto* z = std::get_if<cplx>(&c)) os << "[" << json_num(z->real()) << ", " << json_num(z->imag()) << "]";
            else os << json_str(std::get<std::string>(c));
        }
        os << "}";
    }
    os << "\n]\n";
    return os.str();
}

}  // namespace elbp
