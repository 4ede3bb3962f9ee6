#pragma once

#include <string>
#include <variant>
#include <vector>

#include "elbp/common.hpp"

namespace elbp {

enum class Status { pass, fail, skipped_degenerate };
std::string status_name(Status s);

// How the residual is compared with the tolerance.
enum class Cmp { le, lt, ge, exact_zero };
std::string cmp_name(Cmp c);

struct CheckRow {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    Cmp cmp = Cmp::le;
    Status status = Status::pass;
    std::string anchor;
    std::string detail;
};

CheckRow make_row(std::string name, double residual, double tol, std::string anchor, Cmp cmp = Cmp::le,
                  std::string detail = {});
CheckRow skipped_row(std::string name, std::string anchor, std::string why);

struct Report {
    std::string suite;
    bool exact = false;
    std::string precision = "double";
    std::vector<CheckRow> rows;

    int count(Status s) const;
    bool all_pass() const { return count(Status::fail) == 0; }
};

// %.17g, with "nan"/"inf" spelled out; JSON writers emit null for non-finite values.
std::string fmt17(double x);

std::string report_json(const Report& r);
std::string report_csv(const Report& r);

using Cell = std::variant<long, double, cplx, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Complex cells become <name>_re, <name>_im columns in CSV and [re, im] arrays in JSON.
std::string table_csv(const Table& t);
std::string table_json(const Table& t);

}  // namespace elbp
