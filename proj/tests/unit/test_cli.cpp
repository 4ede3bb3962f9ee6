#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "elbp/report.hpp"

using namespace elbp;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(ELBP_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 4096> buf;
    std::size_t k;
    while ((k = std::fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), k);
    int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("row status from residual and comparison") {
    CHECK(make_row("a", 1e-12, 1e-10, "x").status == Status::pass);
    CHECK(make_row("a", 1e-9, 1e-10, "x").status == Status::fail);
    CHECK(make_row("a", std::nan(""), 1e-10, "x").status == Status::fail);
    CHECK(make_row("a", 16.0, 3.5, "x", Cmp::ge).status == Status::pass);
    CHECK(make_row("a", 0.0, 0.0, "x", Cmp::exact_zero).status == Status::pass);
    CHECK(make_row("a", 1e-300, 0.0, "x", Cmp::exact_zero).status == Status::fail);
    CHECK(make_row("a", 1.0, 1.0, "x", Cmp::lt).status == Status::fail);
    CHECK(status_name(skipped_row("a", "x", "why").status) == "skipped(degenerate)");
}

TEST_CASE("17 significant digits and JSON spelling of non-finite values") {
    CHECK(fmt17(0.1) == "0.10000000000000001");
    CHECK(fmt17(std::nan("")) == "nan");
    Report r;
    r.suite = "core";
    r.rows.push_back(make_row("x", std::nan(""), 1.0, "a \"quoted\" anchor"));
    auto js = nlohmann::json::parse(report_json(r));
    CHECK(js["checks"][0]["residual"].is_null());
    CHECK(js["checks"][0]["anchor"] == "a \"quoted\" anchor");
    CHECK(js["summary"]["failed"] == 1);
}

TEST_CASE("tables: complex cells as [re, im] in JSON and split columns in CSV") {
    Table t{{"n", "c"}, {{Cell(long(1)), Cell(cplx(0.5, -0.25))}}};
    auto js = nlohmann::json::parse(table_json(t));
    CHECK(js[0]["c"][0] == 0.5);
    CHECK(js[0]["c"][1] == -0.25);
    CHECK(table_csv(t) == "n,c_re,c_im\n1,0.5,-0.25\n");
}

TEST_CASE("verify on defaults passes and is byte-identical across runs") {
    Run a = run("verify --suite all");
    Run b = run("verify --suite all");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto js = nlohmann::json::parse(a.out);
    CHECK(js["summary"]["failed"] == 0);
    for (const auto& row : js["checks"]) CHECK_FALSE(row["anchor"].get<std::string>().empty());
}

TEST_CASE("exit codes") {
    CHECK(run("verify --suite nonsense").code == 2);
    CHECK(run("verify --omega1 -1").code == 2);
    CHECK(run("verify --nmax 40").code == 2);
    CHECK(run("verify --suite core", "ELBP_PRECISION=quad").code == 2);
    CHECK(run("verify --suite core", "ELBP_PRECISION=double").code == 0);
    CHECK(run("verify --suite rational --alpha-re 2 --alpha-im 0").code == 2);
    // a tolerance nothing can meet turns passes into failures
    CHECK(run("verify --suite determinants --tol 1e-14").code == 1);
}

TEST_CASE("degenerate parameters produce skipped rows") {
    // beta = -(alpha + w) makes [beta + (alpha+1) n] vanish at n = 1
    Run r = run("verify --suite determinants --beta-re -0.08 --beta-im 0.37 --format csv");
    CHECK(r.out.find("skipped(degenerate)") != std::string::npos);
    CHECK(r.code == 0);
}

TEST_CASE("config file with flag override") {
    std::string cfg = temp_file("elbp_cfg.json", R"({"nmax": 3, "suite": "core", "alpha_im": -0.3})");
    Run a = run("verify --config " + cfg + " --format csv");
    CHECK(a.code == 0);
    Run b = run("table --kind coeffs --config " + cfg + " --nmax 2");
    CHECK(b.code == 0);
    CHECK(std::count(b.out.begin(), b.out.end(), '\n') == 4);
    std::string bad = temp_file("elbp_bad.json", R"({"no_such_key": 1})");
    CHECK(run("verify --config " + bad).code == 2);
    std::string broken = temp_file("elbp_broken.json", "{nmax: ");
    CHECK(run("verify --config " + broken).code == 2);
}

TEST_CASE("table kinds") {
    for (std::string kind : {"moments", "coeffs", "poly", "weights", "tableau", "krall", "limit"}) {
        Run r = run("table --kind " + kind + " --nmax 3");
        CHECK_MESSAGE(r.code == 0, kind);
        CHECK_MESSAGE(r.out.size() > 10, kind);
    }
    Run j = run("table --kind moments --nmax 1 --format json");
    REQUIRE(j.code == 0);
    auto js = nlohmann::json::parse(j.out);
    CHECK(js.size() == 3);
    CHECK(js[0]["c"].is_array());
    CHECK(run("table --kind krall --exact --nmax 4").code == 2);
    Run e = run("table --kind krall --exact --nmax 4 --format json --alpha-re 0.5 --alpha-im 0 --beta-re 2 --beta-im 0");
    REQUIRE(e.code == 0);
    for (const auto& row : nlohmann::json::parse(e.out)) CHECK(row["ode_residual"] == 0.0);
}

TEST_CASE("output file") {
    auto p = std::filesystem::temp_directory_path() / "elbp_out.csv";
    std::filesystem::remove(p);
    CHECK(run("table --kind moments --nmax 1 --out " + p.string()).code == 0);
    CHECK(std::filesystem::file_size(p) > 0);
}
