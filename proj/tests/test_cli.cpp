#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "algd/specfile.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& cmd) {
    std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string bin() {
    const char* b = std::getenv("ALGD_BIN");
    REQUIRE(b != nullptr);
    return b;
}

std::string specs() {
    const char* s = std::getenv("ALGD_SPECS");
    REQUIRE(s != nullptr);
    return s;
}

}  // namespace

TEST_CASE("report is deterministic and passes on the bundled weyl document") {
    std::string cmd = bin() + " report " + specs() + "/weyl_z2_f3.json --format json";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);  // byte-identical
    CHECK(a.output.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("text format prints one PASS line per task") {
    RunResult r = run(bin() + " report " + specs() + "/weyl_z2_f3.json --format text");
    CHECK(r.exit_code == 0);
    std::size_t passes = 0, pos = 0;
    while ((pos = r.output.find(": PASS", pos)) != std::string::npos) {
        ++passes;
        pos += 6;
    }
    CHECK(passes == 11);  // one per task in the document
    CHECK(r.output.find("ALL TASKS PASS") != std::string::npos);
}

TEST_CASE("subcommands filter task categories") {
    RunResult e = run(bin() + " enumerate " + specs() + "/weyl_z2_f3.json");
    CHECK(e.exit_code == 0);
    CHECK(e.output.find("enumerate") != std::string::npos);
    CHECK(e.output.find("task dual") == std::string::npos);
    RunResult d = run(bin() + " dual " + specs() + "/weyl_z2_f3.json");
    CHECK(d.exit_code == 0);
    CHECK(d.output.find("task dual W: PASS") != std::string::npos);
    RunResult b = run(bin() + " build " + specs() + "/weyl_z2_f3.json");
    CHECK(b.exit_code == 0);
    CHECK(b.output.find("task") == std::string::npos);
}

TEST_CASE("a corrupted document yields a failing report and a nonzero exit") {
    // Corrupt the expected count so the enumeration task fails.
    std::string tmp = "/tmp/algd_cli_bad.json";
    {
        std::ifstream in(specs() + "/weyl_z2_f3.json");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        auto pos = text.find("\"expect\": 2");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 11, "\"expect\": 5");
        std::ofstream out(tmp);
        out << text;
    }
    RunResult r = run(bin() + " report " + tmp + " --format text");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("parse errors carry diagnostics") {
    std::string tmp = "/tmp/algd_cli_parse.json";
    {
        std::ofstream out(tmp);
        out << "{ not json";
    }
    RunResult r = run(bin() + " report " + tmp);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error") != std::string::npos);

    // Dangling reference.
    std::string tmp2 = "/tmp/algd_cli_ref.json";
    {
        std::ofstream out(tmp2);
        out << R"({"field": {"prime": 3},
                   "objects": [{"name": "W", "type": "weyl", "hopf": "missing"}],
                   "tasks": []})";
    }
    RunResult r2 = run(bin() + " report " + tmp2 + " --format text");
    CHECK(r2.exit_code == 1);
    CHECK(r2.output.find("UnknownReference") != std::string::npos);

    // Shape mismatch.
    std::string tmp3 = "/tmp/algd_cli_shape.json";
    {
        std::ofstream out(tmp3);
        out << R"({"field": {"prime": 3},
                   "objects": [{"name": "m", "type": "matrix", "rows": 2,
                                "entries": [[1, 2]]}],
                   "tasks": []})";
    }
    RunResult r3 = run(bin() + " report " + tmp3 + " --format text");
    CHECK(r3.exit_code == 1);
    CHECK(r3.output.find("ShapeMismatch") != std::string::npos);
}

TEST_CASE("worker count does not change the report bytes") {
    std::string base = bin() + " report " + specs() + "/weyl_z2_f3.json --format json";
    RunResult one = run(base + " --parallel 1");
    RunResult four = run(base + " --parallel 4");
    CHECK(one.exit_code == 0);
    CHECK(one.output == four.output);
}

TEST_CASE("the enumeration limit is enforced and overridable") {
    RunResult tiny = run("ALGD_LIMIT=1 " + bin() + " enumerate " + specs() + "/weyl_z2_f3.json");
    CHECK(tiny.exit_code == 1);
    CHECK(tiny.output.find("SearchSpaceTooLarge") != std::string::npos);
    RunResult flag = run(bin() + " enumerate " + specs() + "/weyl_z2_f3.json --limit 1048576");
    CHECK(flag.exit_code == 0);
}

TEST_CASE("json report round-trips through the library entry point") {
    std::ifstream in(specs() + "/weyl_z2_f3.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    bool ok = false;
    algd::RunOptions opts;
    std::string rep1 = algd::run_spec(text, opts, &ok);
    CHECK(ok);
    std::string rep2 = algd::run_spec(text, opts, &ok);
    CHECK(rep1 == rep2);
    // The text rendering mentions every task status.
    std::string t = algd::report_to_text(rep1);
    CHECK(t.find("ALL TASKS PASS") != std::string::npos);
}
