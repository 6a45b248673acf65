#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "algd/specfile.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw algd::Error("ParseError", "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_command(const std::string& path, const algd::RunOptions& opts, const std::string& format) {
    bool passed = false;
    std::string report;
    try {
        report = algd::run_spec(slurp(path), opts, &passed);
    } catch (const algd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (format == "json") std::cout << report;
    else std::cout << algd::report_to_text(report);
    return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computational algebra for finite-dimensional Hopf algebroids"};
    app.require_subcommand(1);

    std::string path, format = "text";
    algd::RunOptions opts;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("spec", path, "input JSON document")->required();
        cmd->add_option("--limit", opts.limit, "enumeration limit (default 2^20 or ALGD_LIMIT)");
        cmd->add_option("--parallel", opts.parallel, "worker count for enumeration fan-out");
        cmd->add_flag("--timing", opts.timing,
                      "include wall-clock timings (report is no longer byte-reproducible)");
    };

    auto* build = app.add_subcommand("build", "construct and validate the declared objects");
    add_common(build);
    auto* check = app.add_subcommand("check", "run the axiom/identity check tasks");
    add_common(check);
    auto* enumerate = app.add_subcommand("enumerate", "run the enumeration tasks");
    add_common(enumerate);
    auto* twist = app.add_subcommand("twist", "run the cotwist tasks");
    add_common(twist);
    auto* dual = app.add_subcommand("dual", "run the duality tasks");
    add_common(dual);
    auto* report = app.add_subcommand("report", "run every task and emit the full report");
    add_common(report);
    report->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    if (build->parsed()) {
        opts.build_only = true;
        return run_command(path, opts, "text");
    }
    if (check->parsed()) {
        opts.category = "check";
        return run_command(path, opts, "text");
    }
    if (enumerate->parsed()) {
        opts.category = "enumerate";
        return run_command(path, opts, "text");
    }
    if (twist->parsed()) {
        opts.category = "twist";
        return run_command(path, opts, "text");
    }
    if (dual->parsed()) {
        opts.category = "dual";
        return run_command(path, opts, "text");
    }
    opts.category = "all";
    return run_command(path, opts, format);
}
