#pragma once

#include <string>

#include "algd/duality.hpp"

namespace algd {

// Executes the tasks of a JSON input document (see docs/spec-format.md) and
// returns the canonical report as a JSON string. `categories` filters tasks
// by command ("check", "enumerate", "twist", "dual", or "all"); `build_only`
// constructs and validates the named objects without running tasks.
struct RunOptions {
    std::string category = "all";
    bool build_only = false;
    std::uint64_t limit = 0;  // 0: default / ALGD_LIMIT
    std::size_t parallel = 1;
    bool timing = false;
};

std::string run_spec(const std::string& json_text, const RunOptions& opts, bool* all_passed);
std::string report_to_text(const std::string& report_json);
std::uint64_t fnv1a64(const std::string& data);

}  // namespace algd
