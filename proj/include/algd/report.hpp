#pragma once

#include <string>
#include <vector>

namespace algd {

// Pass/fail evidence for one verified law. On failure, `witness` names the
// first violating basis tuple and both sides' coordinates.
struct LawResult {
    std::string law;
    bool pass = true;
    std::string witness;
};

struct Report {
    std::string subject;
    std::vector<LawResult> laws;

    bool pass() const {
        for (auto& l : laws)
            if (!l.pass) return false;
        return true;
    }
    void ok(const std::string& law) { laws.push_back({law, true, ""}); }
    void fail(const std::string& law, const std::string& witness) {
        laws.push_back({law, false, witness});
    }
    // Records a pass/fail with the first witness already formatted.
    void record(const std::string& law, bool pass, const std::string& witness) {
        laws.push_back({law, pass, pass ? "" : witness});
    }
    void merge(const Report& o) {
        for (auto& l : o.laws) laws.push_back(l);
    }
    const LawResult* first_failure() const {
        for (auto& l : laws)
            if (!l.pass) return &l;
        return nullptr;
    }
    std::string summary() const {
        std::size_t bad = 0;
        for (auto& l : laws)
            if (!l.pass) ++bad;
        return subject + ": " + std::to_string(laws.size() - bad) + "/" +
               std::to_string(laws.size()) + " laws pass";
    }
};

}  // namespace algd
