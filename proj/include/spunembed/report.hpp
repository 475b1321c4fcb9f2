#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spunembed {

/// Pass/fail checklist with stable entry order, the common result type of
/// the replayable verifiers.
struct CheckReport {
    struct Entry {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Entry> entries;

    void add(std::string name, bool pass, std::string detail = {}) {
        entries.push_back({std::move(name), pass, std::move(detail)});
    }
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

inline std::ostream& operator<<(std::ostream& os, const CheckReport& r) {
    for (const auto& e : r.entries) {
        os << (e.pass ? "  [pass] " : "  [FAIL] ") << e.name;
        if (!e.detail.empty()) os << ": " << e.detail;
        os << '\n';
    }
    return os;
}

} // namespace spunembed
