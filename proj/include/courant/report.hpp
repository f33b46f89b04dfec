#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace courant {

inline constexpr const char* kToolVersion = "1.0.0";

struct ReportCheck {
    std::string name;
    bool pass;
    std::string witness; // empty on pass
};

// Suite result. The machine rendering is byte-stable for a fixed seed and
// input: it carries the version, seed and verdicts but no timing. Wall time
// appears only in the text rendering.
struct Report {
    std::string suite;
    uint64_t seed = 0;
    double seconds = 0.0;
    std::vector<ReportCheck> checks;

    void add(const std::string& name, bool pass, const std::string& witness = "");
    bool pass() const;
};

std::string render_text(const Report& r);

// Versioned line-oriented tree format:
//   courant-report 1
//   suite <name>
//   version <tool version>
//   seed <seed>
//   check <name> pass
//   check <name> fail <witness>
//   result pass|fail
std::string render_machine(const Report& r);

} // namespace courant
