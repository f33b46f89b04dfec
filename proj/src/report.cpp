#include "courant/report.hpp"

#include <sstream>

namespace courant {

void Report::add(const std::string& name, bool p, const std::string& witness) {
    checks.push_back({name, p, witness});
}

bool Report::pass() const {
    for (auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "suite " << r.suite << " (seed " << r.seed << ", v" << kToolVersion << ")\n";
    for (auto& c : r.checks) {
        os << "  " << (c.pass ? "PASS" : "FAIL") << " " << c.name;
        if (!c.pass && !c.witness.empty()) os << ": " << c.witness;
        os << "\n";
    }
    os << (r.pass() ? "ok" : "FAILED");
    os.setf(std::ios::fixed);
    os.precision(2);
    os << " (" << r.seconds << "s)\n";
    return os.str();
}

std::string render_machine(const Report& r) {
    std::ostringstream os;
    os << "courant-report 1\n";
    os << "suite " << r.suite << "\n";
    os << "version " << kToolVersion << "\n";
    os << "seed " << r.seed << "\n";
    for (auto& c : r.checks) {
        os << "check " << c.name << " " << (c.pass ? "pass" : "fail");
        if (!c.pass && !c.witness.empty()) os << " " << c.witness;
        os << "\n";
    }
    os << "result " << (r.pass() ? "pass" : "fail") << "\n";
    return os.str();
}

} // namespace courant
