#include "courant/bcov.hpp"
#include "courant/modelfile.hpp"
#include "courant/report.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

using namespace courant;

namespace {

struct Options {
    std::string format = "text";
    uint64_t seed = 2026;
    uint32_t degree = 2;
    std::optional<uint32_t> order;
    size_t points = 0;
    int dim = 1;
    size_t jobs = 1;
    std::string models_dir = "models";
    std::vector<std::string> positional;
};

int usage(std::ostream& os) {
    os << "usage: courant-verify <command> [args] [flags]\n"
          "commands:\n"
          "  check-courant <model>      Courant axiom suite\n"
          "  rw-check <model>           homological vector field and proof identities\n"
          "  cme <model>                classical master equation (point or jet)\n"
          "  extend <model>             lift conditions and extension of scalars\n"
          "  reduce <model>             isotropic reduction along the submodule block\n"
          "  cy-check                   flat Calabi-Yau reduction (--dim, --order)\n"
          "  bcov-equiv                 contact/BCOV equivalence (--dim, --order)\n"
          "  examples list|run [name]   shipped fixtures\n"
          "flags: --format text|machine  --seed N  --degree N  --order N\n"
          "       --points N  --dim N  --jobs N  --models-dir PATH\n"
          "environment: COURANT_VERIFY_JOBS sets the default --jobs\n";
    return 2;
}

bool parse_args(int argc, char** argv, Options& o) {
    if (const char* j = std::getenv("COURANT_VERIFY_JOBS"))
        o.jobs = std::max(1ul, std::strtoul(j, nullptr, 10));
    for (int i = 2; i < argc; ++i) {
        std::string a = argv[i];
        auto value = [&]() -> const char* {
            if (i + 1 >= argc) throw std::invalid_argument("flag " + a + " needs a value");
            return argv[++i];
        };
        try {
            if (a == "--format") {
                o.format = value();
                if (o.format != "text" && o.format != "machine")
                    return false;
            } else if (a == "--seed") o.seed = std::strtoull(value(), nullptr, 10);
            else if (a == "--degree") o.degree = (uint32_t)std::strtoul(value(), nullptr, 10);
            else if (a == "--order") o.order = (uint32_t)std::strtoul(value(), nullptr, 10);
            else if (a == "--points") o.points = std::strtoul(value(), nullptr, 10);
            else if (a == "--dim") o.dim = std::atoi(value());
            else if (a == "--jobs") o.jobs = std::max(1ul, std::strtoul(value(), nullptr, 10));
            else if (a == "--models-dir") o.models_dir = value();
            else if (!a.empty() && a[0] == '-') return false;
            else o.positional.push_back(a);
        } catch (const std::exception&) {
            return false;
        }
    }
    if (o.dim < 1) return false;
    return true;
}

void run_parallel(size_t n, size_t jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < std::min(jobs, n); ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) fn(i);
        });
    for (auto& t : pool) t.join();
}

void append(Report& r, const AxiomReport& a) {
    for (auto& c : a.checks) r.add(c.axiom, c.pass, c.witness);
}

Report suite_check_courant(const ModelFile& m, const Options& o) {
    Report r{"check-courant " + m.name, o.seed};
    append(r, check_axioms(m.datum, o.seed, o.degree));
    return r;
}

Report suite_rw(const ModelFile& m, const Options& o) {
    Report r{"rw-check " + m.name, o.seed};
    std::vector<ReportCheck> slots[2];
    run_parallel(2, o.jobs, [&](size_t i) {
        if (i == 0) {
            RwModel M = rw_construct(m.datum, o.order.value_or(2));
            HomologicalReport h = check_homological(M);
            slots[0].push_back({"homological", h.pass, h.witness});
        } else {
            for (auto& c : proof_identities(m.datum, o.seed))
                slots[1].push_back({c.name, c.pass, c.witness});
        }
    });
    for (auto& s : slots)
        for (auto& c : s) r.checks.push_back(c);
    return r;
}

Report suite_cme(const ModelFile& m, const Options& o) {
    Report r{"cme " + m.name, o.seed};
    ContactModel c = make_contact(m.datum, m.orient, o.order.value_or(4));
    CmeReport rep = verify_cme(c);
    for (auto& ch : rep.checks) {
        std::string name = ch.name == "point-cme" ? "{S,S} = 0 (exact)" : ch.name;
        r.add(name, ch.pass, ch.witness);
    }
    return r;
}

Report suite_extend(const ModelFile& m, const Options& o) {
    Report r{"extend " + m.name, o.seed};
    ScalarsMap sm = m.scalars_map();
    AxiomReport lift = check_lift(sm, m.datum);
    append(r, lift);
    if (lift.pass()) {
        CourantDatum ext = extend_scalars(m.datum, sm);
        AxiomReport ax = check_axioms(ext, o.seed, o.degree);
        r.add("extended-axioms", ax.pass(),
              ax.pass() ? "" : "axiom failure on the extended datum");
    }
    return r;
}

Report suite_reduce(const ModelFile& m, const Options& o) {
    Report r{"reduce " + m.name, o.seed};
    if (!m.submodule) throw StructuralError("model has no submodule block");
    append(r, check_isotropic_involutive(m.datum, *m.submodule));
    if (!r.pass()) return r;
    if (m.datum.base().coords.empty()) {
        CourantDatum red = reduce_point(m.datum, *m.submodule);
        if (red.rank() == 0) {
            r.add("reduced-axioms", true); // Lagrangian case: nothing left
        } else {
            AxiomReport ax = check_axioms(red, o.seed, o.degree);
            r.add("reduced-axioms", ax.pass(),
                  ax.pass() ? "" : "axiom failure on the reduced datum");
        }
    } else {
        FlatReduction fr = flat_reduction(m.datum, *m.submodule, o.order.value_or(3));
        size_t perp = fr.perp_rep.size();
        r.add("flat-sections", fr.flat.size() >= perp,
              fr.flat.size() >= perp
                  ? ""
                  : "fewer flat sections than the reduced rank at this cutoff");
    }
    return r;
}

Report suite_cy(const Options& o) {
    Report r{"cy-check dim " + std::to_string(o.dim), o.seed};
    append(r, cy_flat_reduction_check(o.dim, o.order.value_or(2), o.seed));
    return r;
}

Report suite_bcov(const Options& o) {
    Report r{"bcov-equiv dim " + std::to_string(o.dim), o.seed};
    append(r, verify_equivalence(o.dim, o.order.value_or(1), o.degree, o.points,
                                 o.seed));
    return r;
}

// INDEX lines: <file> <suite> <pass|fail>
struct IndexEntry {
    std::string file, suite;
    bool expect_pass;
};

std::vector<IndexEntry> read_index(const std::string& dir) {
    std::ifstream in(dir + "/INDEX");
    if (!in) throw StructuralError("cannot open " + dir + "/INDEX");
    std::vector<IndexEntry> out;
    std::string file, suite, expect;
    while (in >> file >> suite >> expect)
        out.push_back({file, suite, expect == "pass"});
    return out;
}

Report run_suite(const std::string& cmd, const ModelFile& m, const Options& o) {
    if (cmd == "check-courant") return suite_check_courant(m, o);
    if (cmd == "rw-check") return suite_rw(m, o);
    if (cmd == "cme") return suite_cme(m, o);
    if (cmd == "extend") return suite_extend(m, o);
    if (cmd == "reduce") return suite_reduce(m, o);
    throw StructuralError("unknown suite " + cmd);
}

Report suite_examples(const Options& o, const std::string& select) {
    Report r{"examples", o.seed};
    std::vector<IndexEntry> all = read_index(o.models_dir);
    std::vector<IndexEntry> todo;
    for (auto& e : all)
        if (select.empty() || e.file == select || o.models_dir + "/" + e.file == select)
            todo.push_back(e);
    if (todo.empty()) throw StructuralError("no fixture matches " + select);
    std::vector<ReportCheck> slots(todo.size());
    run_parallel(todo.size(), o.jobs, [&](size_t i) {
        const IndexEntry& e = todo[i];
        bool pass;
        std::string wit;
        try {
            ModelFile m = parse_model(o.models_dir + "/" + e.file);
            Report sub = run_suite(e.suite, m, o);
            pass = sub.pass();
            if (!pass)
                for (auto& c : sub.checks)
                    if (!c.pass) { wit = c.name + (c.witness.empty() ? "" : ": " + c.witness); break; }
        } catch (const std::exception& ex) {
            pass = false;
            wit = ex.what();
        }
        bool ok = pass == e.expect_pass;
        std::string label = e.file + " " + e.suite + " expect " +
                            (e.expect_pass ? "pass" : "fail");
        slots[i] = {label, ok, ok ? "" : (pass ? "unexpectedly passed" : wit)};
    });
    r.checks = slots;
    return r;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) return usage(std::cerr);
    std::string cmd = argv[1];
    if (cmd == "--help" || cmd == "-h" || cmd == "help") { usage(std::cout); return 0; }
    Options o;
    if (!parse_args(argc, argv, o)) return usage(std::cerr);

    try {
        Report r;
        auto t0 = std::chrono::steady_clock::now();
        if (cmd == "cy-check") {
            r = suite_cy(o);
        } else if (cmd == "bcov-equiv") {
            r = suite_bcov(o);
        } else if (cmd == "examples") {
            if (o.positional.empty() ||
                (o.positional[0] != "list" && o.positional[0] != "run"))
                return usage(std::cerr);
            if (o.positional[0] == "list") {
                for (auto& e : read_index(o.models_dir))
                    std::cout << e.file << " " << e.suite << " "
                              << (e.expect_pass ? "pass" : "fail") << "\n";
                return 0;
            }
            r = suite_examples(o, o.positional.size() > 1 ? o.positional[1] : "");
        } else if (cmd == "check-courant" || cmd == "rw-check" || cmd == "cme" ||
                   cmd == "extend" || cmd == "reduce") {
            if (o.positional.size() != 1) return usage(std::cerr);
            ModelFile m = parse_model(o.positional[0]);
            r = run_suite(cmd, m, o);
        } else {
            return usage(std::cerr);
        }
        r.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.format == "machine" ? render_machine(r) : render_text(r));
        return r.pass() ? 0 : 1;
    } catch (const ModelDiagnostic& d) {
        std::cerr << d.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
