#include "courant/bcov.hpp"
#include "courant/modelfile.hpp"
#include "courant/report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>

using namespace courant;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& desc,
               const std::function<bool(std::string&)>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string wit;
    try {
        ok = fn(wit);
    } catch (const std::exception& e) {
        wit = e.what();
    }
    double s = std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - t0).count();
    if (!ok) ++g_failures;
    std::printf("%s criterion-%02d %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", n,
                desc.c_str(), s, wit.empty() ? "" : " -- ", wit.c_str());
    std::fflush(stdout);
}

CourantDatum abelian_r2_euclidean() {
    ScalarMat id(2, ScalarVec(2, Scalar(0)));
    id[0][0] = id[1][1] = Scalar(1);
    return quadratic_lie("abelian_r2",
                         std::vector<ScalarMat>(2, ScalarMat(2, ScalarVec(2, Scalar(0)))),
                         id);
}

std::vector<CourantDatum> suite_algebroids() {
    std::vector<CourantDatum> out;
    for (int d = 1; d <= 3; ++d) out.push_back(standard_courant(d));
    for (int d = 1; d <= 2; ++d) out.push_back(dolbeault_standard(d));
    out.push_back(abelian_r2_euclidean());
    out.push_back(so3_quadratic());
    out.push_back(abelian_hyperbolic_r2());
    out.push_back(flat_transitive(1, so3_quadratic()));
    return out;
}

Orientation orient_for(const CourantDatum& E) {
    Orientation o;
    o.shift = (int)E.base().coords.size();
    if (E.name.rfind("dolbeault", 0) == 0) o.shift /= 2;
    return o;
}

bool report_pass(const AxiomReport& r, std::string& wit, const std::string& tag) {
    for (auto& c : r.checks)
        if (!c.pass) {
            wit = tag + " " + c.axiom + (c.witness.empty() ? "" : ": " + c.witness);
            return false;
        }
    return true;
}

std::string models_dir() {
    if (const char* d = std::getenv("COURANT_MODELS_DIR")) return d;
    return "models";
}

constexpr uint64_t kSeed = 2026;

} // namespace

int main() {
    criterion(1, "courant axiom suite", [](std::string& wit) {
        for (const CourantDatum& E : suite_algebroids())
            if (!report_pass(check_axioms(E, kSeed), wit, E.name)) return false;
        return true;
    });

    criterion(2, "negative controls carry witnesses", [](std::string& wit) {
        AxiomReport bad = check_axioms(so3_broken(), kSeed);
        bool jac = false;
        for (auto& c : bad.checks)
            if (c.axiom == "jacobi" && !c.pass &&
                c.witness.find("e1") != std::string::npos &&
                c.witness.find("e2") != std::string::npos &&
                c.witness.find("e3") != std::string::npos)
                jac = true;
        if (!jac) { wit = "so3_broken did not fail jacobi with an (e1,e2,e3) witness"; return false; }

        ModelFile lift = parse_model(models_dir() + "/lift_noncoisotropic.model");
        AxiomReport lr = check_lift(lift.scalars_map(), lift.datum);
        for (auto& c : lr.checks)
            if (c.axiom == "coisotropy" && !c.pass) return true;
        wit = "non-coisotropic lift passed check_lift";
        return false;
    });

    criterion(3, "RW field squares to zero and the proof identities hold",
              [](std::string& wit) {
        for (const CourantDatum& E : suite_algebroids()) {
            RwModel M = rw_construct(E, 2);
            HomologicalReport h = check_homological(M);
            if (!h.pass) { wit = E.name + ": " + h.witness; return false; }
            for (auto& c : proof_identities(E, kSeed, 8))
                if (!c.pass) { wit = E.name + " " + c.name + ": " + c.witness; return false; }
        }
        return true;
    });

    criterion(4, "point classical master equation", [](std::string& wit) {
        for (CourantDatum E : {so3_quadratic(), abelian_hyperbolic_r2()}) {
            ContactModel m = make_contact(E, orient_for(E));
            CmeReport r = verify_cme(m);
            for (auto& c : r.checks)
                if (!c.pass) { wit = E.name + " " + c.name + ": " + c.witness; return false; }
        }
        return true;
    });

    criterion(5, "jet classical master equation on R^1 and R^2",
              [](std::string& wit) {
        for (int d = 1; d <= 2; ++d) {
            CourantDatum E = standard_courant(d);
            ContactModel m = make_contact(E, orient_for(E));
            CmeReport r = verify_cme(m);
            for (auto& c : r.checks)
                if (!c.pass) { wit = E.name + " " + c.name + ": " + c.witness; return false; }
        }
        return true;
    });

    criterion(6, "hamiltonian field of the internal action is dbar",
              [](std::string& wit) {
        CourantDatum E = dolbeault_standard(1);
        ContactModel m = make_contact(E, orient_for(E));
        const JetModel& J = m.jets;
        JetModel::Evo X = internal_field(m);
        // the field acts as dbar on every jet coordinate
        for (size_t f = 0; f < J.fields().size(); ++f) {
            Elem expect = J.dbar(J.field_combination(f));
            Elem got = Elem::zero(J.alg());
            for (size_t s = 0; s < J.num_subsets(); ++s)
                got = got + X.comps[f][s] * J.subset_monomial(s);
            if (got != expect) { wit = "field " + J.fields()[f].name; return false; }
        }
        // and it is the Hamiltonian field of S_dbar
        Elem resid = J.contract(X, symplectic_omega(m)) - J.delta(internal_action(m));
        if (!J.total_derivative_test(resid, &wit)) return false;
        return true;
    });

    criterion(7, "extension of scalars reproduces the standard line",
              [](std::string& wit) {
        ModelFile m = parse_model(models_dir() + "/hyperbolic_lift.model");
        CourantDatum X = extend_scalars(m.datum, m.scalars_map());
        CourantDatum S = standard_courant(1);
        if (X.rank() != 2) { wit = "wrong rank"; return false; }
        // basis identification e1 -> Dx1, e2 -> dx1, coordinate x1 -> t
        const AlgebraPtr& xalg = X.base().alg;
        std::map<size_t, Elem> im;
        im[S.base().coords[0]] = Elem::generator(xalg, X.base().coords[0]);
        auto carried = [&](const Elem& e) { return e.substituted(xalg, im); };
        for (size_t a = 0; a < 2; ++a)
            for (size_t b = 0; b < 2; ++b) {
                for (size_t c = 0; c < 2; ++c)
                    if (X.structure[a][b][c] != carried(S.structure[a][b][c])) {
                        wit = "structure functions differ"; return false;
                    }
                if (X.eta.eta[a][b] != carried(S.eta.eta[a][b])) { wit = "pairing differs"; return false; }
                if (X.anchor[a][0] != carried(S.anchor[a][0])) { wit = "anchor differs"; return false; }
            }
        return true;
    });

    criterion(8, "dolbeault reduction and the flat CY comparison",
              [](std::string& wit) {
        ReductionResult r = reduce_dolbeault(1, 3, kSeed);
        if (!report_pass(r.report, wit, "reduce_dolbeault")) return false;
        return report_pass(cy_flat_reduction_check(1, 2, kSeed), wit, "cy-check");
    });

    criterion(9, "BCOV equivalence, randomized at n = 5, mutation caught",
              [](std::string& wit) {
        if (!report_pass(verify_equivalence(1, 3, 2), wit, "n=1")) return false;
        if (!report_pass(verify_equivalence(5, 1, 1, 16, kSeed), wit, "n=5")) return false;
        AxiomReport mut = verify_equivalence(1, 3, 2, 0, kSeed, true);
        for (auto& c : mut.checks)
            if (c.axiom == "action-order-0" && !c.pass) return true;
        wit = "dropped-term mutation passed at order 0";
        return false;
    });

    criterion(10, "deterministic reports and fixture round trips",
              [](std::string& wit) {
        auto render_once = [] {
            Report r{"acceptance determinism", kSeed};
            for (auto& c : check_axioms(standard_courant(2), kSeed).checks)
                r.add(c.axiom, c.pass, c.witness);
            for (auto& c : proof_identities(so3_quadratic(), kSeed, 8))
                r.add(c.name, c.pass, c.witness);
            return render_machine(r);
        };
        if (render_once() != render_once()) { wit = "machine reports differ"; return false; }
        namespace fs = std::filesystem;
        size_t seen = 0;
        for (auto& entry : fs::directory_iterator(models_dir())) {
            if (entry.path().extension() != ".model") continue;
            std::string name = entry.path().filename().string();
            if (name.rfind("bad_", 0) == 0) continue;
            ModelFile m = parse_model(entry.path().string());
            std::string text = render_model(m);
            ModelFile back = parse_model_text(text, name);
            if (!models_equal(m, back) || render_model(back) != text) {
                wit = name + " does not round trip";
                return false;
            }
            ++seen;
        }
        if (seen < 14) { wit = "missing fixtures"; return false; }
        return true;
    });

    return g_failures == 0 ? 0 : 1;
}
