#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courant/contact.hpp"

using namespace courant;

namespace {

Orientation orient_for(const CourantDatum& E, Scalar c = Scalar(1)) {
    Orientation o;
    o.constant = c;
    o.shift = (int)E.base().coords.size();
    if (E.name.rfind("dolbeault", 0) == 0) o.shift /= 2;
    return o;
}

} // namespace

TEST_CASE("theta and omega structure over a point") {
    auto E = abelian_hyperbolic_r2();
    auto m = make_contact(E, orient_for(E));
    const JetModel& J = m.jets;
    const auto& alg = J.alg();
    Elem lam0 = Elem::constant(alg, Scalar(1));
    Elem lamp = Elem::generator(alg, J.jet_gen(m.lam_field, 0, size_t(0)));
    Elem df = Elem::generator(alg, J.var_gen(m.f_field, 0, size_t(0)));
    Elem x1 = Elem::generator(alg, J.jet_gen(m.xi_fields[0], 0, size_t(0)));
    Elem x2 = Elem::generator(alg, J.jet_gen(m.xi_fields[1], 0, size_t(0)));
    Elem dx1 = Elem::generator(alg, J.var_gen(m.xi_fields[0], 0, size_t(0)));
    Elem dx2 = Elem::generator(alg, J.var_gen(m.xi_fields[1], 0, size_t(0)));

    // hyperbolic pairing: <e1,e2> = <e2,e1> = 1
    Elem theta = liouville_theta(m);
    Scalar half(Rational(1, 2));
    Elem expect = (lam0 + lamp) *
                  (df + half * (x1 * dx2 + x2 * dx1));
    CHECK(theta == expect);

    // xi = 0: theta = lambda delta f
    std::map<size_t, Elem> kill;
    kill[J.jet_gen(m.xi_fields[0], 0, size_t(0))] = Elem::zero(alg);
    kill[J.jet_gen(m.xi_fields[1], 0, size_t(0))] = Elem::zero(alg);
    CHECK(theta.substituted(alg, kill) == (lam0 + lamp) * df);

    // delta omega = 0
    Elem omega = symplectic_omega(m);
    CHECK(J.delta(omega).is_zero());

    // constant block matrix: f <-> lam, xi <-> xi via lambda_0 eta
    ScalarMat W = point_omega_matrix(m);
    // variables: (f, xi1, xi2, lam)
    CHECK(W[0][3] == -W[3][0]);
    CHECK_FALSE(W[0][3].is_zero());
    CHECK(W[1][2] == W[2][1]); // even pair, symmetric block
    CHECK_FALSE(W[1][2].is_zero());
    CHECK(W[1][1].is_zero());
}

TEST_CASE("master action examples") {
    // abelian point: S = 0
    {
        auto E = abelian_hyperbolic_r2();
        auto m = make_contact(E, orient_for(E));
        CHECK(master_action(m).is_zero());
    }
    // so(3) point: S = 1/6 lambda <xi,[xi,xi]> = lambda xi1 xi2 xi3
    {
        auto E = so3_quadratic();
        auto m = make_contact(E, orient_for(E));
        const auto& J = m.jets;
        const auto& alg = J.alg();
        Elem x1 = Elem::generator(alg, J.jet_gen(m.xi_fields[0], 0, size_t(0)));
        Elem x2 = Elem::generator(alg, J.jet_gen(m.xi_fields[1], 0, size_t(0)));
        Elem x3 = Elem::generator(alg, J.jet_gen(m.xi_fields[2], 0, size_t(0)));
        Elem lam = m.lambda_scalar();
        // <xi,[xi,xi]> = 6 xi1 xi2 xi3 for so(3) with identity pairing
        CHECK(master_action(m) == lam * (x1 * (x2 * x3)));
        // grade 3 - n = 3
        auto g = master_action(m).homogeneous_grade();
        REQUIRE(g.has_value());
        CHECK(g->degree == 3);
    }
    // standard R^1: density contains lambda xi^D d_t f
    {
        auto E = standard_courant(1);
        auto m = make_contact(E, orient_for(E));
        const auto& J = m.jets;
        const auto& alg = J.alg();
        Elem S = master_action(m);
        auto g = S.homogeneous_grade();
        REQUIRE(g.has_value());
        CHECK(g->degree == 3 - 1);
        size_t ft = J.jet_gen(m.f_field, 0, MultiIndex{1});
        size_t xiD = J.jet_gen(m.xi_fields[0], 0, size_t(0));
        bool found = false;
        for (const auto& t : S.terms()) {
            bool has_ft = false, has_xi = false, has_lam = false;
            for (auto& [gi, ex] : t.mono) {
                if (gi == ft) has_ft = true;
                if (gi == xiD) has_xi = true;
                if (J.has_vol() && gi == J.vol_gen()) has_lam = true;
            }
            if (has_ft && has_xi && has_lam) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("homological field matches the RW field on f and xi") {
    auto E = standard_courant(1);
    auto m = make_contact(E, orient_for(E));
    auto X = homological_field(m);
    auto M = rw_construct(E, m.jets.max_order(), true);
    auto Q = rw_vector_field(M);

    // map the RW jet algebra into the contact jet algebra by field name
    const auto& JA = M.jets;
    const auto& JB = m.jets;
    std::map<size_t, Elem> images;
    for (size_t g = 0; g < JA.alg()->size(); ++g) {
        if (!JA.is_any_field_gen(g)) continue;
        size_t f, s, a;
        bool isv;
        JA.decode_gen(g, f, s, a, isv);
        size_t fb = JB.find_field(JA.fields()[f].name);
        size_t gb = isv ? JB.var_gen(fb, s, a) : JB.jet_gen(fb, s, a);
        images[g] = Elem::generator(JB.alg(), gb);
    }
    auto transport = [&](const Elem& e) { return e.substituted(JB.alg(), images); };

    for (size_t f = 0; f < JA.fields().size(); ++f) {
        size_t fb = JB.find_field(JA.fields()[f].name);
        for (size_t s = 0; s < JA.num_subsets(); ++s)
            CHECK(transport(Q.comps[f][s]) == X.comps[fb][s]);
    }

    // lambda-component for xi = t d/dt is the divergence term lambda * 1
    {
        const auto& alg = JB.alg();
        std::map<size_t, Elem> sub;
        Elem t = Elem::generator(alg, "x1");
        // xi^D = t, xi^dt = 0, f = 0, lam' = 0
        sub[JB.jet_gen(m.xi_fields[0], 0, size_t(0))] = t;
        sub[JB.jet_gen(m.xi_fields[0], 0, MultiIndex{1})] = Elem::constant(alg, Scalar(1));
        for (uint32_t k = 2; k <= JB.max_order(); ++k)
            sub[JB.jet_gen(m.xi_fields[0], 0, MultiIndex{k})] = Elem::zero(alg);
        for (uint32_t k = 0; k <= JB.max_order(); ++k) {
            sub[JB.jet_gen(m.xi_fields[1], 0, MultiIndex{k})] = Elem::zero(alg);
            sub[JB.jet_gen(m.f_field, 0, MultiIndex{k})] = Elem::zero(alg);
            sub[JB.jet_gen(m.lam_field, 0, MultiIndex{k})] = Elem::zero(alg);
        }
        Elem qlam = X.comps[m.lam_field][0].substituted(alg, sub);
        CHECK(qlam == Elem::constant(alg, Scalar(1)));
    }
}

TEST_CASE("weight one under lambda rescaling") {
    auto E = standard_courant(1);
    Scalar c(3);
    auto m1 = make_contact(E, orient_for(E));
    auto m2 = make_contact(E, orient_for(E, c));
    const auto& J = m1.jets;
    const auto& alg = J.alg();
    // scale lam' by c in the c0-scaled model and compare with c * (original)
    std::map<size_t, Elem> scale;
    for (size_t s = 0; s < J.num_subsets(); ++s)
        for (size_t a = 0; a < J.num_alpha(); ++a) {
            size_t g = J.jet_gen(m1.lam_field, s, a);
            scale[g] = c * Elem::generator(alg, g);
            size_t v = J.var_gen(m1.lam_field, s, a);
            scale[v] = c * Elem::generator(alg, v);
        }
    auto scaled = [&](const Elem& e) { return e.substituted(alg, scale); };
    CHECK(scaled(liouville_theta(m2)) == c * liouville_theta(m1));
    CHECK(scaled(symplectic_omega(m2)) == c * symplectic_omega(m1));
    CHECK(scaled(master_action(m2)) == c * master_action(m1));
}

TEST_CASE("point CME") {
    for (auto E : {so3_quadratic(), abelian_hyperbolic_r2()}) {
        auto m = make_contact(E, orient_for(E));
        auto rep = verify_cme(m);
        REQUIRE(rep.checks.size() == 1);
        INFO(E.name, ": ", rep.checks[0].witness);
        CHECK(rep.pass());
    }
}

TEST_CASE("jet CME on standard R^1") {
    auto E = standard_courant(1);
    auto m = make_contact(E, orient_for(E));
    auto rep = verify_cme(m);
    for (auto& c : rep.checks) {
        INFO(c.name, ": ", c.witness);
        CHECK(c.pass);
    }
}

TEST_CASE("hamiltonian field of the internal action is dbar") {
    auto E = dolbeault_standard(1);
    auto m = make_contact(E, orient_for(E));
    const JetModel& J = m.jets;
    auto Xd = internal_field(m);
    // i_{X_dbar} omega - delta S_dbar is a total derivative
    Elem resid = J.contract(Xd, symplectic_omega(m)) - J.delta(internal_action(m));
    std::string w;
    bool ok = J.total_derivative_test(resid, &w);
    INFO(w);
    CHECK(ok);
}
