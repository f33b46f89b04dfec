#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courant/jet.hpp"

using namespace courant;

namespace {

JetModel scalar_model(uint32_t order = 4, bool variations = true) {
    Cdga base = polynomial_cdga(CoefficientField::Rationals, {"t"});
    return JetModel(base, {{"phi", 0, 0}}, order, variations, std::nullopt);
}

} // namespace

TEST_CASE("jet generators and total derivatives") {
    JetModel J = scalar_model();
    const auto& alg = J.alg();
    Elem phi = Elem::generator(alg, J.jet_gen(0, 0, size_t(0)));
    Elem t = Elem::generator(alg, "t");

    Elem phi1 = J.total_derivative(0, phi);
    CHECK(phi1 == Elem::generator(alg, J.jet_gen(0, 0, MultiIndex{1})));
    // D_t(t phi) = phi + t phi'
    CHECK(J.total_derivative(0, t * phi) == phi + t * phi1);
    // Leibniz: D_t(phi^2) = 2 phi phi'
    CHECK(J.total_derivative(0, phi * phi) ==
          Scalar(2) * (phi * phi1));
    // order overflow is a structural error
    Elem top = Elem::generator(alg, J.jet_gen(0, 0, MultiIndex{4}));
    CHECK_THROWS_AS(J.total_derivative(0, top), StructuralError);
}

TEST_CASE("Euler-Lagrange examples") {
    JetModel J = scalar_model();
    const auto& alg = J.alg();
    size_t phi0 = J.jet_gen(0, 0, size_t(0));
    Elem phi = Elem::generator(alg, phi0);
    Elem phi1 = Elem::generator(alg, J.jet_gen(0, 0, MultiIndex{1}));
    Elem phi2 = Elem::generator(alg, J.jet_gen(0, 0, MultiIndex{2}));

    // L = phi phi' is a total derivative: Euler derivative 0
    CHECK(J.euler_derivative(phi * phi1, phi0).is_zero());
    // L = (phi')^2 -> -2 phi''
    CHECK(J.euler_derivative(phi1 * phi1, phi0) == Scalar(-2) * phi2);
    // L = phi^2 -> 2 phi
    CHECK(J.euler_derivative(phi * phi, phi0) == Scalar(2) * phi);

    std::string w;
    CHECK(J.total_derivative_test(J.total_derivative(0, phi * phi * phi1)));
    CHECK(J.total_derivative_test(phi * phi1));
    CHECK_FALSE(J.total_derivative_test(phi * phi, &w));
    CHECK(w.find("phi") != std::string::npos);
}

TEST_CASE("variations and contraction") {
    JetModel J = scalar_model();
    const auto& alg = J.alg();
    Elem phi = Elem::generator(alg, J.jet_gen(0, 0, size_t(0)));
    Elem phi1 = Elem::generator(alg, J.jet_gen(0, 0, MultiIndex{1}));
    Elem dphi = Elem::generator(alg, J.var_gen(0, 0, size_t(0)));
    Elem dphi1 = Elem::generator(alg, J.var_gen(0, 0, MultiIndex{1}));

    // delta is an odd derivation commuting with D_t
    CHECK(J.delta(phi * phi) == Scalar(2) * (dphi * phi));
    CHECK(J.delta(phi1) == dphi1);
    CHECK(J.delta(J.total_derivative(0, phi * phi)) ==
          J.total_derivative(0, J.delta(phi * phi)));
    // delta^2 = 0
    CHECK(J.delta(J.delta(phi * phi * phi1)).is_zero());

    // evolutionary field X^phi = phi^2: X(phi') = D_t(phi^2)
    auto X = J.make_evo(0);
    J.set_evo_field(X, 0, phi * phi);
    CHECK(J.apply_evolutionary(X, phi1) == Scalar(2) * (phi * phi1));
    CHECK(J.apply_evolutionary(X, phi * phi) == Scalar(2) * (phi * phi * phi));

    // contraction i_X: var(phi)_alpha -> D^alpha X^phi
    CHECK(J.contract(X, dphi) == phi * phi);
    CHECK(J.contract(X, dphi1) == Scalar(2) * (phi * phi1));
    CHECK(J.contract(X, dphi * phi1 + phi * dphi1) ==
          phi * phi * phi1 + Scalar(2) * (phi * phi * phi1));
}

TEST_CASE("odd components over a graded base") {
    // base Q[t] with two odd generators th1, th2 of degree 1
    auto alg0 = Algebra::make(CoefficientField::Rationals,
                              {{"t", even_grade(0)},
                               {"th1", Grade{1, 0}},
                               {"th2", Grade{1, 0}}});
    Cdga base{alg0, std::nullopt, {0}};
    JetModel J(base, {{"f", 1, 0}}, 2, true, std::nullopt);
    const auto& alg = J.alg();

    CHECK(J.num_subsets() == 4);
    Elem comb = J.field_combination(0);
    // components of f = sum_S f_S m_S with grades 1 - |S|
    auto comps = J.odd_components(comb);
    for (size_t s = 0; s < 4; ++s) {
        CHECK(comps[s] ==
              Elem::generator(alg, J.jet_gen(0, s, size_t(0))));
        auto g = comps[s].homogeneous_grade();
        REQUIRE(g.has_value());
        CHECK(g->degree == 1 - (int)J.subset_size(s));
    }
    // decomposition round-trips on a random graded element
    Rng rng(77);
    std::vector<size_t> gens;
    for (size_t i = 0; i < alg->size(); ++i) gens.push_back(i);
    Elem e = rng.poly(alg, gens, 3, 12);
    auto parts = J.odd_components(e);
    Elem back = Elem::zero(alg);
    for (size_t s = 0; s < 4; ++s) back = back + parts[s] * J.subset_monomial(s);
    CHECK(back == e);
    for (size_t s = 0; s < 4; ++s) {
        CHECK_FALSE(parts[s].contains(alg->index_of("th1")));
        CHECK_FALSE(parts[s].contains(alg->index_of("th2")));
    }
}

TEST_CASE("dbar transported to the jet algebra") {
    auto E = dolbeault_standard(1);
    JetModel J(E.base(), {{"f", 2, 0}}, 3, true, std::optional<int>(1));
    const auto& alg = J.alg();

    // dbar on base generators matches the base differential
    Elem zb = Elem::generator(alg, "zb1");
    Elem dzb = Elem::generator(alg, "dzb1");
    CHECK(J.dbar(zb) == dzb);
    CHECK(J.dbar(dzb).is_zero());

    // dbar phi_{S,alpha} = sum_k d(x_k) phi_{S,alpha+e_k}; here the only
    // coordinate with nonzero image is zb1
    size_t s_empty = 0;
    size_t k_zb = 0;
    for (size_t k = 0; k < J.coord_count(); ++k)
        if (J.base().alg->gen(J.base().coords[k]).name == "zb1") k_zb = k;
    MultiIndex up(J.coord_count(), 0);
    up[k_zb] = 1;
    Elem f00 = Elem::generator(alg, J.jet_gen(0, s_empty, MultiIndex{0, 0}));
    CHECK(J.dbar(f00) ==
          dzb * Elem::generator(alg, J.jet_gen(0, s_empty, up)));
    // dbar^2 = 0 on random elements
    Rng rng(91);
    // keep one order of headroom so D_t and dbar stay in range
    std::vector<size_t> gens;
    for (size_t i = 0; i < alg->size(); ++i) {
        if (J.is_any_field_gen(i)) {
            size_t f, s, a;
            bool isv;
            J.decode_gen(i, f, s, a, isv);
            if (J.alpha_order(a) + 1 >= J.max_order()) continue;
        }
        gens.push_back(i);
    }
    for (int it = 0; it < 6; ++it) {
        Elem e = rng.poly(alg, gens, 2, 8);
        CHECK(J.dbar(J.dbar(e)).is_zero());
    }
    // dbar anticommutes with delta and commutes with total derivatives
    for (int it = 0; it < 4; ++it) {
        Elem e = rng.poly(alg, gens, 2, 6);
        CHECK(J.dbar(J.delta(e)) + J.delta(J.dbar(e)) == Elem::zero(alg));
        CHECK(J.dbar(J.total_derivative(0, e)) ==
              J.total_derivative(0, J.dbar(e)));
    }
}

TEST_CASE("point antibracket") {
    // one even/odd canonical pair each: x even deg 0, xp odd deg 1;
    // omega pairs x with xp
    auto alg = Algebra::make(CoefficientField::Rationals,
                             {{"x", even_grade(0)},
                              {"y", even_grade(0)},
                              {"xp", Grade{1, 0}},
                              {"yp", Grade{1, 0}}});
    Elem x = Elem::generator(alg, "x");
    Elem y = Elem::generator(alg, "y");
    Elem xp = Elem::generator(alg, "xp");
    Elem yp = Elem::generator(alg, "yp");
    Scalar one(1), mone(-1), zero(0);
    // odd symplectic matrix whose inverse is the canonical antibracket
    // bivector P with P[x][xp] = 1, P[xp][x] = -1
    ScalarMat omega = {{zero, zero, mone, zero},
                       {zero, zero, zero, mone},
                       {one, zero, zero, zero},
                       {zero, one, zero, zero}};

    auto br = [&](const Elem& f, const Elem& g) {
        return point_poisson_bracket(f, g, omega);
    };

    // canonical pairs
    CHECK(br(x, xp) == Elem::constant(alg, Scalar(1)));
    CHECK(br(x, yp).is_zero());
    CHECK(br(x, y).is_zero());
    CHECK(br(xp, yp).is_zero());

    // graded antisymmetry with degree shift one:
    // {F,G} = -(-1)^{(|F|+1)(|G|+1)} {G,F} for parity-homogeneous F, G
    Rng rng(123);
    std::vector<size_t> gens = {0, 1, 2, 3};
    auto rand_homog = [&](int parity) {
        Elem e = rng.poly(alg, gens, 3, 10).parity_part(parity);
        while (e.is_zero()) e = rng.poly(alg, gens, 3, 10).parity_part(parity);
        return e;
    };
    for (int pf = 0; pf < 2; ++pf)
        for (int pg = 0; pg < 2; ++pg) {
            Elem F = rand_homog(pf), G = rand_homog(pg);
            int sgn = ((pf + 1) * (pg + 1)) % 2 ? -1 : 1;
            Elem rhs = Scalar(-sgn) * br(G, F);
            CHECK(br(F, G) == rhs);
        }

    // graded Jacobi:
    // {F,{G,H}} = {{F,G},H} + (-1)^{(|F|+1)(|G|+1)} {G,{F,H}}
    for (int it = 0; it < 8; ++it) {
        int pf = (int)rng.below(2), pg = (int)rng.below(2),
            ph = (int)rng.below(2);
        Elem F = rand_homog(pf), G = rand_homog(pg), H = rand_homog(ph);
        int sgn = ((pf + 1) * (pg + 1)) % 2 ? -1 : 1;
        Elem lhs = br(F, br(G, H));
        Elem rhs = br(br(F, G), H) + Scalar(sgn) * br(G, br(F, H));
        CHECK(lhs == rhs);
    }

    // Leibniz: {F, G H} = {F,G} H + (-1)^{(|F|+1)|G|} G {F,H}
    for (int it = 0; it < 6; ++it) {
        int pf = (int)rng.below(2), pg = (int)rng.below(2);
        Elem F = rand_homog(pf), G = rand_homog(pg), H = rng.poly(alg, gens, 2, 6);
        int sgn = ((pf + 1) * pg) % 2 ? -1 : 1;
        CHECK(br(F, G * H) == br(F, G) * H + Scalar(sgn) * (G * br(F, H)));
    }
}

TEST_CASE("random point evaluation") {
    JetModel J = scalar_model(2, true);
    const auto& alg = J.alg();
    Elem phi = Elem::generator(alg, J.jet_gen(0, 0, size_t(0)));
    Elem t = Elem::generator(alg, "t");
    Rng rng(5);
    Elem v = J.random_point_evaluation(t * phi + phi * phi, rng);
    CHECK(v.homogeneous_grade().has_value());
    // evaluation is a ring homomorphism into constants on even generators
    Elem a = t * phi, b = phi + t;
    Rng r1(9), r2(9), r3(9);
    CHECK(J.random_point_evaluation(a * b, r1) ==
          J.random_point_evaluation(a, r2) * J.random_point_evaluation(b, r3));
}
