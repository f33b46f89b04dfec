#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courant/courant.hpp"
#include "courant/dgmodule.hpp"
#include "courant/linalg.hpp"

using namespace courant;

static Cdga de_rham_r2() {
    auto alg = Algebra::make(CoefficientField::Rationals,
                             {{"x", Grade{0, 0}},
                              {"y", Grade{0, 0}},
                              {"dx", Grade{1, 1}},
                              {"dy", Grade{1, 1}}});
    Cdga c;
    c.alg = alg;
    c.coords = {0, 1};
    Derivation d(alg, Grade{1, 0});
    d.set_zero_images();
    d.set_image(0, Elem::generator(alg, "dx"));
    d.set_image(1, Elem::generator(alg, "dy"));
    c.diff = d;
    return c;
}

TEST_CASE("square zero checks") {
    auto dr = de_rham_r2();
    CHECK(!dr.square_zero_witness().has_value());

    // de Rham differential acts as expected
    Elem x = Elem::generator(dr.alg, "x");
    Elem y = Elem::generator(dr.alg, "y");
    CHECK(dr.d(x * x * y) ==
          Scalar(2) * (x * y * Elem::generator(dr.alg, "dx")) +
              x * x * Elem::generator(dr.alg, "dy"));

    // mutated model: dbar(dzb) = zb * th with a second odd generator fails
    auto alg = Algebra::make(CoefficientField::GaussianRationals,
                             {{"z", Grade{0, 0}},
                              {"zb", Grade{0, 0}},
                              {"dzb", Grade{1, 1}},
                              {"th", Grade{2, 1}}});
    Cdga bad;
    bad.alg = alg;
    bad.coords = {0, 1};
    Derivation d(alg, Grade{1, 0});
    d.set_zero_images();
    d.set_image(1, Elem::generator(alg, "dzb"));
    d.set_image(2, Elem::generator(alg, "zb") * Elem::generator(alg, "th"));
    bad.diff = d;
    auto w = bad.square_zero_witness();
    REQUIRE(w.has_value());
    CHECK(*w == "zb");

    // zero differential passes
    Cdga triv = polynomial_cdga(CoefficientField::Rationals, {"t"});
    CHECK(!triv.square_zero_witness().has_value());
}

TEST_CASE("dolbeault derivation examples") {
    auto E = dolbeault_standard(1);
    const auto& O = E.base();
    Elem z = Elem::generator(O.alg, "z1");
    Elem zb = Elem::generator(O.alg, "zb1");
    Elem dzb = Elem::generator(O.alg, "dzb1");
    CHECK(O.d(z * zb * zb) == Scalar(2) * (z * zb * dzb));
    CHECK(O.d(dzb).is_zero());
    CHECK(!O.square_zero_witness().has_value());
}

TEST_CASE("pairing validation") {
    auto E = standard_courant(1);
    CHECK_NOTHROW(E.eta.validate(E.mod));

    Pairing bad = E.eta;
    bad.eta[0][1] = Elem::constant(E.base().alg, Scalar(2));
    CHECK_THROWS_AS(bad.validate(E.mod), ValidationError); // not symmetric

    Pairing bad2 = E.eta;
    bad2.eta_inv[0][1] = Elem::constant(E.base().alg, Scalar(2));
    CHECK_THROWS_AS(bad2.validate(E.mod), ValidationError); // witness fails
}

TEST_CASE("pair_sections with graded coefficients") {
    auto E = standard_courant(1);
    const auto& alg = E.base().alg;
    // <Dt + 0, 0 + dt> = 1, <Dt, Dt> = 0
    Section u = E.mod.basis_section(alg, 0);
    Section v = E.mod.basis_section(alg, 1);
    CHECK(pair_sections(E.mod, E.eta, u, v, alg) == Elem::constant(alg, Scalar(1)));
    CHECK(pair_sections(E.mod, E.eta, u, u, alg).is_zero());
    // hyperbolic: <(a,b),(c,d)> = ad + bc
    Elem t = Elem::generator(alg, "x1");
    Section s1{t, Elem::constant(alg, Scalar(2))};
    Section s2{t * t, t};
    CHECK(pair_sections(E.mod, E.eta, s1, s2, alg) == t * t + Scalar(2) * (t * t));
}

TEST_CASE("exact linear algebra") {
    ScalarMat m{{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(4)}};
    auto inv = mat_inverse(m);
    CHECK(mat_mul(m, inv) == identity_mat(2));
    CHECK(rank(m) == 2);
    ScalarMat sing{{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}};
    CHECK(rank(sing) == 1);
    CHECK_THROWS_AS(mat_inverse(sing), ValidationError);
    auto ker = kernel_basis(sing);
    REQUIRE(ker.size() == 1);
    CHECK(mat_apply(sing, ker[0]) == ScalarVec(2, Scalar(0)));
    ScalarVec x;
    CHECK(solve(m, {Scalar(1), Scalar(1)}, x));
    CHECK(mat_apply(m, x) == ScalarVec{Scalar(1), Scalar(1)});
    CHECK(in_row_span(sing, {Scalar(3), Scalar(6)}));
    CHECK(!in_row_span(sing, {Scalar(1), Scalar(0)}));
}
