#include "courant/courant.hpp"

namespace courant {

VectorField vf_commutator(const Cdga& base, const CoeffContext& ctx,
                          const VectorField& a, const VectorField& b) {
    size_t nc = base.coords.size();
    VectorField r(nc, Elem::zero(ctx.alg));
    // graded commutator [A,B]^k = sum_j A^j d_j B^k - (-1)^{|A||B|} B^j d_j A^k,
    // expanded over coefficient parities
    for (size_t k = 0; k < nc; ++k) {
        Elem acc = Elem::zero(ctx.alg);
        for (size_t j = 0; j < nc; ++j) {
            for (int p = 0; p < 2; ++p) {
                Elem ajp = a[j].parity_part(p);
                Elem bjp = b[j].parity_part(p);
                for (int q = 0; q < 2; ++q) {
                    if (!ajp.is_zero())
                        acc = acc + ajp * ctx.dcoord(j, b[k].parity_part(q));
                    if (!bjp.is_zero()) {
                        Elem t = bjp * ctx.dcoord(j, a[k].parity_part(q));
                        acc = ((p * q) % 2) ? acc + t : acc - t;
                    }
                }
            }
        }
        r[k] = acc;
    }
    return r;
}

namespace {

Pairing swap_pairing(const AlgebraPtr& alg, size_t d) {
    size_t n = 2 * d;
    Pairing p;
    p.eta.assign(n, std::vector<Elem>(n, Elem::zero(alg)));
    p.eta_inv = p.eta;
    for (size_t k = 0; k < d; ++k) {
        p.eta[k][d + k] = Elem::constant(alg, Scalar(1));
        p.eta[d + k][k] = Elem::constant(alg, Scalar(1));
        p.eta_inv[k][d + k] = Elem::constant(alg, Scalar(1));
        p.eta_inv[d + k][k] = Elem::constant(alg, Scalar(1));
    }
    return p;
}

std::vector<std::vector<Section>> zero_structure(const AlgebraPtr& alg, size_t n) {
    return std::vector<std::vector<Section>>(
        n, std::vector<Section>(n, Section(n, Elem::zero(alg))));
}

} // namespace

CourantDatum standard_courant(int d) {
    std::vector<std::string> names;
    for (int k = 1; k <= d; ++k) names.push_back("x" + std::to_string(k));
    Cdga base = polynomial_cdga(CoefficientField::Rationals, names);

    CourantDatum E;
    E.name = "standard_r" + std::to_string(d);
    E.mod.base = base;
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"Dx" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"dx" + std::to_string(k), Grade{0, 0}});
    E.eta = swap_pairing(base.alg, d);
    E.anchor.assign(2 * d, VectorField(d, Elem::zero(base.alg)));
    for (int k = 0; k < d; ++k)
        E.anchor[k][k] = Elem::constant(base.alg, Scalar(1));
    E.structure = zero_structure(base.alg, 2 * d);
    return E;
}

CourantDatum dolbeault_standard(int d) {
    std::vector<Generator> gens;
    for (int k = 1; k <= d; ++k) gens.push_back({"z" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k) gens.push_back({"zb" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k) gens.push_back({"dzb" + std::to_string(k), Grade{1, 0}});
    auto alg = Algebra::make(CoefficientField::GaussianRationals, gens);

    Cdga base;
    base.alg = alg;
    for (int k = 0; k < 2 * d; ++k) base.coords.push_back(k);
    Derivation dbar(alg, Grade{1, 0});
    dbar.set_zero_images();
    for (int k = 0; k < d; ++k)
        dbar.set_image(d + k, Elem::generator(alg, "dzb" + std::to_string(k + 1)));
    base.diff = dbar;

    CourantDatum E;
    E.name = "dolbeault_c" + std::to_string(d);
    E.mod.base = base;
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"Dz" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"dz" + std::to_string(k), Grade{0, 0}});
    E.eta = swap_pairing(alg, d);
    E.anchor.assign(2 * d, VectorField(2 * d, Elem::zero(alg)));
    for (int k = 0; k < d; ++k)
        E.anchor[k][k] = Elem::constant(alg, Scalar(1)); // rho(Dz_k) = d/dz_k
    E.structure = zero_structure(alg, 2 * d);
    E.mod.dmat.assign(2 * d, std::vector<Elem>(2 * d, Elem::zero(alg)));
    return E;
}

namespace {

CourantDatum make_quadratic(const std::string& name,
                            const std::vector<ScalarMat>& constants,
                            const ScalarMat& pairing, bool check_invariance) {
    size_t n = pairing.size();
    Cdga base;
    base.alg = Algebra::make(CoefficientField::Rationals, {});

    if (constants.size() != n)
        throw StructuralError("structure constants have wrong shape");
    for (auto& m : constants) {
        if (m.size() != n) throw StructuralError("structure constants have wrong shape");
        for (auto& row : m)
            if (row.size() != n)
                throw StructuralError("structure constants have wrong shape");
    }
    // antisymmetry of the Lie bracket
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                if (constants[a][b][c] != -constants[b][a][c])
                    throw ValidationError("Lie bracket constants are not antisymmetric");
    if (check_invariance) {
        // ad-invariance <[x,y],z> = -<y,[x,z]>
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y)
                for (size_t z = 0; z < n; ++z) {
                    Scalar lhs(0), rhs(0);
                    for (size_t c = 0; c < n; ++c) {
                        lhs += constants[x][y][c] * pairing[c][z];
                        rhs += constants[x][z][c] * pairing[y][c];
                    }
                    if (lhs != -rhs)
                        throw ValidationError("pairing is not ad-invariant at (" +
                                              std::to_string(x) + "," + std::to_string(y) +
                                              "," + std::to_string(z) + ")");
                }
    }

    CourantDatum E;
    E.name = name;
    E.mod.base = base;
    for (size_t a = 1; a <= n; ++a)
        E.mod.basis.push_back({"e" + std::to_string(a), Grade{0, 0}});
    E.eta.eta.assign(n, std::vector<Elem>(n, Elem::zero(base.alg)));
    E.eta.eta_inv = E.eta.eta;
    ScalarMat inv = mat_inverse(pairing);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            E.eta.eta[a][b] = Elem::constant(base.alg, pairing[a][b]);
            E.eta.eta_inv[a][b] = Elem::constant(base.alg, inv[a][b]);
        }
    E.anchor.assign(n, VectorField{});
    E.structure = zero_structure(base.alg, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                E.structure[a][b][c] = Elem::constant(base.alg, constants[a][b][c]);
    return E;
}

std::vector<ScalarMat> so3_constants() {
    // [e_a, e_b] = eps_{abc} e_c
    std::vector<ScalarMat> c(3, ScalarMat(3, ScalarVec(3, Scalar(0))));
    c[0][1][2] = Scalar(1);
    c[1][0][2] = Scalar(-1);
    c[1][2][0] = Scalar(1);
    c[2][1][0] = Scalar(-1);
    c[2][0][1] = Scalar(1);
    c[0][2][1] = Scalar(-1);
    return c;
}

} // namespace

CourantDatum quadratic_lie(const std::string& name,
                           const std::vector<ScalarMat>& constants,
                           const ScalarMat& pairing) {
    return make_quadratic(name, constants, pairing, true);
}

CourantDatum so3_quadratic() {
    return quadratic_lie("so3_point", so3_constants(), identity_mat(3));
}

CourantDatum abelian_hyperbolic_r2() {
    ScalarMat eta(2, ScalarVec(2, Scalar(0)));
    eta[0][1] = eta[1][0] = Scalar(1);
    return quadratic_lie("abelian_r2_point",
                         std::vector<ScalarMat>(2, ScalarMat(2, ScalarVec(2, Scalar(0)))),
                         eta);
}

CourantDatum so3_broken() {
    // [e1,e2] = e3 + e1: antisymmetric but Jacobi fails, first witness
    // (e1,e2,e3). A mere sign flip of one epsilon entry would produce
    // so(2,1), which still satisfies Jacobi.
    auto c = so3_constants();
    c[0][1][0] = Scalar(1);
    c[1][0][0] = Scalar(-1);
    return make_quadratic("so3_broken", c, identity_mat(3), false);
}

CourantDatum flat_transitive(int d, const CourantDatum& point_lie) {
    size_t g = point_lie.rank();
    CourantDatum E = standard_courant(d);
    E.name = "flat_transitive_r" + std::to_string(d) + "_" + point_lie.name;
    const auto& alg = E.base().alg;
    size_t n = 2 * d + g;
    for (size_t a = 1; a <= g; ++a)
        E.mod.basis.push_back({"g" + std::to_string(a), Grade{0, 0}});
    // extend pairing block-diagonally
    Pairing eta;
    eta.eta.assign(n, std::vector<Elem>(n, Elem::zero(alg)));
    eta.eta_inv = eta.eta;
    for (size_t i = 0; i < (size_t)(2 * d); ++i)
        for (size_t j = 0; j < (size_t)(2 * d); ++j) {
            eta.eta[i][j] = E.eta.eta[i][j];
            eta.eta_inv[i][j] = E.eta.eta_inv[i][j];
        }
    for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j) {
            eta.eta[2 * d + i][2 * d + j] =
                Elem::constant(alg, point_lie.eta.eta[i][j].constant_value());
            eta.eta_inv[2 * d + i][2 * d + j] =
                Elem::constant(alg, point_lie.eta.eta_inv[i][j].constant_value());
        }
    E.eta = eta;
    E.anchor.resize(n, VectorField(d, Elem::zero(alg)));
    auto structure = zero_structure(alg, n);
    for (size_t a = 0; a < g; ++a)
        for (size_t b = 0; b < g; ++b)
            for (size_t c = 0; c < g; ++c)
                structure[2 * d + a][2 * d + b][2 * d + c] = Elem::constant(
                    alg, point_lie.structure[a][b][c].constant_value());
    E.structure = structure;
    return E;
}

Section dolbeault_closed_bracket(const CourantDatum& E,
                                 const DolbeaultPart& l, const DolbeaultPart& r) {
    // Bracket cases of the Dolbeault standard Courant algebroid for constant
    // holomorphic frames y = d/dz_j, alpha = dz^j, with O-coefficients.
    const auto& alg = E.base().alg;
    size_t d = E.rank() / 2;
    Section out = E.mod.zero_section(alg);
    auto ddz = [&](size_t j, const Elem& f) {
        return partial_left(f, alg->index_of("z" + std::to_string(j + 1)));
    };
    auto dscript_of = [&](const Elem& f) {
        // D f = sum_k (d f / d z_k) dz^k as a section
        Section s = E.mod.zero_section(alg);
        for (size_t k = 0; k < d; ++k) s[d + k] = ddz(k, f);
        return s;
    };
    const Elem& zeta = l.coeff;
    const Elem& theta = r.coeff;
    if (l.is_vector && r.is_vector) {
        // [zeta y, theta z] = zeta wedge (L_y theta) z - (L_z zeta) theta y
        out[r.index] = out[r.index] + zeta * ddz(l.index, theta);
        out[l.index] = out[l.index] - ddz(r.index, zeta) * theta;
    } else if (l.is_vector && !r.is_vector) {
        // [zeta y, kappa beta] = zeta (L_y kappa) beta + (D zeta) kappa beta(y)
        out[d + r.index] = out[d + r.index] + zeta * ddz(l.index, theta);
        if (l.index == r.index) {
            Section ds = dscript_of(zeta);
            for (size_t a = 0; a < out.size(); ++a)
                out[a] = out[a] + ds[a] * theta;
        }
    } else if (!l.is_vector && r.is_vector) {
        // [xi alpha, theta z] = -(L_z xi) alpha + (D xi) theta alpha(z)
        out[d + l.index] = out[d + l.index] - ddz(r.index, zeta) * theta;
        if (l.index == r.index) {
            Section ds = dscript_of(zeta);
            for (size_t a = 0; a < out.size(); ++a)
                out[a] = out[a] + ds[a] * theta;
        }
    }
    // [xi alpha, kappa beta] = 0
    return out;
}

} // namespace courant
