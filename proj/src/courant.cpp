#include "courant/courant.hpp"

#include <sstream>

namespace courant {

namespace {

Elem promote(const Elem& e, const AlgebraPtr& target) { return e.promoted(target); }

Section promote_section(const Section& s, const AlgebraPtr& target) {
    Section r = s;
    for (auto& c : r) c = c.promoted(target);
    return r;
}

// <e_a, v> over ctx.alg (basis sections are even).
Elem pair_basis_left(const CourantDatum& E, const CoeffContext& ctx,
                     size_t a, const Section& v) {
    Elem r = Elem::zero(ctx.alg);
    for (size_t b = 0; b < v.size(); ++b)
        if (!v[b].is_zero()) r = r + v[b] * promote(E.eta.eta[a][b], ctx.alg);
    return r;
}

} // namespace

void CourantDatum::validate() const {
    mod.validate();
    eta.validate(mod);
    size_t n = rank(), nc = mod.base.coords.size();
    if (anchor.size() != n) throw StructuralError("anchor has wrong shape");
    for (auto& vf : anchor)
        if (vf.size() != nc) throw StructuralError("anchor has wrong shape");
    if (structure.size() != n) throw StructuralError("structure functions have wrong shape");
    for (auto& row : structure) {
        if (row.size() != n) throw StructuralError("structure functions have wrong shape");
        for (auto& s : row)
            if (s.size() != n) throw StructuralError("structure functions have wrong shape");
    }
    if (auto g = mod.base.square_zero_witness())
        throw ValidationError("base differential does not square to zero at " + *g);
}

Elem rho_basis_apply(const CourantDatum& E, const CoeffContext& ctx,
                     size_t a, const Elem& f) {
    Elem r = Elem::zero(ctx.alg);
    for (size_t k = 0; k < E.anchor[a].size(); ++k) {
        if (E.anchor[a][k].is_zero()) continue;
        r = r + promote(E.anchor[a][k], ctx.alg) * ctx.dcoord(k, f);
    }
    return r;
}

Elem rho_apply(const CourantDatum& E, const CoeffContext& ctx,
               const Section& u, const Elem& f) {
    Elem r = Elem::zero(ctx.alg);
    for (size_t a = 0; a < u.size(); ++a) {
        if (u[a].is_zero()) continue;
        r = r + u[a] * rho_basis_apply(E, ctx, a, f);
    }
    return r;
}

VectorField rho_vector_field(const CourantDatum& E, const CoeffContext& ctx,
                             const Section& u) {
    size_t nc = E.base().coords.size();
    VectorField vf(nc, Elem::zero(ctx.alg));
    for (size_t a = 0; a < u.size(); ++a) {
        if (u[a].is_zero()) continue;
        for (size_t k = 0; k < nc; ++k)
            vf[k] = vf[k] + u[a] * promote(E.anchor[a][k], ctx.alg);
    }
    return vf;
}

Section d_script(const CourantDatum& E, const CoeffContext& ctx, const Elem& f) {
    size_t n = E.rank();
    Section r(n, Elem::zero(ctx.alg));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (E.eta.eta_inv[a][b].is_zero()) continue;
            r[a] = r[a] + promote(E.eta.eta_inv[a][b], ctx.alg) *
                              rho_basis_apply(E, ctx, b, f);
        }
    return r;
}

Elem pair_in(const CourantDatum& E, const CoeffContext& ctx,
             const Section& u, const Section& v) {
    Elem r = Elem::zero(ctx.alg);
    for (size_t a = 0; a < u.size(); ++a) {
        if (u[a].is_zero()) continue;
        for (size_t b = 0; b < v.size(); ++b) {
            if (v[b].is_zero()) continue;
            r = r + u[a] * v[b] * promote(E.eta.eta[a][b], ctx.alg);
        }
    }
    return r;
}

namespace {

// [e_a, v] by second-slot Leibniz: [e_a, g e_b] = g [e_a,e_b] + (rho(e_a)g) e_b.
Section bracket_basis_left(const CourantDatum& E, const CoeffContext& ctx,
                           size_t a, const Section& v) {
    size_t n = E.rank();
    Section r(n, Elem::zero(ctx.alg));
    for (size_t b = 0; b < n; ++b) {
        if (v[b].is_zero()) continue;
        for (size_t c = 0; c < n; ++c) {
            if (E.structure[a][b][c].is_zero()) continue;
            r[c] = r[c] + v[b] * promote(E.structure[a][b][c], ctx.alg);
        }
        r[b] = r[b] + rho_basis_apply(E, ctx, a, v[b]);
    }
    return r;
}

} // namespace

Section bracket(const CourantDatum& E, const CoeffContext& ctx,
                const Section& u, const Section& v) {
    size_t n = E.rank();
    if (u.size() != n || v.size() != n)
        throw StructuralError("section has wrong rank for this module");
    Section total(n, Elem::zero(ctx.alg));
    for (size_t a = 0; a < n; ++a) {
        if (u[a].is_zero()) continue;
        Section bav = bracket_basis_left(E, ctx, a, v);
        Elem pav = pair_basis_left(E, ctx, a, v);
        for (int p = 0; p < 2; ++p) {
            Elem f = u[a].parity_part(p);
            if (f.is_zero()) continue;
            // [f e_a, v] = f [e_a,v] - f D<v,e_a> + D(f <e_a,v>)
            //              - (-1)^{|f||v|} (rho(v)f) e_a
            total = section_add(total, section_scale(f, bav));
            total = section_sub(total, section_scale(f, d_script(E, ctx, pav)));
            total = section_add(total, d_script(E, ctx, f * pav));
            for (int q = 0; q < 2; ++q) {
                Elem rv = rho_apply(E, ctx, section_parity_part(v, q), f);
                if (rv.is_zero()) continue;
                bool neg = (q * p) % 2 == 0;
                total[a] = neg ? total[a] - rv : total[a] + rv;
            }
        }
    }
    return total;
}

Elem gen_lie_fn(const CourantDatum& E, const CoeffContext& ctx,
                const Section& u, const Elem& f) {
    return rho_apply(E, ctx, u, f);
}

Section gen_lie_section(const CourantDatum& E, const CoeffContext& ctx,
                        const Section& u, const Section& v) {
    return bracket(E, ctx, u, v);
}

Elem gen_lie_density(const CourantDatum& E, const CoeffContext& ctx,
                     const Section& u, const Elem& g) {
    VectorField c = rho_vector_field(E, ctx, u);
    Elem r = Elem::zero(ctx.alg);
    for (size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) r = r + ctx.dcoord(k, c[k] * g);
    return r;
}

Section module_d(const CourantDatum& E, const CoeffContext& ctx,
                 const std::function<Elem(const Elem&)>& d_coeff,
                 const Section& u) {
    size_t n = E.rank();
    Section r(n, Elem::zero(ctx.alg));
    for (size_t a = 0; a < n; ++a) {
        if (u[a].is_zero()) continue;
        r[a] = r[a] + d_coeff(u[a]);
        if (E.mod.dmat.empty()) continue;
        for (int p = 0; p < 2; ++p) {
            Elem f = u[a].parity_part(p);
            if (f.is_zero()) continue;
            for (size_t b = 0; b < n; ++b) {
                if (E.mod.dmat[b][a].is_zero()) continue;
                Elem piece = f * promote(E.mod.dmat[b][a], ctx.alg);
                r[b] = p ? r[b] - piece : r[b] + piece;
            }
        }
    }
    return r;
}

VectorField curvature_R(const CourantDatum& E, const CoeffContext& ctx,
                        const Section& u, const Section& v) {
    size_t nc = E.base().coords.size();
    Section uv = bracket(E, ctx, u, v);
    VectorField r(nc, Elem::zero(ctx.alg));
    size_t coord_gen;
    for (size_t k = 0; k < nc; ++k) {
        coord_gen = E.base().coords[k];
        Elem xk = Elem::generator(ctx.alg, ctx.alg->gen(coord_gen).name);
        Elem a = rho_apply(E, ctx, uv, xk);
        for (int p = 0; p < 2; ++p) {
            Section up = section_parity_part(u, p);
            if (section_zero(up)) continue;
            for (int q = 0; q < 2; ++q) {
                Section vq = section_parity_part(v, q);
                if (section_zero(vq)) continue;
                Elem t = rho_apply(E, ctx, up, rho_apply(E, ctx, vq, xk));
                Elem s = rho_apply(E, ctx, vq, rho_apply(E, ctx, up, xk));
                a = a - t + ((p * q) % 2 ? -Scalar(1) : Scalar(1)) * s;
            }
        }
        r[k] = a;
    }
    return r;
}

Section jacobiator(const CourantDatum& E, const CoeffContext& ctx,
                   const Section& u, const Section& v, const Section& w) {
    size_t n = E.rank();
    Section r(n, Elem::zero(ctx.alg));
    for (int p = 0; p < 2; ++p) {
        Section up = section_parity_part(u, p);
        if (section_zero(up)) continue;
        for (int q = 0; q < 2; ++q) {
            Section vq = section_parity_part(v, q);
            if (section_zero(vq)) continue;
            Section t = bracket(E, ctx, up, bracket(E, ctx, vq, w));
            Section s = bracket(E, ctx, vq, bracket(E, ctx, up, w));
            Section x = bracket(E, ctx, bracket(E, ctx, up, vq), w);
            if ((p * q) % 2) t = section_add(t, s);
            else t = section_sub(t, s);
            r = section_add(r, section_sub(t, x));
        }
    }
    return r;
}

std::vector<Section> default_test_sections(const CourantDatum& E, uint64_t seed,
                                           size_t extra, uint32_t max_degree) {
    const auto& alg = E.base().alg;
    std::vector<Section> out;
    for (size_t a = 0; a < E.rank(); ++a)
        out.push_back(E.mod.basis_section(alg, a));
    std::vector<size_t> gens;
    for (size_t k = 0; k < E.base().coords.size() && k < 2; ++k)
        gens.push_back(E.base().coords[k]);
    for (size_t g = 0; g < alg->size(); ++g)
        if (alg->parity(g)) gens.push_back(g);
    Rng rng(seed);
    for (size_t i = 0; i < extra; ++i) {
        Section s = E.mod.zero_section(alg);
        size_t picks = 1 + rng.below(2);
        for (size_t j = 0; j < picks; ++j) {
            size_t a = rng.below(E.rank());
            Elem c = gens.empty() ? Elem::constant(alg, rng.nonzero_scalar())
                                  : rng.poly(alg, gens, max_degree, 2);
            s[a] = s[a] + c;
        }
        if (section_zero(s)) s[rng.below(E.rank())] = Elem::constant(alg, Scalar(1));
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::string section_desc(const CourantDatum& E, const Section& s) {
    std::ostringstream os;
    bool first = true;
    for (size_t a = 0; a < s.size(); ++a) {
        if (s[a].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << s[a].to_string() << ")*" << E.mod.basis[a].name;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace

AxiomReport check_axioms(const CourantDatum& E, uint64_t seed, uint32_t max_degree) {
    E.validate();
    AxiomReport rep;
    CoeffContext ctx = E.base_ctx();
    const auto& alg = E.base().alg;
    auto secs = default_test_sections(E, seed, 8, max_degree);
    size_t nb = E.rank();
    Rng rng(seed ^ 0xabcdef1234567ull);
    std::vector<size_t> fgens;
    for (size_t k = 0; k < E.base().coords.size() && k < 2; ++k)
        fgens.push_back(E.base().coords[k]);
    for (size_t g = 0; g < alg->size(); ++g)
        if (alg->parity(g)) fgens.push_back(g);
    auto random_f = [&]() {
        return fgens.empty() ? Elem::constant(alg, rng.nonzero_scalar())
                             : rng.poly(alg, fgens, max_degree, 2);
    };

    auto add = [&](const std::string& axiom, bool pass, const std::string& wit) {
        rep.checks.push_back({axiom, pass, pass ? "" : wit});
    };

    // (1) Leibniz and (2) failed antisymmetry on all pairs.
    bool leib = true, anti = true;
    std::string leib_wit, anti_wit;
    for (size_t i = 0; i < secs.size(); ++i)
        for (size_t j = 0; j < secs.size(); ++j) {
            const Section &u = secs[i], &v = secs[j];
            if (leib) {
                Elem f = random_f();
                Section lhs = bracket(E, ctx, u, section_scale(f, v));
                Section rhs = E.mod.zero_section(alg);
                for (int pf = 0; pf < 2; ++pf) {
                    Elem fp = f.parity_part(pf);
                    if (fp.is_zero()) continue;
                    for (int pu = 0; pu < 2; ++pu) {
                        Section up = section_parity_part(u, pu);
                        if (section_zero(up)) continue;
                        Section t = section_scale(fp, bracket(E, ctx, up, v));
                        if ((pf * pu) % 2) t = section_neg(t);
                        rhs = section_add(rhs, t);
                        // the anchor acts here as the plain vector field
                        // rho(u), absorbing the sign of the graded anchor
                        Elem rf = rho_apply(E, ctx, up, fp);
                        rhs = section_add(rhs, section_scale(rf, v));
                    }
                }
                if (!section_eq(lhs, rhs)) {
                    leib = false;
                    leib_wit = "u=" + section_desc(E, u) + "; v=" + section_desc(E, v) +
                               "; f=" + f.to_string();
                }
            }
            if (anti) {
                Section lhs = bracket(E, ctx, u, v);
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) {
                        Section t = bracket(E, ctx, section_parity_part(v, q),
                                            section_parity_part(u, p));
                        if ((p * q) % 2) t = section_neg(t);
                        lhs = section_add(lhs, t);
                    }
                Section rhs = d_script(E, ctx, pair_in(E, ctx, u, v));
                if (!section_eq(lhs, rhs)) {
                    anti = false;
                    anti_wit = "u=" + section_desc(E, u) + "; v=" + section_desc(E, v);
                }
            }
        }
    add("leibniz", leib, leib_wit);
    add("failed-antisymmetry", anti, anti_wit);

    // triples: all basis triples plus random triples from the test set
    std::vector<std::array<size_t, 3>> triples;
    for (size_t a = 0; a < nb; ++a)
        for (size_t b = 0; b < nb; ++b)
            for (size_t c = 0; c < nb; ++c) triples.push_back({a, b, c});
    for (size_t t = 0; t < 20; ++t)
        triples.push_back({rng.below(secs.size()), rng.below(secs.size()),
                           rng.below(secs.size())});

    bool compat = true, jac = true;
    std::string compat_wit, jac_wit;
    for (auto& tr : triples) {
        const Section &u = secs[tr[0]], &v = secs[tr[1]], &w = secs[tr[2]];
        if (compat) {
            Elem lhs = rho_apply(E, ctx, u, pair_in(E, ctx, v, w));
            Elem rhs = pair_in(E, ctx, bracket(E, ctx, u, v), w);
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) {
                    Elem t = pair_in(E, ctx, section_parity_part(v, q),
                                     bracket(E, ctx, section_parity_part(u, p), w));
                    rhs = ((p * q) % 2) ? rhs - t : rhs + t;
                }
            if (lhs != rhs) {
                compat = false;
                compat_wit = "(" + section_desc(E, u) + ", " + section_desc(E, v) +
                             ", " + section_desc(E, w) + ")";
            }
        }
        if (jac) {
            Section j = jacobiator(E, ctx, u, v, w);
            if (!section_zero(j)) {
                jac = false;
                jac_wit = "(" + section_desc(E, u) + ", " + section_desc(E, v) + ", " +
                          section_desc(E, w) + ") -> " + section_desc(E, j);
            }
        }
    }
    add("pairing-compatibility", compat, compat_wit);
    add("jacobi", jac, jac_wit);

    // coisotropy of ker rho: rho eta^{-1} rho^T = 0 over the base ring
    {
        bool ok = true;
        std::string wit;
        size_t nc = E.base().coords.size();
        for (size_t i = 0; i < nc && ok; ++i)
            for (size_t j = 0; j < nc && ok; ++j) {
                Elem s = Elem::zero(alg);
                for (size_t a = 0; a < nb; ++a)
                    for (size_t b = 0; b < nb; ++b) {
                        if (E.eta.eta_inv[a][b].is_zero()) continue;
                        s = s + E.anchor[a][i] * E.eta.eta_inv[a][b] * E.anchor[b][j];
                    }
                if (!s.is_zero()) {
                    ok = false;
                    wit = "coordinates (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        add("coisotropy", ok, wit);
    }

    // differential compatibility of the bracket data
    {
        bool ok = true;
        std::string wit;
        auto dcoeff = [&](const Elem& f) { return E.base().d(f); };
        for (size_t a = 0; a < nb && ok; ++a)
            for (size_t b = 0; b < nb && ok; ++b) {
                Section lhs = module_d(E, ctx, dcoeff, E.structure[a][b]);
                Section da = E.mod.zero_section(alg), db = E.mod.zero_section(alg);
                if (!E.mod.dmat.empty())
                    for (size_t c = 0; c < nb; ++c) {
                        da[c] = E.mod.dmat[c][a];
                        db[c] = E.mod.dmat[c][b];
                    }
                Section rhs = section_add(bracket(E, ctx, da, E.mod.basis_section(alg, b)),
                                          bracket(E, ctx, E.mod.basis_section(alg, a), db));
                if (!section_eq(lhs, rhs)) {
                    ok = false;
                    wit = "(" + E.mod.basis[a].name + "," + E.mod.basis[b].name + ")";
                }
            }
        add("differential-compatibility", ok, wit);
    }

    // curvature and the D-script consequences (Lemma on almost Courant data)
    {
        bool rz = true;
        std::string rwit;
        for (size_t i = 0; i < secs.size() && rz; ++i)
            for (size_t j = 0; j < secs.size() && rz; ++j) {
                VectorField r = curvature_R(E, ctx, secs[i], secs[j]);
                for (auto& c : r)
                    if (!c.is_zero()) {
                        rz = false;
                        rwit = "(" + section_desc(E, secs[i]) + ", " +
                               section_desc(E, secs[j]) + ")";
                        break;
                    }
            }
        add("curvature-vanishes", rz, rwit);

        bool dsok = true;
        std::string dwit;
        for (size_t i = 0; i < secs.size() && dsok; ++i) {
            Elem f = random_f();
            Section df = d_script(E, ctx, f);
            Section lhs = bracket(E, ctx, secs[i], df);
            Section rhs = d_script(E, ctx, rho_apply(E, ctx, secs[i], f));
            if (!section_eq(lhs, rhs)) {
                dsok = false;
                dwit = "[u,Df] != D rho(u) f at u=" + section_desc(E, secs[i]);
            }
            Section z = bracket(E, ctx, df, secs[i]);
            if (!section_zero(z)) {
                dsok = false;
                dwit = "[Df,u] != 0 at u=" + section_desc(E, secs[i]);
            }
            Elem lhs2 = pair_in(E, ctx, secs[i], df);
            Elem rhs2 = rho_apply(E, ctx, secs[i], f);
            if (lhs2 != rhs2) {
                dsok = false;
                dwit = "<u,Df> != rho(u) f at u=" + section_desc(E, secs[i]);
            }
        }
        add("d-script-identities", dsok, dwit);
    }

    return rep;
}

} // namespace courant
