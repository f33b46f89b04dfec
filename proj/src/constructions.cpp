#include "courant/constructions.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace courant {

namespace {

Elem transport(const Elem& f, const AlgebraPtr& target) {
    if (f.algebra() == target) return f;
    std::map<size_t, Elem> images;
    for (size_t i = 0; i < f.algebra()->size(); ++i)
        images[i] = Elem::generator(target, f.algebra()->gen(i).name);
    return f.substituted(target, images);
}

ScalarMat span_matrix(const std::vector<Section>& span) {
    ScalarMat m;
    for (auto& s : span) m.push_back(section_constants(s));
    return m;
}

// Functionals vanishing on the row span (full dual space when the span is 0).
std::vector<ScalarVec> annihilator(const std::vector<ScalarVec>& lspan, size_t dim) {
    if (lspan.empty()) {
        auto id = identity_mat(dim);
        return {id.begin(), id.end()};
    }
    return kernel_basis(lspan);
}

Elem apply_functional(const ScalarVec& a, const Section& u) {
    Elem acc = Elem::zero(u.at(0).algebra());
    for (size_t c = 0; c < u.size(); ++c)
        if (!a[c].is_zero()) acc += a[c] * u[c];
    return acc;
}

uint64_t binom(uint64_t n, uint64_t k) {
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

ScalarMat constant_eta(const CourantDatum& E) {
    size_t n = E.rank();
    ScalarMat m(n, ScalarVec(n, Scalar(0)));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) m[a][b] = E.eta.eta[a][b].constant_value();
    return m;
}

Pairing hyperbolic_pairing(const AlgebraPtr& alg, size_t d) {
    size_t n = 2 * d;
    Pairing p;
    p.eta.assign(n, std::vector<Elem>(n, Elem::zero(alg)));
    p.eta_inv = p.eta;
    for (size_t k = 0; k < d; ++k) {
        p.eta[k][d + k] = p.eta[d + k][k] = Elem::constant(alg, Scalar(1));
        p.eta_inv[k][d + k] = p.eta_inv[d + k][k] = Elem::constant(alg, Scalar(1));
    }
    return p;
}

std::vector<std::vector<Section>> zero_structure(const AlgebraPtr& alg, size_t n) {
    return std::vector<std::vector<Section>>(
        n, std::vector<Section>(n, Section(n, Elem::zero(alg))));
}

// Multi-indices alpha over nvars with |alpha| <= cutoff.
std::vector<std::vector<uint32_t>> multi_indices(size_t nvars, uint32_t cutoff) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur(nvars, 0);
    std::function<void(size_t, uint32_t)> rec = [&](size_t i, uint32_t left) {
        if (i == nvars) {
            out.push_back(cur);
            return;
        }
        for (uint32_t e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, cutoff);
    return out;
}

} // namespace

ScalarVec section_constants(const Section& u) {
    ScalarVec v;
    for (auto& f : u) v.push_back(f.constant_value());
    return v;
}

Section constant_section(const AlgebraPtr& alg, const ScalarVec& v) {
    Section s;
    for (auto& c : v) s.push_back(Elem::constant(alg, c));
    return s;
}

std::vector<Monomial> monomials_up_to(const AlgebraPtr& alg, uint32_t cutoff) {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(size_t, uint32_t)> rec = [&](size_t i, uint32_t left) {
        if (i == alg->size()) {
            out.push_back(cur);
            return;
        }
        rec(i + 1, left);
        uint32_t cap = alg->parity(i) ? 1 : left;
        for (uint32_t e = 1; e <= std::min(cap, left); ++e) {
            cur.push_back({static_cast<uint32_t>(i), e});
            rec(i + 1, left - e);
            cur.pop_back();
        }
    };
    rec(0, cutoff);
    // canonical order within each monomial
    for (auto& m : out)
        std::sort(m.begin(), m.end(), [&](auto& a, auto& b) {
            return alg->key(a.first) < alg->key(b.first);
        });
    return out;
}

bool section_in_span(const FlatReduction& fr, const Section& u) {
    for (auto& a : fr.ann)
        if (!apply_functional(a, u).is_zero()) return false;
    return true;
}

bool section_is_flat(const CourantDatum& E, const IsotropicSubmodule& L,
                     const FlatReduction& fr, const Section& u) {
    auto ctx = E.base_ctx();
    for (auto& l : L.span)
        if (!section_in_span(fr, bracket(E, ctx, l, u))) return false;
    return true;
}

AxiomReport check_isotropic_involutive(const CourantDatum& E,
                                       const IsotropicSubmodule& L) {
    AxiomReport rep;
    auto ctx = E.base_ctx();
    std::string wit;
    for (size_t i = 0; i < L.span.size() && wit.empty(); ++i)
        for (size_t j = i; j < L.span.size(); ++j)
            if (!pair_in(E, ctx, L.span[i], L.span[j]).is_zero()) {
                wit = "<l" + std::to_string(i) + ",l" + std::to_string(j) + "> != 0";
                break;
            }
    rep.checks.push_back({"isotropy", wit.empty(), wit});

    auto lspan = row_space_basis(span_matrix(L.span));
    FlatReduction fr;
    fr.lspan = lspan;
    fr.ann = annihilator(lspan, E.rank());
    wit.clear();
    for (size_t i = 0; i < L.span.size() && wit.empty(); ++i)
        for (size_t j = 0; j < L.span.size(); ++j)
            if (!section_in_span(fr, bracket(E, ctx, L.span[i], L.span[j]))) {
                wit = "[l" + std::to_string(i) + ",l" + std::to_string(j) +
                      "] leaves the span";
                break;
            }
    rep.checks.push_back({"involutivity", wit.empty(), wit});
    return rep;
}

FlatReduction flat_reduction(const CourantDatum& E, const IsotropicSubmodule& L,
                             uint32_t cutoff) {
    const AlgebraPtr& alg = E.base().alg;
    auto ctx = E.base_ctx();
    size_t n = E.rank();

    FlatReduction fr;
    fr.lspan = row_space_basis(span_matrix(L.span));
    fr.ann = annihilator(fr.lspan, n);

    // constant complement basis of L^perp modulo L
    ScalarMat eta = constant_eta(E);
    std::vector<ScalarVec> perp;
    if (fr.lspan.empty()) {
        auto id = identity_mat(n);
        perp.assign(id.begin(), id.end());
    } else {
        perp = kernel_basis(mat_mul(fr.lspan, eta));
    }
    ScalarMat accum = fr.lspan;
    for (auto& v : perp) {
        if (!accum.empty() && in_row_span(accum, v)) continue;
        fr.perp_rep.push_back(v);
        accum.push_back(v);
    }

    // flat solve: unknowns c_{j,m} for sum c_{j,m} mono_m rep_j
    auto monos = monomials_up_to(alg, cutoff);
    size_t ncols = fr.perp_rep.size() * monos.size();
    std::map<std::tuple<size_t, size_t, Monomial>, size_t> row_of;
    std::vector<ScalarVec> mat;
    for (size_t j = 0; j < fr.perp_rep.size(); ++j) {
        Section rep = constant_section(alg, fr.perp_rep[j]);
        for (size_t m = 0; m < monos.size(); ++m) {
            size_t col = j * monos.size() + m;
            Elem f = Elem::monomial(alg, monos[m], Scalar(1));
            Section gen = section_scale(f, rep);
            for (size_t i = 0; i < L.span.size(); ++i) {
                Section br = bracket(E, ctx, L.span[i], gen);
                for (size_t t = 0; t < fr.ann.size(); ++t) {
                    Elem e = apply_functional(fr.ann[t], br);
                    for (auto& term : e.terms()) {
                        auto key = std::make_tuple(i, t, term.mono);
                        auto it = row_of.find(key);
                        if (it == row_of.end()) {
                            it = row_of.emplace(key, mat.size()).first;
                            mat.emplace_back(ncols, Scalar(0));
                        }
                        mat[it->second][col] += term.coeff;
                    }
                }
            }
        }
    }
    std::vector<ScalarVec> kern;
    if (mat.empty()) {
        auto id = identity_mat(ncols);
        kern.assign(id.begin(), id.end());
    } else {
        kern = kernel_basis(mat);
    }
    for (auto& c : kern) {
        Section u(n, Elem::zero(alg));
        for (size_t j = 0; j < fr.perp_rep.size(); ++j)
            for (size_t m = 0; m < monos.size(); ++m) {
                const Scalar& coef = c[j * monos.size() + m];
                if (coef.is_zero()) continue;
                Elem f = Elem::monomial(alg, monos[m], coef);
                u = section_add(u, section_scale(f, constant_section(alg, fr.perp_rep[j])));
            }
        fr.flat.push_back(std::move(u));
    }
    return fr;
}

CourantDatum reduce_point(const CourantDatum& E, const IsotropicSubmodule& L) {
    if (!E.base().coords.empty())
        throw StructuralError("reduce_point requires a datum over a point");
    AxiomReport hyp = check_isotropic_involutive(E, L);
    for (auto& c : hyp.checks)
        if (!c.pass) throw ValidationError(c.axiom + " fails: " + c.witness);

    auto ctx = E.base_ctx();
    FlatReduction fr = flat_reduction(E, L, 0);

    std::vector<ScalarVec> reps;
    for (auto& u : fr.flat) reps.push_back(section_constants(u));
    size_t nr = reps.size();

    ScalarMat eta = constant_eta(E);
    ScalarMat red_eta(nr, ScalarVec(nr, Scalar(0)));
    for (size_t r = 0; r < nr; ++r)
        for (size_t s = 0; s < nr; ++s)
            for (size_t a = 0; a < E.rank(); ++a)
                for (size_t b = 0; b < E.rank(); ++b)
                    red_eta[r][s] += reps[r][a] * eta[a][b] * reps[s][b];

    // columns: flat representatives, then the span of L
    ScalarMat cols = reps;
    for (auto& l : fr.lspan) cols.push_back(l);
    ScalarMat solve_mat = mat_transpose(cols);
    std::vector<ScalarMat> constants(nr, ScalarMat(nr, ScalarVec(nr, Scalar(0))));
    for (size_t r = 0; r < nr; ++r)
        for (size_t s = 0; s < nr; ++s) {
            Section br = bracket(E, ctx, fr.flat[r], fr.flat[s]);
            ScalarVec x;
            if (!solve(solve_mat, section_constants(br), x))
                throw ValidationError("reduced bracket leaves the flat subspace");
            for (size_t u = 0; u < nr; ++u) constants[r][s][u] = x[u];
        }
    return quadratic_lie(E.name + "_reduced", constants, red_eta);
}

CourantDatum complexified_standard(int d) {
    std::vector<std::string> names;
    for (int k = 1; k <= d; ++k) names.push_back("z" + std::to_string(k));
    for (int k = 1; k <= d; ++k) names.push_back("zb" + std::to_string(k));
    Cdga base = polynomial_cdga(CoefficientField::GaussianRationals, names);

    CourantDatum E;
    E.name = "complexified_standard_c" + std::to_string(d);
    E.mod.base = base;
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"Dz" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"Dzb" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"dz" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"dzb" + std::to_string(k), Grade{0, 0}});
    E.eta = hyperbolic_pairing(base.alg, 2 * d);
    E.anchor.assign(4 * d, VectorField(2 * d, Elem::zero(base.alg)));
    for (int a = 0; a < 2 * d; ++a)
        E.anchor[a][a] = Elem::constant(base.alg, Scalar(1));
    E.structure = zero_structure(base.alg, 4 * d);
    return E;
}

CourantDatum holomorphic_standard(int d) {
    std::vector<std::string> names;
    for (int k = 1; k <= d; ++k) names.push_back("z" + std::to_string(k));
    Cdga base = polynomial_cdga(CoefficientField::GaussianRationals, names);

    CourantDatum E;
    E.name = "holomorphic_standard_c" + std::to_string(d);
    E.mod.base = base;
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"Dz" + std::to_string(k), Grade{0, 0}});
    for (int k = 1; k <= d; ++k)
        E.mod.basis.push_back({"dz" + std::to_string(k), Grade{0, 0}});
    E.eta = hyperbolic_pairing(base.alg, d);
    E.anchor.assign(2 * d, VectorField(d, Elem::zero(base.alg)));
    for (int k = 0; k < d; ++k)
        E.anchor[k][k] = Elem::constant(base.alg, Scalar(1));
    E.structure = zero_structure(base.alg, 2 * d);
    return E;
}

namespace {

// Section of holomorphic_standard(d) carried into a rank-4d complexified
// model: coefficients by generator name, basis by the supplied images.
Section carry_section(const CourantDatum& E, const std::vector<Section>& images,
                      const Section& u) {
    Section out(E.rank(), Elem::zero(E.base().alg));
    for (size_t a = 0; a < u.size(); ++a) {
        Elem f = transport(u[a], E.base().alg);
        out = section_add(out, section_scale(f, images[a]));
    }
    return out;
}

// Shared comparison: pairing, anchor on z-coordinates, bracket modulo L.
void compare_with_holomorphic(AxiomReport& rep, const CourantDatum& E,
                              const CourantDatum& H, const FlatReduction& fr,
                              const std::vector<Section>& images,
                              uint64_t seed, const std::string& prefix) {
    auto ctx = E.base_ctx();
    auto hctx = H.base_ctx();
    auto sections = default_test_sections(H, seed);
    int d = static_cast<int>(H.base().coords.size());

    std::string wit_pair, wit_anchor, wit_bracket;
    for (size_t i = 0; i < sections.size(); ++i)
        for (size_t j = 0; j < sections.size(); ++j) {
            const Section& u = sections[i];
            const Section& v = sections[j];
            Section cu = carry_section(E, images, u);
            Section cv = carry_section(E, images, v);
            std::string at = " at section pair (" + std::to_string(i) + "," +
                             std::to_string(j) + ")";
            if (wit_pair.empty() &&
                pair_in(E, ctx, cu, cv) !=
                    transport(pair_in(H, hctx, u, v), E.base().alg))
                wit_pair = "pairing mismatch" + at;
            if (wit_anchor.empty()) {
                // the induced anchor is the action on flat functions, so only
                // the flat coordinates are compared
                for (int k = 0; k < d; ++k) {
                    Elem ek = Elem::generator(E.base().alg, E.base().coords[k]);
                    Elem lhs = rho_apply(E, ctx, cu, ek);
                    Elem rhs = transport(rho_apply(H, hctx, u,
                                                   Elem::generator(H.base().alg,
                                                                   H.base().coords[k])),
                                         E.base().alg);
                    if (lhs != rhs) {
                        wit_anchor = "anchor mismatch on coordinate " +
                                     std::to_string(k) + at;
                        break;
                    }
                }
            }
            if (wit_bracket.empty()) {
                Section diff = section_sub(bracket(E, ctx, cu, cv),
                                           carry_section(E, images, bracket(H, hctx, u, v)));
                if (!section_in_span(fr, diff))
                    wit_bracket = "bracket mismatch modulo L" + at;
            }
        }
    rep.checks.push_back({prefix + "-pairing", wit_pair.empty(), wit_pair});
    rep.checks.push_back({prefix + "-anchor", wit_anchor.empty(), wit_anchor});
    rep.checks.push_back({prefix + "-bracket", wit_bracket.empty(), wit_bracket});
}

// z^alpha e for every holomorphic basis image e and |alpha| <= cutoff.
std::vector<Section> holomorphic_candidates(const CourantDatum& E,
                                            const std::vector<Section>& images,
                                            int d, uint32_t cutoff) {
    std::vector<Section> out;
    auto alphas = multi_indices(d, cutoff);
    for (auto& img : images)
        for (auto& alpha : alphas) {
            Elem f = Elem::constant(E.base().alg, Scalar(1));
            for (int k = 0; k < d; ++k)
                if (alpha[k])
                    f = f * Elem::generator(E.base().alg, E.base().coords[k]).pow(alpha[k]);
            out.push_back(section_scale(f, img));
        }
    return out;
}

} // namespace

ReductionResult reduce_dolbeault(int d, uint32_t cutoff, uint64_t seed) {
    CourantDatum E = complexified_standard(d);
    IsotropicSubmodule L;
    for (int k = 0; k < d; ++k)
        L.span.push_back(E.mod.basis_section(E.base().alg, d + k)); // Dzb_k

    ReductionResult out;
    out.report = check_isotropic_involutive(E, L);
    out.data = flat_reduction(E, L, cutoff);
    const FlatReduction& fr = out.data;

    size_t expect = 2 * static_cast<size_t>(d) * binom(cutoff + d, d);
    out.report.checks.push_back(
        {"flat-dimension", fr.flat.size() == expect,
         fr.flat.size() == expect
             ? ""
             : "got " + std::to_string(fr.flat.size()) + ", expected " +
                   std::to_string(expect)});

    // basis images of the closed-form reduced algebroid inside E
    CourantDatum H = holomorphic_standard(d);
    std::vector<Section> images;
    for (int k = 0; k < d; ++k)
        images.push_back(E.mod.basis_section(E.base().alg, k)); // Dz_k
    for (int k = 0; k < d; ++k)
        images.push_back(E.mod.basis_section(E.base().alg, 2 * d + k)); // dz_k

    std::string wit;
    auto cands = holomorphic_candidates(E, images, d, cutoff);
    for (size_t i = 0; i < cands.size(); ++i)
        if (!section_is_flat(E, L, fr, cands[i])) {
            wit = "holomorphic candidate " + std::to_string(i) + " is not flat";
            break;
        }
    out.report.checks.push_back({"holomorphic-flat", wit.empty(), wit});

    compare_with_holomorphic(out.report, E, H, fr, images, seed, "reduced");

    out.reduced = H;
    out.reduced.name = E.name + "_reduced";
    AxiomReport ax = check_axioms(out.reduced, seed);
    out.report.checks.push_back(
        {"reduced-axioms", ax.pass(), ax.pass() ? "" : "axiom failure on the reduced datum"});
    return out;
}

Elem ScalarsMap::map(const Elem& f) const {
    std::map<size_t, Elem> imgs;
    for (size_t i = 0; i < f.algebra()->size(); ++i) {
        auto it = images.find(i);
        if (it == images.end())
            throw StructuralError("scalars map is missing an image for generator " +
                                  f.algebra()->gen(i).name);
        imgs[i] = it->second;
    }
    return f.substituted(target.alg, imgs);
}

Section ScalarsMap::map_section(const Section& u) const {
    Section out;
    for (auto& f : u) out.push_back(map(f));
    return out;
}

namespace {

Elem vf_apply(const Cdga& base, const VectorField& v, const Elem& f) {
    Elem acc = Elem::zero(f.algebra());
    for (size_t k = 0; k < base.coords.size(); ++k)
        if (!v[k].is_zero()) acc += v[k] * base.coord_derive(k, f);
    return acc;
}

} // namespace

AxiomReport check_lift(const ScalarsMap& m, const CourantDatum& E) {
    AxiomReport rep;
    const AlgebraPtr& salg = m.source.alg;
    const AlgebraPtr& talg = m.target.alg;
    auto tctx = CoeffContext::partials(m.target, talg);
    size_t n = E.rank(), nt = m.target.coords.size();

    std::string wit;
    for (size_t i = 0; i < salg->size(); ++i) {
        Elem g = Elem::generator(salg, i);
        if (m.map(m.source.d(g)) != m.target.d(m.map(g))) {
            wit = "i does not intertwine d on " + salg->gen(i).name;
            break;
        }
    }
    rep.checks.push_back({"differential-intertwine", wit.empty(), wit});

    wit.clear();
    for (size_t a = 0; a < n && wit.empty(); ++a)
        for (size_t b = 0; b < n; ++b) {
            Section s = m.map_section(E.structure[a][b]);
            VectorField lhs(nt, Elem::zero(talg));
            for (size_t c = 0; c < n; ++c)
                for (size_t k = 0; k < nt; ++k)
                    lhs[k] += s[c] * m.lifted_anchor[c][k];
            VectorField rhs = vf_commutator(m.target, tctx, m.lifted_anchor[a],
                                            m.lifted_anchor[b]);
            for (size_t k = 0; k < nt; ++k)
                if (lhs[k] != rhs[k]) {
                    wit = "bracket morphism fails at (" + std::to_string(a) + "," +
                          std::to_string(b) + ")";
                    break;
                }
            if (!wit.empty()) break;
        }
    rep.checks.push_back({"anchor-morphism", wit.empty(), wit});

    wit.clear();
    for (size_t a = 0; a < n && wit.empty(); ++a)
        for (size_t k = 0; k < m.source.coords.size(); ++k) {
            Elem img = m.map(Elem::generator(salg, m.source.coords[k]));
            Elem base_val = k < E.anchor[a].size() ? E.anchor[a][k] : Elem::zero(salg);
            if (vf_apply(m.target, m.lifted_anchor[a], img) != m.map(base_val)) {
                wit = "restriction fails for rho(e_" + std::to_string(a) +
                      ") on coordinate " + std::to_string(k);
                break;
            }
        }
    rep.checks.push_back({"anchor-restriction", wit.empty(), wit});

    wit.clear();
    for (size_t j = 0; j < nt && wit.empty(); ++j)
        for (size_t k = 0; k < nt; ++k) {
            Elem acc = Elem::zero(talg);
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b) {
                    if (m.lifted_anchor[a][j].is_zero() ||
                        m.lifted_anchor[b][k].is_zero())
                        continue;
                    acc += m.lifted_anchor[a][j] * m.map(E.eta.eta_inv[a][b]) *
                           m.lifted_anchor[b][k];
                }
            if (!acc.is_zero()) {
                wit = "rho' eta^{-1} rho'^T nonzero at (" + std::to_string(j) + "," +
                      std::to_string(k) + ")";
                break;
            }
        }
    rep.checks.push_back({"coisotropy", wit.empty(), wit});
    return rep;
}

CourantDatum extend_scalars(const CourantDatum& E, const ScalarsMap& m) {
    AxiomReport lift = check_lift(m, E);
    for (auto& c : lift.checks)
        if (!c.pass)
            throw ValidationError("lift check failed: " + c.axiom + " (" + c.witness + ")");

    CourantDatum out;
    out.name = E.name + "_ext";
    out.mod.base = m.target;
    out.mod.basis = E.mod.basis;
    for (auto& row : E.mod.dmat) {
        std::vector<Elem> r;
        for (auto& f : row) r.push_back(m.map(f));
        out.mod.dmat.push_back(std::move(r));
    }
    size_t n = E.rank();
    out.eta.eta.assign(n, std::vector<Elem>(n, Elem::zero(m.target.alg)));
    out.eta.eta_inv = out.eta.eta;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            out.eta.eta[a][b] = m.map(E.eta.eta[a][b]);
            out.eta.eta_inv[a][b] = m.map(E.eta.eta_inv[a][b]);
        }
    out.anchor = m.lifted_anchor;
    out.structure.assign(n, std::vector<Section>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            out.structure[a][b] = m.map_section(E.structure[a][b]);
    out.validate();
    return out;
}

AxiomReport cy_flat_reduction_check(int d, uint32_t cutoff, uint64_t seed,
                                    bool allow_even) {
    if (d % 2 == 0 && !allow_even)
        throw ValidationError("cy_flat_reduction_check expects odd complex dimension");

    CourantDatum E = complexified_standard(d);
    const AlgebraPtr& alg = E.base().alg;
    size_t n = E.rank();

    // l_k = e^{i omega} d/dzb_k = Dzb_k + dz_k for omega = i sum dz^k dzb^k
    IsotropicSubmodule L;
    for (int k = 0; k < d; ++k)
        L.span.push_back(section_add(E.mod.basis_section(alg, d + k),
                                     E.mod.basis_section(alg, 2 * d + k)));

    AxiomReport rep = check_isotropic_involutive(E, L);

    // fiberwise L and conj(L) meet only in zero
    ScalarMat stack = span_matrix(L.span);
    for (int k = 0; k < d; ++k) {
        ScalarVec v(n, Scalar(0));
        v[k] = Scalar(1);          // Dz_k
        v[3 * d + k] = Scalar(1);  // dzb_k
        stack.push_back(v);
    }
    bool transverse = rank(stack) == 2 * static_cast<size_t>(d);
    rep.checks.push_back({"transverse-conjugate", transverse,
                          transverse ? "" : "L meets its conjugate"});

    FlatReduction fr = flat_reduction(E, L, cutoff);
    bool prank = fr.perp_rep.size() == 2 * static_cast<size_t>(d);
    rep.checks.push_back({"perp-rank", prank,
                          prank ? "" : "L^perp/L has rank " + std::to_string(fr.perp_rep.size())});
    size_t expect = 2 * static_cast<size_t>(d) * binom(cutoff + d, d);
    rep.checks.push_back(
        {"flat-dimension", fr.flat.size() == expect,
         fr.flat.size() == expect
             ? ""
             : "got " + std::to_string(fr.flat.size()) + ", expected " +
                   std::to_string(expect)});

    // tau(d/dz_k) = Dz_k - dzb_k, tau(dz_k) = dz_k/2 - Dzb_k/2
    std::vector<Section> images;
    for (int k = 0; k < d; ++k)
        images.push_back(section_sub(E.mod.basis_section(alg, k),
                                     E.mod.basis_section(alg, 3 * d + k)));
    Elem half = Elem::constant(alg, Scalar(1) / Scalar(2));
    for (int k = 0; k < d; ++k)
        images.push_back(section_scale(
            half, section_sub(E.mod.basis_section(alg, 2 * d + k),
                              E.mod.basis_section(alg, d + k))));

    std::string wit;
    auto cands = holomorphic_candidates(E, images, d, cutoff);
    for (size_t i = 0; i < cands.size(); ++i)
        if (!section_is_flat(E, L, fr, cands[i])) {
            wit = "tau candidate " + std::to_string(i) + " is not flat";
            break;
        }
    rep.checks.push_back({"tau-flat", wit.empty(), wit});

    auto ctx = E.base_ctx();
    Elem norm = pair_in(E, ctx, images[0], images[static_cast<size_t>(d)]);
    bool unit = norm == Elem::constant(alg, Scalar(1));
    rep.checks.push_back({"tau-normalization", unit,
                          unit ? "" : "<tau(d/dz1),tau(dz1)> = " + norm.to_string()});

    // [tau(d/dz1), tau(z1 d/dz1)] = tau(d/dz1), exactly
    Elem z1 = Elem::generator(alg, E.base().coords[0]);
    Section der = bracket(E, ctx, images[0], section_scale(z1, images[0]));
    bool dok = section_eq(der, images[0]);
    rep.checks.push_back({"tau-derivative", dok,
                          dok ? "" : "[tau(d/dz1), tau(z1 d/dz1)] != tau(d/dz1)"});

    CourantDatum H = holomorphic_standard(d);
    compare_with_holomorphic(rep, E, H, fr, images, seed, "tau");
    return rep;
}

} // namespace courant
