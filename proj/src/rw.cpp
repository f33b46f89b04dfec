#include "courant/rw.hpp"

namespace courant {

Section rw_mu2(const CourantDatum& E, const CoeffContext& ctx, const Section& x1,
               const Section& x2) {
    Section b = bracket(E, ctx, x1, x2);
    Elem p = pair_in(E, ctx, x1, x2);
    Section corr = d_script(E, ctx, p);
    Scalar half(Rational(1, 2));
    for (size_t a = 0; a < b.size(); ++a) b[a] = b[a] - half * corr[a];
    return b;
}

Elem rw_mu2_fn(const CourantDatum& E, const CoeffContext& ctx, const Section& x,
               const Elem& f) {
    return Scalar(Rational(1, 2)) * rho_apply(E, ctx, x, f);
}

Elem rw_mu3(const CourantDatum& E, const CoeffContext& ctx, const Section& x1,
            const Section& x2, const Section& x3) {
    Elem s = pair_in(E, ctx, bracket(E, ctx, x1, x2), x3) +
             pair_in(E, ctx, bracket(E, ctx, x2, x3), x1) +
             pair_in(E, ctx, bracket(E, ctx, x3, x1), x2);
    return Scalar(Rational(-1, 6)) * s;
}

Section RwModel::xi_section() const {
    Section s;
    s.reserve(xi_fields.size());
    for (size_t a : xi_fields) s.push_back(jets.field_combination(a));
    return s;
}

RwModel rw_construct(const CourantDatum& E, uint32_t max_order,
                     bool with_variations, bool validate) {
    if (validate) {
        AxiomReport rep = check_axioms(E, 1);
        if (!rep.pass())
            throw ValidationError("Courant axioms fail on " + E.name);
    }
    std::vector<JetField> fields;
    fields.push_back({"f", 2, 0});
    for (size_t a = 0; a < E.rank(); ++a)
        fields.push_back({"xi." + E.mod.basis[a].name, 1, 0});
    JetModel J(E.base(), fields, max_order, with_variations, std::nullopt);
    RwModel M{E, std::move(J), 0, {}};
    for (size_t a = 0; a < E.rank(); ++a) M.xi_fields.push_back(a + 1);
    return M;
}

JetModel::Evo rw_vector_field(const RwModel& M) {
    const JetModel& J = M.jets;
    CoeffContext ctx = M.ctx();
    Elem f = M.f_combination();
    Section xi = M.xi_section();
    Section lxx = bracket(M.E, ctx, xi, xi);
    Scalar half(Rational(1, 2)), twelfth(Rational(1, 12));

    Elem qf = J.dbar(f) + half * rho_apply(M.E, ctx, xi, f) -
              twelfth * pair_in(M.E, ctx, xi, lxx);

    auto dbar_coeff = [&](const Elem& e) { return J.dbar(e); };
    Section qxi = module_d(M.E, ctx, dbar_coeff, xi);
    Section df = d_script(M.E, ctx, f);
    for (size_t a = 0; a < qxi.size(); ++a)
        qxi[a] = qxi[a] + df[a] + half * lxx[a];

    auto Q = J.make_evo(1);
    J.set_evo_field(Q, M.f_field, qf);
    for (size_t a = 0; a < M.xi_fields.size(); ++a)
        J.set_evo_field(Q, M.xi_fields[a], qxi[a]);
    return Q;
}

HomologicalReport check_homological(const RwModel& M) {
    const JetModel& J = M.jets;
    auto Q = rw_vector_field(M);
    HomologicalReport rep;
    for (size_t f = 0; f < J.fields().size(); ++f)
        for (size_t s = 0; s < J.num_subsets(); ++s) {
            Elem r = J.apply_evolutionary(Q, Q.comps[f][s]);
            if (!r.is_zero()) {
                rep.pass = false;
                rep.witness = "Q^2 residue at " +
                              J.alg()->gen(J.jet_gen(f, s, size_t(0))).name + ": " +
                              r.to_string();
                return rep;
            }
        }
    return rep;
}

namespace {

// Base extension adjoining odd degree-1 ghosts (zero differential) plus one
// even perturbation parameter.
struct GhostSetup {
    AlgebraPtr alg;
    CoeffContext ctx;
    std::vector<size_t> ghosts;
    size_t t_gen;
};

GhostSetup ghost_setup(const CourantDatum& E, size_t nghost) {
    std::vector<Generator> extra;
    for (size_t i = 0; i < nghost; ++i)
        extra.push_back({"gh" + std::to_string(i + 1), Grade{1, 0}});
    extra.push_back({"t.pert", even_grade(0)});
    AlgebraPtr alg = E.base().alg->extended(extra);
    GhostSetup gs;
    gs.alg = alg;
    gs.ctx = CoeffContext::partials(E.base(), alg);
    for (size_t i = 0; i < nghost; ++i)
        gs.ghosts.push_back(alg->index_of("gh" + std::to_string(i + 1)));
    gs.t_gen = alg->index_of("t.pert");
    return gs;
}

// Random odd section: each component is a sum of ghost * (even polynomial in
// up to two coordinates).
Section random_odd_section(const CourantDatum& E, const GhostSetup& gs, Rng& rng) {
    std::vector<size_t> coords;
    for (size_t k = 0; k < E.base().coords.size() && k < 2; ++k)
        coords.push_back(E.base().coords[k]);
    Section s(E.rank(), Elem::zero(gs.alg));
    for (size_t a = 0; a < E.rank(); ++a) {
        size_t picks = rng.below(2) + 1;
        for (size_t j = 0; j < picks; ++j) {
            Elem g = Elem::generator(gs.alg, gs.ghosts[rng.below(gs.ghosts.size())]);
            Elem c = coords.empty() ? Elem::constant(gs.alg, rng.small_scalar())
                                    : rng.poly(gs.alg, coords, 2, 2);
            s[a] = s[a] + g * c;
        }
    }
    return s;
}

} // namespace

std::vector<IdentityCheck> proof_identities(const CourantDatum& E, uint64_t seed,
                                            size_t count) {
    GhostSetup gs = ghost_setup(E, 4);
    const CoeffContext& ctx = gs.ctx;
    Rng rng(seed);
    std::vector<IdentityCheck> out;
    bool ok1 = true, ok2 = true, ok3 = true;
    std::string w1, w2, w3;
    std::vector<char> tmask(gs.alg->size(), 0);
    tmask[gs.t_gen] = 1;
    Elem t = Elem::generator(gs.alg, gs.t_gen);

    for (size_t it = 0; it < count; ++it) {
        Section xi = random_odd_section(E, gs, rng);
        Section zeta = random_odd_section(E, gs, rng);
        Section lxx = bracket(E, ctx, xi, xi);

        // (1) first-order perturbation: the t-linear part of
        // <L_{xi+t zeta}(xi+t zeta), xi+t zeta> equals 3 t <L_xi zeta, xi>
        if (ok1) {
            Section xit = section_add(xi, section_scale(t, zeta));
            Elem F = pair_in(E, ctx, bracket(E, ctx, xit, xit), xit);
            Elem lhs = F.degree_part_in(tmask, 1);
            Elem rhs = Scalar(3) * (t * pair_in(E, ctx, bracket(E, ctx, xi, zeta), xi));
            if (lhs != rhs) {
                ok1 = false;
                w1 = "iteration " + std::to_string(it);
            }
        }

        // (2) L_{L_xi xi} = 2 L_xi L_xi on ring elements and on sections
        if (ok2) {
            std::vector<size_t> coords;
            for (size_t k = 0; k < E.base().coords.size() && k < 2; ++k)
                coords.push_back(E.base().coords[k]);
            Elem f = coords.empty() ? Elem::constant(gs.alg, rng.nonzero_scalar())
                                    : rng.poly(gs.alg, coords, 2, 3);
            Elem lf = rho_apply(E, ctx, lxx, f);
            Elem rf = Scalar(2) * rho_apply(E, ctx, xi, rho_apply(E, ctx, xi, f));
            Section lv = bracket(E, ctx, lxx, zeta);
            Section rv = section_scale(Elem::constant(gs.alg, Scalar(2)),
                                       bracket(E, ctx, xi, bracket(E, ctx, xi, zeta)));
            if (lf != rf || !section_eq(lv, rv)) {
                ok2 = false;
                w2 = "iteration " + std::to_string(it);
            }
        }

        // (3) <L_xi xi, L_xi xi> = 4 <xi, L_xi L_xi xi>
        if (ok3) {
            Elem lhs = pair_in(E, ctx, lxx, lxx);
            Elem rhs = Scalar(4) * pair_in(E, ctx, xi, bracket(E, ctx, xi, lxx));
            if (lhs != rhs) {
                ok3 = false;
                w3 = "iteration " + std::to_string(it);
            }
        }
    }
    out.push_back({"perturbation-cubic", ok1, w1});
    out.push_back({"lie-square", ok2, w2});
    out.push_back({"pairing-square", ok3, w3});
    return out;
}

} // namespace courant
