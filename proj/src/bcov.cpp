#include "courant/bcov.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace courant {

BcovModel make_bcov(int n, uint32_t max_order) {
    if (n < 1) throw StructuralError("make_bcov needs n >= 1");
    // only odd n yields an odd pairing, hence a BV theory
    if (n % 2 == 0)
        throw ValidationError("type I model needs odd complex dimension");
    CourantDatum E = dolbeault_standard(n);
    std::vector<JetField> fields;
    fields.push_back({"beta", 2, 0});
    for (int i = 1; i <= n; ++i) fields.push_back({"mu" + std::to_string(i), 1, 0});
    for (int i = 1; i <= n; ++i) fields.push_back({"gam" + std::to_string(i), 1, 0});
    fields.push_back({"nu", 0, 0});
    JetModel J(E.base(), std::move(fields), max_order, true, n);
    BcovModel b{n, std::move(J), 0, size_t(2 * n + 1), {}, {}};
    for (int i = 0; i < n; ++i) b.mu_fields.push_back(size_t(1 + i));
    for (int i = 0; i < n; ++i) b.gam_fields.push_back(size_t(1 + n + i));
    return b;
}

Elem geometric_series(const Elem& x, uint32_t K) {
    Elem r = Elem::constant(x.algebra(), Scalar(1));
    Elem p = Elem::constant(x.algebra(), Scalar(1));
    for (uint32_t k = 1; k <= K; ++k) {
        p = p * x;
        r = r + p;
    }
    return r;
}

Elem bcov_symplectic(const BcovModel& b) {
    const JetModel& J = b.jets;
    Elem s = J.delta(b.beta()) * J.delta(b.nu());
    for (int i = 0; i < b.n; ++i) s = s + J.delta(b.mu(i)) * J.delta(b.gam(i));
    // overall sign fixed by the delta orientation of i_X omega = delta S
    return -(J.vol() * s);
}

Elem bcov_internal(const BcovModel& b) {
    const JetModel& J = b.jets;
    Elem s = -(b.nu() * J.dbar(b.beta()));
    for (int i = 0; i < b.n; ++i) s = s + b.mu(i) * J.dbar(b.gam(i));
    return J.vol() * s;
}

Elem bcov_interaction(const BcovModel& b, uint32_t K) {
    const JetModel& J = b.jets;
    Elem s = Elem::zero(J.alg());
    for (int i = 0; i < b.n; ++i) s = s + b.mu(i) * b.del(i, b.beta());
    Elem quad = Elem::zero(J.alg());
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j)
            quad = quad + b.mu(i) * (b.mu(j) * b.del(i, b.gam(j)));
    // 1/2 i_mu i_mu del gamma against 1/(1 - nu): the antisymmetrized
    // contraction collapses to minus the single ordered sum `quad`
    Elem ser = geometric_series(b.nu(), K);
    s = s - ser * quad;
    return J.vol() * s;
}

Elem bcov_action(const BcovModel& b, uint32_t K) {
    return bcov_internal(b) + bcov_interaction(b, K);
}

JetModel::Evo bcov_dbar_field(const BcovModel& b) {
    const JetModel& J = b.jets;
    auto X = J.make_evo(1);
    for (size_t f = 0; f < J.fields().size(); ++f)
        J.set_evo_field(X, f, J.dbar(J.field_combination(f)));
    return X;
}

Elem pv_divergence(const BcovModel& b, const std::vector<Elem>& mu_comps) {
    if (mu_comps.size() != size_t(b.n))
        throw StructuralError("polyvector needs n components");
    Elem r = Elem::zero(b.jets.alg());
    for (int i = 0; i < b.n; ++i) r = r + b.del(i, mu_comps[i]);
    return r;
}

Elem holomorphic_partial(const BcovModel& b, size_t i, const Elem& f) {
    return b.del(i, f);
}

namespace {

// S_dbar + lambda (L_x f + 1/2 x v L_x alpha) against an arbitrary
// realization of the contact fields; `xi` holds the x-block then the
// alpha-block on the frame of E.
Elem lemma_density(const CourantDatum& E, const CoeffContext& ctx,
                   const std::function<Elem(const Elem&)>& dbar,
                   const Elem& lambda, const Section& xi, const Elem& f) {
    size_t n = xi.size() / 2;
    Scalar half(Rational(1, 2));
    Elem inner = dbar(f) + half * pair_in(E, ctx, xi, module_d(E, ctx, dbar, xi));
    inner = inner + rho_apply(E, ctx, xi, f);
    Elem cub = Elem::zero(ctx.alg);
    for (size_t j = 0; j < n; ++j) {
        Elem lxa = Elem::zero(ctx.alg);
        for (size_t i = 0; i < n; ++i)
            lxa = lxa + xi[i] * ctx.dcoord(i, xi[n + j]) +
                  ctx.dcoord(j, xi[i]) * xi[n + i];
        cub = cub + xi[j] * lxa;
    }
    inner = inner + half * cub;
    return lambda * inner;
}

// Images of the contact fields inside the BCOV jet algebra: f, the x- and
// alpha-blocks of xi, and the scalar lambda = c0 (1 - nu), with the
// geometric series for 1/(1-nu) truncated at K.
struct Psi {
    Scalar c0;
    Elem f;
    Section xi;
    Elem lam_scalar;
};

Psi make_psi(const BcovModel& b, uint32_t K, bool drop_quadratic) {
    const JetModel& J = b.jets;
    size_t n = size_t(b.n);
    Psi p;
    p.c0 = (b.n % 2) ? Scalar(1) : Scalar(-1); // (-1)^{n+1}
    Elem nu = b.nu();
    Elem ser = geometric_series(nu, K); // 1/(1-nu) truncated
    p.f = b.beta();
    if (!drop_quadratic) {
        Elem muga = Elem::zero(J.alg());
        for (size_t i = 0; i < n; ++i) muga = muga + b.mu(i) * b.gam(i);
        p.f = p.f - Scalar(Rational(1, 2)) * (muga * ser);
    }
    p.xi.resize(2 * n, Elem::zero(J.alg()));
    for (size_t i = 0; i < n; ++i) {
        p.xi[i] = p.c0 * (b.mu(i) * ser);
        p.xi[n + i] = p.c0 * b.gam(i);
    }
    p.lam_scalar = p.c0 * (Elem::constant(J.alg(), Scalar(1)) - nu);
    return p;
}

std::vector<char> nu_mask(const BcovModel& b) {
    const JetModel& J = b.jets;
    std::vector<char> mask(J.alg()->size(), 0);
    for (size_t s = 0; s < J.num_subsets(); ++s)
        for (size_t a = 0; a < J.num_alpha(); ++a) {
            mask[J.jet_gen(b.nu_field, s, a)] = 1;
            mask[J.var_gen(b.nu_field, s, a)] = 1;
        }
    return mask;
}

} // namespace

Elem ccm_lemma_action(const ContactModel& m) {
    if (m.E.rank() % 2 != 0)
        throw StructuralError("lemma action needs an even-rank split frame");
    CoeffContext ctx = m.ctx();
    auto dbar = [&](const Elem& e) { return m.jets.dbar(e); };
    return lemma_density(m.E, ctx, dbar, m.lambda(), m.xi_section(), m.f_combination());
}

FieldRedefinition make_redefinition(const ContactModel& c, const BcovModel& b,
                                    uint32_t K, bool drop_quadratic) {
    const JetModel& C = c.jets;
    const JetModel& B = b.jets;
    if (c.E.rank() != size_t(2 * b.n) || C.coord_count() != B.coord_count())
        throw StructuralError("contact and BCOV models have different shapes");
    if (B.max_order() < C.max_order())
        throw StructuralError("BCOV jet order too small for the redefinition");
    Psi p = make_psi(b, K, drop_quadratic);
    if (!(c.orient.constant - p.c0).is_zero() || c.orient.shift != b.n)
        throw StructuralError("contact orientation must be ((-1)^{n+1}, n)");

    FieldRedefinition r;
    r.order = K;
    r.target = B.alg();
    // base generators by name, volume to volume
    const AlgebraPtr& cbase = c.E.base().alg;
    for (size_t g = 0; g < cbase->size(); ++g)
        r.images[g] = Elem::generator(B.alg(), cbase->gen(g).name);
    if (C.has_vol()) r.images[C.vol_gen()] = B.vol();

    auto install = [&](size_t field, const Elem& expr) {
        std::vector<Elem> comps = B.odd_components(expr);
        std::vector<Elem> vcomps = B.odd_components(B.delta(expr));
        for (size_t s = 0; s < C.num_subsets(); ++s)
            for (size_t a = 0; a < C.num_alpha(); ++a) {
                r.images[C.jet_gen(field, s, a)] = B.multi_derivative(C.alpha(a), comps[s]);
                r.images[C.var_gen(field, s, a)] = B.multi_derivative(C.alpha(a), vcomps[s]);
            }
    };
    install(c.f_field, p.f);
    for (size_t a = 0; a < c.xi_fields.size(); ++a) install(c.xi_fields[a], p.xi[a]);
    install(c.lam_field, p.lam_scalar - Elem::constant(B.alg(), p.c0));
    return r;
}

Elem pull_back(const FieldRedefinition& r, const BcovModel& b, const Elem& F,
               uint32_t K) {
    if (r.order < K)
        throw StructuralError("redefinition truncated below the requested order");
    return r.apply(F).truncate_degree_in(nu_mask(b), K);
}

Elem nu_order_part(const BcovModel& b, const Elem& e, uint32_t k) {
    return e.degree_part_in(nu_mask(b), k);
}

SectionPoint random_section_point(const JetModel& J, Rng& rng, uint32_t deg) {
    const AlgebraPtr& A = J.alg();
    const Cdga& base = J.base();

    std::vector<Generator> extra;
    std::optional<size_t> vol_idx;
    if (J.has_vol()) {
        vol_idx = base.alg->size() + extra.size();
        extra.push_back(A->gen(J.vol_gen()));
    }
    int passes = J.with_variations() ? 2 : 1;
    // one odd symbol per odd (field, subset, pass) block
    std::map<size_t, size_t> theta; // order-0 generator -> target index
    for (size_t f = 0; f < J.fields().size(); ++f)
        for (size_t s = 0; s < J.num_subsets(); ++s)
            for (int pass = 0; pass < passes; ++pass) {
                size_t g0 = pass ? J.var_gen(f, s, size_t(0)) : J.jet_gen(f, s, size_t(0));
                if (A->parity(g0)) {
                    theta[g0] = base.alg->size() + extra.size();
                    extra.push_back({"th." + A->gen(g0).name, Grade{0, 1}});
                }
            }
    AlgebraPtr target = base.alg->extended(extra);

    std::vector<size_t> even_coords;
    for (size_t c : base.coords)
        if (base.alg->parity(c) == 0) even_coords.push_back(c);

    SectionPoint sp;
    sp.target = target;
    if (vol_idx) sp.images[J.vol_gen()] = Elem::generator(target, *vol_idx);
    for (size_t f = 0; f < J.fields().size(); ++f)
        for (size_t s = 0; s < J.num_subsets(); ++s)
            for (int pass = 0; pass < passes; ++pass) {
                size_t g0 = pass ? J.var_gen(f, s, size_t(0)) : J.jet_gen(f, s, size_t(0));
                Elem P = even_coords.empty()
                             ? Elem::constant(target, rng.small_scalar())
                             : rng.poly(target, even_coords, deg, deg + 3);
                auto th = theta.find(g0);
                if (th != theta.end()) P = P * Elem::generator(target, th->second);
                for (size_t a = 0; a < J.num_alpha(); ++a) {
                    Elem d = P;
                    const MultiIndex& al = J.alpha(a);
                    for (size_t k = 0; k < al.size() && !d.is_zero(); ++k)
                        for (uint32_t rep = 0; rep < al[k]; ++rep)
                            d = partial_left(d, base.coords[k]);
                    size_t g = pass ? J.var_gen(f, s, a) : J.jet_gen(f, s, a);
                    sp.images[g] = d;
                }
            }
    return sp;
}

namespace {

// one-pass left partials of L with respect to every field generator
std::map<size_t, Elem> field_partials(const JetModel& J, const Elem& L) {
    const AlgebraPtr& A = J.alg();
    std::map<size_t, std::vector<Term>> buckets;
    for (const Term& t : L.terms()) {
        int prefix = 0; // parity of the factors already passed
        for (size_t i = 0; i < t.mono.size(); ++i) {
            size_t g = t.mono[i].first;
            uint32_t ex = t.mono[i].second;
            int pg = A->parity(g);
            if (J.is_any_field_gen(g)) {
                Scalar c = t.coeff;
                if (pg == 0)
                    c = Scalar(Rational(long(ex), 1)) * c;
                else if (prefix % 2)
                    c = -c;
                Monomial m = t.mono;
                if (ex == 1)
                    m.erase(m.begin() + long(i));
                else
                    m[i].second = ex - 1;
                buckets[g].push_back({std::move(m), c});
            }
            prefix = (prefix + int(ex) * pg) % 2;
        }
    }
    std::map<size_t, Elem> out;
    for (auto& [g, terms] : buckets) {
        Elem e = Elem::zero(A);
        for (auto& t : terms) e = e + Elem::monomial(A, t.mono, t.coeff);
        if (!e.is_zero()) out.emplace(g, std::move(e));
    }
    return out;
}

} // namespace

bool density_is_divergence(const JetModel& J, const Elem& L, size_t npoints,
                           uint64_t seed, uint32_t deg, std::string* witness) {
    if (npoints == 0) return J.total_derivative_test(L, witness);
    if (L.is_zero()) return true;
    std::map<size_t, Elem> partials = field_partials(J, L);

    // blocks with at least one jet variable present
    std::vector<std::array<size_t, 3>> blocks;
    {
        std::set<std::array<size_t, 3>> seen;
        for (auto& [g, e] : partials) {
            size_t f, s, a;
            bool isv;
            J.decode_gen(g, f, s, a, isv);
            seen.insert({f, s, size_t(isv)});
        }
        blocks.assign(seen.begin(), seen.end());
    }

    for (size_t p = 0; p < npoints; ++p) {
        Rng rng(seed + 7919 * p + 1);
        SectionPoint sp = random_section_point(J, rng, deg);
        std::map<size_t, Elem> val;
        for (auto& [g, e] : partials) val.emplace(g, sp.eval(e));
        for (auto& blk : blocks) {
            Elem r = Elem::zero(sp.target);
            for (size_t a = 0; a < J.num_alpha(); ++a) {
                size_t g = blk[2] ? J.var_gen(blk[0], blk[1], a)
                                  : J.jet_gen(blk[0], blk[1], a);
                auto it = val.find(g);
                if (it == val.end() || it->second.is_zero()) continue;
                Elem d = it->second;
                const MultiIndex& al = J.alpha(a);
                for (size_t k = 0; k < al.size() && !d.is_zero(); ++k)
                    for (uint32_t rep = 0; rep < al[k]; ++rep)
                        d = partial_left(d, J.base().coords[k]);
                r = (J.alpha_order(a) % 2) ? r - d : r + d;
            }
            if (!r.is_zero()) {
                if (witness) {
                    size_t g0 = blk[2] ? J.var_gen(blk[0], blk[1], size_t(0))
                                       : J.jet_gen(blk[0], blk[1], size_t(0));
                    *witness = "euler residue at " + J.alg()->gen(g0).name +
                               ", section point " + std::to_string(p);
                }
                return false;
            }
        }
    }
    return true;
}

AxiomReport verify_equivalence(int n, uint32_t K, uint32_t N, size_t npoints,
                               uint64_t seed, bool mutated) {
    if (n % 2 == 0)
        throw ValidationError("type I equivalence needs odd complex dimension");
    CourantDatum E = dolbeault_standard(n);
    BcovModel b = make_bcov(n, 2);
    const JetModel& J = b.jets;
    Psi p = make_psi(b, K, mutated);
    CoeffContext ctx = J.ctx();
    auto dbar = [&](const Elem& e) { return J.dbar(e); };

    AxiomReport rep;
    auto record = [&](const std::string& name, bool pass, const std::string& w) {
        rep.checks.push_back({name, pass, pass ? "" : w});
    };

    // odd symplectic structure for odd n
    {
        Elem w = bcov_symplectic(b);
        int par = 0;
        bool homog = w.is_parity_homogeneous(&par);
        record("pairing-parity", homog && par == (n % 2) % 2,
               "symplectic density parity differs from n mod 2");
    }

    // the internal action generates dbar against the symplectic structure
    {
        Elem res = J.contract(bcov_dbar_field(b), bcov_symplectic(b)) -
                   J.delta(bcov_internal(b));
        std::string w;
        record("internal-hamiltonian",
               density_is_divergence(J, res, 0, seed, N, &w), w);
    }

    // reduced contact action equals the full master action (small n)
    if (n <= 3) {
        ContactModel c = make_contact(E, Orientation{p.c0, n}, 2, n <= 2);
        Elem diff = master_action(c) - ccm_lemma_action(c);
        std::string w;
        record("lemma-form",
               density_is_divergence(c.jets, diff, n <= 1 ? 0 : npoints,
                                     seed + 17, N, &w),
               w);
    }

    // pulled-back action against the BCOV action, nu-order by nu-order
    std::vector<char> mask = nu_mask(b);
    {
        Elem pulled = lemma_density(E, ctx, dbar, p.lam_scalar * J.vol(), p.xi, p.f)
                          .truncate_degree_in(mask, K);
        Elem R = pulled - bcov_action(b, K);
        for (uint32_t k = 0; k <= K; ++k) {
            std::string w;
            bool ok = density_is_divergence(J, R.degree_part_in(mask, k), npoints,
                                            seed + 101 * k + 1, N, &w);
            record("action-order-" + std::to_string(k), ok, w);
        }
    }

    // pulled-back symplectic structure, nu-order by nu-order
    {
        Scalar half(Rational(1, 2));
        Section dxi = p.xi;
        for (auto& e : dxi) e = J.delta(e);
        Elem theta = (p.lam_scalar * J.vol()) *
                     (J.delta(p.f) + half * pair_in(E, ctx, p.xi, dxi));
        Elem pulled = J.delta(theta).truncate_degree_in(mask, K);
        Elem W = pulled - bcov_symplectic(b);
        // the redefinition is nonlinear in the fields, so it is no canonical
        // transformation; the order-k checks below are the intertwining part
        std::vector<char> fmask(J.alg()->size(), 0);
        for (size_t f = 0; f < J.fields().size(); ++f)
            for (size_t s = 0; s < J.num_subsets(); ++s)
                for (size_t a = 0; a < J.num_alpha(); ++a)
                    fmask[J.jet_gen(f, s, a)] = 1;
        uint32_t fdeg = p.f.degree_in(fmask);
        for (const auto& e : p.xi)
            fdeg = std::max(fdeg, e.degree_in(fmask));
        record("not-canonical", fdeg >= 2, "field redefinition is linear");
        for (uint32_t k = 0; k <= K; ++k) {
            std::string w;
            bool ok = density_is_divergence(J, W.degree_part_in(mask, k), npoints,
                                            seed + 211 * k + 5, N, &w);
            record("symplectic-order-" + std::to_string(k), ok, w);
        }
    }
    return rep;
}

} // namespace courant
