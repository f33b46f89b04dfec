#pragma once

#include "courant/contact.hpp"

namespace courant {

// Minimal type I BCOV field content on the flat polynomial C^n model:
// beta (shift 2), mu^i and gamma_i (shift 1), nu (shift 0), against the
// background Omega = vol. The jet base is the Dolbeault base of
// dolbeault_standard(n).
struct BcovModel {
    int n;
    JetModel jets;
    size_t beta_field, nu_field;
    std::vector<size_t> mu_fields, gam_fields;

    Elem beta() const { return jets.field_combination(beta_field); }
    Elem nu() const { return jets.field_combination(nu_field); }
    Elem mu(size_t i) const { return jets.field_combination(mu_fields[i]); }
    Elem gam(size_t i) const { return jets.field_combination(gam_fields[i]); }
    // total derivative along the holomorphic coordinate z_i
    Elem del(size_t i, const Elem& e) const { return jets.total_derivative(i, e); }
};

BcovModel make_bcov(int n, uint32_t max_order = 2);

// sum_{k <= K} x^k
Elem geometric_series(const Elem& x, uint32_t K);

// omega = Omega (delta beta delta nu + delta mu v delta gamma)
Elem bcov_symplectic(const BcovModel& b);
// S_dbar: generates the dbar operator against bcov_symplectic
Elem bcov_internal(const BcovModel& b);
// Omega (L_mu beta + 1/2 1/(1 - nu) i_mu i_mu del gamma), series truncated at K
Elem bcov_interaction(const BcovModel& b, uint32_t K);
Elem bcov_action(const BcovModel& b, uint32_t K);
// evolutionary field phi -> dbar phi
JetModel::Evo bcov_dbar_field(const BcovModel& b);

// divergence of a polyvector mu = sum mu^i d/dz_i through contraction with
// Omega: div(mu) = sum D_{z_i} mu^i on the flat model
Elem pv_divergence(const BcovModel& b, const std::vector<Elem>& mu_comps);
// holomorphic exterior derivative component of a function: (del f)_i
Elem holomorphic_partial(const BcovModel& b, size_t i, const Elem& f);

// Contact action on dolbeault_standard(n) in the reduced form
// S_dbar + lambda (L_x f + 1/2 x v L_x alpha); equal to master_action
// modulo total derivatives (checked in tests and reports).
Elem ccm_lemma_action(const ContactModel& m);

// Field redefinition from contact jets to BCOV jets, with the 1/(nu-1)
// series truncated at `order`; every contact generator gets an image.
struct FieldRedefinition {
    uint32_t order;
    AlgebraPtr target;
    std::map<size_t, Elem> images;

    Elem apply(const Elem& e) const { return e.substituted(target, images); }
};

// f = beta - mu v gamma / (2(1-nu)), alpha = (-1)^n gamma,
// x = (-1)^n mu/(1-nu), lambda = (-1)^n Omega (1-nu).
// `drop_quadratic` omits the mu-gamma term of f (negative control).
FieldRedefinition make_redefinition(const ContactModel& c, const BcovModel& b,
                                    uint32_t K, bool drop_quadratic = false);

// Substitutes the redefinition and truncates at nu-order K; throws
// StructuralError if the redefinition is truncated below K.
Elem pull_back(const FieldRedefinition& r, const BcovModel& b, const Elem& F,
               uint32_t K);

// nu-degree part (jet and variation variables of the nu field)
Elem nu_order_part(const BcovModel& b, const Elem& e, uint32_t k);

// Prolongation of random polynomial sections of coordinate degree <= deg:
// jet variables map to coordinate derivatives of random polynomials (times a
// fresh odd symbol for odd components), so total derivatives turn into
// coordinate derivatives.
struct SectionPoint {
    AlgebraPtr target;
    std::map<size_t, Elem> images;

    Elem eval(const Elem& e) const { return e.substituted(target, images); }
};

SectionPoint random_section_point(const JetModel& J, Rng& rng, uint32_t deg);

// Total-derivative test for a density: symbolic when npoints == 0, otherwise
// Euler residues evaluated at npoints random section prolongations.
bool density_is_divergence(const JetModel& J, const Elem& L, size_t npoints,
                           uint64_t seed, uint32_t deg,
                           std::string* witness = nullptr);

// Order-by-order equivalence of the Courant contact model and BCOV theory:
// action match and symplectic intertwining at every nu-order <= K. For
// npoints > 0 the Euler tests are randomized with degree-N section points.
AxiomReport verify_equivalence(int n, uint32_t K, uint32_t N,
                               size_t npoints = 0, uint64_t seed = 2026,
                               bool mutated = false);

} // namespace courant
