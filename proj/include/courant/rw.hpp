#pragma once

#include "courant/jet.hpp"

namespace courant {

// Cone L-infinity brackets: mu2 on two sections, mu2 mixing a section with a
// ring element (valued in the shifted ring), and the 3-ary correction.
Section rw_mu2(const CourantDatum& E, const CoeffContext& ctx, const Section& x1,
               const Section& x2);
Elem rw_mu2_fn(const CourantDatum& E, const CoeffContext& ctx, const Section& x,
               const Elem& f);
Elem rw_mu3(const CourantDatum& E, const CoeffContext& ctx, const Section& x1,
            const Section& x2, const Section& x3);

// Jet-variable model of the cone fields: one even field f of shift 2 and one
// odd field xi^a of shift 1 per basis section of E.
struct RwModel {
    CourantDatum E;
    JetModel jets;
    size_t f_field;
    std::vector<size_t> xi_fields;

    Elem f_combination() const { return jets.field_combination(f_field); }
    Section xi_section() const;
    CoeffContext ctx() const { return jets.ctx(); }
};

// validate = false skips the axiom gate (used for negative controls).
RwModel rw_construct(const CourantDatum& E, uint32_t max_order = 2,
                     bool with_variations = false, bool validate = true);

// The homological vector field: component densities
//   Q(f)  = dbar f + 1/2 L_xi f - 1/12 <xi, L_xi xi>
//   Q(xi) = dbar xi + D f + 1/2 L_xi xi
// as an odd evolutionary field on the jet model.
JetModel::Evo rw_vector_field(const RwModel& M);

struct HomologicalReport {
    bool pass = true;
    std::string witness; // field coordinate and residue on failure
};

// Q^2 = 0 per field coordinate, as an exact jet-polynomial identity.
HomologicalReport check_homological(const RwModel& M);

struct IdentityCheck {
    std::string name;
    bool pass;
    std::string witness;
};

// The three perturbation identities used in the vanishing argument, verified
// on `count` random odd sections over the base extended by odd ghosts.
std::vector<IdentityCheck> proof_identities(const CourantDatum& E, uint64_t seed,
                                            size_t count = 8);

} // namespace courant
