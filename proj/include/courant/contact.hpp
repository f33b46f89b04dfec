#pragma once

#include "courant/rw.hpp"

namespace courant {

// Contact model of an oriented Courant algebroid: fields f (shift 2),
// xi^a (shift 1) and the scalar part of lambda = (c0 + lam) vol (shift 0,
// against a volume symbol of degree -n when the base has coordinates).
struct ContactModel {
    CourantDatum E;
    Orientation orient;
    JetModel jets;
    size_t f_field, lam_field;
    std::vector<size_t> xi_fields;

    CoeffContext ctx() const { return jets.ctx(); }
    Elem f_combination() const { return jets.field_combination(f_field); }
    Section xi_section() const;
    // c0 + lam as a scalar; lambda() multiplies by vol when present
    Elem lambda_scalar() const;
    Elem lambda() const;
    Elem vol_factor() const; // vol or 1
};

ContactModel make_contact(const CourantDatum& E, const Orientation& orient,
                          uint32_t max_order = 4, bool validate = true);

// theta = lambda (delta f + 1/2 <xi, delta xi>)
Elem liouville_theta(const ContactModel& m);
// omega = delta theta
Elem symplectic_omega(const ContactModel& m);

// S_dbar = lambda (dbar f + 1/2 <xi, dbar xi>)
Elem internal_action(const ContactModel& m);
// S = S_dbar + lambda (L_xi f + 1/6 <xi, L_xi xi>)
Elem master_action(const ContactModel& m);

// X_S: components (dbar f + 1/2 L_xi f - 1/12 <xi, L_xi xi>) on f,
// (dbar xi + D f + 1/2 L_xi xi) on xi, (dbar lam + L_xi lambda) on lam.
JetModel::Evo homological_field(const ContactModel& m);
// Hamiltonian field of S_dbar alone (the internal differential).
JetModel::Evo internal_field(const ContactModel& m);

// Constant symplectic matrix of omega at lam' = 0, xi = 0, over the order-0
// variables (f, xi^1..xi^r, lam); point models only.
ScalarMat point_omega_matrix(const ContactModel& m);

struct CmeReport {
    std::vector<IdentityCheck> checks;
    bool pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Point regime: {S,S} = 0 via point_poisson_bracket with the constant
// lambda_0 symplectic matrix. Jet regime: (a) i_{X_S} omega - delta S is a
// total derivative, (b) X_S^2 = 0 per field coordinate, (c) X_S(S) is a
// total derivative.
CmeReport verify_cme(const ContactModel& m);

} // namespace courant
