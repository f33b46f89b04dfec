#pragma once

#include "courant/dgmodule.hpp"
#include "courant/rng.hpp"

#include <functional>
#include <string>

namespace courant {

// Constant multiple of the coordinate volume density, shifted by n.
struct Orientation {
    Scalar constant = Scalar(1);
    int shift = 0; // n

    void validate() const {
        if (constant.is_zero())
            throw ValidationError("orientation constant must be nonzero");
    }
};

// How to differentiate coefficients along a base coordinate. The default
// context uses the partial derivative of the coefficient algebra; jet models
// substitute total derivatives.
struct CoeffContext {
    AlgebraPtr alg;
    std::function<Elem(size_t, const Elem&)> dcoord;

    static CoeffContext partials(const Cdga& base, AlgebraPtr coeff) {
        CoeffContext c;
        c.alg = std::move(coeff);
        std::vector<size_t> coords = base.coords;
        c.dcoord = [coords](size_t k, const Elem& f) {
            return partial_left(f, coords[k]);
        };
        return c;
    }
};

// Polynomial vector field: comps[k] is the coefficient of d/dx_k.
using VectorField = std::vector<Elem>;

VectorField vf_commutator(const Cdga& base, const CoeffContext& ctx,
                          const VectorField& a, const VectorField& b);

struct CourantDatum {
    std::string name;
    DgModule mod;
    Pairing eta;
    // anchor[a][k]: coefficient of d/dx_k in rho(e_a), over the base ring
    std::vector<VectorField> anchor;
    // structure[a][b] = [e_a, e_b] over the base ring
    std::vector<std::vector<Section>> structure;

    const Cdga& base() const { return mod.base; }
    size_t rank() const { return mod.basis.size(); }
    CoeffContext base_ctx() const {
        return CoeffContext::partials(mod.base, mod.base.alg);
    }
    void validate() const;
};

// rho(u) applied to a coefficient element.
Elem rho_apply(const CourantDatum& E, const CoeffContext& ctx,
               const Section& u, const Elem& f);
// rho(e_a) applied to f.
Elem rho_basis_apply(const CourantDatum& E, const CoeffContext& ctx,
                     size_t a, const Elem& f);
// rho(u) as a vector field over ctx.alg.
VectorField rho_vector_field(const CourantDatum& E, const CoeffContext& ctx,
                             const Section& u);

// D f = sum eta^{ab} (rho(e_b) f) e_a.
Section d_script(const CourantDatum& E, const CoeffContext& ctx, const Elem& f);

// Full bracket: second-slot Leibniz plus the derived first-slot rule.
Section bracket(const CourantDatum& E, const CoeffContext& ctx,
                const Section& u, const Section& v);

Elem pair_in(const CourantDatum& E, const CoeffContext& ctx,
             const Section& u, const Section& v);

// Generalized Lie derivative on coefficients, sections and densities.
Elem gen_lie_fn(const CourantDatum& E, const CoeffContext& ctx,
                const Section& u, const Elem& f);
Section gen_lie_section(const CourantDatum& E, const CoeffContext& ctx,
                        const Section& u, const Section& v);
// L_u (g vol) = (sum_k D_k(c^k g)) vol with c = rho(u); returns the function part.
Elem gen_lie_density(const CourantDatum& E, const CoeffContext& ctx,
                     const Section& u, const Elem& g);

// Module differential on a section with coefficients in the base ring
// context: d(f e_a) = (df) e_a + (-1)^{|f|} f d(e_a).
Section module_d(const CourantDatum& E, const CoeffContext& ctx,
                 const std::function<Elem(const Elem&)>& d_coeff,
                 const Section& u);

VectorField curvature_R(const CourantDatum& E, const CoeffContext& ctx,
                        const Section& u, const Section& v);
Section jacobiator(const CourantDatum& E, const CoeffContext& ctx,
                   const Section& u, const Section& v, const Section& w);

struct AxiomCheck {
    std::string axiom;
    bool pass;
    std::string witness; // empty on pass
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Basis sections plus `extra` random polynomial sections (degree <= max_degree
// in at most two base coordinates and the base odd generators).
std::vector<Section> default_test_sections(const CourantDatum& E, uint64_t seed,
                                           size_t extra = 8,
                                           uint32_t max_degree = 2);

AxiomReport check_axioms(const CourantDatum& E, uint64_t seed,
                         uint32_t max_degree = 2);

// Builders.
CourantDatum standard_courant(int d);            // polynomial R^d
CourantDatum dolbeault_standard(int d);          // Dolbeault model on C^d
CourantDatum quadratic_lie(const std::string& name,
                           const std::vector<ScalarMat>& constants, // c[a][b][c]
                           const ScalarMat& pairing);
CourantDatum so3_quadratic();
CourantDatum abelian_hyperbolic_r2();
// Broken so(3): one structure constant flipped; Jacobi must fail.
CourantDatum so3_broken();
// R^d base with trivial flat bundle of the quadratic Lie algebra g.
CourantDatum flat_transitive(int d, const CourantDatum& point_lie);

// Closed-form Dolbeault bracket of Example "standard Courant over M_dbar":
// parts are (coefficient in O, vector true/false, holomorphic index).
struct DolbeaultPart {
    Elem coeff;
    bool is_vector;
    size_t index;
};
Section dolbeault_closed_bracket(const CourantDatum& E,
                                 const DolbeaultPart& l, const DolbeaultPart& r);

} // namespace courant
