#pragma once

#include "courant/courant.hpp"

#include <map>

namespace courant {

// Constant-coefficient isotropic submodule L of a Courant datum, given by a
// spanning list of sections whose coefficients are scalars.
struct IsotropicSubmodule {
    std::vector<Section> span;
};

// Data of a computed reduction along L. `lspan` is a row basis of the fiber
// span of L, `ann` the linear functionals vanishing on it, `perp_rep` a
// constant complement basis of L^perp modulo L, and `flat` a basis of the
// flat sections of L^perp modulo L with coefficient degree <= the cutoff.
struct FlatReduction {
    std::vector<ScalarVec> lspan;
    std::vector<ScalarVec> ann;
    std::vector<ScalarVec> perp_rep;
    std::vector<Section> flat;
};

// Scalars of a constant section; throws if a coefficient is not constant.
ScalarVec section_constants(const Section& u);
Section constant_section(const AlgebraPtr& alg, const ScalarVec& v);

// All monomials of the algebra of total degree <= cutoff.
std::vector<Monomial> monomials_up_to(const AlgebraPtr& alg, uint32_t cutoff);

// Exact membership of u in the O-span of the fiber span recorded in fr.
bool section_in_span(const FlatReduction& fr, const Section& u);
// [l, u] in O-span(L) for every generator l of L (exact, no cutoff).
bool section_is_flat(const CourantDatum& E, const IsotropicSubmodule& L,
                     const FlatReduction& fr, const Section& u);

// Isotropy and involutivity of L; involutivity is a membership solve.
AxiomReport check_isotropic_involutive(const CourantDatum& E,
                                       const IsotropicSubmodule& L);

FlatReduction flat_reduction(const CourantDatum& E, const IsotropicSubmodule& L,
                             uint32_t cutoff);

// Reduction of a quadratic Lie algebra (datum over a point) along L. Throws
// ValidationError with a witness if L is not isotropic or not involutive.
CourantDatum reduce_point(const CourantDatum& E, const IsotropicSubmodule& L);

struct ReductionResult {
    CourantDatum reduced;
    FlatReduction data;
    AxiomReport report;
};

// Complexified smooth standard Courant datum on C^d: polynomial coordinates
// z_k, zb_k over the Gaussian rationals, basis Dz, Dzb, dz, dzb.
CourantDatum complexified_standard(int d);
// Closed-form target of the Dolbeault reduction: polynomial coordinates z_k,
// basis Dz_k, dz_k, anchor d/dz_k, hyperbolic pairing.
CourantDatum holomorphic_standard(int d);

// Reduction of the complexified standard datum along L = span(Dzb_k),
// with flat sections computed degree by degree up to the cutoff, checked
// against holomorphic_standard(d) on basis and random holomorphic sections.
ReductionResult reduce_dolbeault(int d, uint32_t cutoff, uint64_t seed = 1);

// Map of scalars i : O -> O' together with a lifted anchor. `images` must
// give an image for every generator of the source algebra.
struct ScalarsMap {
    Cdga source;
    Cdga target;
    std::map<size_t, Elem> images;
    std::vector<VectorField> lifted_anchor; // per basis section, over target coords

    Elem map(const Elem& f) const;
    Section map_section(const Section& u) const;
};

// Lift conditions: i intertwines differentials, the lifted anchor is a
// bracket morphism, it restricts to rho on the image of O, and ker(rho') is
// coisotropic (rho' eta^{-1} rho'^T = 0).
AxiomReport check_lift(const ScalarsMap& m, const CourantDatum& E);

// Extension of scalars along a passing lift; throws ValidationError naming
// the failed lift condition otherwise.
CourantDatum extend_scalars(const CourantDatum& E, const ScalarsMap& m);

// Flat Calabi-Yau reduction check on C^d with the constant Kaehler form:
// L = e^{i omega}(T^{0,1}) and the comparison map tau against
// holomorphic_standard(d). Throws on even d unless allow_even.
AxiomReport cy_flat_reduction_check(int d, uint32_t cutoff, uint64_t seed = 1,
                                    bool allow_even = false);

} // namespace courant
