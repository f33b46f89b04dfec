#pragma once

#include "courant/cdga.hpp"
#include "courant/linalg.hpp"

#include <functional>

namespace courant {

struct BasisSection {
    std::string name;
    Grade grade; // must have even total parity
};

// Coefficients of a section in the module basis; coefficients may live in the
// base ring or in any algebra extending it.
using Section = std::vector<Elem>;

// Finitely generated free dg module over a Cdga. The differential is
// O-linear-with-Leibniz: d(f e_a) = (df) e_a + (-1)^{|f|} f d(e_a), where
// d(e_a) = sum_b dmat[b][a] e_b.
struct DgModule {
    Cdga base;
    std::vector<BasisSection> basis;
    std::vector<std::vector<Elem>> dmat; // dmat[b][a] : coefficient of e_b in d(e_a)

    size_t find_section(const std::string& name) const;
    Section zero_section(const AlgebraPtr& coeff) const;
    Section basis_section(const AlgebraPtr& coeff, size_t a) const;

    void validate() const; // throws StructuralError / ValidationError
};

// Graded symmetric nondegenerate pairing with an explicit inverse witness.
// Entries live in the base ring; eta[a][b] is <e_a, e_b>.
struct Pairing {
    std::vector<std::vector<Elem>> eta;
    std::vector<std::vector<Elem>> eta_inv;

    void validate(const DgModule& mod) const;
};

Section section_add(const Section& u, const Section& v);
Section section_sub(const Section& u, const Section& v);
Section section_neg(const Section& u);
// Left multiplication f*u, Koszul product in each coefficient.
Section section_scale(const Elem& f, const Section& u);
bool section_zero(const Section& u);
bool section_eq(const Section& u, const Section& v);
// Parity part of every coefficient adjusted so the section piece f e_a has
// total parity p (basis sections are even, so this is coefficient parity).
Section section_parity_part(const Section& u, int p);

// <u, v> with Koszul sign for moving coefficients past each other:
// <f e_a, g e_b> = (-1)^{|g| |e_a|} f g eta_ab; basis sections are even so the
// sign is trivial, but coefficients are fully graded.
Elem pair_sections(const DgModule& mod, const Pairing& eta,
                   const Section& u, const Section& v,
                   const AlgebraPtr& coeff);

} // namespace courant
