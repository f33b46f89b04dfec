#include "courant/dgmodule.hpp"

namespace courant {

size_t DgModule::find_section(const std::string& name) const {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].name == name) return i;
    throw StructuralError("unknown section: " + name);
}

Section DgModule::zero_section(const AlgebraPtr& coeff) const {
    return Section(basis.size(), Elem::zero(coeff));
}

Section DgModule::basis_section(const AlgebraPtr& coeff, size_t a) const {
    Section s = zero_section(coeff);
    s[a] = Elem::constant(coeff, Scalar(1));
    return s;
}

void DgModule::validate() const {
    for (auto& b : basis)
        if (b.grade.parity() != 0)
            throw ValidationError("basis section " + b.name + " is not even");
    if (!dmat.empty()) {
        if (dmat.size() != basis.size())
            throw StructuralError("module differential has wrong shape");
        for (auto& row : dmat)
            if (row.size() != basis.size())
                throw StructuralError("module differential has wrong shape");
    }
}

Section section_add(const Section& u, const Section& v) {
    Section r = u;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + v[i];
    return r;
}

Section section_sub(const Section& u, const Section& v) {
    Section r = u;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - v[i];
    return r;
}

Section section_neg(const Section& u) {
    Section r = u;
    for (auto& c : r) c = -c;
    return r;
}

Section section_scale(const Elem& f, const Section& u) {
    Section r = u;
    for (auto& c : r) c = f * c;
    return r;
}

bool section_zero(const Section& u) {
    for (auto& c : u)
        if (!c.is_zero()) return false;
    return true;
}

bool section_eq(const Section& u, const Section& v) {
    if (u.size() != v.size()) return false;
    for (size_t i = 0; i < u.size(); ++i)
        if (u[i] != v[i]) return false;
    return true;
}

Section section_parity_part(const Section& u, int p) {
    Section r = u;
    for (auto& c : r) c = c.parity_part(p);
    return r;
}

void Pairing::validate(const DgModule& mod) const {
    size_t n = mod.basis.size();
    if (eta.size() != n || eta_inv.size() != n)
        throw StructuralError("pairing has wrong shape");
    for (auto& row : eta)
        if (row.size() != n) throw StructuralError("pairing has wrong shape");
    for (auto& row : eta_inv)
        if (row.size() != n) throw StructuralError("pairing inverse has wrong shape");
    // graded symmetry: basis sections are even, so plain symmetry
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (eta[a][b] != eta[b][a])
                throw ValidationError("pairing is not graded symmetric at (" +
                                      mod.basis[a].name + "," + mod.basis[b].name + ")");
    // inverse witness: eta * eta_inv = identity
    for (size_t a = 0; a < n; ++a)
        for (size_t c = 0; c < n; ++c) {
            Elem s = Elem::zero(mod.base.alg);
            for (size_t b = 0; b < n; ++b) s = s + eta[a][b] * eta_inv[b][c];
            Elem expect = Elem::constant(mod.base.alg, Scalar(a == c ? 1 : 0));
            if (s != expect)
                throw ValidationError("pairing inverse witness fails at (" +
                                      mod.basis[a].name + "," + mod.basis[c].name + ")");
        }
}

Elem pair_sections(const DgModule& mod, const Pairing& eta,
                   const Section& u, const Section& v,
                   const AlgebraPtr& coeff) {
    Elem r = Elem::zero(coeff);
    for (size_t a = 0; a < u.size(); ++a) {
        if (u[a].is_zero()) continue;
        for (size_t b = 0; b < v.size(); ++b) {
            if (v[b].is_zero()) continue;
            Elem e = eta.eta[a][b].promoted(coeff);
            r = r + u[a] * v[b] * e;
        }
    }
    return r;
}

} // namespace courant
