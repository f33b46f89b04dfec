#pragma once

#include "courant/algebra.hpp"

#include <optional>

namespace courant {

// Commutative dg ring: free graded-commutative algebra with a chosen set of
// even degree-0 coordinate generators and a degree +1 square-zero derivation.
struct Cdga {
    AlgebraPtr alg;
    std::optional<Derivation> diff; // absent means zero differential
    std::vector<size_t> coords;     // indices of coordinate generators

    Elem d(const Elem& a) const {
        return diff ? (*diff)(a) : Elem::zero(alg);
    }

    // d restricted to the coordinate subalgebra is determined by the images
    // d(x_i); used to transport the differential to jet algebras.
    Elem d_of_coord(size_t k) const {
        return diff ? diff->image(coords[k]) : Elem::zero(alg);
    }

    // Partial derivative with respect to coordinate k.
    Elem coord_derive(size_t k, const Elem& a) const;

    bool has_odd_coordinate_image() const;

    // Verifies d has square zero on every generator; returns the name of an
    // offending generator, or nullopt on success.
    std::optional<std::string> square_zero_witness() const;
};

// Polynomial ring Q[x1..] or Q(i)[names] with zero differential.
Cdga polynomial_cdga(CoefficientField field, const std::vector<std::string>& coords);

} // namespace courant
