#include "courant/cdga.hpp"

namespace courant {

Elem Cdga::coord_derive(size_t k, const Elem& a) const {
    return partial_left(a, coords[k]);
}

bool Cdga::has_odd_coordinate_image() const {
    if (!diff) return false;
    for (size_t k = 0; k < coords.size(); ++k)
        if (!d_of_coord(k).is_zero()) return true;
    return false;
}

std::optional<std::string> Cdga::square_zero_witness() const {
    if (!diff) return std::nullopt;
    for (size_t i = 0; i < alg->size(); ++i) {
        if (!(*diff)(diff->image(i)).is_zero()) return alg->gen(i).name;
        if (diff->image(i).homogeneous_grade().has_value() || diff->image(i).is_zero()) {
            // also insist the image raises degree by one when homogeneous
            auto g = diff->image(i).homogeneous_grade();
            if (g && g->degree != alg->gen(i).grade.degree + 1)
                return alg->gen(i).name;
        }
    }
    return std::nullopt;
}

Cdga polynomial_cdga(CoefficientField field, const std::vector<std::string>& coords) {
    std::vector<Generator> gens;
    for (auto& c : coords) gens.push_back({c, Grade{0, 0}});
    Cdga r;
    r.alg = Algebra::make(field, gens);
    for (size_t i = 0; i < coords.size(); ++i) r.coords.push_back(i);
    return r;
}

} // namespace courant
