#pragma once

#include "courant/courant.hpp"

#include <map>

namespace courant {

using MultiIndex = std::vector<uint32_t>; // one entry per base coordinate

// Field of a local model; its components are indexed by the subsets of the
// odd base generators (phi = sum_S phi_S m_S) and carry coordinate degree
// shift - |S| with fixed intrinsic parity.
struct JetField {
    std::string name;
    int shift;
    int intrinsic = 0;
};

// Free jet algebra of a finite set of fields over a Cdga base: generators are
// the base generators, an optional volume symbol of degree -n, and jet
// variables phi_{S,alpha} for derivative orders |alpha| <= max_order; when
// variations are enabled, mirror generators var(phi)_{S,alpha} of degree +1
// are adjoined.
class JetModel {
public:
    JetModel(Cdga base, std::vector<JetField> fields, uint32_t max_order,
             bool with_variations, std::optional<int> vol_shift);

    const AlgebraPtr& alg() const { return alg_; }
    const Cdga& base() const { return base_; }
    const std::vector<JetField>& fields() const { return fields_; }
    size_t num_subsets() const { return subsets_; }
    uint32_t max_order() const { return max_order_; }
    bool with_variations() const { return with_variations_; }
    size_t coord_count() const { return base_.coords.size(); }

    size_t find_field(const std::string& name) const;

    // generator indices
    size_t jet_gen(size_t field, size_t subset, size_t alpha_id) const;
    size_t var_gen(size_t field, size_t subset, size_t alpha_id) const;
    size_t jet_gen(size_t field, size_t subset, const MultiIndex& alpha) const;
    size_t var_gen(size_t field, size_t subset, const MultiIndex& alpha) const;
    bool is_jet_gen(size_t gen) const;        // non-variation jet variable
    bool is_var_gen(size_t gen) const;        // variation jet variable
    bool is_any_field_gen(size_t gen) const { return is_jet_gen(gen) || is_var_gen(gen); }
    // inverse lookup for field generators
    void decode_gen(size_t gen, size_t& field, size_t& subset, size_t& alpha_id,
                    bool& is_var) const;

    size_t num_alpha() const { return alphas_.size(); }
    const MultiIndex& alpha(size_t id) const { return alphas_[id]; }
    size_t alpha_order(size_t id) const { return orders_[id]; }

    bool has_vol() const { return vol_gen_.has_value(); }
    size_t vol_gen() const { return *vol_gen_; }
    Elem vol() const { return Elem::generator(alg_, *vol_gen_); }

    // sum_S phi_S m_S (order-0 jet variables against odd monomials)
    Elem field_combination(size_t field) const;
    Elem var_combination(size_t field) const;

    // total derivative along base coordinate k; throws on order overflow
    Elem total_derivative(size_t k, const Elem& e) const;
    Elem multi_derivative(const MultiIndex& a, const Elem& e) const;

    // coefficient context whose coordinate derivative is the total derivative
    CoeffContext ctx() const;

    // base differential transported to the jet algebra
    Elem dbar(const Elem& e) const;

    // variation: odd derivation phi_{S,alpha} -> var(phi)_{S,alpha}
    Elem delta(const Elem& e) const;

    // decomposition e = sum_S comp[S] * m_S with comp[S] free of odd base
    // generators; m_S is the ascending product of the subset's generators
    std::vector<Elem> odd_components(const Elem& e) const;
    Elem subset_monomial(size_t subset) const;
    size_t subset_size(size_t subset) const;

    // Euler-Lagrange derivative of a density with respect to the order-0
    // generator `gen0` (a jet or variation variable)
    Elem euler_derivative(const Elem& L, size_t gen0) const;
    // true iff all Euler derivatives vanish and the field-free part is a
    // coordinate divergence
    bool total_derivative_test(const Elem& L, std::string* witness = nullptr) const;

    // Evolutionary vector field: zero-order images per (field, subset);
    // prolonged by total derivatives. Images for variation components are
    // optional (default zero).
    struct Evo {
        int parity = 1;
        std::vector<std::vector<Elem>> comps;     // [field][subset]
        std::vector<std::vector<Elem>> var_comps; // [field][subset], may be empty
    };
    Evo make_evo(int parity) const;
    // build components of an Evo from a combination element per field
    void set_evo_field(Evo& X, size_t field, const Elem& combination,
                       bool variations = false) const;
    Elem apply_evolutionary(const Evo& X, const Elem& L) const;

    // contraction i_X: var(phi)_{S,alpha} -> D^alpha X^phi_S, phi -> 0
    Elem contract(const Evo& X, const Elem& omega) const;

    // random rational evaluation of even field generators (odd generators and
    // base odd generators stay symbolic); used for randomized residue checks
    Elem random_point_evaluation(const Elem& e, Rng& rng) const;

private:
    Cdga base_;
    std::vector<JetField> fields_;
    uint32_t max_order_;
    bool with_variations_;
    AlgebraPtr alg_;
    std::vector<size_t> odd_base_; // indices of odd base generators
    size_t subsets_;
    std::vector<MultiIndex> alphas_;
    std::vector<uint32_t> orders_;
    std::map<MultiIndex, size_t> alpha_id_;
    std::vector<std::vector<size_t>> alpha_shift_; // [alpha_id][k] -> alpha_id of a+e_k (SIZE_MAX on overflow)
    std::optional<size_t> vol_gen_;
    size_t jet_base_, var_base_; // generator offsets
    std::vector<Elem> dcoord_images_; // promoted d(x_k) for dbar

    size_t block_index(size_t field, size_t subset, size_t alpha_id) const {
        return (field * subsets_ + subset) * alphas_.size() + alpha_id;
    }
};

// Odd graded Poisson bracket on a finite-dimensional graded vector space with
// constant symplectic matrix omega (an antibracket; parities shift by one).
Elem point_poisson_bracket(const Elem& f, const Elem& g, const ScalarMat& omega);

} // namespace courant
