#include "courant/jet.hpp"

#include <algorithm>
#include <sstream>

namespace courant {

namespace {

void enumerate_alphas(size_t nc, uint32_t max_order, std::vector<MultiIndex>& out) {
    MultiIndex cur(nc, 0);
    // generate all multi-indices with |alpha| <= max_order, ordered by total
    // order then lexicographically
    std::vector<MultiIndex> acc;
    std::function<void(size_t, uint32_t)> rec = [&](size_t pos, uint32_t left) {
        if (pos == nc) {
            acc.push_back(cur);
            return;
        }
        for (uint32_t v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, max_order);
    std::stable_sort(acc.begin(), acc.end(), [](const MultiIndex& a, const MultiIndex& b) {
        uint32_t sa = 0, sb = 0;
        for (auto v : a) sa += v;
        for (auto v : b) sb += v;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    out = std::move(acc);
}

std::string alpha_suffix(const Cdga& base, const MultiIndex& a) {
    std::string s;
    for (size_t k = 0; k < a.size(); ++k)
        for (uint32_t i = 0; i < a[k]; ++i)
            s += "_" + base.alg->gen(base.coords[k]).name;
    return s;
}

} // namespace

JetModel::JetModel(Cdga base, std::vector<JetField> fields, uint32_t max_order,
                   bool with_variations, std::optional<int> vol_shift)
    : base_(std::move(base)), fields_(std::move(fields)), max_order_(max_order),
      with_variations_(with_variations) {
    size_t nc = base_.coords.size();
    for (size_t g = 0; g < base_.alg->size(); ++g)
        if (base_.alg->parity(g)) odd_base_.push_back(g);
    subsets_ = size_t(1) << odd_base_.size();
    enumerate_alphas(nc, max_order_, alphas_);
    for (size_t i = 0; i < alphas_.size(); ++i) {
        alpha_id_[alphas_[i]] = i;
        uint32_t o = 0;
        for (auto v : alphas_[i]) o += v;
        orders_.push_back(o);
    }
    alpha_shift_.assign(alphas_.size(), std::vector<size_t>(nc, SIZE_MAX));
    for (size_t i = 0; i < alphas_.size(); ++i)
        for (size_t k = 0; k < nc; ++k) {
            MultiIndex a = alphas_[i];
            a[k] += 1;
            auto it = alpha_id_.find(a);
            if (it != alpha_id_.end()) alpha_shift_[i][k] = it->second;
        }

    std::vector<Generator> extra;
    if (vol_shift) {
        // degree -n has total parity n with zero intrinsic shift
        extra.push_back({"vol", Grade{-*vol_shift, 0}});
    }
    for (int pass = 0; pass < (with_variations_ ? 2 : 1); ++pass)
        for (size_t f = 0; f < fields_.size(); ++f)
            for (size_t s = 0; s < subsets_; ++s) {
                int ssize = 0;
                std::string stag;
                for (size_t i = 0; i < odd_base_.size(); ++i)
                    if (s & (size_t(1) << i)) {
                        ++ssize;
                        stag += "_" + base_.alg->gen(odd_base_[i]).name;
                    }
                for (size_t a = 0; a < alphas_.size(); ++a) {
                    std::string name = (pass ? "var." : "") + fields_[f].name;
                    if (!stag.empty()) name += "{" + stag.substr(1) + "}";
                    std::string suf = alpha_suffix(base_, alphas_[a]);
                    if (!suf.empty()) name += suf;
                    Grade g{fields_[f].shift - ssize + (pass ? 1 : 0),
                            fields_[f].intrinsic};
                    extra.push_back({name, g});
                }
            }
    size_t nb = base_.alg->size();
    alg_ = base_.alg->extended(extra);
    size_t off = nb;
    if (vol_shift) {
        vol_gen_ = off;
        off += 1;
    }
    jet_base_ = off;
    var_base_ = jet_base_ + fields_.size() * subsets_ * alphas_.size();

    dcoord_images_.reserve(nc);
    for (size_t k = 0; k < nc; ++k)
        dcoord_images_.push_back(base_.d_of_coord(k).promoted(alg_));
}

size_t JetModel::find_field(const std::string& name) const {
    for (size_t f = 0; f < fields_.size(); ++f)
        if (fields_[f].name == name) return f;
    throw StructuralError("unknown field: " + name);
}

size_t JetModel::jet_gen(size_t field, size_t subset, size_t alpha_id) const {
    return jet_base_ + block_index(field, subset, alpha_id);
}

size_t JetModel::var_gen(size_t field, size_t subset, size_t alpha_id) const {
    if (!with_variations_) throw StructuralError("model has no variations");
    return var_base_ + block_index(field, subset, alpha_id);
}

size_t JetModel::jet_gen(size_t field, size_t subset, const MultiIndex& a) const {
    return jet_gen(field, subset, alpha_id_.at(a));
}

size_t JetModel::var_gen(size_t field, size_t subset, const MultiIndex& a) const {
    return var_gen(field, subset, alpha_id_.at(a));
}

bool JetModel::is_jet_gen(size_t gen) const {
    return gen >= jet_base_ && gen < var_base_;
}

bool JetModel::is_var_gen(size_t gen) const {
    return with_variations_ && gen >= var_base_ && gen < alg_->size();
}

void JetModel::decode_gen(size_t gen, size_t& field, size_t& subset,
                          size_t& alpha_id, bool& is_var) const {
    if (!is_any_field_gen(gen)) throw StructuralError("not a field generator");
    is_var = is_var_gen(gen);
    size_t idx = gen - (is_var ? var_base_ : jet_base_);
    alpha_id = idx % alphas_.size();
    idx /= alphas_.size();
    subset = idx % subsets_;
    field = idx / subsets_;
}

Elem JetModel::subset_monomial(size_t subset) const {
    Elem m = Elem::constant(alg_, Scalar(1));
    for (size_t i = 0; i < odd_base_.size(); ++i)
        if (subset & (size_t(1) << i)) m = m * Elem::generator(alg_, odd_base_[i]);
    return m;
}

size_t JetModel::subset_size(size_t subset) const {
    size_t n = 0;
    for (size_t i = 0; i < odd_base_.size(); ++i)
        if (subset & (size_t(1) << i)) ++n;
    return n;
}

Elem JetModel::field_combination(size_t field) const {
    Elem r = Elem::zero(alg_);
    for (size_t s = 0; s < subsets_; ++s)
        r = r + Elem::generator(alg_, jet_gen(field, s, size_t(0))) * subset_monomial(s);
    return r;
}

Elem JetModel::var_combination(size_t field) const {
    Elem r = Elem::zero(alg_);
    for (size_t s = 0; s < subsets_; ++s)
        r = r + Elem::generator(alg_, var_gen(field, s, size_t(0))) * subset_monomial(s);
    return r;
}

Elem JetModel::total_derivative(size_t k, const Elem& e) const {
    return derive_with(e, 0, [&](size_t g) -> Elem {
        if (g < base_.alg->size()) {
            for (size_t c = 0; c < base_.coords.size(); ++c)
                if (base_.coords[c] == g)
                    return Elem::constant(alg_, Scalar(c == k ? 1 : 0));
            return Elem::zero(alg_);
        }
        if (vol_gen_ && g == *vol_gen_) return Elem::zero(alg_);
        size_t f, s, a;
        bool isv;
        decode_gen(g, f, s, a, isv);
        size_t up = alpha_shift_[a][k];
        if (up == SIZE_MAX)
            throw StructuralError("jet order overflow while differentiating " +
                                  alg_->gen(g).name);
        return Elem::generator(alg_, isv ? var_gen(f, s, up) : jet_gen(f, s, up));
    });
}

Elem JetModel::multi_derivative(const MultiIndex& a, const Elem& e) const {
    Elem r = e;
    for (size_t k = 0; k < a.size(); ++k)
        for (uint32_t i = 0; i < a[k]; ++i) r = total_derivative(k, r);
    return r;
}

CoeffContext JetModel::ctx() const {
    CoeffContext c;
    c.alg = alg_;
    const JetModel* self = this;
    c.dcoord = [self](size_t k, const Elem& f) { return self->total_derivative(k, f); };
    return c;
}

Elem JetModel::dbar(const Elem& e) const {
    return derive_with(e, 1, [&](size_t g) -> Elem {
        if (g < base_.alg->size())
            return base_.d(Elem::generator(base_.alg, g)).promoted(alg_);
        if (vol_gen_ && g == *vol_gen_) return Elem::zero(alg_);
        size_t f, s, a;
        bool isv;
        decode_gen(g, f, s, a, isv);
        Elem r = Elem::zero(alg_);
        for (size_t k = 0; k < base_.coords.size(); ++k) {
            if (dcoord_images_[k].is_zero()) continue;
            size_t up = alpha_shift_[a][k];
            if (up == SIZE_MAX)
                throw StructuralError("jet order overflow in dbar");
            r = r + dcoord_images_[k] *
                        Elem::generator(alg_, isv ? var_gen(f, s, up) : jet_gen(f, s, up));
        }
        return r;
    });
}

Elem JetModel::delta(const Elem& e) const {
    if (!with_variations_) throw StructuralError("model has no variations");
    return derive_with(e, 1, [&](size_t g) -> Elem {
        if (is_jet_gen(g)) {
            size_t f, s, a;
            bool isv;
            decode_gen(g, f, s, a, isv);
            return Elem::generator(alg_, var_gen(f, s, a));
        }
        return Elem::zero(alg_);
    });
}

std::vector<Elem> JetModel::odd_components(const Elem& e) const {
    std::vector<Elem> out(subsets_, Elem::zero(alg_));
    std::vector<char> is_odd_base(alg_->size(), 0);
    std::vector<size_t> bit_of(alg_->size(), 0);
    for (size_t i = 0; i < odd_base_.size(); ++i) {
        is_odd_base[odd_base_[i]] = 1;
        bit_of[odd_base_[i]] = i;
    }
    for (const auto& t : e.terms()) {
        size_t subset = 0;
        Monomial stripped;
        for (auto& [g, ex] : t.mono) {
            if (is_odd_base[g]) subset |= size_t(1) << bit_of[g];
            else stripped.push_back({g, ex});
        }
        // determine the Koszul sign of stripped * m_S relative to the term
        Elem cand = Elem::monomial(alg_, stripped, Scalar(1)) * subset_monomial(subset);
        Scalar sign = cand.terms()[0].coeff; // +-1
        out[subset] = out[subset] + Elem::monomial(alg_, stripped, t.coeff * sign);
    }
    return out;
}

Elem JetModel::euler_derivative(const Elem& L, size_t gen0) const {
    size_t f, s, a0;
    bool isv;
    decode_gen(gen0, f, s, a0, isv);
    if (orders_[a0] != 0)
        throw StructuralError("euler derivative expects an order-0 component");
    Elem r = Elem::zero(alg_);
    for (size_t a = 0; a < alphas_.size(); ++a) {
        size_t g = isv ? var_gen(f, s, a) : jet_gen(f, s, a);
        if (!L.contains(g)) continue;
        Elem p = partial_left(L, g);
        p = multi_derivative(alphas_[a], p);
        r = (orders_[a] % 2) ? r - p : r + p;
    }
    return r;
}

bool JetModel::total_derivative_test(const Elem& L, std::string* witness) const {
    for (size_t f = 0; f < fields_.size(); ++f)
        for (size_t s = 0; s < subsets_; ++s)
            for (int pass = 0; pass < (with_variations_ ? 2 : 1); ++pass) {
                size_t g = pass ? var_gen(f, s, size_t(0)) : jet_gen(f, s, size_t(0));
                // skip whole blocks that never occur
                bool present = false;
                for (size_t a = 0; a < alphas_.size() && !present; ++a)
                    present = L.contains(pass ? var_gen(f, s, a) : jet_gen(f, s, a));
                if (!present) continue;
                Elem e = euler_derivative(L, g);
                if (!e.is_zero()) {
                    if (witness)
                        *witness = "euler residue at " + alg_->gen(g).name + ": " +
                                   e.to_string();
                    return false;
                }
            }
    // field-free part must be a divergence: with at least one coordinate any
    // polynomial is one; over a point it must vanish
    Elem ff(alg_);
    for (const auto& t : L.terms()) {
        bool has_field = false;
        for (auto& [g, ex] : t.mono)
            if (is_any_field_gen(g)) { has_field = true; break; }
        if (!has_field) ff = ff + Elem::monomial(alg_, t.mono, t.coeff);
    }
    if (!ff.is_zero() && base_.coords.empty()) {
        if (witness) *witness = "field-free non-divergence part: " + ff.to_string();
        return false;
    }
    return true;
}

JetModel::Evo JetModel::make_evo(int parity) const {
    Evo x;
    x.parity = parity;
    x.comps.assign(fields_.size(), std::vector<Elem>(subsets_, Elem::zero(alg_)));
    if (with_variations_)
        x.var_comps.assign(fields_.size(), std::vector<Elem>(subsets_, Elem::zero(alg_)));
    return x;
}

void JetModel::set_evo_field(Evo& X, size_t field, const Elem& combination,
                             bool variations) const {
    auto comps = odd_components(combination);
    auto& target = variations ? X.var_comps : X.comps;
    for (size_t s = 0; s < subsets_; ++s) target[field][s] = comps[s];
}

Elem JetModel::apply_evolutionary(const Evo& X, const Elem& L) const {
    return derive_with(L, X.parity, [&](size_t g) -> Elem {
        if (!is_any_field_gen(g)) return Elem::zero(alg_);
        size_t f, s, a;
        bool isv;
        decode_gen(g, f, s, a, isv);
        Elem comp = isv ? (X.var_comps.empty() ? Elem::zero(alg_) : X.var_comps[f][s])
                        : X.comps[f][s];
        if (comp.is_zero()) return comp;
        return multi_derivative(alphas_[a], comp);
    });
}

Elem JetModel::contract(const Evo& X, const Elem& omega) const {
    // i_X: var(phi)_{S,alpha} -> D^alpha X^phi_S, everything else -> 0;
    // parity of i_X is parity(X) + 1
    return derive_with(omega, (X.parity + 1) % 2, [&](size_t g) -> Elem {
        if (!is_var_gen(g)) return Elem::zero(alg_);
        size_t f, s, a;
        bool isv;
        decode_gen(g, f, s, a, isv);
        const Elem& comp = X.comps[f][s];
        if (comp.is_zero()) return comp;
        return multi_derivative(alphas_[a], comp);
    });
}

Elem JetModel::random_point_evaluation(const Elem& e, Rng& rng) const {
    std::map<size_t, Elem> images;
    for (size_t g = jet_base_; g < alg_->size(); ++g)
        if (alg_->parity(g) == 0)
            images[g] = Elem::constant(alg_, rng.small_scalar());
    // even base coordinates too
    for (size_t c : base_.coords)
        if (alg_->parity(c) == 0)
            images[c] = Elem::constant(alg_, rng.small_scalar());
    return e.substituted(alg_, images);
}

Elem point_poisson_bracket(const Elem& f, const Elem& g, const ScalarMat& omega) {
    const AlgebraPtr& alg = f.algebra();
    size_t n = omega.size();
    if (alg->size() < n) throw StructuralError("omega larger than coordinate space");
    ScalarMat inv = mat_inverse(omega); // throws ValidationError if singular
    Elem r = Elem::zero(alg);
    for (size_t a = 0; a < n; ++a) {
        for (int pf = 0; pf < 2; ++pf) {
            Elem da = partial_left(f.parity_part(pf), a);
            if (da.is_zero()) continue;
            int pa = alg->parity(a);
            // right-derivative conversion: d_R f/dz^a = (-1)^{|z_a|(|f|+1)} d_L f/dz^a
            bool neg = (pa * (pf + 1)) % 2 != 0;
            for (size_t b = 0; b < n; ++b) {
                if (inv[a][b].is_zero()) continue;
                Elem db = partial_left(g, b);
                if (db.is_zero()) continue;
                Elem t = inv[a][b] * (da * db);
                r = neg ? r - t : r + t;
            }
        }
    }
    return r;
}

} // namespace courant
