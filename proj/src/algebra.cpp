#include "courant/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace courant {

std::shared_ptr<const Algebra> Algebra::make(CoefficientField field,
                                             std::vector<Generator> gens) {
    auto a = std::make_shared<Algebra>();
    a->field_ = field;
    a->gens_ = std::move(gens);
    for (size_t i = 0; i < a->gens_.size(); ++i) {
        if (a->gens_[i].name.empty())
            throw StructuralError("generator with empty name");
        if (!a->by_name_.emplace(a->gens_[i].name, i).second)
            throw StructuralError("duplicate generator: " + a->gens_[i].name);
    }
    return a;
}

std::shared_ptr<const Algebra> Algebra::extended(const std::vector<Generator>& extra) const {
    std::vector<Generator> gens = gens_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return make(field_, std::move(gens));
}

std::optional<size_t> Algebra::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

size_t Algebra::index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw StructuralError("unknown generator: " + name);
    return *i;
}

bool Algebra::extends(const Algebra& base) const {
    if (base.gens_.size() > gens_.size()) return false;
    for (size_t i = 0; i < base.gens_.size(); ++i)
        if (gens_[i].name != base.gens_[i].name || gens_[i].grade != base.gens_[i].grade)
            return false;
    return true;
}

int cmp_monomial(const Algebra& alg, const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto ka = alg.key(a[i].first), kb = alg.key(b[j].first);
        if (ka != kb) return ka < kb ? -1 : 1;
        if (a[i].second != b[j].second) return a[i].second > b[j].second ? -1 : 1;
        ++i; ++j;
    }
    if (i < a.size()) return -1;
    if (j < b.size()) return 1;
    return 0;
}

namespace {

int monomial_parity(const Algebra& alg, const Monomial& m) {
    int p = 0;
    for (auto& [g, e] : m)
        if (alg.parity(g)) p ^= (e & 1);
    return p;
}

Grade monomial_grade(const Algebra& alg, const Monomial& m) {
    Grade g{0, 0};
    for (auto& [gi, e] : m)
        for (uint32_t k = 0; k < e; ++k) g = g + alg.gen(gi).grade;
    return g;
}

// Product of canonical monomials; returns false if an odd generator squares.
bool mul_monomial(const Algebra& alg, const Monomial& a, const Monomial& b,
                  Monomial& out, int& sign) {
    out.clear();
    sign = 1;
    // suffix_odd[i] = number of odd entries of a at positions >= i
    std::vector<uint32_t> suffix_odd(a.size() + 1, 0);
    for (size_t i = a.size(); i-- > 0;)
        suffix_odd[i] = suffix_odd[i + 1] + (alg.parity(a[i].first) ? 1 : 0);
    size_t i = 0;
    for (size_t j = 0; j < b.size(); ++j) {
        auto kb = alg.key(b[j].first);
        while (i < a.size() && alg.key(a[i].first) < kb) out.push_back(a[i++]);
        bool b_odd = alg.parity(b[j].first) != 0;
        if (b_odd && (suffix_odd[i] & 1)) sign = -sign;
        if (i < a.size() && alg.key(a[i].first) == kb) {
            if (b_odd) return false; // odd generator squared
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
        } else {
            out.push_back(b[j]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    return true;
}

void check_same_algebra(const Elem& a, const Elem& b) {
    if (a.algebra() != b.algebra())
        throw StructuralError("elements from different algebras");
}

} // namespace

Elem Elem::constant(AlgebraPtr alg, Scalar c) {
    Elem e(std::move(alg));
    if (!c.is_zero()) e.terms_.push_back({{}, std::move(c)});
    return e;
}

Elem Elem::generator(AlgebraPtr alg, size_t i) {
    if (i >= alg->size()) throw StructuralError("generator index out of range");
    Elem e(std::move(alg));
    e.terms_.push_back({{{(uint32_t)i, 1}}, Scalar(1)});
    return e;
}

Elem Elem::generator(AlgebraPtr alg, const std::string& name) {
    size_t i = alg->index_of(name);
    return generator(std::move(alg), i);
}

Elem Elem::monomial(AlgebraPtr alg, Monomial m, Scalar c) {
    Elem e(std::move(alg));
    e.terms_.push_back({std::move(m), std::move(c)});
    e.normalize();
    return e;
}

Scalar Elem::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (terms_.size() != 1 || !terms_[0].mono.empty())
        throw StructuralError("element is not a constant: " + to_string());
    return terms_[0].coeff;
}

void Elem::normalize() {
    if (!alg_) throw StructuralError("element without algebra");
    std::sort(terms_.begin(), terms_.end(), [&](const Term& x, const Term& y) {
        return cmp_monomial(*alg_, x.mono, y.mono) < 0;
    });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && cmp_monomial(*alg_, merged.back().mono, t.mono) == 0)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged)
        if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

Elem operator+(const Elem& a, const Elem& b) {
    if (a.alg_ == nullptr) return b;
    if (b.alg_ == nullptr) return a;
    check_same_algebra(a, b);
    Elem r(a.alg_);
    r.terms_ = a.terms_;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.normalize();
    return r;
}

Elem Elem::operator-() const {
    Elem r(alg_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Elem operator-(const Elem& a, const Elem& b) { return a + (-b); }

Elem operator*(const Scalar& c, const Elem& a) {
    Elem r(a.alg_);
    if (c.is_zero()) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Elem operator*(const Elem& a, const Elem& b) {
    check_same_algebra(a, b);
    Elem r(a.alg_);
    const Algebra& alg = *a.alg_;
    Monomial m;
    int sign;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            if (!mul_monomial(alg, ta.mono, tb.mono, m, sign)) continue;
            Scalar c = ta.coeff * tb.coeff;
            if (sign < 0) c = -c;
            r.terms_.push_back({m, std::move(c)});
        }
    r.normalize();
    return r;
}

bool operator==(const Elem& a, const Elem& b) {
    if (a.alg_ == nullptr || b.alg_ == nullptr)
        return a.is_zero() && b.is_zero();
    check_same_algebra(a, b);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].coeff != b.terms_[i].coeff ||
            cmp_monomial(*a.alg_, a.terms_[i].mono, b.terms_[i].mono) != 0)
            return false;
    return true;
}

Elem Elem::pow(uint32_t n) const {
    Elem r = Elem::constant(alg_, Scalar(1));
    for (uint32_t k = 0; k < n; ++k) r = r * *this;
    return r;
}

std::optional<Grade> Elem::homogeneous_grade() const {
    if (terms_.empty()) return std::nullopt;
    Grade g = monomial_grade(*alg_, terms_[0].mono);
    for (size_t i = 1; i < terms_.size(); ++i)
        if (monomial_grade(*alg_, terms_[i].mono) != g) return std::nullopt;
    return g;
}

bool Elem::is_parity_homogeneous(int* parity_out) const {
    if (terms_.empty()) {
        if (parity_out) *parity_out = 0;
        return true;
    }
    int p = monomial_parity(*alg_, terms_[0].mono);
    for (size_t i = 1; i < terms_.size(); ++i)
        if (monomial_parity(*alg_, terms_[i].mono) != p) return false;
    if (parity_out) *parity_out = p;
    return true;
}

Elem Elem::parity_part(int parity) const {
    Elem r(alg_);
    for (const auto& t : terms_)
        if (monomial_parity(*alg_, t.mono) == parity) r.terms_.push_back(t);
    return r;
}

bool Elem::contains(size_t gen) const {
    for (const auto& t : terms_)
        for (auto& [g, e] : t.mono)
            if (g == gen) return true;
    return false;
}

uint32_t Elem::degree_in(const std::vector<char>& gen_mask) const {
    uint32_t d = 0;
    for (const auto& t : terms_) {
        uint32_t td = 0;
        for (auto& [g, e] : t.mono)
            if (gen_mask[g]) td += e;
        d = std::max(d, td);
    }
    return d;
}

Elem Elem::truncate_degree_in(const std::vector<char>& gen_mask, uint32_t max_deg) const {
    Elem r(alg_);
    for (const auto& t : terms_) {
        uint32_t td = 0;
        for (auto& [g, e] : t.mono)
            if (gen_mask[g]) td += e;
        if (td <= max_deg) r.terms_.push_back(t);
    }
    return r;
}

Elem Elem::degree_part_in(const std::vector<char>& gen_mask, uint32_t deg) const {
    Elem r(alg_);
    for (const auto& t : terms_) {
        uint32_t td = 0;
        for (auto& [g, e] : t.mono)
            if (gen_mask[g]) td += e;
        if (td == deg) r.terms_.push_back(t);
    }
    return r;
}

Elem Elem::promoted(const AlgebraPtr& target) const {
    if (target == alg_) return *this;
    if (!target->extends(*alg_))
        throw StructuralError("promotion target does not extend source algebra");
    Elem r(target);
    r.terms_ = terms_;
    return r;
}

Elem Elem::substituted(const AlgebraPtr& target,
                       const std::map<size_t, Elem>& images) const {
    Elem r = Elem::zero(target);
    for (const auto& t : terms_) {
        Elem acc = Elem::constant(target, t.coeff);
        for (auto& [g, e] : t.mono) {
            auto it = images.find(g);
            Elem factor;
            if (it != images.end()) {
                if (it->second.algebra() != target)
                    throw StructuralError("substitution image in wrong algebra");
                factor = it->second;
            } else {
                if (g >= target->size() || target->gen(g).name != alg_->gen(g).name)
                    throw StructuralError("no image for generator " + alg_->gen(g).name);
                factor = Elem::generator(target, g);
            }
            acc = acc * factor.pow(e);
            if (acc.is_zero()) break;
        }
        r.terms_.insert(r.terms_.end(), acc.terms_.begin(), acc.terms_.end());
        if (r.terms_.size() > (size_t(1) << 21)) r.normalize();
    }
    r.normalize();
    return r;
}

std::string Elem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Scalar c = t.coeff;
        bool neg = c.im == 0 ? c.re < 0 : (c.re == 0 && c.im < 0);
        if (first) {
            if (neg) { os << "-"; c = -c; }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) c = -c;
        }
        first = false;
        std::string cs = courant::to_string(c);
        if (t.mono.empty()) {
            os << cs;
        } else {
            bool printed = false;
            if (!(c.is_one())) { os << cs; printed = true; }
            for (auto& [g, e] : t.mono) {
                if (printed) os << "*";
                os << alg_->gen(g).name;
                if (e > 1) os << "^" << e;
                printed = true;
            }
        }
    }
    return os.str();
}

void Derivation::set_image(size_t gen, Elem img) {
    if (images_.size() < alg_->size()) images_.resize(alg_->size());
    if (gen >= alg_->size()) throw StructuralError("derivation image for unknown generator");
    if (img.algebra() != alg_)
        throw StructuralError("derivation image in wrong algebra");
    images_[gen] = std::move(img);
}

void Derivation::set_zero_images() {
    images_.assign(alg_->size(), Elem::zero(alg_));
}

bool Derivation::has_image(size_t gen) const {
    return gen < images_.size() && images_[gen].has_value();
}

const Elem& Derivation::image(size_t gen) const {
    if (!has_image(gen))
        throw StructuralError("derivation has no image for generator " +
                              alg_->gen(gen).name);
    return *images_[gen];
}

Elem derive_with(const Elem& a, int dp, const std::function<Elem(size_t)>& image) {
    const AlgebraPtr& alg = a.algebra();
    Elem result = Elem::zero(alg);
    for (const auto& t : a.terms()) {
        int prefix_parity = 0;
        for (size_t p = 0; p < t.mono.size(); ++p) {
            auto [g, e] = t.mono[p];
            Elem dg = image(g); // throws if undefined
            if (!dg.is_zero()) {
                Monomial prefix(t.mono.begin(), t.mono.begin() + p);
                Monomial suffix(t.mono.begin() + p, t.mono.end());
                if (e == 1) suffix.erase(suffix.begin());
                else suffix[0].second = e - 1;
                Scalar c = t.coeff * Scalar(long(e));
                if (dp && prefix_parity) c = -c;
                Elem piece = Elem::monomial(alg, std::move(prefix), c) * dg *
                             Elem::monomial(alg, std::move(suffix), Scalar(1));
                result.terms_.insert(result.terms_.end(), piece.terms_.begin(),
                                     piece.terms_.end());
                if (result.terms_.size() > (size_t(1) << 21)) result.normalize();
            }
            if (alg->parity(g)) prefix_parity ^= (e & 1);
        }
    }
    result.normalize();
    return result;
}

Elem Derivation::operator()(const Elem& a) const {
    if (a.algebra() != alg_)
        throw StructuralError("derivation applied to element of wrong algebra");
    return derive_with(a, parity(), [this](size_t g) { return image(g); });
}

Elem partial_left(const Elem& a, size_t gen) {
    const auto& alg = a.algebra();
    Grade gg = alg->gen(gen).grade;
    Derivation d(alg, Grade{-gg.degree, gg.intrinsic});
    d.set_zero_images();
    d.set_image(gen, Elem::constant(alg, Scalar(1)));
    return d(a);
}

} // namespace courant
