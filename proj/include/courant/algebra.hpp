#pragma once

#include "courant/grade.hpp"
#include "courant/scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace courant {

struct Generator {
    std::string name;
    Grade grade;
};

// Free graded-commutative algebra over Q or Q(i) on named generators.
// Canonical generator order: even generators in declaration order, then odd
// generators in declaration order. Odd generators square to zero.
class Algebra {
public:
    static std::shared_ptr<const Algebra> make(CoefficientField field,
                                               std::vector<Generator> gens);

    // New algebra whose generator list is this one's followed by `extra`;
    // existing generator indices are preserved.
    std::shared_ptr<const Algebra> extended(const std::vector<Generator>& extra) const;

    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& gen(size_t i) const { return gens_[i]; }
    size_t size() const { return gens_.size(); }
    CoefficientField field() const { return field_; }

    std::optional<size_t> find(const std::string& name) const;
    size_t index_of(const std::string& name) const; // throws StructuralError

    int parity(size_t i) const { return gens_[i].grade.parity(); }

    // Canonical order key: (parity, declaration index).
    std::pair<int, size_t> key(size_t i) const { return {parity(i), i}; }

    // True if `base`'s generators are a prefix of ours (same names and grades).
    bool extends(const Algebra& base) const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, size_t> by_name_;
    CoefficientField field_ = CoefficientField::Rationals;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Sorted by canonical key; exponent of odd generators is always 1.
using Monomial = std::vector<std::pair<uint32_t, uint32_t>>;

struct Term {
    Monomial mono;
    Scalar coeff;
};

class Derivation;

class Elem {
public:
    Elem() = default;
    explicit Elem(AlgebraPtr alg) : alg_(std::move(alg)) {}

    static Elem zero(AlgebraPtr alg) { return Elem(std::move(alg)); }
    static Elem constant(AlgebraPtr alg, Scalar c);
    static Elem generator(AlgebraPtr alg, size_t i);
    static Elem generator(AlgebraPtr alg, const std::string& name);
    static Elem monomial(AlgebraPtr alg, Monomial m, Scalar c);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Scalar content of an element with no generator factors; throws if a
    // generator is present.
    Scalar constant_value() const;

    friend Elem operator+(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a, const Elem& b);
    Elem operator-() const;
    friend Elem operator*(const Scalar& c, const Elem& a);
    friend Elem operator*(const Elem& a, const Elem& b); // Koszul product
    friend bool operator==(const Elem& a, const Elem& b);
    friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
    Elem& operator+=(const Elem& b) { *this = *this + b; return *this; }
    Elem& operator-=(const Elem& b) { *this = *this - b; return *this; }

    Elem pow(uint32_t n) const;

    // Grade bookkeeping.
    std::optional<Grade> homogeneous_grade() const;     // nullopt if mixed or zero
    bool is_parity_homogeneous(int* parity_out = nullptr) const;
    Elem parity_part(int parity) const;
    bool contains(size_t gen) const;
    uint32_t degree_in(const std::vector<char>& gen_mask) const; // max over terms
    Elem truncate_degree_in(const std::vector<char>& gen_mask, uint32_t max_deg) const;
    Elem degree_part_in(const std::vector<char>& gen_mask, uint32_t deg) const;

    // Same element in a larger algebra (target.extends(*alg_) must hold).
    Elem promoted(const AlgebraPtr& target) const;

    // Ring homomorphism determined by generator images; generators with no
    // image are carried to the generator of the same index in `target`.
    Elem substituted(const AlgebraPtr& target,
                     const std::map<size_t, Elem>& images) const;

    std::string to_string() const;

private:
    AlgebraPtr alg_;
    std::vector<Term> terms_; // canonically sorted, nonzero coefficients

    void normalize();
    friend class Derivation;
    friend Elem derive_with(const Elem&, int, const std::function<Elem(size_t)>&);
};

// Graded derivation on an Algebra, determined by generator images. Leibniz
// rule D(ab) = D(a) b + (-1)^{|D||a|} a D(b). A generator appearing in the
// argument but not given an image is a structural error.
class Derivation {
public:
    Derivation(AlgebraPtr alg, Grade grade) : alg_(std::move(alg)), grade_(grade) {}

    void set_image(size_t gen, Elem img);
    void set_zero_images(); // every generator maps to zero (then override some)
    bool has_image(size_t gen) const;
    const Elem& image(size_t gen) const;

    const Grade& grade() const { return grade_; }
    int parity() const { return grade_.parity(); }
    const AlgebraPtr& algebra() const { return alg_; }

    Elem operator()(const Elem& a) const;

private:
    AlgebraPtr alg_;
    Grade grade_;
    std::vector<std::optional<Elem>> images_;
};

// Left partial derivative with respect to one generator (the derivation of
// grade -|g| sending g to 1 and every other generator to 0).
Elem partial_left(const Elem& a, size_t gen);

// Graded derivation with lazily supplied generator images; `parity` is the
// parity of the derivation for the Leibniz signs.
Elem derive_with(const Elem& a, int parity,
                 const std::function<Elem(size_t)>& image);

int cmp_monomial(const Algebra& alg, const Monomial& a, const Monomial& b);

} // namespace courant
