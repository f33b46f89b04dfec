#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace courant {

using Rational = boost::multiprecision::cpp_rational;

struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& m) : std::runtime_error(m) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

enum class CoefficientField { Rationals, GaussianRationals };

// Element of Q(i): re + im*i, exact.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() = default;
    Scalar(long n) : re(n) {}
    Scalar(Rational r) : re(std::move(r)) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar unit_i() { return Scalar(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    Scalar operator-() const { return Scalar(-re, -im); }
    Scalar conj() const { return Scalar(re, -im); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.re + b.re, a.im + b.im);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.re - b.re, a.im - b.im);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw ValidationError("division by zero scalar");
        return Scalar((a.re * b.re + a.im * b.im) / n,
                      (a.im * b.re - a.re * b.im) / n);
    }
    Scalar& operator+=(const Scalar& b) { re += b.re; im += b.im; return *this; }
    Scalar& operator-=(const Scalar& b) { re -= b.re; im -= b.im; return *this; }
    Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

std::string to_string(const Rational& r);
// Canonical text form: "3", "-3/2", "i", "-i", "2i", "(1+2i)", "(1/2-i)".
std::string to_string(const Scalar& s);

// Parses the forms produced by to_string plus bare "<int>/<int>".
Scalar parse_scalar(const std::string& text);

} // namespace courant
