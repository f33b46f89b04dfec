#include "courant/scalar.hpp"

#include <sstream>

namespace courant {

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const Scalar& s) {
    if (s.im == 0) return to_string(s.re);
    std::string imabs = to_string(s.im < 0 ? Rational(-s.im) : s.im);
    std::string impart = (imabs == "1") ? "i" : imabs + "i";
    if (s.re == 0) return (s.im < 0 ? "-" : "") + impart;
    return "(" + to_string(s.re) + (s.im < 0 ? "-" : "+") + impart + ")";
}

namespace {

Rational parse_rational(const std::string& t) {
    if (t.empty()) throw ValidationError("empty rational literal");
    try {
        return Rational(t);
    } catch (const std::exception&) {
        throw ValidationError("bad rational literal: " + t);
    }
}

} // namespace

Scalar parse_scalar(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!isspace((unsigned char)c)) t += c;
    if (t.empty()) throw ValidationError("empty scalar literal");
    if (t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    if (t.empty()) throw ValidationError("empty scalar literal");

    // Split at the last top-level +/- that is not the leading sign.
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/' && t[k - 1] != '+' && t[k - 1] != '-') {
            split = k;
            break;
        }
    }
    auto parse_part = [](std::string p, Rational& re, Rational& im) {
        bool neg = false;
        if (!p.empty() && (p[0] == '+' || p[0] == '-')) {
            neg = p[0] == '-';
            p = p.substr(1);
        }
        if (!p.empty() && p.back() == 'i') {
            p.pop_back();
            if (!p.empty() && p.back() == '*') p.pop_back();
            Rational v = p.empty() ? Rational(1) : parse_rational(p);
            im += neg ? Rational(-v) : v;
        } else {
            Rational v = parse_rational(p);
            re += neg ? Rational(-v) : v;
        }
    };
    Rational re(0), im(0);
    if (split == std::string::npos) {
        parse_part(t, re, im);
    } else {
        parse_part(t.substr(0, split), re, im);
        parse_part(t.substr(split), re, im);
    }
    return Scalar(re, im);
}

} // namespace courant
