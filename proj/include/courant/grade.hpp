#pragma once

namespace courant {

// Cohomological degree plus an intrinsic parity flag; total parity is
// (degree + intrinsic) mod 2 and governs all Koszul signs.
struct Grade {
    int degree = 0;
    int intrinsic = 0; // 0 or 1

    int parity() const { return ((degree + intrinsic) % 2 + 2) % 2; }

    friend Grade operator+(const Grade& a, const Grade& b) {
        return Grade{a.degree + b.degree, (a.intrinsic + b.intrinsic) % 2};
    }
    friend bool operator==(const Grade& a, const Grade& b) {
        return a.degree == b.degree && a.intrinsic == b.intrinsic;
    }
    friend bool operator!=(const Grade& a, const Grade& b) { return !(a == b); }
};

inline Grade even_grade(int degree) { return Grade{degree, degree % 2 ? 1 : 0}; }

} // namespace courant
