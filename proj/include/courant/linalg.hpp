#pragma once

#include "courant/scalar.hpp"

#include <vector>

namespace courant {

using ScalarVec = std::vector<Scalar>;
using ScalarMat = std::vector<ScalarVec>; // row major

ScalarMat identity_mat(size_t n);
ScalarMat mat_mul(const ScalarMat& a, const ScalarMat& b);
ScalarVec mat_apply(const ScalarMat& a, const ScalarVec& v);
ScalarMat mat_transpose(const ScalarMat& a);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<size_t> rref(ScalarMat& m);

size_t rank(ScalarMat m);

// Basis of the right kernel (vectors v with m v = 0).
std::vector<ScalarVec> kernel_basis(const ScalarMat& m);

// Exact inverse; throws ValidationError if singular.
ScalarMat mat_inverse(const ScalarMat& m);

// Solve m x = b; returns false if inconsistent (x then unspecified).
bool solve(const ScalarMat& m, const ScalarVec& b, ScalarVec& x);

// True if v lies in the row span of m.
bool in_row_span(const ScalarMat& m, const ScalarVec& v);

// Rows of `rows` reduced to a basis of their span.
std::vector<ScalarVec> row_space_basis(const std::vector<ScalarVec>& rows);

} // namespace courant
