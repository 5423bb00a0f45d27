#pragma once

#include <vector>

#include "joindeg/field.hpp"

namespace joindeg {

using Vec = std::vector<Fq>;
using Mat = std::vector<Vec>;

// Reduced row echelon form in place; returns the rank.
int rref(Mat& m);

int rank_of(Mat m);

// Canonical basis of the row space: rref with zero rows dropped.
Mat row_space(Mat m);

// Basis of the right null space {v : m v = 0}; rows of the result.
Mat null_space(const Mat& m);

// Determinant by fraction-free (Bareiss) elimination; square input.
Fq determinant(Mat m);

bool mats_equal(const Mat& a, const Mat& b);

Vec mat_vec(const Mat& m, const Vec& v);

}  // namespace joindeg
