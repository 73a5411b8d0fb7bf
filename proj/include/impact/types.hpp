#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

namespace impact {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Fourth-order 2D tensors stored as 4x4 matrices; component (i,j) of a
// second-order tensor maps to row/column 2*i + j.
using Mat4 = Eigen::Matrix4d;

inline int voigt_index(int i, int j) { return 2 * i + j; }

// Frobenius inner product A:B.
inline double ddot(const Mat2& a, const Mat2& b) { return (a.array() * b.array()).sum(); }

}  // namespace impact
