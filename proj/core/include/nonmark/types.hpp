// Matrix aliases and the vectorization convention.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace nonmark {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using BlochVector = Eigen::Vector3d;

/// 4x4 matrix acting on vec(rho). Column stacking throughout:
/// vec(rho) = (rho00, rho10, rho01, rho11) and vec(A X B) = (B^T (x) A) vec(X).
using Superop = Eigen::Matrix4cd;

inline constexpr Complex kI{0.0, 1.0};

/// Which variant of a published closed-form expression to evaluate.
/// Consistent: the form that agrees with the master equation it is derived from.
/// AsPublished: the literal printed expression, kept for comparison.
enum class ClosedForm { Consistent, AsPublished };

namespace ops {

// Basis ordering {|0>, |1>} = {upper, lower} level; sigma_plus = |0><1| raises.
Mat2 identity();
Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();
Mat2 sigma_plus();
Mat2 sigma_minus();

} // namespace ops

Vec4 vectorize(const Mat2& m);
Mat2 unvectorize(const Vec4& v);

/// Superoperator of X -> A X B.
Superop sandwich(const Mat2& left, const Mat2& right);
/// Superoperator of X -> A X.
Superop left_multiply(const Mat2& a);
/// Superoperator of X -> X B.
Superop right_multiply(const Mat2& b);

inline Mat2 apply(const Superop& s, const Mat2& rho) { return unvectorize(s * vectorize(rho)); }

double hermiticity_defect(const Mat2& m);

} // namespace nonmark
