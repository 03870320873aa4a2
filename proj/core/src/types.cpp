#include "nonmark/types.hpp"

namespace nonmark {

namespace ops {

Mat2 identity() { return Mat2::Identity(); }

Mat2 sigma_x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat2 sigma_y() {
    Mat2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

Mat2 sigma_z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Mat2 sigma_plus() {
    Mat2 m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}

Mat2 sigma_minus() {
    Mat2 m;
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}

} // namespace ops

Vec4 vectorize(const Mat2& m) {
    return Vec4(m(0, 0), m(1, 0), m(0, 1), m(1, 1));
}

Mat2 unvectorize(const Vec4& v) {
    Mat2 m;
    m << v(0), v(2), v(1), v(3);
    return m;
}

Superop sandwich(const Mat2& left, const Mat2& right) {
    // (right^T (x) left), written out for the fixed 2x2 case
    Superop s;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            s.block<2, 2>(2 * r, 2 * c) = right(c, r) * left;
        }
    }
    return s;
}

Superop left_multiply(const Mat2& a) { return sandwich(a, Mat2::Identity()); }

Superop right_multiply(const Mat2& b) { return sandwich(Mat2::Identity(), b); }

double hermiticity_defect(const Mat2& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

} // namespace nonmark
