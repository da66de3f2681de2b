#pragma once

#include <Eigen/Dense>
#include <complex>

namespace casimir {

using cplx = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;
using Mat3d = Eigen::Matrix3d;

// Bilinear (unconjugated) dot product. All polarization algebra on the
// imaginary frequency axis uses a . b = sum_i a_i b_i, never the Hermitian
// inner product: vectors with complex components must satisfy a . a = 1.
inline cplx bdot(const Vec3c& a, const Vec3c& b) { return a.transpose() * b; }

// Unconjugated outer product a b^T.
inline Mat3c outer(const Vec3c& a, const Vec3c& b) { return a * b.transpose(); }

// Cross-product matrix: crossMat(d) * v = d x v.
inline Mat3c crossMat(const Vec3c& d) {
    Mat3c m;
    m << 0.0, -d(2), d(1),
         d(2), 0.0, -d(0),
         -d(1), d(0), 0.0;
    return m;
}

// Mirror reflection about the x = const plane: flips the normal component.
inline Mat3c reflectX() {
    Mat3c m = Mat3c::Zero();
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    return m;
}

} // namespace casimir
