#pragma once

#include <array>

#include "dyndeg/polynomial.hpp"

namespace dyndeg {

using Vec3 = std::array<BigInt, 3>;

inline BigInt dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

// 3x3 integer matrix with determinant +-1 (GL_3(Z)), the exponent data of a
// monomial map
class IntMat3 {
public:
    explicit IntMat3(std::array<std::array<BigInt, 3>, 3> entries);
    static IntMat3 identity();

    const BigInt& at(int i, int j) const { return e_[i][j]; }
    const BigInt& det() const { return det_; }

    Vec3 apply(const Vec3& v) const;
    IntMat3 operator*(const IntMat3& o) const;
    IntMat3 inverse() const;  // exact, integral since det = +-1

    // x^3 + b x^2 + c x + d with b = -trace, d = -det
    PolyQ char_poly() const;
    // recurrence coefficients (r1, r2, r3) with a_n = r1 a_{n-1} + r2 a_{n-2}
    // + r3 a_{n-3}, from Cayley-Hamilton
    std::array<BigInt, 3> recurrence() const;

    BigInt max_row_abs_sum() const;  // induced infinity norm

    bool operator==(const IntMat3& o) const { return e_ == o.e_; }

private:
    std::array<std::array<BigInt, 3>, 3> e_;
    BigInt det_;
};

// 4x4 rational matrix, used for the linear factors L_M on P^3
class Mat4Q {
public:
    explicit Mat4Q(std::array<std::array<Rat, 4>, 4> entries);
    static Mat4Q identity();

    const Rat& at(int i, int j) const { return e_[i][j]; }
    std::array<Rat, 4> apply(const std::array<Rat, 4>& v) const;
    Mat4Q operator*(const Mat4Q& o) const;
    Rat det() const;
    Mat4Q inverse() const;
    bool operator==(const Mat4Q& o) const { return e_ == o.e_; }

private:
    std::array<std::array<Rat, 4>, 4> e_;
};

// the fixed conjugating matrix B of the f_A construction
const Mat4Q& matrix_B();

}  // namespace dyndeg
