#include "dyndeg/matrix.hpp"

namespace dyndeg {

namespace {

BigInt det3(const std::array<std::array<BigInt, 3>, 3>& e) {
    return e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
           e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
           e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
}

}  // namespace

IntMat3::IntMat3(std::array<std::array<BigInt, 3>, 3> entries) : e_(std::move(entries)) {
    det_ = det3(e_);
    if (det_ != 1 && det_ != -1)
        throw std::invalid_argument("IntMat3: determinant must be +-1 (got " + det_.get_str() +
                                    ")");
}

IntMat3 IntMat3::identity() {
    std::array<std::array<BigInt, 3>, 3> e{};
    for (int i = 0; i < 3; ++i) e[i][i] = 1;
    return IntMat3(e);
}

Vec3 IntMat3::apply(const Vec3& v) const {
    Vec3 r;
    for (int i = 0; i < 3; ++i) r[i] = e_[i][0] * v[0] + e_[i][1] * v[1] + e_[i][2] * v[2];
    return r;
}

IntMat3 IntMat3::operator*(const IntMat3& o) const {
    std::array<std::array<BigInt, 3>, 3> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += e_[i][k] * o.e_[k][j];
    return IntMat3(r);
}

IntMat3 IntMat3::inverse() const {
    // adjugate divided by det; det = +-1 keeps it integral
    std::array<std::array<BigInt, 3>, 3> adj;
    auto cof = [&](int i, int j) -> BigInt {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        return e_[r0][c0] * e_[r1][c1] - e_[r0][c1] * e_[r1][c0];
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) adj[j][i] = cof(i, j);
    if (det_ == -1)
        for (auto& row : adj)
            for (auto& x : row) x = -x;
    return IntMat3(adj);
}

PolyQ IntMat3::char_poly() const {
    BigInt tr = e_[0][0] + e_[1][1] + e_[2][2];
    BigInt m = (e_[1][1] * e_[2][2] - e_[1][2] * e_[2][1]) +
               (e_[0][0] * e_[2][2] - e_[0][2] * e_[2][0]) +
               (e_[0][0] * e_[1][1] - e_[0][1] * e_[1][0]);
    return {Rat(-det_), Rat(m), Rat(-tr), Rat(1)};
}

std::array<BigInt, 3> IntMat3::recurrence() const {
    PolyQ cp = char_poly();
    // x^3 = -b x^2 - c x - d
    return {-cp[2].get_num(), -cp[1].get_num(), -cp[0].get_num()};
}

BigInt IntMat3::max_row_abs_sum() const {
    BigInt best(0);
    for (int i = 0; i < 3; ++i) {
        BigInt s = abs(e_[i][0]) + abs(e_[i][1]) + abs(e_[i][2]);
        if (s > best) best = s;
    }
    return best;
}

Mat4Q::Mat4Q(std::array<std::array<Rat, 4>, 4> entries) : e_(std::move(entries)) {
    if (det() == 0) throw std::invalid_argument("Mat4Q: singular matrix");
}

Mat4Q Mat4Q::identity() {
    std::array<std::array<Rat, 4>, 4> e{};
    for (int i = 0; i < 4; ++i) e[i][i] = 1;
    return Mat4Q(e);
}

std::array<Rat, 4> Mat4Q::apply(const std::array<Rat, 4>& v) const {
    std::array<Rat, 4> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += e_[i][j] * v[j];
    return r;
}

Mat4Q Mat4Q::operator*(const Mat4Q& o) const {
    std::array<std::array<Rat, 4>, 4> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) r[i][j] += e_[i][k] * o.e_[k][j];
    return Mat4Q(r);
}

Rat Mat4Q::det() const {
    // Gaussian elimination on a copy
    auto m = e_;
    Rat d(1);
    for (int col = 0; col < 4; ++col) {
        int pivot = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            d = -d;
        }
        d *= m[col][col];
        Rat inv = Rat(1) / m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            Rat f = m[r][col] * inv;
            for (int cc = col; cc < 4; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return d;
}

Mat4Q Mat4Q::inverse() const {
    // Gauss-Jordan with an augmented identity
    auto m = e_;
    std::array<std::array<Rat, 4>, 4> inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1;
    for (int col = 0; col < 4; ++col) {
        int pivot = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::logic_error("Mat4Q::inverse: singular");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rat f = Rat(1) / m[col][col];
        for (int cc = 0; cc < 4; ++cc) {
            m[col][cc] *= f;
            inv[col][cc] *= f;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat g = m[r][col];
            for (int cc = 0; cc < 4; ++cc) {
                m[r][cc] -= g * m[col][cc];
                inv[r][cc] -= g * inv[col][cc];
            }
        }
    }
    return Mat4Q(inv);
}

const Mat4Q& matrix_B() {
    static const Mat4Q B(std::array<std::array<Rat, 4>, 4>{{
        {Rat(1), Rat(-1), Rat(1), Rat(-1)},
        {Rat(1), Rat(1), Rat(-1), Rat(1)},
        {Rat(-1), Rat(1), Rat(1), Rat(-1)},
        {Rat(1), Rat(-1), Rat(1), Rat(1)},
    }});
    return B;
}

}  // namespace dyndeg
