#ifndef CONICDISC_MAT3_HPP
#define CONICDISC_MAT3_HPP

#include <array>
#include <string>
#include <vector>

#include "conicdisc/ring.hpp"

namespace conicdisc {

enum class Axis { X = 0, Y = 1, Z = 2 };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

// One of the invertible building blocks: Scale(axis, lambda) with lambda
// a unit, Swap(i, j), or Shear(target <- source, mu) substituting
// target + mu * source for target.
template <typename R>
struct ElementaryMove {
    enum class Kind { Scale, Swap, Shear } kind;
    Axis a;
    Axis b; // Swap partner / shear source; unused for Scale
    R coeff; // lambda or mu; unused for Swap
};

template <typename R>
class Mat3 {
public:
    Mat3() = default;

    static Mat3 identity(const R& sample) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.e_[i][j] = i == j ? one_like(sample) : zero_like(sample);
        m.det_ = one_like(sample);
        m.has_det_ = true;
        return m;
    }

    static Mat3 from_entries(std::array<std::array<R, 3>, 3> entries) {
        Mat3 m;
        m.e_ = std::move(entries);
        m.compute_det();
        return m;
    }

    static Mat3 from_move(const ElementaryMove<R>& mv, const R& sample) {
        Mat3 m = identity(sample);
        switch (mv.kind) {
            case ElementaryMove<R>::Kind::Scale:
                m.e_[static_cast<int>(mv.a)][static_cast<int>(mv.a)] = mv.coeff;
                break;
            case ElementaryMove<R>::Kind::Swap: {
                int i = static_cast<int>(mv.a), j = static_cast<int>(mv.b);
                m.e_[i][i] = zero_like(sample);
                m.e_[j][j] = zero_like(sample);
                m.e_[i][j] = one_like(sample);
                m.e_[j][i] = one_like(sample);
                break;
            }
            case ElementaryMove<R>::Kind::Shear:
                m.e_[static_cast<int>(mv.a)][static_cast<int>(mv.b)] = mv.coeff;
                break;
        }
        m.compute_det();
        return m;
    }

    const R& at(int i, int j) const { return e_[i][j]; }
    R& at(int i, int j) { return e_[i][j]; }
    const R& det() const { return det_; }
    bool is_invertible() const { return is_unit_elem(det_); }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                R acc = e_[i][0] * o.e_[0][j];
                acc = acc + e_[i][1] * o.e_[1][j];
                acc = acc + e_[i][2] * o.e_[2][j];
                r.e_[i][j] = acc;
            }
        }
        r.det_ = det_ * o.det_;
        r.has_det_ = true;
        return r;
    }

    bool operator==(const Mat3& o) const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(e_[i][j] == o.e_[i][j])) return false;
        return true;
    }

    void compute_det() {
        const auto& m = e_;
        det_ = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        has_det_ = true;
    }

private:
    std::array<std::array<R, 3>, 3> e_;
    R det_;
    bool has_det_ = false;
};

template <typename R>
Mat3<R> move_matrix(const ElementaryMove<R>& mv, const R& sample) {
    return Mat3<R>::from_move(mv, sample);
}

template <typename R>
Mat3<R> product_of_moves(const std::vector<ElementaryMove<R>>& moves, const R& sample) {
    Mat3<R> m = Mat3<R>::identity(sample);
    for (const auto& mv : moves) m = m * Mat3<R>::from_move(mv, sample);
    return m;
}

// Factor an invertible matrix into elementary moves whose product (in
// list order) reconstructs it. Row elimination pivots on the first unit
// entry of each column, scanning rows top-down; unit detection is the
// ring's own (nonzero scalar / unit constant term).
template <typename R>
std::vector<ElementaryMove<R>> decompose_gl3(const Mat3<R>& m0) {
    using Move = ElementaryMove<R>;
    if (!m0.is_invertible()) fail(ErrorCode::NotInvertible, "determinant is not a unit");
    const R& sample = m0.at(0, 0);
    Mat3<R> m = m0;
    // Inverses of the row operations applied, in application order;
    // final list is reversed so the product rebuilds m0.
    std::vector<Move> inv_ops;

    auto row_scale = [&](int i, const R& lambda) {
        for (int j = 0; j < 3; ++j) m.at(i, j) = m.at(i, j) * lambda;
        inv_ops.push_back(Move{Move::Kind::Scale, static_cast<Axis>(i), static_cast<Axis>(i),
                               invert_elem(lambda)});
    };
    auto row_swap = [&](int i, int j) {
        for (int c = 0; c < 3; ++c) std::swap(m.at(i, c), m.at(j, c));
        inv_ops.push_back(Move{Move::Kind::Swap, static_cast<Axis>(i), static_cast<Axis>(j),
                               zero_like(sample)});
    };
    // row i += mu * row j
    auto row_shear = [&](int i, int j, const R& mu) {
        for (int c = 0; c < 3; ++c) m.at(i, c) = m.at(i, c) + mu * m.at(j, c);
        R neg = zero_like(sample) - mu;
        inv_ops.push_back(
            Move{Move::Kind::Shear, static_cast<Axis>(i), static_cast<Axis>(j), neg});
    };

    for (int col = 0; col < 3; ++col) {
        int pivot = -1;
        for (int row = col; row < 3; ++row) {
            if (is_unit_elem(m.at(row, col))) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) fail(ErrorCode::NotInvertible, "no unit pivot available");
        if (pivot != col) row_swap(col, pivot);
        if (!(m.at(col, col) == one_like(sample)))
            row_scale(col, invert_elem(m.at(col, col)));
        for (int row = 0; row < 3; ++row) {
            if (row == col || m.at(row, col).is_zero()) continue;
            row_shear(row, col, zero_like(sample) - m.at(row, col));
        }
    }
    // E_k ... E_1 m0 = I, so m0 = E_1^{-1} ... E_k^{-1}: the stored
    // inverses, multiplied in application order, rebuild m0.
    return inv_ops;
}

} // namespace conicdisc

#endif
