#ifndef CONICDISC_QUADFORM_HPP
#define CONICDISC_QUADFORM_HPP

#include <array>
#include <string>

#include "conicdisc/mat3.hpp"

namespace conicdisc {

// Q = a x^2 + b y^2 + c z^2 + alpha yz + beta zx + gamma xy over a
// Scalar, Poly or Series coefficient ring. Variable names are fixed as
// (x, y, z).
template <typename R>
struct TernaryForm {
    R a, b, c, alpha, beta, gamma;

    bool is_zero() const {
        return a.is_zero() && b.is_zero() && c.is_zero() && alpha.is_zero() &&
               beta.is_zero() && gamma.is_zero();
    }

    bool operator==(const TernaryForm& o) const {
        return a == o.a && b == o.b && c == o.c && alpha == o.alpha && beta == o.beta &&
               gamma == o.gamma;
    }

    TernaryForm scaled(const R& u) const {
        return {a * u, b * u, c * u, alpha * u, beta * u, gamma * u};
    }

    std::string str() const;
};

template <typename R>
TernaryForm<R> make_form(R a, R b, R c, R alpha, R beta, R gamma) {
    return TernaryForm<R>{std::move(a), std::move(b), std::move(c), std::move(alpha),
                          std::move(beta), std::move(gamma)};
}

// Q^M: the coefficients of Q(M (x,y,z)^T), expanded and collected.
// Errors NotInvertible when det M is not a unit.
template <typename R>
TernaryForm<R> act(const TernaryForm<R>& q, const Mat3<R>& m) {
    if (!m.is_invertible()) fail(ErrorCode::NotInvertible, "transform is not invertible");
    // rows of the substitution: X = m00 x + m01 y + m02 z, etc.
    std::array<std::array<R, 3>, 3> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = m.at(i, j);
    auto quad = [&](int i, int j) {
        // coefficient extraction helper: X_i X_j expanded over x,y,z
        // returns the 6-vector (x^2, y^2, z^2, yz, zx, xy) of X_i * X_j
        std::array<R, 6> v = {r[i][0] * r[j][0], r[i][1] * r[j][1], r[i][2] * r[j][2],
                              r[i][1] * r[j][2] + r[i][2] * r[j][1],
                              r[i][2] * r[j][0] + r[i][0] * r[j][2],
                              r[i][0] * r[j][1] + r[i][1] * r[j][0]};
        return v;
    };
    std::array<R, 6> acc = {zero_like(q.a), zero_like(q.a), zero_like(q.a),
                            zero_like(q.a), zero_like(q.a), zero_like(q.a)};
    auto add_scaled = [&](const std::array<R, 6>& v, const R& s) {
        for (int k = 0; k < 6; ++k) acc[k] = acc[k] + v[k] * s;
    };
    add_scaled(quad(0, 0), q.a);
    add_scaled(quad(1, 1), q.b);
    add_scaled(quad(2, 2), q.c);
    add_scaled(quad(1, 2), q.alpha);
    add_scaled(quad(2, 0), q.beta);
    add_scaled(quad(0, 1), q.gamma);
    return make_form(acc[0], acc[1], acc[2], acc[3], acc[4], acc[5]);
}

// delta(Q) = 4abc + alpha beta gamma - a alpha^2 - b beta^2 - c gamma^2.
template <typename R>
R delta(const TernaryForm<R>& q) {
    R four = from_int_like(q.a, 4);
    return four * q.a * q.b * q.c + q.alpha * q.beta * q.gamma - q.a * q.alpha * q.alpha -
           q.b * q.beta * q.beta - q.c * q.gamma * q.gamma;
}

// The fixed generator order of sigma(Q):
// (4ab - g^2, 4bc - a^2, 4ca - b^2, 2a*al - be*ga, 2b*be - ga*al, 2c*ga - al*be).
// In the minor naming, sigma11 = g2, sigma22 = g3, sigma33 = g1,
// sigma23 = g4, sigma31 = g5, sigma12 = g6.
template <typename R>
std::array<R, 6> sigma_generators(const TernaryForm<R>& q) {
    R two = from_int_like(q.a, 2);
    R four = from_int_like(q.a, 4);
    return {four * q.a * q.b - q.gamma * q.gamma,
            four * q.b * q.c - q.alpha * q.alpha,
            four * q.c * q.a - q.beta * q.beta,
            two * q.a * q.alpha - q.beta * q.gamma,
            two * q.b * q.beta - q.gamma * q.alpha,
            two * q.c * q.gamma - q.alpha * q.beta};
}

// sigma'(Q) = (alpha, beta, gamma); characteristic 2 only.
template <typename R>
std::array<R, 3> sigma_prime(const TernaryForm<R>& q) {
    if (ring_characteristic(q.a) != 2)
        fail(ErrorCode::WrongCharacteristic, "sigma' is defined in characteristic 2");
    return {q.alpha, q.beta, q.gamma};
}

// Symmetric Gram matrix [[2a, gamma, beta], [gamma, 2b, alpha],
// [beta, alpha, 2c]]; det = 2 delta(Q) identically.
template <typename R>
Mat3<R> gram_matrix(const TernaryForm<R>& q) {
    R two = from_int_like(q.a, 2);
    std::array<std::array<R, 3>, 3> e = {{{two * q.a, q.gamma, q.beta},
                                          {q.gamma, two * q.b, q.alpha},
                                          {q.beta, q.alpha, two * q.c}}};
    return Mat3<R>::from_entries(std::move(e));
}

// Witness for delta(Q) in sigma(Q): coefficients (c, -a, b, -alpha, 0, 0)
// against the fixed generator order, re-verified by expansion before
// returning.
template <typename R>
std::array<R, 6> delta_sigma_witness(const TernaryForm<R>& q) {
    std::array<R, 6> w = {q.c, zero_like(q.a) - q.a, q.b, zero_like(q.a) - q.alpha,
                          zero_like(q.a), zero_like(q.a)};
    auto gens = sigma_generators(q);
    R combo = zero_like(q.a);
    for (int i = 0; i < 6; ++i) combo = combo + w[i] * gens[i];
    if (!(combo == delta(q)))
        fail(ErrorCode::Inconsistent, "witness combination failed to reproduce delta");
    return w;
}

template <typename R>
std::string TernaryForm<R>::str() const {
    auto wrap = [](const std::string& s) {
        if (s.find('+') != std::string::npos || s.find('-') != std::string::npos ||
            s.find('*') != std::string::npos)
            return "(" + s + ")";
        return s;
    };
    std::string out;
    auto emit = [&](const R& coeff, const char* mono) {
        if (coeff.is_zero()) return;
        std::string cs = ring_str(coeff);
        if (!out.empty()) out += " + ";
        if (cs == "1")
            out += mono;
        else
            out += wrap(cs) + "*" + mono;
    };
    emit(a, "x^2");
    emit(b, "y^2");
    emit(c, "z^2");
    emit(alpha, "y*z");
    emit(beta, "z*x");
    emit(gamma, "x*y");
    if (out.empty()) out = "0";
    return out;
}

} // namespace conicdisc

#endif
