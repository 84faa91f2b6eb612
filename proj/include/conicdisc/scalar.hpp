#ifndef CONICDISC_SCALAR_HPP
#define CONICDISC_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conicdisc/errors.hpp"
#include "conicdisc/fieldspec.hpp"

namespace conicdisc {

using Rational = boost::multiprecision::cpp_rational;

// Exact field element: a reduced rational over Q, or a canonical
// representative (coefficient vector of length k, entries in [0, p))
// over F_{p^k}. Immutable in spirit: all operations return new values.
class Scalar {
public:
    Scalar() = default; // zero over Q; placeholder only
    static Scalar zero(const FieldPtr& f);
    static Scalar one(const FieldPtr& f);
    static Scalar from_int(const FieldPtr& f, std::int64_t n);
    static Scalar from_rational(const FieldPtr& f, const Rational& q);
    // Coefficient vector of the generator-polynomial representative,
    // little-endian; entries reduced mod p.
    static Scalar from_coeffs(const FieldPtr& f, std::vector<std::int64_t> coeffs);
    // The generator w of F_{p^k}, k > 1.
    static Scalar generator(const FieldPtr& f);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // errors NotAUnit on zero divisor
    Scalar operator-() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const; // errors NotAUnit on zero
    Scalar pow(std::int64_t e) const;
    // x -> x^p (finite fields).
    Scalar frobenius() const;
    // Unique p-th root over F_{p^k} (inverse Frobenius).
    Scalar pth_root() const;

    // Canonical total order used for deterministic tie-breaking: numeric
    // over Q, lexicographic on the representative coefficient tuple over
    // finite fields.
    bool less_than(const Scalar& o) const;

    const Rational& rational() const;
    const std::vector<std::int64_t>& coeffs() const;

    // Canonical printing: integers as-is over prime fields / integral
    // rationals, "n/d" over Q, and generator polynomials like "w^2+w+1"
    // over proper extensions (parenthesised by the callers that need it).
    std::string str() const;

    std::size_t hash() const;

private:
    FieldPtr field_;
    Rational rat_;
    std::vector<std::int64_t> ff_; // length k over finite fields
};

// r with r^2 = a, if one exists in the field; the canonically smaller
// root when both exist. Total over char-2 finite fields.
std::optional<Scalar> field_sqrt(const Scalar& a);

// Smallest root mu of a*mu^2 + b*mu + c = 0 over a char-2 finite field
// (a != 0), or nullopt when the Artin-Schreier obstruction blocks it.
std::optional<Scalar> solve_quadratic_char2(const Scalar& a, const Scalar& b,
                                            const Scalar& c);

// Image of x under the canonical embedding F_{p^k} -> big_field where
// big_field has extension degree divisible by k (the generator maps to
// the canonically smallest root of the small modulus).
Scalar embed_scalar(const Scalar& x, const FieldPtr& big_field);

// Absolute trace F_{2^k} -> F_2, returned as 0/1.
int absolute_trace_char2(const Scalar& a);

// All field elements in canonical order (finite fields, desk scale).
std::vector<Scalar> all_field_elements(const FieldPtr& f);

} // namespace conicdisc

#endif
