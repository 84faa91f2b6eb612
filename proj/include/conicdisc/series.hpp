#ifndef CONICDISC_SERIES_HPP
#define CONICDISC_SERIES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conicdisc/scalar.hpp"

namespace conicdisc {

// Truncated power series: the coefficients of t^0 .. t^{precision-1}.
// Every arithmetic result carries the minimum precision of its inputs.
class Series {
public:
    Series() = default;
    static Series zero(const FieldPtr& f, const std::string& var, int precision);
    static Series constant(const FieldPtr& f, const std::string& var, int precision,
                           const Scalar& c);
    static Series from_int(const FieldPtr& f, const std::string& var, int precision,
                           std::int64_t n);
    static Series variable(const FieldPtr& f, const std::string& var, int precision);
    static Series from_coeffs(const FieldPtr& f, const std::string& var, int precision,
                              std::vector<Scalar> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::string& var() const { return var_; }
    int precision() const { return precision_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Scalar coeff(int i) const; // zero beyond stored length, error beyond precision

    bool is_zero() const;          // all stored coefficients vanish
    bool is_unit() const;          // constant term nonzero
    Scalar at_zero() const { return coeff(0); }

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series operator-() const;
    bool operator==(const Series& o) const; // agree up to min precision

    Series scaled(const Scalar& c) const;
    // t^k * this; precision grows by k (the product is known that far).
    Series shifted_up(int k) const;
    // this / t^k; requires valuation >= k, precision drops by k.
    Series shifted_down(int k) const;
    Series truncated(int new_precision) const;

    std::string str() const;

private:
    FieldPtr field_;
    std::string var_;
    int precision_ = 0;
    std::vector<Scalar> coeffs_; // size == precision_
};

// Sentinel-carrying valuation: .first is the valuation when .second is
// true; otherwise every stored coefficient vanishes and the true
// valuation is >= precision ("AtLeastPrecision").
struct Valuation {
    int value;
    bool exact;
};

Valuation series_valuation(const Series& f);

// v with u*v = 1 mod t^N. Errors NotAUnit when u(0) = 0.
Series series_invert(const Series& u);

// s with s^2 = u mod t^N and s(0) = field_sqrt(u(0)); characteristic != 2.
// Errors NotAUnit when u(0) = 0, NoResidueRoot when u(0) has no root.
Series hensel_sqrt(const Series& u);

// Roots (delta, eps) with b*(Y+delta)*(Y+eps) = b*Y^2 + Y + c mod t^N,
// delta(0) canonically smaller; characteristic 2, b a unit. Errors
// NoResidueRoot when the residue quadratic does not split.
std::pair<Series, Series> hensel_factor_quadratic(const Series& b, const Series& c);

// Square root of a series whose nonzero coefficients all sit in even
// degree (char 2: coefficientwise Frobenius inverse); nullopt otherwise.
std::optional<Series> even_series_sqrt(const Series& u);

// Coefficientwise embedding into a larger field.
Series embed_series(const Series& s, const FieldPtr& big);

} // namespace conicdisc

#endif
