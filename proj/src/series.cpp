#include "conicdisc/series.hpp"

#include <algorithm>
#include <sstream>

namespace conicdisc {

namespace {

void check_compatible(const Series& a, const Series& b) {
    if (!a.field()->same_field(*b.field()) || a.var() != b.var())
        fail(ErrorCode::BadInput, "series arithmetic across different rings");
}

} // namespace

Series Series::zero(const FieldPtr& f, const std::string& var, int precision) {
    if (precision < 1) fail(ErrorCode::BadInput, "series precision must be >= 1");
    Series s;
    s.field_ = f;
    s.var_ = var;
    s.precision_ = precision;
    s.coeffs_.assign(precision, Scalar::zero(f));
    return s;
}

Series Series::constant(const FieldPtr& f, const std::string& var, int precision,
                        const Scalar& c) {
    Series s = zero(f, var, precision);
    s.coeffs_[0] = c;
    return s;
}

Series Series::from_int(const FieldPtr& f, const std::string& var, int precision,
                        std::int64_t n) {
    return constant(f, var, precision, Scalar::from_int(f, n));
}

Series Series::variable(const FieldPtr& f, const std::string& var, int precision) {
    Series s = zero(f, var, precision);
    if (precision > 1) s.coeffs_[1] = Scalar::one(f);
    return s;
}

Series Series::from_coeffs(const FieldPtr& f, const std::string& var, int precision,
                           std::vector<Scalar> coeffs) {
    Series s = zero(f, var, precision);
    for (std::size_t i = 0; i < coeffs.size() && i < static_cast<std::size_t>(precision); ++i)
        s.coeffs_[i] = coeffs[i];
    return s;
}

Scalar Series::coeff(int i) const {
    if (i < 0 || i >= precision_)
        fail(ErrorCode::PrecisionExhausted, "coefficient index beyond precision");
    return coeffs_[i];
}

bool Series::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Scalar& c) { return c.is_zero(); });
}

bool Series::is_unit() const { return !coeffs_[0].is_zero(); }

Series Series::operator+(const Series& o) const {
    check_compatible(*this, o);
    int n = std::min(precision_, o.precision_);
    Series r = zero(field_, var_, n);
    for (int i = 0; i < n; ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Series Series::operator*(const Series& o) const {
    check_compatible(*this, o);
    int n = std::min(precision_, o.precision_);
    Series r = zero(field_, var_, n);
    for (int i = 0; i < n; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (int j = 0; j + i < n; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
        }
    }
    return r;
}

bool Series::operator==(const Series& o) const {
    check_compatible(*this, o);
    int n = std::min(precision_, o.precision_);
    for (int i = 0; i < n; ++i)
        if (!(coeffs_[i] == o.coeffs_[i])) return false;
    return true;
}

Series Series::scaled(const Scalar& c) const {
    Series r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
}

Series Series::shifted_up(int k) const {
    if (k < 0) return shifted_down(-k);
    Series r = zero(field_, var_, precision_ + k);
    for (int i = 0; i < precision_; ++i) r.coeffs_[i + k] = coeffs_[i];
    return r;
}

Series Series::shifted_down(int k) const {
    if (k == 0) return *this;
    if (k < 0) return shifted_up(-k);
    if (precision_ <= k)
        fail(ErrorCode::PrecisionExhausted, "series shift consumes all precision");
    for (int i = 0; i < k; ++i)
        if (!coeffs_[i].is_zero())
            fail(ErrorCode::BadInput, "series valuation too small for exact division");
    Series r = zero(field_, var_, precision_ - k);
    for (int i = 0; i + k < precision_; ++i) r.coeffs_[i] = coeffs_[i + k];
    return r;
}

Series Series::truncated(int new_precision) const {
    if (new_precision >= precision_) return *this;
    if (new_precision < 1) fail(ErrorCode::PrecisionExhausted, "truncation to zero precision");
    Series r = zero(field_, var_, new_precision);
    for (int i = 0; i < new_precision; ++i) r.coeffs_[i] = coeffs_[i];
    return r;
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < precision_; ++i) {
        if (coeffs_[i].is_zero()) continue;
        std::string cs = coeffs_[i].str();
        bool negative = !cs.empty() && cs[0] == '-';
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        if (negative) cs = cs.substr(1);
        first = false;
        bool needs_parens = cs.find('+') != std::string::npos || cs.find('w') != std::string::npos;
        if (i == 0) {
            os << (needs_parens ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") os << (needs_parens ? "(" + cs + ")" : cs) << "*";
            os << var_;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

Valuation series_valuation(const Series& f) {
    for (int i = 0; i < f.precision(); ++i)
        if (!f.coeffs()[i].is_zero()) return {i, true};
    return {f.precision(), false};
}

Series series_invert(const Series& u) {
    if (!u.is_unit()) fail(ErrorCode::NotAUnit, "series has no inverse: constant term is zero");
    const int n = u.precision();
    Series v = Series::zero(u.field(), u.var(), n);
    std::vector<Scalar> c(n, Scalar::zero(u.field()));
    Scalar u0inv = u.coeffs()[0].inverse();
    c[0] = u0inv;
    for (int i = 1; i < n; ++i) {
        Scalar acc = Scalar::zero(u.field());
        for (int j = 1; j <= i; ++j) acc = acc + u.coeffs()[j] * c[i - j];
        c[i] = -(u0inv * acc);
    }
    return Series::from_coeffs(u.field(), u.var(), n, std::move(c));
}

Series hensel_sqrt(const Series& u) {
    const FieldPtr& f = u.field();
    if (f->is_finite() && f->characteristic() == 2)
        fail(ErrorCode::WrongCharacteristic, "square-root lifting needs characteristic != 2");
    if (!u.is_unit()) fail(ErrorCode::NotAUnit, "square-root lifting needs a unit");
    auto r0 = field_sqrt(u.coeffs()[0]);
    if (!r0) fail(ErrorCode::NoResidueRoot, "constant term has no square root in the field");
    const int n = u.precision();
    std::vector<Scalar> s(n, Scalar::zero(f));
    s[0] = *r0;
    Scalar half_inv = (Scalar::from_int(f, 2) * s[0]).inverse();
    for (int i = 1; i < n; ++i) {
        // coefficient of t^i in s*s must equal u_i
        Scalar acc = Scalar::zero(f);
        for (int j = 1; j < i; ++j) acc = acc + s[j] * s[i - j];
        s[i] = (u.coeffs()[i] - acc) * half_inv;
    }
    return Series::from_coeffs(f, u.var(), n, std::move(s));
}

std::pair<Series, Series> hensel_factor_quadratic(const Series& b, const Series& c) {
    const FieldPtr& f = b.field();
    if (!f->is_finite() || f->characteristic() != 2)
        fail(ErrorCode::WrongCharacteristic, "quadratic factoring is the char-2 route");
    if (!b.is_unit()) fail(ErrorCode::NotAUnit, "leading series coefficient must be a unit");
    check_compatible(b, c);
    auto mu = solve_quadratic_char2(b.at_zero(), Scalar::one(f), c.at_zero());
    if (!mu) fail(ErrorCode::NoResidueRoot, "residue quadratic does not split over the field");
    const int n = std::min(b.precision(), c.precision());
    // Newton on F(Y) = b Y^2 + Y + c; F'(Y) = 1 in characteristic 2, so
    // the update is delta <- delta + F(delta) and doubles the valuation
    // of the defect each round.
    Series delta = Series::constant(f, b.var(), n, *mu);
    Series bb = b.truncated(n);
    Series cc = c.truncated(n);
    for (int reached = 1; reached < n; reached *= 2) {
        Series defect = bb * delta * delta + delta + cc;
        delta = delta + defect;
    }
    Series eps = series_invert(bb) + delta;
    if (eps.at_zero().less_than(delta.at_zero())) std::swap(delta, eps);
    return {delta, eps};
}

std::optional<Series> even_series_sqrt(const Series& u) {
    const FieldPtr& f = u.field();
    if (!f->is_finite() || f->characteristic() != 2)
        fail(ErrorCode::WrongCharacteristic, "even-part square roots are the char-2 route");
    // ceil(N/2) coefficients of the root are determined by precision N
    int half = (u.precision() + 1) / 2;
    Series r = Series::zero(f, u.var(), half);
    std::vector<Scalar> s(half, Scalar::zero(f));
    for (int i = 0; i < u.precision(); ++i) {
        if (i % 2 == 0) {
            s[i / 2] = u.coeffs()[i].pth_root();
        } else if (!u.coeffs()[i].is_zero()) {
            return std::nullopt;
        }
    }
    return Series::from_coeffs(f, u.var(), half, std::move(s));
}

Series embed_series(const Series& s, const FieldPtr& big) {
    Series r = Series::zero(big, s.var(), s.precision());
    std::vector<Scalar> c(s.precision(), Scalar::zero(big));
    for (int i = 0; i < s.precision(); ++i) c[i] = embed_scalar(s.coeffs()[i], big);
    return Series::from_coeffs(big, s.var(), s.precision(), std::move(c));
}

} // namespace conicdisc
