#include "conicdisc/scalar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace conicdisc {

namespace {

std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
    a %= p;
    if (a < 0) a += p;
    return a;
}

void check_same_field(const Scalar& a, const Scalar& b) {
    if (!a.field()->same_field(*b.field()))
        fail(ErrorCode::BadInput, "scalar arithmetic across different fields");
}

} // namespace

Scalar Scalar::zero(const FieldPtr& f) {
    Scalar s;
    s.field_ = f;
    if (f->is_finite()) s.ff_.assign(f->extension_degree(), 0);
    return s;
}

Scalar Scalar::one(const FieldPtr& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldPtr& f, std::int64_t n) {
    Scalar s = zero(f);
    if (f->is_rational()) {
        s.rat_ = n;
    } else {
        s.ff_[0] = mod_reduce(n, f->characteristic());
    }
    return s;
}

Scalar Scalar::from_rational(const FieldPtr& f, const Rational& q) {
    if (f->is_rational()) {
        Scalar s = zero(f);
        s.rat_ = q;
        return s;
    }
    // n/d with d invertible mod p
    const std::int64_t p = f->characteristic();
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    std::int64_t n = static_cast<std::int64_t>(num % p);
    std::int64_t d = static_cast<std::int64_t>(den % p);
    if (d == 0) fail(ErrorCode::NotAUnit, "denominator vanishes in the field");
    return from_int(f, n) / from_int(f, d);
}

Scalar Scalar::from_coeffs(const FieldPtr& f, std::vector<std::int64_t> coeffs) {
    if (!f->is_finite()) fail(ErrorCode::BadInput, "coefficient vectors need a finite field");
    Scalar s = zero(f);
    const std::int64_t p = f->characteristic();
    const int k = f->extension_degree();
    if (static_cast<int>(coeffs.size()) > k)
        fail(ErrorCode::BadInput, "coefficient vector longer than extension degree");
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.ff_[i] = mod_reduce(coeffs[i], p);
    return s;
}

Scalar Scalar::generator(const FieldPtr& f) {
    if (!f->is_finite() || f->extension_degree() < 2)
        fail(ErrorCode::BadInput, "generator requires a proper extension field");
    return from_coeffs(f, {0, 1});
}

bool Scalar::is_zero() const {
    if (field_->is_rational()) return rat_ == 0;
    return std::all_of(ff_.begin(), ff_.end(), [](std::int64_t c) { return c == 0; });
}

bool Scalar::is_one() const { return *this == one(field_); }

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(*this, o);
    Scalar s = *this;
    if (field_->is_rational()) {
        s.rat_ += o.rat_;
    } else {
        const std::int64_t p = field_->characteristic();
        for (std::size_t i = 0; i < ff_.size(); ++i) s.ff_[i] = mod_reduce(ff_[i] + o.ff_[i], p);
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (field_->is_rational()) {
        s.rat_ = -rat_;
    } else {
        const std::int64_t p = field_->characteristic();
        for (auto& c : s.ff_) c = mod_reduce(-c, p);
    }
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(*this, o);
    Scalar s = zero(field_);
    if (field_->is_rational()) {
        s.rat_ = rat_ * o.rat_;
        return s;
    }
    const std::int64_t p = field_->characteristic();
    const int k = field_->extension_degree();
    if (k == 1) {
        s.ff_[0] = static_cast<__int128>(ff_[0]) * o.ff_[0] % p;
        return s;
    }
    std::vector<std::int64_t> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
        if (ff_[i] == 0) continue;
        for (int j = 0; j < k; ++j)
            prod[i + j] = (prod[i + j] + ff_[i] * o.ff_[j]) % p;
    }
    const auto& m = field_->modulus();
    for (int i = 2 * k - 2; i >= k; --i) {
        std::int64_t c = prod[i];
        if (c == 0) continue;
        int shift = i - k;
        for (int j = 0; j <= k; ++j)
            prod[shift + j] = mod_reduce(prod[shift + j] - c * m[j], p);
    }
    for (int i = 0; i < k; ++i) s.ff_[i] = prod[i];
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorCode::NotAUnit, "inverse of zero");
    if (field_->is_rational()) {
        Scalar s = *this;
        s.rat_ = 1 / rat_;
        return s;
    }
    // a^(q-2) = a^{-1} in F_q x
    return pow(field_->order() - 2);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r = one(field_);
    Scalar b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Scalar Scalar::frobenius() const {
    if (!field_->is_finite()) fail(ErrorCode::WrongCharacteristic, "frobenius needs positive characteristic");
    return pow(field_->characteristic());
}

Scalar Scalar::pth_root() const {
    if (!field_->is_finite()) fail(ErrorCode::WrongCharacteristic, "p-th root needs positive characteristic");
    // x -> x^{p^{k-1}} inverts Frobenius on F_{p^k}
    Scalar r = *this;
    for (int i = 1; i < field_->extension_degree(); ++i) r = r.frobenius();
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same_field(*this, o);
    if (field_->is_rational()) return rat_ == o.rat_;
    return ff_ == o.ff_;
}

bool Scalar::less_than(const Scalar& o) const {
    check_same_field(*this, o);
    if (field_->is_rational()) return rat_ < o.rat_;
    return ff_ < o.ff_;
}

const Rational& Scalar::rational() const {
    if (!field_->is_rational()) fail(ErrorCode::BadInput, "not a rational scalar");
    return rat_;
}

const std::vector<std::int64_t>& Scalar::coeffs() const {
    if (!field_->is_finite()) fail(ErrorCode::BadInput, "not a finite-field scalar");
    return ff_;
}

std::string Scalar::str() const {
    if (field_->is_rational()) {
        std::ostringstream os;
        os << rat_;
        return os.str();
    }
    if (field_->extension_degree() == 1) return std::to_string(ff_[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = field_->extension_degree() - 1; i >= 0; --i) {
        if (ff_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << ff_[i];
        } else {
            if (ff_[i] != 1) os << ff_[i] << "*";
            os << "w";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::size_t Scalar::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    if (field_->is_rational()) {
        std::ostringstream os;
        os << rat_;
        return std::hash<std::string>{}(os.str());
    }
    for (auto c : ff_) h = h * 1099511628211ull + static_cast<std::size_t>(c);
    return h;
}

std::optional<Scalar> field_sqrt(const Scalar& a) {
    const FieldPtr& f = a.field();
    if (a.is_zero()) return Scalar::zero(f);
    if (f->is_rational()) {
        using boost::multiprecision::cpp_int;
        const Rational& q = a.rational();
        if (q < 0) return std::nullopt;
        cpp_int num = boost::multiprecision::numerator(q);
        cpp_int den = boost::multiprecision::denominator(q);
        cpp_int rn = boost::multiprecision::sqrt(num);
        cpp_int rd = boost::multiprecision::sqrt(den);
        if (rn * rn != num || rd * rd != den) return std::nullopt;
        return Scalar::from_rational(f, Rational(rn, rd));
    }
    const std::int64_t p = f->characteristic();
    if (p == 2) return a.pth_root(); // Frobenius is bijective: unique root
    const std::int64_t q = f->order();
    // Euler criterion, then Tonelli-Shanks in F_q.
    if (a.pow((q - 1) / 2) != Scalar::one(f)) return std::nullopt;
    Scalar r = Scalar::zero(f);
    if (q % 4 == 3) {
        r = a.pow((q + 1) / 4);
    } else {
        // q - 1 = m * 2^e with m odd
        std::int64_t m = q - 1;
        int e = 0;
        while (m % 2 == 0) {
            m /= 2;
            ++e;
        }
        // smallest non-residue in canonical order
        Scalar n = Scalar::zero(f);
        for (const Scalar& cand : all_field_elements(f)) {
            if (cand.is_zero()) continue;
            if (cand.pow((q - 1) / 2) != Scalar::one(f)) {
                n = cand;
                break;
            }
        }
        Scalar z = n.pow(m);
        Scalar x = a.pow((m + 1) / 2);
        Scalar b = a.pow(m);
        int s = e;
        while (!b.is_one()) {
            Scalar t = b;
            int i = 0;
            while (!t.is_one()) {
                t = t * t;
                ++i;
            }
            Scalar zp = z;
            for (int j = 0; j < s - i - 1; ++j) zp = zp * zp;
            x = x * zp;
            z = zp * zp;
            b = b * z;
            s = i;
        }
        r = x;
    }
    Scalar other = -r;
    return r.less_than(other) ? r : other;
}

int absolute_trace_char2(const Scalar& a) {
    Scalar t = a;
    Scalar x = a;
    for (int i = 1; i < a.field()->extension_degree(); ++i) {
        x = x.frobenius();
        t = t + x;
    }
    return t.is_zero() ? 0 : 1;
}

std::optional<Scalar> solve_quadratic_char2(const Scalar& a, const Scalar& b,
                                            const Scalar& c) {
    const FieldPtr& f = a.field();
    if (!f->is_finite() || f->characteristic() != 2)
        fail(ErrorCode::WrongCharacteristic, "quadratic solver is for char-2 finite fields");
    if (a.is_zero()) fail(ErrorCode::BadInput, "leading coefficient must not vanish");
    if (b.is_zero()) {
        // mu^2 = c/a has the unique root sqrt(c/a)
        return field_sqrt(c / a);
    }
    // Substitute mu = (b/a) z:  z^2 + z = d, d = ac/b^2 (Artin-Schreier).
    Scalar d = a * c / (b * b);
    if (absolute_trace_char2(d) != 0) return std::nullopt;
    // Solve (F + id) z = d as an F_2-linear system in the coefficient
    // basis, where F is Frobenius.
    const int k = f->extension_degree();
    std::vector<std::vector<int>> mat(k, std::vector<int>(k + 1, 0));
    for (int j = 0; j < k; ++j) {
        std::vector<std::int64_t> e(k, 0);
        e[j] = 1;
        Scalar basis = Scalar::from_coeffs(f, e);
        Scalar img = basis.frobenius() + basis;
        for (int i = 0; i < k; ++i) mat[i][j] = static_cast<int>(img.coeffs()[i] & 1);
    }
    for (int i = 0; i < k; ++i) mat[i][k] = static_cast<int>(d.coeffs()[i] & 1);
    // Gaussian elimination over F_2; the kernel of F + id is F_2, so with
    // trace zero there are exactly two solutions z, z + 1.
    std::vector<int> pivot_col(k, -1);
    int row = 0;
    for (int col = 0; col < k && row < k; ++col) {
        int sel = -1;
        for (int i = row; i < k; ++i)
            if (mat[i][col]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(mat[sel], mat[row]);
        for (int i = 0; i < k; ++i) {
            if (i != row && mat[i][col]) {
                for (int j = col; j <= k; ++j) mat[i][j] ^= mat[row][j];
            }
        }
        pivot_col[row] = col;
        ++row;
    }
    std::vector<std::int64_t> z(k, 0);
    for (int i = 0; i < row; ++i) {
        bool consistent_row = true;
        (void)consistent_row;
        z[pivot_col[i]] = mat[i][k];
    }
    for (int i = row; i < k; ++i)
        if (mat[i][k]) return std::nullopt; // cannot happen when trace is 0
    Scalar zr = Scalar::from_coeffs(f, z);
    if (zr.frobenius() + zr != d) return std::nullopt;
    Scalar mu1 = (b / a) * zr;
    Scalar mu2 = mu1 + b / a; // the other root
    return mu1.less_than(mu2) ? mu1 : mu2;
}

Scalar embed_scalar(const Scalar& x, const FieldPtr& big) {
    const FieldPtr& small = x.field();
    if (small->same_field(*big)) return x;
    if (!small->is_finite() || !big->is_finite() ||
        small->characteristic() != big->characteristic() ||
        big->extension_degree() % small->extension_degree() != 0)
        fail(ErrorCode::BadInput, "no canonical embedding between these fields");
    if (small->extension_degree() == 1) {
        return Scalar::from_int(big, x.coeffs()[0]);
    }
    // Map the generator to the canonically smallest root of the small
    // modulus inside the big field. Cached: the search is linear in the
    // field order.
    static std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>,
                    std::vector<std::int64_t>>
        root_cache;
    static std::mutex root_mutex;
    const auto& m = small->modulus();
    Scalar root = Scalar::zero(big);
    {
        std::lock_guard<std::mutex> lock(root_mutex);
        auto key = std::make_pair(m, big->modulus());
        auto it = root_cache.find(key);
        if (it != root_cache.end()) {
            root = Scalar::from_coeffs(big, it->second);
        } else {
            bool found = false;
            for (const Scalar& cand : all_field_elements(big)) {
                Scalar acc = Scalar::zero(big);
                Scalar powc = Scalar::one(big);
                for (std::size_t i = 0; i < m.size(); ++i) {
                    acc = acc + Scalar::from_int(big, m[i]) * powc;
                    powc = powc * cand;
                }
                if (acc.is_zero()) {
                    root = cand;
                    found = true;
                    break;
                }
            }
            if (!found) fail(ErrorCode::BadInput, "modulus has no root in the target field");
            root_cache.emplace(key, root.coeffs());
        }
    }
    Scalar acc = Scalar::zero(big);
    Scalar powr = Scalar::one(big);
    for (int i = 0; i < small->extension_degree(); ++i) {
        acc = acc + Scalar::from_int(big, x.coeffs()[i]) * powr;
        powr = powr * root;
    }
    return acc;
}

std::vector<Scalar> all_field_elements(const FieldPtr& f) {
    const std::int64_t q = f->order();
    if (q > (1 << 22)) fail(ErrorCode::TooLarge, "field enumeration exceeds desk scale");
    const std::int64_t p = f->characteristic();
    const int k = f->extension_degree();
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(q));
    std::vector<std::int64_t> c(k, 0);
    while (true) {
        out.push_back(Scalar::from_coeffs(f, c));
        int i = k - 1;
        while (i >= 0 && ++c[i] == p) c[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

} // namespace conicdisc
