#include "conicdisc/fieldspec.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "conicdisc/errors.hpp"

namespace conicdisc {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NoResidueRoot: return "NoResidueRoot";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::NotCanonicalTotalSpace: return "NotCanonicalTotalSpace";
        case ErrorCode::WildOrPrecision: return "WildOrPrecision";
        case ErrorCode::Unnormalizable: return "Unnormalizable";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
        case ErrorCode::ZeroForm: return "ZeroForm";
        case ErrorCode::ZeroDiscriminant: return "ZeroDiscriminant";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::NotConicBundle: return "NotConicBundle";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::UnrecognizedFamily: return "UnrecognizedFamily";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
    a %= p;
    if (a < 0) a += p;
    return a;
}

// Polynomial arithmetic in F_p[x], little-endian coefficient vectors.
using PolyP = std::vector<std::int64_t>;

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP mul_mod(const PolyP& a, const PolyP& b, const PolyP& m, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce mod m (m monic)
    for (std::size_t i = r.size(); i-- > 0;) {
        if (i + 1 < m.size()) break;
        std::int64_t c = r[i];
        if (c == 0) continue;
        std::size_t shift = i + 1 - m.size();
        for (std::size_t j = 0; j < m.size(); ++j)
            r[shift + j] = mod_reduce(r[shift + j] - c * m[j], p);
    }
    r.resize(m.size() - 1, 0);
    trim(r);
    return r;
}

PolyP gcd_poly(PolyP a, PolyP b, std::int64_t p) {
    auto inv_mod = [p](std::int64_t x) {
        std::int64_t r = 1, base = mod_reduce(x, p), e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        std::int64_t lead_inv = inv_mod(b.back());
        PolyP r = a;
        while (r.size() >= b.size()) {
            std::int64_t c = r.back() * lead_inv % p;
            std::size_t shift = r.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                r[shift + j] = mod_reduce(r[shift + j] - c * b[j], p);
            trim(r);
            if (r.empty()) break;
        }
        a = b;
        b = r;
    }
    return a;
}

} // namespace

bool is_irreducible_mod_p(const std::vector<std::int64_t>& f, std::int64_t p) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1 || f[n] != 1) return false;
    // x^(p^i) mod f, checking gcd(x^(p^i) - x, f) = 1 for i <= n/2 and
    // x^(p^n) = x mod f.
    PolyP x = {0, 1};
    PolyP power = x; // x^(p^0) = x
    for (int i = 1; i <= n; ++i) {
        // power = power^p mod f via square-and-multiply on the exponent p
        PolyP result = {1};
        PolyP base = power;
        std::int64_t e = p;
        while (e > 0) {
            if (e & 1) result = mul_mod(result, base, f, p);
            base = mul_mod(base, base, f, p);
            e >>= 1;
        }
        power = result;
        PolyP diff = power;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = mod_reduce(diff[1] - 1, p);
        trim(diff);
        if (i <= n / 2) {
            PolyP g = gcd_poly(diff, f, p);
            if (!(g.size() == 1)) return false;
        }
        if (i == n && !diff.empty()) return false;
    }
    return true;
}

namespace {

// Shipped moduli (little-endian). Fixed so canonical representatives are
// reproducible across runs and machines.
const std::map<std::pair<std::int64_t, int>, std::vector<std::int64_t>> kModulusTable = {
    {{2, 2}, {1, 1, 1}},       // w^2 + w + 1
    {{2, 3}, {1, 1, 0, 1}},    // w^3 + w + 1
    {{2, 4}, {1, 1, 0, 0, 1}}, // w^4 + w + 1
    {{3, 2}, {1, 0, 1}},       // w^2 + 1
    {{5, 2}, {2, 0, 1}},       // w^2 + 2
    {{3, 3}, {1, 2, 0, 1}},    // w^3 + 2w + 1
};

std::vector<std::int64_t> find_irreducible(std::int64_t p, int k) {
    // Deterministic: smallest monic polynomial in lexicographic order of
    // the coefficient tuple (c_0, ..., c_{k-1}).
    std::vector<std::int64_t> f(k + 1, 0);
    f[k] = 1;
    while (true) {
        if (is_irreducible_mod_p(f, p)) return f;
        int i = 0;
        while (i < k && ++f[i] == p) f[i++] = 0;
        if (i == k) fail(ErrorCode::BadInput, "no irreducible polynomial found");
    }
}

} // namespace

FieldSpec::FieldSpec(std::int64_t p, int k, std::vector<std::int64_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {}

FieldPtr FieldSpec::rationals() {
    static FieldPtr q(new FieldSpec(0, 1, {}));
    return q;
}

FieldPtr FieldSpec::prime_field(std::int64_t p) {
    if (!is_prime(p)) fail(ErrorCode::BadInput, "characteristic must be prime or 0");
    return FieldPtr(new FieldSpec(p, 1, {}));
}

FieldPtr FieldSpec::extension_field(std::int64_t p, int k) {
    if (k == 1) return prime_field(p);
    auto it = kModulusTable.find({p, k});
    if (it != kModulusTable.end()) return extension_field(p, k, it->second);
    return extension_field(p, k, find_irreducible(p, k));
}

FieldPtr FieldSpec::extension_field(std::int64_t p, int k, std::vector<std::int64_t> modulus) {
    if (!is_prime(p)) fail(ErrorCode::BadInput, "characteristic must be prime or 0");
    if (k < 1) fail(ErrorCode::BadInput, "extension degree must be >= 1");
    if (k == 1) return prime_field(p);
    if (static_cast<int>(modulus.size()) != k + 1)
        fail(ErrorCode::BadInput, "modulus degree must equal the extension degree");
    for (auto& c : modulus) c = mod_reduce(c, p);
    if (modulus[k] != 1) fail(ErrorCode::BadInput, "modulus must be monic");
    if (!is_irreducible_mod_p(modulus, p))
        fail(ErrorCode::BadInput, "modulus is reducible");
    return FieldPtr(new FieldSpec(p, k, std::move(modulus)));
}

std::int64_t FieldSpec::order() const {
    if (p_ == 0) fail(ErrorCode::BadInput, "order of an infinite field");
    std::int64_t q = 1;
    for (int i = 0; i < k_; ++i) {
        if (q > (std::int64_t(1) << 40) / p_)
            fail(ErrorCode::TooLarge, "field order exceeds desk scale");
        q *= p_;
    }
    return q;
}

bool FieldSpec::same_field(const FieldSpec& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
}

std::string FieldSpec::describe() const {
    if (p_ == 0) return "Q";
    std::string s = "F_" + std::to_string(p_);
    if (k_ > 1) s += "^" + std::to_string(k_);
    return s;
}

FieldPtr doubled_field(const FieldPtr& field) {
    if (!field->is_finite())
        fail(ErrorCode::NoResidueRoot, "no algebraic extension of Q is available");
    int k2 = field->extension_degree() * 2;
    if (k2 > 16) fail(ErrorCode::TooLarge, "extension degree cap (16) exceeded");
    return FieldSpec::extension_field(field->characteristic(), k2);
}

} // namespace conicdisc
