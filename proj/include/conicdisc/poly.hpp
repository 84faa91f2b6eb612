#ifndef CONICDISC_POLY_HPP
#define CONICDISC_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conicdisc/scalar.hpp"

namespace conicdisc {

// Exponent vectors compare graded-lexicographically, descending, so map
// iteration matches canonical printing order (leading term first).
struct GrlexDesc {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

struct PolyRing {
    FieldPtr field;
    std::vector<std::string> vars;

    bool same_ring(const PolyRing& o) const;
    std::optional<int> var_index(const std::string& name) const;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

PolyRingPtr make_poly_ring(FieldPtr field, std::vector<std::string> vars);

// Sparse multivariate polynomial with nonzero Scalar coefficients only,
// in canonical term order.
class Poly {
public:
    Poly() = default;
    static Poly zero(const PolyRingPtr& r);
    static Poly constant(const PolyRingPtr& r, const Scalar& c);
    static Poly from_int(const PolyRingPtr& r, std::int64_t n);
    static Poly variable(const PolyRingPtr& r, const std::string& name);
    static Poly monomial(const PolyRingPtr& r, std::vector<int> exps, const Scalar& c);

    const PolyRingPtr& ring() const { return ring_; }
    const std::map<std::vector<int>, Scalar, GrlexDesc>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The constant term (zero scalar if absent).
    Scalar constant_term() const;
    int total_degree() const; // -1 for the zero polynomial

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const Scalar& c) const;
    Poly pow(int e) const;
    Poly derivative(int var) const;

    Scalar evaluate(const std::vector<Scalar>& point) const;
    // Substitute scalars for a subset of variables; result lives in the
    // ring spanned by the remaining ones (in original order).
    Poly substitute(const std::vector<std::optional<Scalar>>& assignment,
                    const PolyRingPtr& target) const;

    std::string str() const;

private:
    PolyRingPtr ring_;
    std::map<std::vector<int>, Scalar, GrlexDesc> terms_;

    void insert_term(const std::vector<int>& e, const Scalar& c);
    friend Poly poly_mul_impl(const Poly& a, const Poly& b);
};

// g with g^p = f, when every exponent of f is divisible by p; coefficient
// roots via inverse Frobenius. nullopt otherwise.
std::optional<Poly> poly_pth_root(const Poly& f);

} // namespace conicdisc

#endif
