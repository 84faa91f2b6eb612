#ifndef CONICDISC_FIELDSPEC_HPP
#define CONICDISC_FIELDSPEC_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace conicdisc {

// Coefficient field: Q (characteristic 0) or F_{p^k}.
//
// For k > 1 the field is F_p[w]/(modulus), where modulus is a fixed monic
// irreducible polynomial stored little-endian (modulus[i] is the
// coefficient of w^i, modulus.size() == k+1). Elements are represented by
// their coefficient vectors of length k with entries in [0, p).
class FieldSpec {
public:
    // Rationals.
    static std::shared_ptr<const FieldSpec> rationals();
    // Prime field F_p.
    static std::shared_ptr<const FieldSpec> prime_field(std::int64_t p);
    // F_{p^k} with the shipped modulus table (F_4, F_8, F_9, F_16, F_25,
    // F_27) or a deterministic lexicographically-smallest irreducible for
    // other (p, k).
    static std::shared_ptr<const FieldSpec> extension_field(std::int64_t p, int k);
    // User-supplied monic irreducible modulus (verified at construction).
    static std::shared_ptr<const FieldSpec> extension_field(std::int64_t p, int k,
                                                            std::vector<std::int64_t> modulus);

    std::int64_t characteristic() const { return p_; }
    int extension_degree() const { return k_; }
    bool is_rational() const { return p_ == 0; }
    bool is_finite() const { return p_ != 0; }
    // Number of elements (finite fields only; guards against overflow at
    // desk scale, errors TooLarge past 2^40).
    std::int64_t order() const;
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    bool same_field(const FieldSpec& other) const;

    std::string describe() const;

private:
    FieldSpec(std::int64_t p, int k, std::vector<std::int64_t> modulus);

    std::int64_t p_;
    int k_;
    std::vector<std::int64_t> modulus_; // empty when k == 1
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// True if f is irreducible over F_p (f monic, little-endian). Uses the
// Frobenius gcd test, valid in any degree.
bool is_irreducible_mod_p(const std::vector<std::int64_t>& f, std::int64_t p);

// The doubled field F_{p^{2k}} together with nothing else; use
// embed_scalar (scalar.hpp) to move elements across.
FieldPtr doubled_field(const FieldPtr& field);

} // namespace conicdisc

#endif
