#ifndef CONICDISC_FAMILYSCAN_HPP
#define CONICDISC_FAMILYSCAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "conicdisc/quadform.hpp"
#include "conicdisc/series.hpp"

namespace conicdisc {

// A conic-bundle family over a polynomial base: the six coefficients are
// polynomials in the base variables. projective_base marks P^d bases
// (scan points are canonical projective representatives).
struct Family {
    PolyRingPtr base;
    TernaryForm<Poly> form;
    bool projective_base = false;
};

Family make_family(PolyRingPtr base, TernaryForm<Poly> form, bool projective_base = false);

Poly discriminant_poly(const Family& f);
std::array<Poly, 6> sigma_ideal_gens(const Family& f);
std::array<Poly, 3> sigma_prime_gens(const Family& f); // characteristic 2

// delta != 0 in the base ring.
bool is_generically_smooth(const Family& f);

// delta == 0 identically: a wild candidate (normality of the total space
// is not verified here; see the report note).
bool is_wild_candidate(const Family& f);

struct SingularPoint {
    std::vector<Scalar> base_point;
    std::array<Scalar, 3> fiber_point; // canonical projective representative
};

struct ScanReport {
    int extension_degree = 1;
    std::int64_t points_scanned = 0;
    std::vector<SingularPoint> singular_points;
    bool found() const { return !singular_points.empty(); }
};

// Enumerate the F_{q^d}-points of (A^d or P^d) x P^2 on the total space
// and test the full Jacobian system. Errors TooLarge beyond
// |base points| * |P^2(F_{q^d})| <= 2^26.
ScanReport singular_points_scan(const Family& f, int ext_degree);

struct PowerProfile {
    int e = 0;  // maximal e with delta a p^e-th power
    Poly h;     // delta = h^{p^e}, h not a p-th power
};

// Errors ZeroDiscriminant when delta == 0, WrongCharacteristic over Q.
PowerProfile delta_power_profile(const Family& f);

struct NonregReport {
    int extension_degree = 1;
    std::int64_t zero_locus_points = 0;
    // points where (grad delta = 0) and (sigma = 0) disagree
    std::vector<std::vector<Scalar>> mismatches;
    bool holds() const { return mismatches.empty(); }
};

// Sampled check that the non-regular locus of {delta = 0} agrees with the
// common vanishing of the sigma generators. The caller asserts the
// regularity/generic-smoothness hypotheses; the report records data only.
NonregReport nonreg_equals_sigma_check(const Family& f, int ext_degree);

// Evaluate all base variables except series_var at the given scalars and
// re-expand the coefficients in series_var up to the requested precision.
TernaryForm<Series> specialize_to_series(const Family& f, const std::string& series_var,
                                         const std::vector<std::pair<std::string, Scalar>>&
                                             assignments,
                                         int precision);

// Base-point enumeration shared by the scans (exposed for tests):
// all affine tuples of F^d, or canonical representatives of P^d.
std::vector<std::vector<Scalar>> enumerate_base_points(const FieldPtr& f, int dim,
                                                       bool projective);

} // namespace conicdisc

#endif
