#ifndef CONICDISC_RING_HPP
#define CONICDISC_RING_HPP

#include "conicdisc/poly.hpp"
#include "conicdisc/series.hpp"

namespace conicdisc {

// Uniform construction/inspection shims so quadform and mat3 code can be
// written once over Scalar, Poly and Series coefficients.

inline Scalar zero_like(const Scalar& s) { return Scalar::zero(s.field()); }
inline Scalar one_like(const Scalar& s) { return Scalar::one(s.field()); }
inline Scalar from_int_like(const Scalar& s, std::int64_t n) {
    return Scalar::from_int(s.field(), n);
}
inline bool is_unit_elem(const Scalar& s) { return !s.is_zero(); }
inline Scalar invert_elem(const Scalar& s) { return s.inverse(); }
inline std::int64_t ring_characteristic(const Scalar& s) { return s.field()->characteristic(); }
inline std::string ring_str(const Scalar& s) { return s.str(); }

inline Poly zero_like(const Poly& p) { return Poly::zero(p.ring()); }
inline Poly one_like(const Poly& p) { return Poly::from_int(p.ring(), 1); }
inline Poly from_int_like(const Poly& p, std::int64_t n) { return Poly::from_int(p.ring(), n); }
inline bool is_unit_elem(const Poly& p) { return p.is_constant() && !p.is_zero(); }
inline Poly invert_elem(const Poly& p) {
    if (!is_unit_elem(p)) fail(ErrorCode::NotAUnit, "polynomial is not a unit");
    return Poly::constant(p.ring(), p.constant_term().inverse());
}
inline std::int64_t ring_characteristic(const Poly& p) {
    return p.ring()->field->characteristic();
}
inline std::string ring_str(const Poly& p) { return p.str(); }

inline Series zero_like(const Series& s) {
    return Series::zero(s.field(), s.var(), s.precision());
}
inline Series one_like(const Series& s) {
    return Series::from_int(s.field(), s.var(), s.precision(), 1);
}
inline Series from_int_like(const Series& s, std::int64_t n) {
    return Series::from_int(s.field(), s.var(), s.precision(), n);
}
inline bool is_unit_elem(const Series& s) { return s.is_unit(); }
inline Series invert_elem(const Series& s) { return series_invert(s); }
inline std::int64_t ring_characteristic(const Series& s) { return s.field()->characteristic(); }
inline std::string ring_str(const Series& s) { return s.str(); }

} // namespace conicdisc

#endif
