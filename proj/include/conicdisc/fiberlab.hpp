#ifndef CONICDISC_FIBERLAB_HPP
#define CONICDISC_FIBERLAB_HPP

#include <optional>

#include "conicdisc/quadform.hpp"

namespace conicdisc {

enum class FiberType { Smooth, ReducedSingular, NonReduced };

const char* fiber_type_name(FiberType t);

// Geometric classification of the conic {Q = 0}: Smooth iff delta != 0,
// NonReduced iff all six sigma generators vanish, ReducedSingular
// otherwise. Errors ZeroForm on the zero form.
FiberType classify_fiber(const TernaryForm<Scalar>& q);

enum class FieldFormTag {
    DiagRank3,
    DiagRank2,
    DiagRank1,    // characteristic != 2
    DoubleLine_x2,
    Cross_yz,
    Smooth_x2yz,  // characteristic 2
};

const char* field_form_tag_name(FieldFormTag t);

struct FieldNormalForm {
    FieldFormTag tag;
    Mat3<Scalar> transform;
    Scalar unit;
    TernaryForm<Scalar> canonical; // == unit * act(Q, transform)
};

// Canonical representative over the coefficient field: a diagonal form of
// the same Gram rank (char != 2), or exactly x^2 / yz / x^2 + yz
// (char 2; may error NoResidueRoot over small fields).
FieldNormalForm field_normal_form(const TernaryForm<Scalar>& q);

// Gram rank over a field of characteristic != 2.
int gram_rank(const TernaryForm<Scalar>& q);

// Independent Jacobian/double-line oracle over F_q, searching P^2(F_{q^2}).
// Errors TooLarge when q^2 > 2^20.
FiberType oracle_classify(const TernaryForm<Scalar>& q);

// Projective points of P^2(F): canonical representatives (first nonzero
// coordinate = 1), in canonical order.
std::vector<std::array<Scalar, 3>> projective_plane_points(const FieldPtr& f);

// Evaluate Q at a point.
Scalar eval_form(const TernaryForm<Scalar>& q, const Scalar& x, const Scalar& y,
                 const Scalar& z);

// The three partials (dQ/dx, dQ/dy, dQ/dz) at a point.
std::array<Scalar, 3> eval_form_gradient(const TernaryForm<Scalar>& q, const Scalar& x,
                                         const Scalar& y, const Scalar& z);

// Coefficientwise field embedding of a form.
TernaryForm<Scalar> embed_form(const TernaryForm<Scalar>& q, const FieldPtr& big);

} // namespace conicdisc

#endif
