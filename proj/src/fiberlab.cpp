#include "conicdisc/fiberlab.hpp"

#include <algorithm>

namespace conicdisc {

const char* fiber_type_name(FiberType t) {
    switch (t) {
        case FiberType::Smooth: return "Smooth";
        case FiberType::ReducedSingular: return "ReducedSingular";
        case FiberType::NonReduced: return "NonReduced";
    }
    return "?";
}

const char* field_form_tag_name(FieldFormTag t) {
    switch (t) {
        case FieldFormTag::DiagRank3: return "DiagRank3";
        case FieldFormTag::DiagRank2: return "DiagRank2";
        case FieldFormTag::DiagRank1: return "DiagRank1";
        case FieldFormTag::DoubleLine_x2: return "DoubleLine_x2";
        case FieldFormTag::Cross_yz: return "Cross_yz";
        case FieldFormTag::Smooth_x2yz: return "Smooth_x2yz";
    }
    return "?";
}

FiberType classify_fiber(const TernaryForm<Scalar>& q) {
    if (q.is_zero()) fail(ErrorCode::ZeroForm, "the zero form does not cut out a conic");
    if (!delta(q).is_zero()) return FiberType::Smooth;
    auto gens = sigma_generators(q);
    bool all_zero = std::all_of(gens.begin(), gens.end(),
                                [](const Scalar& g) { return g.is_zero(); });
    return all_zero ? FiberType::NonReduced : FiberType::ReducedSingular;
}

namespace {

struct Builder {
    TernaryForm<Scalar> q;
    Mat3<Scalar> m;
    Scalar unit;

    explicit Builder(const TernaryForm<Scalar>& q0)
        : q(q0), m(Mat3<Scalar>::identity(q0.a)), unit(Scalar::one(q0.a.field())) {}

    void apply(const Mat3<Scalar>& step) {
        q = act(q, step);
        m = m * step;
    }

    void shear(Axis target, Axis source, const Scalar& mu) {
        apply(move_matrix(ElementaryMove<Scalar>{ElementaryMove<Scalar>::Kind::Shear, target,
                                                 source, mu},
                          q.a));
    }

    void swap(Axis i, Axis j) {
        apply(move_matrix(ElementaryMove<Scalar>{ElementaryMove<Scalar>::Kind::Swap, i, j,
                                                 Scalar::zero(q.a.field())},
                          q.a));
    }

    void scale(Axis i, const Scalar& lambda) {
        apply(move_matrix(ElementaryMove<Scalar>{ElementaryMove<Scalar>::Kind::Scale, i, i,
                                                 lambda},
                          q.a));
    }

    void scale_form(const Scalar& u) {
        q = q.scaled(u);
        unit = unit * u;
    }
};

FieldNormalForm diagonalize_char_ne2(const TernaryForm<Scalar>& q0) {
    const FieldPtr& f = q0.a.field();
    Scalar half = Scalar::from_int(f, 2).inverse();
    Builder b(q0);
    // secure a nonzero diagonal entry
    if (b.q.a.is_zero() && b.q.b.is_zero() && b.q.c.is_zero()) {
        if (!b.q.gamma.is_zero()) {
            b.shear(Axis::Y, Axis::X, Scalar::one(f)); // y <- y + x puts gamma into a
        } else if (!b.q.beta.is_zero()) {
            b.shear(Axis::X, Axis::Z, Scalar::one(f)); // x <- x + z puts beta into c
        } else {
            b.shear(Axis::Z, Axis::Y, Scalar::one(f)); // z <- z + y puts alpha into b
        }
    }
    if (b.q.a.is_zero()) {
        if (!b.q.b.is_zero())
            b.swap(Axis::X, Axis::Y);
        else if (!b.q.c.is_zero())
            b.swap(Axis::X, Axis::Z);
    }
    // kill beta, gamma against a
    Scalar inv2a = half * b.q.a.inverse();
    if (!b.q.gamma.is_zero()) b.shear(Axis::X, Axis::Y, -(b.q.gamma * inv2a));
    if (!b.q.beta.is_zero()) b.shear(Axis::X, Axis::Z, -(b.q.beta * inv2a));
    // arrange a nonzero b if possible
    if (b.q.b.is_zero()) {
        if (!b.q.c.is_zero())
            b.swap(Axis::Y, Axis::Z);
        else if (!b.q.alpha.is_zero())
            b.shear(Axis::Z, Axis::Y, Scalar::one(f)); // z <- z + y: b += alpha (+c)
    }
    if (!b.q.alpha.is_zero()) {
        Scalar inv2b = half * b.q.b.inverse();
        b.shear(Axis::Y, Axis::Z, -(b.q.alpha * inv2b));
    }
    int rank = (!b.q.a.is_zero()) + (!b.q.b.is_zero()) + (!b.q.c.is_zero());
    FieldFormTag tag = rank == 3   ? FieldFormTag::DiagRank3
                       : rank == 2 ? FieldFormTag::DiagRank2
                                   : FieldFormTag::DiagRank1;
    return FieldNormalForm{tag, b.m, b.unit, b.q};
}

FieldNormalForm normal_form_char2(const TernaryForm<Scalar>& q0) {
    const FieldPtr& f = q0.a.field();
    Builder b(q0);
    bool nonreduced = b.q.alpha.is_zero() && b.q.beta.is_zero() && b.q.gamma.is_zero();
    if (nonreduced) {
        // a x^2 + b y^2 + c z^2 = (sqrt(a) x + sqrt(b) y + sqrt(c) z)^2
        Scalar ra = *field_sqrt(b.q.a), rb = *field_sqrt(b.q.b), rc = *field_sqrt(b.q.c);
        // move the double line to x = 0
        if (ra.is_zero()) {
            if (!rb.is_zero())
                b.swap(Axis::X, Axis::Y);
            else
                b.swap(Axis::X, Axis::Z);
        }
        // now coefficient of x^2 is a nonzero square; rescale x so the
        // line is x + sy + tz, then absorb y, z
        Scalar rroot = *field_sqrt(b.q.a);
        b.scale(Axis::X, rroot.inverse());
        Scalar sy = *field_sqrt(b.q.b);
        Scalar sz = *field_sqrt(b.q.c);
        if (!sy.is_zero()) b.shear(Axis::X, Axis::Y, sy);
        if (!sz.is_zero()) b.shear(Axis::X, Axis::Z, sz);
        return FieldNormalForm{FieldFormTag::DoubleLine_x2, b.m, b.unit, b.q};
    }
    // reduced: route the unit cross term to alpha
    if (b.q.alpha.is_zero()) {
        if (!b.q.beta.is_zero())
            b.swap(Axis::X, Axis::Y); // beta zx -> alpha zy
        else
            b.swap(Axis::X, Axis::Z); // gamma xy -> alpha zy
    }
    b.scale(Axis::Y, b.q.alpha.inverse());
    // absorb beta, gamma: y <- y + beta x, z <- z + gamma x
    {
        Scalar be = b.q.beta, ga = b.q.gamma;
        if (!be.is_zero()) b.shear(Axis::Y, Axis::X, be);
        if (!ga.is_zero()) b.shear(Axis::Z, Axis::X, ga);
    }
    // now Q = a x^2 + b y^2 + c z^2 + yz; split the residue quadratic
    // bY^2 + Y + c when b or c survives
    if (!b.q.b.is_zero() || !b.q.c.is_zero()) {
        if (b.q.b.is_zero()) b.swap(Axis::Y, Axis::Z);
        auto root = solve_quadratic_char2(b.q.b, Scalar::one(f), b.q.c);
        if (!root)
            fail(ErrorCode::NoResidueRoot,
                 "splitting the residue quadratic needs a field extension");
        Scalar d = *root;
        Scalar e = d + b.q.b.inverse();
        // In the coordinates Y = y + dz, Z = y + ez the middle block
        // b y^2 + yz + c z^2 becomes b YZ; act with the inverse change.
        Scalar di = (e - d).inverse();
        std::array<std::array<Scalar, 3>, 3> entries = {
            {{Scalar::one(f), Scalar::zero(f), Scalar::zero(f)},
             {Scalar::zero(f), e * di, -(d * di)},
             {Scalar::zero(f), -di, di}}};
        b.apply(Mat3<Scalar>::from_entries(entries));
        b.scale(Axis::Z, b.q.alpha.inverse());
    }
    if (b.q.a.is_zero()) return FieldNormalForm{FieldFormTag::Cross_yz, b.m, b.unit, b.q};
    // absorb a: x <- x / sqrt(a)
    Scalar ra = *field_sqrt(b.q.a);
    b.scale(Axis::X, ra.inverse());
    return FieldNormalForm{FieldFormTag::Smooth_x2yz, b.m, b.unit, b.q};
}

} // namespace

int gram_rank(const TernaryForm<Scalar>& q) {
    const FieldPtr& f = q.a.field();
    if (f->characteristic() == 2)
        fail(ErrorCode::WrongCharacteristic, "Gram rank semantics need characteristic != 2");
    Mat3<Scalar> g = gram_matrix(q);
    // Gaussian elimination rank
    std::array<std::array<Scalar, 3>, 3> m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = g.at(i, j);
    int rank = 0;
    for (int col = 0; col < 3 && rank < 3; ++col) {
        int pivot = -1;
        for (int row = rank; row < 3; ++row)
            if (!m[row][col].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[pivot], m[rank]);
        for (int row = rank + 1; row < 3; ++row) {
            if (m[row][col].is_zero()) continue;
            Scalar factor = m[row][col] / m[rank][col];
            for (int j = col; j < 3; ++j) m[row][j] = m[row][j] - factor * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

FieldNormalForm field_normal_form(const TernaryForm<Scalar>& q) {
    if (q.is_zero()) fail(ErrorCode::ZeroForm, "the zero form does not cut out a conic");
    const FieldPtr& f = q.a.field();
    FieldNormalForm result = f->characteristic() == 2 ? normal_form_char2(q)
                                                      : diagonalize_char_ne2(q);
    // round-trip certificate
    TernaryForm<Scalar> check = act(q, result.transform).scaled(result.unit);
    if (!(check == result.canonical))
        fail(ErrorCode::Inconsistent, "normal-form certificate failed to verify");
    return result;
}

std::vector<std::array<Scalar, 3>> projective_plane_points(const FieldPtr& f) {
    std::vector<std::array<Scalar, 3>> pts;
    const Scalar zero = Scalar::zero(f);
    const Scalar one = Scalar::one(f);
    auto elems = all_field_elements(f);
    // charts: [1 : a : b], [0 : 1 : b], [0 : 0 : 1]
    for (const Scalar& a : elems)
        for (const Scalar& b : elems) pts.push_back({one, a, b});
    for (const Scalar& b : elems) pts.push_back({zero, one, b});
    pts.push_back({zero, zero, one});
    return pts;
}

Scalar eval_form(const TernaryForm<Scalar>& q, const Scalar& x, const Scalar& y,
                 const Scalar& z) {
    return q.a * x * x + q.b * y * y + q.c * z * z + q.alpha * y * z + q.beta * z * x +
           q.gamma * x * y;
}

std::array<Scalar, 3> eval_form_gradient(const TernaryForm<Scalar>& q, const Scalar& x,
                                         const Scalar& y, const Scalar& z) {
    Scalar two = Scalar::from_int(q.a.field(), 2);
    return {two * q.a * x + q.beta * z + q.gamma * y,
            two * q.b * y + q.alpha * z + q.gamma * x,
            two * q.c * z + q.alpha * y + q.beta * x};
}

TernaryForm<Scalar> embed_form(const TernaryForm<Scalar>& q, const FieldPtr& big) {
    return make_form(embed_scalar(q.a, big), embed_scalar(q.b, big), embed_scalar(q.c, big),
                     embed_scalar(q.alpha, big), embed_scalar(q.beta, big),
                     embed_scalar(q.gamma, big));
}

FiberType oracle_classify(const TernaryForm<Scalar>& q) {
    if (q.is_zero()) fail(ErrorCode::ZeroForm, "the zero form does not cut out a conic");
    const FieldPtr& f = q.a.field();
    if (!f->is_finite()) fail(ErrorCode::BadInput, "oracle enumeration needs a finite field");
    const std::int64_t q2 = f->order() * f->order();
    if (q2 > (1 << 20)) fail(ErrorCode::TooLarge, "oracle bound q^2 <= 2^20 exceeded");
    FieldPtr big = FieldSpec::extension_field(f->characteristic(), 2 * f->extension_degree());
    TernaryForm<Scalar> qe = embed_form(q, big);
    auto points = projective_plane_points(big);
    // double line test: Q = lambda * ell^2 for a line ell over F_{q^2}
    for (const auto& line : points) {
        const Scalar &u = line[0], &v = line[1], &w = line[2];
        TernaryForm<Scalar> sq =
            make_form(u * u, v * v, w * w,
                      Scalar::from_int(big, 2) * v * w, Scalar::from_int(big, 2) * w * u,
                      Scalar::from_int(big, 2) * u * v);
        // find lambda from the first nonzero coefficient of sq
        std::array<const Scalar*, 6> qs = {&qe.a, &qe.b, &qe.c, &qe.alpha, &qe.beta, &qe.gamma};
        std::array<const Scalar*, 6> ss = {&sq.a, &sq.b, &sq.c, &sq.alpha, &sq.beta, &sq.gamma};
        Scalar lambda = Scalar::zero(big);
        bool found = false;
        for (int i = 0; i < 6 && !found; ++i) {
            if (!ss[i]->is_zero()) {
                lambda = *qs[i] / *ss[i];
                found = true;
            }
        }
        if (!found || lambda.is_zero()) continue;
        bool match = true;
        for (int i = 0; i < 6 && match; ++i)
            if (!(*qs[i] == lambda * *ss[i])) match = false;
        if (match) return FiberType::NonReduced;
    }
    // Jacobian zero search on the conic
    for (const auto& pt : points) {
        if (!eval_form(qe, pt[0], pt[1], pt[2]).is_zero()) continue;
        auto g = eval_form_gradient(qe, pt[0], pt[1], pt[2]);
        if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero())
            return FiberType::ReducedSingular;
    }
    return FiberType::Smooth;
}

} // namespace conicdisc
