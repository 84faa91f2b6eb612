#include "conicdisc/localforms.hpp"

#include <algorithm>

namespace conicdisc {

const char* local_form_tag_name(LocalFormTag t) {
    switch (t) {
        case LocalFormTag::Smooth: return "Smooth";
        case LocalFormTag::Char0Red: return "Char0Red";
        case LocalFormTag::Char0NonRed: return "Char0NonRed";
        case LocalFormTag::Char2Red: return "Char2Red";
        case LocalFormTag::Char2NonRedI: return "Char2NonRedI";
        case LocalFormTag::Char2NonRedII: return "Char2NonRedII";
    }
    return "?";
}

const char* surface_verdict_name(SurfaceVerdict v) {
    switch (v) {
        case SurfaceVerdict::RegularTotalSpace: return "RegularTotalSpace";
        case SurfaceVerdict::UniqueA: return "UniqueA";
        case SurfaceVerdict::TwoA1: return "TwoA1";
        case SurfaceVerdict::UniqueD: return "UniqueD";
    }
    return "?";
}

namespace {

Series pad_series(const Series& s, int prec) {
    if (s.precision() >= prec) return s;
    return Series::from_coeffs(s.field(), s.var(), prec, s.coeffs());
}

TernaryForm<Series> pad_form(const TernaryForm<Series>& q, int prec) {
    return make_form(pad_series(q.a, prec), pad_series(q.b, prec), pad_series(q.c, prec),
                     pad_series(q.alpha, prec), pad_series(q.beta, prec),
                     pad_series(q.gamma, prec));
}

// Coefficientwise Frobenius square: (sum s_i t^i)^2 = sum s_i^2 t^{2i},
// so the square of a series known mod t^m is known mod t^{2m}.
Series squared_char2(const Series& s) {
    Series r = Series::zero(s.field(), s.var(), 2 * s.precision());
    std::vector<Scalar> c(2 * s.precision(), Scalar::zero(s.field()));
    for (int i = 0; i < s.precision(); ++i) c[2 * i] = s.coeffs()[i] * s.coeffs()[i];
    return Series::from_coeffs(s.field(), s.var(), 2 * s.precision(), std::move(c));
}

Series monomial_series(const Series& sample, const Scalar& coef, int deg) {
    Series r = Series::zero(sample.field(), sample.var(), sample.precision());
    std::vector<Scalar> c(sample.precision(), Scalar::zero(sample.field()));
    if (deg < sample.precision()) c[deg] = coef;
    return Series::from_coeffs(sample.field(), sample.var(), sample.precision(), std::move(c));
}

Series even_part(const Series& s) {
    std::vector<Scalar> c = s.coeffs();
    for (int i = 1; i < s.precision(); i += 2) c[i] = Scalar::zero(s.field());
    return Series::from_coeffs(s.field(), s.var(), s.precision(), std::move(c));
}

Series odd_part(const Series& s) {
    std::vector<Scalar> c = s.coeffs();
    for (int i = 0; i < s.precision(); i += 2) c[i] = Scalar::zero(s.field());
    return Series::from_coeffs(s.field(), s.var(), s.precision(), std::move(c));
}

struct SB {
    TernaryForm<Series> q;
    Mat3<Series> m;
    Series unit;

    explicit SB(const TernaryForm<Series>& q0)
        : q(q0), m(Mat3<Series>::identity(q0.a)), unit(one_like(q0.a)) {}

    void apply(const Mat3<Series>& step) {
        q = act(q, step);
        m = m * step;
    }
    void shear(Axis target, Axis source, const Series& mu) {
        apply(move_matrix(
            ElementaryMove<Series>{ElementaryMove<Series>::Kind::Shear, target, source, mu},
            q.a));
    }
    void swap(Axis i, Axis j) {
        apply(move_matrix(ElementaryMove<Series>{ElementaryMove<Series>::Kind::Swap, i, j,
                                                 zero_like(q.a)},
                          q.a));
    }
    void scale(Axis i, const Series& lambda) {
        apply(move_matrix(
            ElementaryMove<Series>{ElementaryMove<Series>::Kind::Scale, i, i, lambda}, q.a));
    }
    void scale_form(const Series& u) {
        q = q.scaled(u);
        unit = unit * u;
    }

    // Replace a coefficient with its exactly-known value after checking
    // agreement at the available precision.
    void set_exact(Series TernaryForm<Series>::*member, const Series& exact) {
        if (!(q.*member == exact))
            fail(ErrorCode::Inconsistent, "exact coefficient update disagrees with transform");
        q.*member = exact;
    }
};

int claim_precision(int requested) {
    if (requested < 8)
        fail(ErrorCode::PrecisionExhausted, "precision below the guard band (need >= 8)");
    return requested - 4;
}

int working_precision(int requested) { return 2 * requested + 8; }

Scalar coeff_at(const Series& s, int i) {
    if (i >= s.precision()) fail(ErrorCode::PrecisionExhausted, "coefficient beyond window");
    return s.coeffs()[i];
}

int exact_valuation(const Series& s, ErrorCode on_exhausted, const char* what) {
    Valuation v = series_valuation(s);
    if (!v.exact) fail(on_exhausted, what);
    return v.value;
}

LocalFormResult finish(const TernaryForm<Series>& input, SB& b, LocalFormTag tag, int n,
                       TernaryForm<Series> canonical, int claim, int swap_retries) {
    LocalFormResult r;
    r.tag = tag;
    r.n = n;
    r.canonical = std::move(canonical);
    r.transform = b.m;
    r.unit = b.unit;
    r.precision = claim;
    r.swap_retries = swap_retries;
    r.field = input.a.field();
    if (!verify_certificate(input, r))
        fail(ErrorCode::Inconsistent, "normalization certificate failed to verify");
    return r;
}

// ---------------------------------------------------------------------
// characteristic != 2
// ---------------------------------------------------------------------

LocalFormResult smooth_marker(const TernaryForm<Series>& q) {
    LocalFormResult r;
    r.tag = LocalFormTag::Smooth;
    r.n = -1;
    r.canonical = q;
    r.transform = Mat3<Series>::identity(q.a);
    r.unit = one_like(q.a);
    r.precision = q.a.precision();
    r.field = q.a.field();
    return r;
}

void make_a_unit(SB& b) {
    const FieldPtr& f = b.q.a.field();
    Series one = one_like(b.q.a);
    if (b.q.a.is_unit()) return;
    if (b.q.b.is_unit()) {
        b.swap(Axis::X, Axis::Y);
        return;
    }
    if (b.q.c.is_unit()) {
        b.swap(Axis::X, Axis::Z);
        return;
    }
    if (b.q.gamma.is_unit()) {
        b.shear(Axis::Y, Axis::X, one); // y <- y + x feeds gamma into a
        return;
    }
    if (b.q.beta.is_unit()) {
        b.shear(Axis::Z, Axis::X, one); // z <- z + x feeds beta into a
        return;
    }
    if (b.q.alpha.is_unit()) {
        b.shear(Axis::Z, Axis::Y, one); // z <- z + y feeds alpha into b
        b.swap(Axis::X, Axis::Y);
        return;
    }
    (void)f;
    fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
}

LocalFormResult normalize_char_ne2_inner(const TernaryForm<Series>& input, int requested) {
    const int claim = claim_precision(requested);
    SB b(pad_form(input, working_precision(requested)));
    const FieldPtr& f = input.a.field();
    const std::string& var = input.a.var();

    TernaryForm<Scalar> central = central_fiber(b.q);
    if (classify_fiber(central) == FiberType::Smooth) return smooth_marker(input);
    bool reduced = classify_fiber(central) != FiberType::NonReduced;

    make_a_unit(b);
    Series two_a_inv = series_invert(b.q.a + b.q.a);
    if (!b.q.gamma.is_zero()) b.shear(Axis::X, Axis::Y, -(b.q.gamma * two_a_inv));
    if (!b.q.beta.is_zero()) b.shear(Axis::X, Axis::Z, -(b.q.beta * two_a_inv));
    {
        Series root = hensel_sqrt(b.q.a); // NoResidueRoot falls through to caller
        b.scale(Axis::X, series_invert(root));
        b.set_exact(&TernaryForm<Series>::a, one_like(b.q.a));
    }

    if (reduced) {
        // one of b, c, alpha is a unit
        if (!b.q.b.is_unit()) {
            if (b.q.c.is_unit()) {
                b.swap(Axis::Y, Axis::Z);
            } else if (b.q.alpha.is_unit()) {
                b.shear(Axis::Z, Axis::Y, one_like(b.q.a)); // z <- z + y
            } else {
                fail(ErrorCode::Inconsistent, "reduced fibre without a usable unit");
            }
        }
        if (!b.q.alpha.is_zero()) {
            Series two_b_inv = series_invert(b.q.b + b.q.b);
            b.shear(Axis::Y, Axis::Z, -(b.q.alpha * two_b_inv));
            b.set_exact(&TernaryForm<Series>::alpha, zero_like(b.q.a));
        }
        {
            Series root = hensel_sqrt(b.q.b);
            b.scale(Axis::Y, series_invert(root));
            b.set_exact(&TernaryForm<Series>::b, one_like(b.q.a));
        }
        int m = exact_valuation(b.q.c, ErrorCode::PrecisionExhausted,
                                "z^2 coefficient vanishes within the window");
        if (m == 0) fail(ErrorCode::Inconsistent, "central fibre was not singular after all");
        if (m > requested - 4)
            fail(ErrorCode::PrecisionExhausted, "discriminant valuation beyond the guard band");
        Series d = b.q.c.shifted_down(m);
        Series root = hensel_sqrt(d);
        b.scale(Axis::Z, series_invert(root));
        b.set_exact(&TernaryForm<Series>::c,
                    monomial_series(b.q.a, Scalar::one(f), m));
        TernaryForm<Series> canonical =
            make_form(Series::from_int(f, var, claim, 1), Series::from_int(f, var, claim, 1),
                      monomial_series(Series::zero(f, var, claim), Scalar::one(f), m),
                      Series::zero(f, var, claim), Series::zero(f, var, claim),
                      Series::zero(f, var, claim));
        return finish(input, b, LocalFormTag::Char0Red, m - 1, std::move(canonical), claim, 0);
    }

    // non-reduced: b, c, alpha all in the maximal ideal
    int vb = series_valuation(b.q.b).exact ? series_valuation(b.q.b).value
                                           : b.q.b.precision();
    int vc = series_valuation(b.q.c).exact ? series_valuation(b.q.c).value
                                           : b.q.c.precision();
    int va = series_valuation(b.q.alpha).exact ? series_valuation(b.q.alpha).value
                                               : b.q.alpha.precision();
    int m = std::min({vb, vc, va});
    if (m >= b.q.b.precision())
        fail(ErrorCode::PrecisionExhausted, "the form degenerates to x^2 within the window");
    if (m >= 2)
        fail(ErrorCode::NotCanonicalTotalSpace,
             "the total space is not normal (common valuation >= 2)");
    // m == 1; get a unit into the y^2 slot at level t^m
    bool b_unit = vb == m, c_unit = vc == m, al_unit = va == m;
    if (!b_unit) {
        if (c_unit) {
            b.swap(Axis::Y, Axis::Z);
        } else if (al_unit) {
            b.shear(Axis::Z, Axis::Y, one_like(b.q.a)); // z <- z + y
        }
    }
    if (!b.q.alpha.is_zero()) {
        Series bp = b.q.b.shifted_down(m);
        Series ap = b.q.alpha.shifted_down(m);
        Series s = -(ap * series_invert(bp + bp));
        b.shear(Axis::Y, Axis::Z, s);
        b.set_exact(&TernaryForm<Series>::alpha, zero_like(b.q.a));
    }
    {
        Series root = hensel_sqrt(b.q.b.shifted_down(m));
        b.scale(Axis::Y, series_invert(root));
        b.set_exact(&TernaryForm<Series>::b, monomial_series(b.q.a, Scalar::one(f), m));
    }
    int vcc = exact_valuation(b.q.c, ErrorCode::PrecisionExhausted,
                              "z^2 coefficient vanishes within the window");
    int s_exp = vcc - m;
    if (s_exp < 0) fail(ErrorCode::Inconsistent, "valuation accounting failed");
    if (vcc > requested - 4)
        fail(ErrorCode::PrecisionExhausted, "discriminant valuation beyond the guard band");
    {
        Series root = hensel_sqrt(b.q.c.shifted_down(vcc));
        b.scale(Axis::Z, series_invert(root));
        b.set_exact(&TernaryForm<Series>::c, monomial_series(b.q.a, Scalar::one(f), vcc));
    }
    int n = s_exp + 2;
    TernaryForm<Series> canonical =
        make_form(Series::from_int(f, var, claim, 1),
                  monomial_series(Series::zero(f, var, claim), Scalar::one(f), 1),
                  monomial_series(Series::zero(f, var, claim), Scalar::one(f), n - 1),
                  Series::zero(f, var, claim), Series::zero(f, var, claim),
                  Series::zero(f, var, claim));
    return finish(input, b, LocalFormTag::Char0NonRed, n, std::move(canonical), claim, 0);
}

// ---------------------------------------------------------------------
// characteristic 2, reduced central fibre
// ---------------------------------------------------------------------

LocalFormResult normalize_char2_reduced_inner(const TernaryForm<Series>& input, int requested) {
    const int claim = claim_precision(requested);
    SB b(pad_form(input, working_precision(requested)));
    const FieldPtr& f = input.a.field();
    const std::string& var = input.a.var();

    TernaryForm<Scalar> central = central_fiber(b.q);
    FiberType cls = classify_fiber(central);
    if (cls == FiberType::Smooth) return smooth_marker(input);
    if (cls == FiberType::NonReduced)
        fail(ErrorCode::BadInput, "central fibre is non-reduced: wrong reduction route");

    // route a unit cross term into alpha
    if (!b.q.alpha.is_unit()) {
        if (b.q.beta.is_unit())
            b.swap(Axis::X, Axis::Y);
        else
            b.swap(Axis::X, Axis::Z);
    }
    b.scale(Axis::Y, series_invert(b.q.alpha));
    b.set_exact(&TernaryForm<Series>::alpha, one_like(b.q.a));
    {
        Series be = b.q.beta, ga = b.q.gamma;
        if (!be.is_zero()) b.shear(Axis::Y, Axis::X, be);
        if (!ga.is_zero()) b.shear(Axis::Z, Axis::X, ga);
        b.set_exact(&TernaryForm<Series>::beta, zero_like(b.q.a));
        b.set_exact(&TernaryForm<Series>::gamma, zero_like(b.q.a));
    }
    // Q = a x^2 + b y^2 + c z^2 + yz
    if (!b.q.b.is_zero() || !b.q.c.is_zero()) {
        if (!b.q.b.is_unit() && !b.q.c.is_unit()) {
            b.shear(Axis::Z, Axis::Y, one_like(b.q.a)); // z <- z + y: b += c + 1
        } else if (!b.q.b.is_unit()) {
            b.swap(Axis::Y, Axis::Z);
        }
        auto [dl, ep] = hensel_factor_quadratic(b.q.b, b.q.c); // NoResidueRoot -> caller
        Series bb = b.q.b;
        std::array<std::array<Series, 3>, 3> rows = {
            {{one_like(bb), zero_like(bb), zero_like(bb)},
             {zero_like(bb), ep * bb, dl * bb},
             {zero_like(bb), bb, bb}}};
        b.apply(Mat3<Series>::from_entries(std::move(rows)));
        b.set_exact(&TernaryForm<Series>::b, zero_like(b.q.a));
        b.set_exact(&TernaryForm<Series>::c, zero_like(b.q.a));
        b.scale(Axis::Z, series_invert(b.q.alpha));
        b.set_exact(&TernaryForm<Series>::alpha, one_like(b.q.a));
    }
    // Q = a' x^2 + yz with a'(0) = 0 (central fibre singular)
    if (b.q.a.is_unit()) fail(ErrorCode::Inconsistent, "central fibre was smooth after all");
    int m = exact_valuation(b.q.a, ErrorCode::PrecisionExhausted,
                            "x^2 coefficient vanishes within the window");
    if (m > requested - 4)
        fail(ErrorCode::PrecisionExhausted, "discriminant valuation beyond the guard band");
    {
        // to xy + a' z^2
        std::array<std::array<Series, 3>, 3> rows = {
            {{zero_like(b.q.a), zero_like(b.q.a), one_like(b.q.a)},
             {one_like(b.q.a), zero_like(b.q.a), zero_like(b.q.a)},
             {zero_like(b.q.a), one_like(b.q.a), zero_like(b.q.a)}}};
        b.apply(Mat3<Series>::from_entries(std::move(rows)));
    }
    // absorb the unit of c = e t^m into x
    Series e = b.q.c.shifted_down(m);
    b.scale(Axis::X, e);
    b.scale_form(series_invert(e));
    b.set_exact(&TernaryForm<Series>::gamma, one_like(b.q.a));
    b.set_exact(&TernaryForm<Series>::c, monomial_series(b.q.a, Scalar::one(f), m));
    TernaryForm<Series> canonical =
        make_form(Series::zero(f, var, claim), Series::zero(f, var, claim),
                  monomial_series(Series::zero(f, var, claim), Scalar::one(f), m),
                  Series::zero(f, var, claim), Series::zero(f, var, claim),
                  Series::from_int(f, var, claim, 1));
    return finish(input, b, LocalFormTag::Char2Red, m - 1, std::move(canonical), claim, 0);
}

// ---------------------------------------------------------------------
// characteristic 2, non-reduced central fibre
// ---------------------------------------------------------------------

struct CrossVal {
    int val;
    bool exact;
};

CrossVal cross_valuation(const Series& s) {
    Valuation v = series_valuation(s);
    return {v.value, v.exact};
}

void stage1_on(SB& b, int requested, int& n_out) {
    CrossVal va = cross_valuation(b.q.alpha);
    CrossVal vb = cross_valuation(b.q.beta);
    CrossVal vg = cross_valuation(b.q.gamma);
    auto key = [](const CrossVal& v) { return v.exact ? v.val : 1 << 28; };
    if (!va.exact && !vb.exact && !vg.exact)
        fail(ErrorCode::WildOrPrecision,
             "all cross terms vanish within the window: wild bundle or precision loss");
    // Permute axes so that v(alpha) >= v(beta) >= v(gamma). Cross slots
    // permute with the axes; when the minimum sits in the beta slot the
    // move to gamma is a 3-cycle, which keeps the y<->z retry swap of the
    // caller from being undone here.
    int v0 = key(va), v1 = key(vb), v2 = key(vg);
    if (v2 <= v1 && v2 <= v0) {
        // already in gamma
    } else if (v1 <= v0) {
        // beta -> gamma via the cycle (alpha,beta,gamma) <- (gamma,alpha,beta)
        b.swap(Axis::Y, Axis::Z);
        b.swap(Axis::X, Axis::Y);
        int t0 = v2, t1 = v0, t2 = v1;
        v0 = t0;
        v1 = t1;
        v2 = t2;
    } else {
        // alpha -> gamma via the cycle (alpha,beta,gamma) <- (beta,gamma,alpha)
        b.swap(Axis::X, Axis::Y);
        b.swap(Axis::Y, Axis::Z);
        int t0 = v1, t1 = v2, t2 = v0;
        v0 = t0;
        v1 = t1;
        v2 = t2;
    }
    if (v0 < v1) {
        b.swap(Axis::X, Axis::Y);
        std::swap(v0, v1);
    }
    int n = v2;
    if (n > requested - 4)
        fail(ErrorCode::WildOrPrecision,
             "cross-term valuation beyond the guard band: wild bundle or precision loss");
    Series ghat = b.q.gamma.shifted_down(n);
    b.scale_form(series_invert(ghat));
    const FieldPtr& f = b.q.a.field();
    b.set_exact(&TernaryForm<Series>::gamma, monomial_series(b.q.a, Scalar::one(f), n));
    Series ap = b.q.alpha.shifted_down(n);
    Series bp = b.q.beta.shifted_down(n);
    if (!ap.is_zero() || !bp.is_zero()) {
        Series a_saved = b.q.a, b_saved = b.q.b, c_saved = b.q.c;
        std::array<std::array<Series, 3>, 3> rows = {
            {{one_like(b.q.a), zero_like(b.q.a), ap},
             {zero_like(b.q.a), one_like(b.q.a), bp},
             {zero_like(b.q.a), zero_like(b.q.a), one_like(b.q.a)}}};
        b.apply(Mat3<Series>::from_entries(std::move(rows)));
        Series c_exact = c_saved + a_saved * squared_char2(ap) + b_saved * squared_char2(bp) +
                         monomial_series(c_saved, Scalar::one(f), n) * ap * bp;
        b.set_exact(&TernaryForm<Series>::a, a_saved);
        b.set_exact(&TernaryForm<Series>::b, b_saved);
        b.set_exact(&TernaryForm<Series>::c, c_exact);
        b.set_exact(&TernaryForm<Series>::alpha, zero_like(b.q.a));
        b.set_exact(&TernaryForm<Series>::beta, zero_like(b.q.a));
        b.set_exact(&TernaryForm<Series>::gamma, monomial_series(b.q.a, Scalar::one(f), n));
    }
    n_out = n;
}

// The singular fibre points of a stage-1 form: intersection of the
// central double line with the t-derivative conic.
struct SingularPoints {
    bool line = false; // singular locus contains the whole central line
    std::vector<std::array<Scalar, 3>> points;
    bool needs_extension = false;
};

SingularPoints stage1_singular_points(const TernaryForm<Series>& q, int n) {
    const FieldPtr& f = q.a.field();
    Scalar a0 = q.a.at_zero(), b0 = q.b.at_zero(), c0 = q.c.at_zero();
    Scalar a1 = coeff_at(q.a, 1), b1 = coeff_at(q.b, 1), c1 = coeff_at(q.c, 1);
    Scalar ell[3] = {*field_sqrt(a0), *field_sqrt(b0), *field_sqrt(c0)};
    if (ell[0].is_zero() && ell[1].is_zero() && ell[2].is_zero())
        fail(ErrorCode::NotConicBundle, "central fibre vanished");
    // D = a1 x^2 + b1 y^2 + c1 z^2 (+ xy when n = 1)
    Scalar gamma1 = n == 1 ? Scalar::one(f) : Scalar::zero(f);
    auto evalD = [&](const std::array<Scalar, 3>& p) {
        return a1 * p[0] * p[0] + b1 * p[1] * p[1] + c1 * p[2] * p[2] + gamma1 * p[0] * p[1];
    };
    // parametrise the central line s P + u Qp
    int pivot = !ell[0].is_zero() ? 0 : (!ell[1].is_zero() ? 1 : 2);
    int j1 = pivot == 0 ? 1 : 0;
    int j2 = pivot == 2 ? 1 : 2;
    std::array<Scalar, 3> P = {Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)};
    std::array<Scalar, 3> Qp = P;
    P[j1] = Scalar::one(f);
    P[pivot] = ell[j1] / ell[pivot];
    Qp[j2] = Scalar::one(f);
    Qp[pivot] = ell[j2] / ell[pivot];
    std::array<Scalar, 3> PQ = {P[0] + Qp[0], P[1] + Qp[1], P[2] + Qp[2]};
    Scalar A = evalD(P), C = evalD(Qp);
    Scalar B = evalD(PQ) + A + C;
    SingularPoints out;
    if (A.is_zero() && B.is_zero() && C.is_zero()) {
        out.line = true;
        return out;
    }
    std::vector<std::pair<Scalar, Scalar>> roots; // (s, u)
    if (!A.is_zero()) {
        auto mu = solve_quadratic_char2(A, B, C);
        if (!mu) {
            out.needs_extension = true;
            return out;
        }
        roots.emplace_back(*mu, Scalar::one(f));
        if (!B.is_zero()) roots.emplace_back(*mu + B / A, Scalar::one(f));
    } else if (!B.is_zero()) {
        roots.emplace_back(Scalar::one(f), Scalar::zero(f));
        roots.emplace_back(C / B, Scalar::one(f));
    } else {
        roots.emplace_back(Scalar::one(f), Scalar::zero(f));
    }
    for (auto& [s, u] : roots) {
        std::array<Scalar, 3> pt = {s * P[0] + u * Qp[0], s * P[1] + u * Qp[1],
                                    s * P[2] + u * Qp[2]};
        // canonical representative: first nonzero coordinate 1
        int lead = !pt[0].is_zero() ? 0 : (!pt[1].is_zero() ? 1 : 2);
        Scalar inv = pt[lead].inverse();
        for (auto& c : pt) c = c * inv;
        out.points.push_back(pt);
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const std::array<Scalar, 3>& p, const std::array<Scalar, 3>& q2) {
                  for (int i = 0; i < 3; ++i) {
                      if (p[i].less_than(q2[i])) return true;
                      if (q2[i].less_than(p[i])) return false;
                  }
                  return false;
              });
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

// Move a singular point with usable x/y coordinate to [0:1:0], keeping
// the stage-1 shape; [0:0:1] is reported for the retry path.
void locate_on(SB& b, int n, Axis& axis_out) {
    SingularPoints sp = stage1_singular_points(b.q, n);
    if (sp.line)
        fail(ErrorCode::NotCanonicalTotalSpace,
             "the singular locus contains the central line: total space is not normal");
    if (sp.needs_extension)
        fail(ErrorCode::NoResidueRoot, "singular points are not rational over this field");
    // prefer a point with nonzero y, then nonzero x, then [0:0:1]
    const std::array<Scalar, 3>* chosen = nullptr;
    for (const auto& p : sp.points)
        if (!p[1].is_zero()) {
            chosen = &p;
            break;
        }
    bool swapped_xy = false;
    if (!chosen) {
        for (const auto& p : sp.points)
            if (!p[0].is_zero()) {
                chosen = &p;
                swapped_xy = true;
                break;
            }
    }
    if (!chosen) {
        axis_out = Axis::Z;
        return;
    }
    std::array<Scalar, 3> p = *chosen;
    if (swapped_xy) {
        b.swap(Axis::X, Axis::Y);
        std::swap(p[0], p[1]);
    }
    // normalise y-coordinate to 1, then shear the point onto [0:1:0]
    Scalar inv = p[1].inverse();
    for (auto& c : p) c = c * inv;
    if (!p[0].is_zero() || !p[2].is_zero()) {
        Series a_saved = b.q.a, b_saved = b.q.b, c_saved = b.q.c, g_saved = b.q.gamma;
        Series al = Series::constant(b.q.a.field(), b.q.a.var(), b.q.a.precision(), p[0]);
        Series gm = Series::constant(b.q.a.field(), b.q.a.var(), b.q.a.precision(), p[2]);
        std::array<std::array<Series, 3>, 3> rows = {
            {{one_like(b.q.a), al, zero_like(b.q.a)},
             {zero_like(b.q.a), one_like(b.q.a), zero_like(b.q.a)},
             {zero_like(b.q.a), gm, one_like(b.q.a)}}};
        b.apply(Mat3<Series>::from_entries(std::move(rows)));
        Series b_exact = b_saved + a_saved.scaled(p[0] * p[0]) + c_saved.scaled(p[2] * p[2]) +
                         g_saved.scaled(p[0]);
        b.set_exact(&TernaryForm<Series>::a, a_saved);
        b.set_exact(&TernaryForm<Series>::b, b_exact);
        b.set_exact(&TernaryForm<Series>::c, c_saved);
        b.set_exact(&TernaryForm<Series>::gamma, g_saved);
    }
    axis_out = Axis::Y;
}

// Elimination loop of branch (I): kill b against c = 1 and the cross
// term; needs a(0) = 0, a'(0) != 0.
void kill_b_branch1(SB& b, int n, int limit) {
    const FieldPtr& f = b.q.a.field();
    while (true) {
        Valuation vb = series_valuation(b.q.b);
        if (!vb.exact || vb.value >= limit) break;
        int m = vb.value;
        Scalar bm = coeff_at(b.q.b, m);
        if (m % 2 == 0) {
            Scalar lam = *field_sqrt(bm);
            b.shear(Axis::Z, Axis::Y, monomial_series(b.q.a, lam, m / 2));
        } else {
            int l = (m - 1) / 2;
            Scalar a1 = coeff_at(b.q.a, 1);
            if (l < n) {
                Scalar g_next = coeff_at(b.q.gamma, l + 1);
                auto mu = solve_quadratic_char2(a1, g_next, bm);
                if (!mu)
                    fail(ErrorCode::NoResidueRoot,
                         "odd-level elimination needs a quadratic root");
                b.shear(Axis::X, Axis::Y, monomial_series(b.q.a, *mu, l));
            } else {
                Scalar gn = coeff_at(b.q.gamma, n);
                b.shear(Axis::X, Axis::Y, monomial_series(b.q.a, bm / gn, m - n));
            }
        }
    }
    (void)f;
}

// Mirror loop of branch (II): kill b against a = 1, v(c) = 1.
void kill_b_branch2(SB& b, int n, int limit) {
    while (true) {
        Valuation vb = series_valuation(b.q.b);
        if (!vb.exact || vb.value >= limit) break;
        int m = vb.value;
        Scalar bm = coeff_at(b.q.b, m);
        if (m % 2 == 1) {
            int l = (m - 1) / 2;
            Scalar c1 = coeff_at(b.q.c, 1);
            Scalar lam = *field_sqrt(bm / c1);
            b.shear(Axis::Z, Axis::Y, monomial_series(b.q.a, lam, l));
        } else {
            int l = m / 2;
            if (l <= n) {
                Scalar g_l = coeff_at(b.q.gamma, l);
                auto mu = solve_quadratic_char2(Scalar::one(b.q.a.field()), g_l, bm);
                if (!mu)
                    fail(ErrorCode::NoResidueRoot,
                         "even-level elimination needs a quadratic root");
                b.shear(Axis::X, Axis::Y, monomial_series(b.q.a, *mu, l));
            } else {
                Scalar gn = coeff_at(b.q.gamma, n);
                b.shear(Axis::X, Axis::Y, monomial_series(b.q.a, bm / gn, 2 * l - n));
            }
        }
    }
}

LocalFormResult normalize_char2_nonred_inner(const TernaryForm<Series>& input, int requested) {
    const int claim = claim_precision(requested);
    const int kill_limit = requested;
    const FieldPtr& f = input.a.field();
    const std::string& var = input.a.var();
    SB b(pad_form(input, working_precision(requested)));

    int n = 0;
    Axis axis = Axis::Z;
    int retries = 0;
    while (true) {
        stage1_on(b, requested, n);
        locate_on(b, n, axis);
        if (axis == Axis::Y) break;
        if (++retries > 3)
            fail(ErrorCode::Unnormalizable,
                 "singularity pinned at [0:0:1] after 3 swap retries");
        b.swap(Axis::Y, Axis::Z); // moves the coupling to t^n zx; restage
    }

    const bool branch1 = b.q.c.is_unit();
    if (!branch1 && !b.q.a.is_unit())
        fail(ErrorCode::Inconsistent, "no unit available at the singular point");

    if (branch1) {
        // (I): towards t x^2 + z^2 + t^n x y
        b.scale_form(series_invert(b.q.c));
        b.set_exact(&TernaryForm<Series>::c, one_like(b.q.a));
        Scalar a0 = b.q.a.at_zero();
        if (!a0.is_zero()) {
            b.shear(Axis::Z, Axis::X, Series::constant(f, var, b.q.a.precision(),
                                                       *field_sqrt(a0)));
        }
        if (coeff_at(b.q.a, 1).is_zero()) {
            if (n >= 2)
                fail(ErrorCode::NotCanonicalTotalSpace,
                     "derivative line coincides with the central line");
            // n = 1: adjust a' (0) through the y <- y + q x shear or the
            // x <-> y swap; gamma_1 != 0 makes one of them work
            Scalar b1 = coeff_at(b.q.b, 1), g1 = coeff_at(b.q.gamma, 1);
            bool fixed = false;
            for (const Scalar& q0 : all_field_elements(f)) {
                if (q0.is_zero()) continue;
                Scalar new_a1 = coeff_at(b.q.a, 1) + b1 * q0 * q0 + g1 * q0;
                if (!new_a1.is_zero()) {
                    b.shear(Axis::Y, Axis::X, Series::constant(f, var, b.q.a.precision(), q0));
                    fixed = true;
                    break;
                }
            }
            if (!fixed) {
                if (b1.is_zero())
                    fail(ErrorCode::Inconsistent, "t-level coefficient fix failed");
                b.swap(Axis::X, Axis::Y);
            }
            if (!b.q.a.at_zero().is_zero()) {
                b.shear(Axis::Z, Axis::X,
                        Series::constant(f, var, b.q.a.precision(),
                                         *field_sqrt(b.q.a.at_zero())));
            }
        }
        kill_b_branch1(b, n, kill_limit);
        // a: keep odd part only (z <- z + h x with h^2 = even part of a)
        Series a_even = even_part(b.q.a);
        if (!a_even.is_zero()) {
            Series h = *even_series_sqrt(a_even);
            Series a_odd = odd_part(b.q.a);
            b.shear(Axis::Z, Axis::X, h);
            b.set_exact(&TernaryForm<Series>::a, a_odd);
        }
        // a = t g^2 with g a unit
        Series g2 = b.q.a.shifted_down(1);
        Series g = *even_series_sqrt(g2);
        Series a_exact = monomial_series(b.q.a, Scalar::one(f), 1);
        b.scale(Axis::X, series_invert(g));
        b.set_exact(&TernaryForm<Series>::a, a_exact);
        // gamma -> t^n exactly
        Series ghat = b.q.gamma.shifted_down(n);
        b.scale(Axis::Y, series_invert(ghat));
        b.set_exact(&TernaryForm<Series>::gamma,
                    monomial_series(b.q.gamma, Scalar::one(f), n));
        TernaryForm<Series> canonical = make_form(
            monomial_series(Series::zero(f, var, claim), Scalar::one(f), 1),
            Series::zero(f, var, claim), Series::from_int(f, var, claim, 1),
            Series::zero(f, var, claim), Series::zero(f, var, claim),
            monomial_series(Series::zero(f, var, claim), Scalar::one(f), n));
        LocalFormResult r = finish(input, b, LocalFormTag::Char2NonRedI, n,
                                   std::move(canonical), claim, retries);
        return r;
    }

    // (II): towards x^2 + t z^2 + t^n x y
    b.scale_form(series_invert(b.q.a));
    b.set_exact(&TernaryForm<Series>::a, one_like(b.q.a));
    if (!b.q.c.at_zero().is_zero() || coeff_at(b.q.c, 1).is_zero())
        fail(ErrorCode::Inconsistent, "branch (II) expects v(c) = 1");
    kill_b_branch2(b, n, kill_limit);
    {
        // c -> t: with w = c / t, solve m33^2 + t m31^2 = w^{-1} by the
        // even/odd split, apply z <- m31 x + m33 z, rescale globally
        Series w = b.q.c.shifted_down(1);
        Series winv = series_invert(w);
        Series E = even_part(winv), O = odd_part(winv);
        Series m33 = *even_series_sqrt(E);
        Series o_shift = O.is_zero() ? Series::zero(f, var, winv.precision() - 1)
                                     : O.shifted_down(1);
        Series m31 = *even_series_sqrt(o_shift);
        Series b_saved = b.q.b, c_saved = b.q.c, g_saved = b.q.gamma;
        std::array<std::array<Series, 3>, 3> rows = {
            {{one_like(b.q.a), zero_like(b.q.a), zero_like(b.q.a)},
             {zero_like(b.q.a), one_like(b.q.a), zero_like(b.q.a)},
             {m31, zero_like(b.q.a), m33}}};
        b.apply(Mat3<Series>::from_entries(std::move(rows)));
        Series u = series_invert(one_like(c_saved) + c_saved * o_shift);
        b.scale_form(u);
        b.set_exact(&TernaryForm<Series>::a, Series::from_int(f, var, u.precision(), 1));
        b.set_exact(&TernaryForm<Series>::c,
                    monomial_series(Series::zero(f, var, u.precision()), Scalar::one(f), 1));
        b.set_exact(&TernaryForm<Series>::b, u * b_saved);
        b.set_exact(&TernaryForm<Series>::gamma, u * g_saved);
    }
    {
        Series ghat = b.q.gamma.shifted_down(n);
        b.scale(Axis::Y, series_invert(ghat));
        b.set_exact(&TernaryForm<Series>::gamma,
                    monomial_series(b.q.gamma, Scalar::one(f), n));
    }
    TernaryForm<Series> canonical = make_form(
        Series::from_int(f, var, claim, 1), Series::zero(f, var, claim),
        monomial_series(Series::zero(f, var, claim), Scalar::one(f), 1),
        Series::zero(f, var, claim), Series::zero(f, var, claim),
        monomial_series(Series::zero(f, var, claim), Scalar::one(f), n));
    return finish(input, b, LocalFormTag::Char2NonRedII, n, std::move(canonical), claim,
                  retries);
}

} // namespace

bool is_conic_bundle_local(const TernaryForm<Series>& q) {
    return q.a.is_unit() || q.b.is_unit() || q.c.is_unit() || q.alpha.is_unit() ||
           q.beta.is_unit() || q.gamma.is_unit();
}

TernaryForm<Scalar> central_fiber(const TernaryForm<Series>& q) {
    if (!is_conic_bundle_local(q))
        fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
    return make_form(q.a.at_zero(), q.b.at_zero(), q.c.at_zero(), q.alpha.at_zero(),
                     q.beta.at_zero(), q.gamma.at_zero());
}

LocalFormResult normalize_char_ne2(const TernaryForm<Series>& q) {
    if (q.a.field()->characteristic() == 2)
        fail(ErrorCode::WrongCharacteristic, "this route needs characteristic != 2");
    if (!is_conic_bundle_local(q))
        fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
    return normalize_char_ne2_inner(q, q.a.precision());
}

LocalFormResult normalize_char2_reduced(const TernaryForm<Series>& q) {
    if (q.a.field()->characteristic() != 2)
        fail(ErrorCode::WrongCharacteristic, "this route needs characteristic 2");
    if (!is_conic_bundle_local(q))
        fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
    return normalize_char2_reduced_inner(q, q.a.precision());
}

Stage1Result normalize_char2_nonreduced_stage1(const TernaryForm<Series>& q) {
    if (q.a.field()->characteristic() != 2)
        fail(ErrorCode::WrongCharacteristic, "this route needs characteristic 2");
    if (!is_conic_bundle_local(q))
        fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
    if (classify_fiber(central_fiber(q)) != FiberType::NonReduced)
        fail(ErrorCode::BadInput, "central fibre is not non-reduced");
    SB b(q);
    int n = 0;
    stage1_on(b, q.a.precision(), n);
    return Stage1Result{b.q, b.m, b.unit, n};
}

LocateResult locate_singularity_char2(const Stage1Result& s) {
    SB b(s.form);
    Axis axis = Axis::Z;
    locate_on(b, s.n, axis);
    return LocateResult{axis, b.q, b.m};
}

LocalFormResult normalize_char2_nonreduced(const TernaryForm<Series>& q) {
    if (q.a.field()->characteristic() != 2)
        fail(ErrorCode::WrongCharacteristic, "this route needs characteristic 2");
    if (!is_conic_bundle_local(q))
        fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
    if (classify_fiber(central_fiber(q)) != FiberType::NonReduced)
        fail(ErrorCode::BadInput, "central fibre is not non-reduced");
    return normalize_char2_nonred_inner(q, q.a.precision());
}

LocalFormResult normalize_local(const TernaryForm<Series>& q, const NormalizeOptions& opts) {
    TernaryForm<Series> cur = q;
    bool extended = false;
    while (true) {
        try {
            LocalFormResult r;
            if (!is_conic_bundle_local(cur))
                fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
            FiberType cls = classify_fiber(central_fiber(cur));
            if (cls == FiberType::Smooth) {
                r = smooth_marker(cur);
            } else if (cur.a.field()->characteristic() != 2) {
                r = normalize_char_ne2(cur);
            } else if (cls == FiberType::ReducedSingular) {
                r = normalize_char2_reduced(cur);
            } else {
                r = normalize_char2_nonreduced(cur);
            }
            r.auto_extended = extended;
            return r;
        } catch (const ConicError& e) {
            if (e.code() != ErrorCode::NoResidueRoot || !opts.auto_extend ||
                !cur.a.field()->is_finite())
                throw;
            FieldPtr big = doubled_field(cur.a.field()); // TooLarge past degree 16
            cur = make_form(embed_series(cur.a, big), embed_series(cur.b, big),
                            embed_series(cur.c, big), embed_series(cur.alpha, big),
                            embed_series(cur.beta, big), embed_series(cur.gamma, big));
            extended = true;
        }
    }
}

SingularityReport classify_surface_singularity(int deg_delta, bool central_reduced) {
    if (deg_delta < 0) fail(ErrorCode::BadInput, "negative discriminant degree");
    SingularityReport r;
    r.deg_delta = deg_delta;
    r.central_reduced = central_reduced;
    r.m = deg_delta + 1;
    if (central_reduced) {
        if (deg_delta <= 1) {
            r.verdict = SurfaceVerdict::RegularTotalSpace;
            r.index = 0;
        } else {
            r.verdict = SurfaceVerdict::UniqueA;
            r.index = deg_delta - 1;
        }
    } else {
        if (deg_delta <= 1)
            fail(ErrorCode::Inconsistent,
                 "a non-reduced fibre forces discriminant degree >= 2");
        if (deg_delta == 2) {
            r.verdict = SurfaceVerdict::TwoA1;
            r.index = 1;
        } else {
            r.verdict = SurfaceVerdict::UniqueD;
            r.index = deg_delta;
        }
    }
    return r;
}

namespace {

bool is_monomial(const Series& s, int deg) {
    Valuation v = series_valuation(s);
    if (!v.exact || v.value != deg) return false;
    if (!s.coeffs()[deg].is_one()) return false;
    for (int i = deg + 1; i < s.precision(); ++i)
        if (!s.coeffs()[i].is_zero()) return false;
    return true;
}

} // namespace

ArtinLabel artin_refine(const TernaryForm<Series>& q) {
    const FieldPtr& f = q.a.field();
    if (!f->is_finite() || f->characteristic() != 2)
        fail(ErrorCode::WrongCharacteristic, "the refinement table is the char-2 route");
    if (!q.alpha.is_zero() || !q.beta.is_zero())
        fail(ErrorCode::UnrecognizedFamily, "recognized families have alpha = beta = 0");
    Valuation vg = series_valuation(q.gamma);
    if (!vg.exact) fail(ErrorCode::UnrecognizedFamily, "vanishing cross term");
    ArtinLabel label;
    // x^2 + t y^2 + t^{2r} z^2 + t^s xy and the odd-z variant
    if (is_monomial(q.a, 0) && is_monomial(q.b, 1) && is_monomial(q.gamma, vg.value)) {
        Valuation vc = series_valuation(q.c);
        if (vc.exact && is_monomial(q.c, vc.value) && vc.value >= 2 && vg.value >= 1) {
            int s = vg.value;
            if (vc.value % 2 == 0) {
                int r = vc.value / 2;
                label.family = ArtinFamily::DEven;
                label.r = r;
                label.subscript = 2 * r + 2 * s;
                label.param_r = r;
                label.param_s = s;
                // affine chart z = 1, then x -> x + t^r
                auto ring = make_poly_ring(f, {"t", "x", "y"});
                Poly t = Poly::variable(ring, "t");
                Poly x = Poly::variable(ring, "x");
                Poly y = Poly::variable(ring, "y");
                Poly xr = x + t.pow(r);
                Poly eq = xr * xr + t * y * y + t.pow(2 * r) + t.pow(s) * xr * y;
                Poly expected = x * x + t * y * y + t.pow(s) * x * y + t.pow(r + s) * y;
                if (!(eq == expected))
                    fail(ErrorCode::Inconsistent, "refined local equation failed to verify");
                label.artin_local_equation = expected;
                return label;
            }
            int r = (vc.value - 1) / 2;
            if (r >= 1) {
                label.family = ArtinFamily::DOdd;
                label.r = r;
                label.subscript = 2 * r + 2 * s + 1;
                label.param_r = r;
                label.param_s = s;
                return label;
            }
        }
    }
    // t x^2 + z^2 + t^n xy
    if (is_monomial(q.a, 1) && q.b.is_zero() && is_monomial(q.c, 0) &&
        is_monomial(q.gamma, vg.value) && vg.value >= 1) {
        int n = vg.value;
        if (n == 1) {
            label.family = ArtinFamily::TwoA1Family;
            label.param_n = 1;
            return label;
        }
        label.family = ArtinFamily::D0Even;
        label.subscript = 2 * n;
        label.param_n = n;
        return label;
    }
    // x^2 + t z^2 + t^n xy
    if (is_monomial(q.a, 0) && q.b.is_zero() && is_monomial(q.c, 1) &&
        is_monomial(q.gamma, vg.value) && vg.value >= 1) {
        label.family = ArtinFamily::D0Odd;
        label.subscript = 2 * vg.value + 1;
        label.param_n = vg.value;
        return label;
    }
    fail(ErrorCode::UnrecognizedFamily, "the form matches no recognized family shape");
}

int delta_valuation(const TernaryForm<Series>& q) {
    Series d = delta(q);
    Valuation v = series_valuation(d);
    if (!v.exact)
        fail(ErrorCode::PrecisionExhausted, "discriminant vanishes within the window");
    return v.value;
}

bool verify_certificate(const TernaryForm<Series>& input, const LocalFormResult& r) {
    if (r.precision < 1) return false;
    int lift = std::max(working_precision(input.a.precision()), r.precision + 4);
    TernaryForm<Series> lifted = pad_form(input, lift);
    TernaryForm<Series> v = act(lifted, r.transform).scaled(r.unit);
    auto check = [&](const Series& got, const Series& want) {
        if (got.precision() < r.precision || want.precision() < r.precision) return false;
        return got.truncated(r.precision) == want.truncated(r.precision);
    };
    return check(v.a, r.canonical.a) && check(v.b, r.canonical.b) &&
           check(v.c, r.canonical.c) && check(v.alpha, r.canonical.alpha) &&
           check(v.beta, r.canonical.beta) && check(v.gamma, r.canonical.gamma);
}

} // namespace conicdisc
