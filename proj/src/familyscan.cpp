#include "conicdisc/familyscan.hpp"

#include <algorithm>

#include "conicdisc/fiberlab.hpp"

namespace conicdisc {

Family make_family(PolyRingPtr base, TernaryForm<Poly> form, bool projective_base) {
    Family f;
    f.base = std::move(base);
    f.form = std::move(form);
    f.projective_base = projective_base;
    if (f.form.is_zero()) fail(ErrorCode::ZeroForm, "the family form is identically zero");
    return f;
}

Poly discriminant_poly(const Family& f) { return delta(f.form); }

std::array<Poly, 6> sigma_ideal_gens(const Family& f) { return sigma_generators(f.form); }

std::array<Poly, 3> sigma_prime_gens(const Family& f) { return sigma_prime(f.form); }

bool is_generically_smooth(const Family& f) { return !discriminant_poly(f).is_zero(); }

bool is_wild_candidate(const Family& f) { return discriminant_poly(f).is_zero(); }

std::vector<std::vector<Scalar>> enumerate_base_points(const FieldPtr& f, int dim,
                                                       bool projective) {
    std::vector<std::vector<Scalar>> out;
    if (dim == 0) {
        out.push_back({});
        return out;
    }
    auto elems = all_field_elements(f);
    if (!projective) {
        std::vector<std::size_t> idx(dim, 0);
        while (true) {
            std::vector<Scalar> pt;
            pt.reserve(dim);
            for (int i = 0; i < dim; ++i) pt.push_back(elems[idx[i]]);
            out.push_back(std::move(pt));
            int i = dim - 1;
            while (i >= 0 && ++idx[i] == elems.size()) idx[i--] = 0;
            if (i < 0) break;
        }
        return out;
    }
    // P^{dim-1}: canonical representatives, first nonzero coordinate 1
    for (int lead = 0; lead < dim; ++lead) {
        int free_coords = dim - lead - 1;
        std::vector<std::size_t> idx(free_coords, 0);
        while (true) {
            std::vector<Scalar> pt(dim, Scalar::zero(f));
            pt[lead] = Scalar::one(f);
            for (int i = 0; i < free_coords; ++i) pt[lead + 1 + i] = elems[idx[i]];
            out.push_back(std::move(pt));
            if (free_coords == 0) break;
            int i = free_coords - 1;
            while (i >= 0 && ++idx[i] == elems.size()) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    return out;
}

namespace {

FieldPtr extension_of(const FieldPtr& f, int d) {
    if (d == 1) return f;
    return FieldSpec::extension_field(f->characteristic(), f->extension_degree() * d);
}

TernaryForm<Scalar> evaluate_family(const TernaryForm<Poly>& form,
                                    const std::vector<Scalar>& pt) {
    return make_form(form.a.evaluate(pt), form.b.evaluate(pt), form.c.evaluate(pt),
                     form.alpha.evaluate(pt), form.beta.evaluate(pt),
                     form.gamma.evaluate(pt));
}

TernaryForm<Poly> lift_form(const TernaryForm<Poly>& form, const PolyRingPtr& big_ring) {
    auto lift = [&](const Poly& p) {
        Poly r = Poly::zero(big_ring);
        for (const auto& [e, c] : p.terms())
            r = r + Poly::monomial(big_ring, e, embed_scalar(c, big_ring->field));
        return r;
    };
    return make_form(lift(form.a), lift(form.b), lift(form.c), lift(form.alpha),
                     lift(form.beta), lift(form.gamma));
}

} // namespace

ScanReport singular_points_scan(const Family& f, int ext_degree) {
    const FieldPtr& base_field = f.base->field;
    if (!base_field->is_finite())
        fail(ErrorCode::BadInput, "point scans need a finite base field");
    FieldPtr k = extension_of(base_field, ext_degree);
    const int d = static_cast<int>(f.base->vars.size());
    const std::int64_t q = k->order();
    std::int64_t base_count = 1;
    if (f.projective_base) {
        base_count = 0;
        std::int64_t accum = 1;
        for (int i = 0; i < d; ++i) {
            base_count += accum;
            if (accum > (std::int64_t(1) << 26) / std::max<std::int64_t>(q, 1))
                fail(ErrorCode::TooLarge, "scan bound 2^26 exceeded");
            accum *= q;
        }
    } else {
        for (int i = 0; i < d; ++i) {
            if (base_count > (std::int64_t(1) << 26) / std::max<std::int64_t>(q, 1))
                fail(ErrorCode::TooLarge, "scan bound 2^26 exceeded");
            base_count *= q;
        }
    }
    std::int64_t fibre_count = q * q + q + 1;
    if (base_count > (std::int64_t(1) << 26) / std::max<std::int64_t>(fibre_count, 1))
        fail(ErrorCode::TooLarge, "scan bound 2^26 exceeded");

    PolyRingPtr big_ring = make_poly_ring(k, f.base->vars);
    TernaryForm<Poly> form = base_field->same_field(*k) ? f.form : lift_form(f.form, big_ring);
    PolyRingPtr ring = base_field->same_field(*k) ? f.base : big_ring;

    // base-variable partials of each coefficient
    std::array<std::vector<Poly>, 6> partials;
    const std::array<const Poly*, 6> coeffs = {&form.a, &form.b, &form.c,
                                               &form.alpha, &form.beta, &form.gamma};
    for (int i = 0; i < 6; ++i) {
        partials[i].reserve(d);
        for (int v = 0; v < d; ++v) partials[i].push_back(coeffs[i]->derivative(v));
    }

    ScanReport report;
    report.extension_degree = ext_degree;
    auto base_points = enumerate_base_points(k, d, f.projective_base);
    auto fibre_points = projective_plane_points(k);
    for (const auto& bp : base_points) {
        TernaryForm<Scalar> q0 = evaluate_family(form, bp);
        std::vector<TernaryForm<Scalar>> dforms;
        dforms.reserve(d);
        for (int v = 0; v < d; ++v) {
            dforms.push_back(make_form(partials[0][v].evaluate(bp), partials[1][v].evaluate(bp),
                                       partials[2][v].evaluate(bp), partials[3][v].evaluate(bp),
                                       partials[4][v].evaluate(bp),
                                       partials[5][v].evaluate(bp)));
        }
        for (const auto& fp : fibre_points) {
            ++report.points_scanned;
            if (!eval_form(q0, fp[0], fp[1], fp[2]).is_zero()) continue;
            auto g = eval_form_gradient(q0, fp[0], fp[1], fp[2]);
            if (!g[0].is_zero() || !g[1].is_zero() || !g[2].is_zero()) continue;
            bool all_base_partials_zero = true;
            for (int v = 0; v < d && all_base_partials_zero; ++v) {
                if (!eval_form(dforms[v], fp[0], fp[1], fp[2]).is_zero())
                    all_base_partials_zero = false;
            }
            if (all_base_partials_zero)
                report.singular_points.push_back(SingularPoint{bp, fp});
        }
    }
    return report;
}

PowerProfile delta_power_profile(const Family& f) {
    if (!f.base->field->is_finite())
        fail(ErrorCode::WrongCharacteristic, "power profiling needs positive characteristic");
    Poly d = discriminant_poly(f);
    if (d.is_zero()) fail(ErrorCode::ZeroDiscriminant, "delta vanishes identically");
    PowerProfile profile;
    profile.h = d;
    while (true) {
        auto root = poly_pth_root(profile.h);
        if (!root) break;
        profile.h = *root;
        ++profile.e;
    }
    return profile;
}

NonregReport nonreg_equals_sigma_check(const Family& f, int ext_degree) {
    const FieldPtr& base_field = f.base->field;
    if (!base_field->is_finite())
        fail(ErrorCode::BadInput, "the sampled check needs a finite base field");
    FieldPtr k = extension_of(base_field, ext_degree);
    const int d = static_cast<int>(f.base->vars.size());
    PolyRingPtr big_ring = make_poly_ring(k, f.base->vars);
    TernaryForm<Poly> form = base_field->same_field(*k) ? f.form : lift_form(f.form, big_ring);

    Poly delta_poly = delta(form);
    std::vector<Poly> delta_partials;
    for (int v = 0; v < d; ++v) delta_partials.push_back(delta_poly.derivative(v));
    auto sigma = sigma_generators(form);

    NonregReport report;
    report.extension_degree = ext_degree;
    auto base_points = enumerate_base_points(k, d, f.projective_base);
    if (static_cast<std::int64_t>(base_points.size()) > (std::int64_t(1) << 26))
        fail(ErrorCode::TooLarge, "scan bound 2^26 exceeded");
    for (const auto& bp : base_points) {
        if (!delta_poly.evaluate(bp).is_zero()) continue;
        ++report.zero_locus_points;
        bool grad_zero = true;
        for (int v = 0; v < d && grad_zero; ++v)
            if (!delta_partials[v].evaluate(bp).is_zero()) grad_zero = false;
        bool sigma_zero = true;
        for (const Poly& g : sigma)
            if (!g.evaluate(bp).is_zero()) {
                sigma_zero = false;
                break;
            }
        if (grad_zero != sigma_zero) report.mismatches.push_back(bp);
    }
    return report;
}

TernaryForm<Series> specialize_to_series(const Family& f, const std::string& series_var,
                                         const std::vector<std::pair<std::string, Scalar>>&
                                             assignments,
                                         int precision) {
    auto idx = f.base->var_index(series_var);
    if (!idx) fail(ErrorCode::BadInput, "series variable is not a base variable");
    const auto& vars = f.base->vars;
    std::vector<std::optional<Scalar>> assign(vars.size());
    for (const auto& [name, value] : assignments) {
        auto i = f.base->var_index(name);
        if (!i) fail(ErrorCode::BadInput, "assignment names an unknown variable");
        if (*i == *idx) fail(ErrorCode::BadInput, "cannot assign the series variable");
        assign[*i] = value;
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (static_cast<int>(i) != *idx && !assign[i])
            fail(ErrorCode::BadInput, "every non-series variable needs an assignment");
    PolyRingPtr target = make_poly_ring(f.base->field, {series_var});
    auto to_series = [&](const Poly& p) {
        Poly sub = p.substitute(assign, target);
        Series s = Series::zero(f.base->field, series_var, precision);
        std::vector<Scalar> c(precision, Scalar::zero(f.base->field));
        for (const auto& [e, coef] : sub.terms()) {
            if (e[0] < precision) c[e[0]] = coef;
        }
        return Series::from_coeffs(f.base->field, series_var, precision, std::move(c));
    };
    return make_form(to_series(f.form.a), to_series(f.form.b), to_series(f.form.c),
                     to_series(f.form.alpha), to_series(f.form.beta), to_series(f.form.gamma));
}

} // namespace conicdisc
