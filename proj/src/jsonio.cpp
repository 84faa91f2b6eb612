#include "conicdisc/jsonio.hpp"

#include <fstream>

#include "conicdisc/expr.hpp"

namespace conicdisc {

namespace {

FieldPtr field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("characteristic"))
        fail(ErrorCode::BadInput, "field spec needs a characteristic");
    std::int64_t p = j.at("characteristic").get<std::int64_t>();
    int k = j.value("extension_degree", 1);
    if (p == 0) {
        if (k != 1) fail(ErrorCode::BadInput, "characteristic 0 forces extension degree 1");
        return FieldSpec::rationals();
    }
    if (j.contains("modulus")) {
        std::vector<std::int64_t> mod = j.at("modulus").get<std::vector<std::int64_t>>();
        return FieldSpec::extension_field(p, k, std::move(mod));
    }
    return FieldSpec::extension_field(p, k);
}

} // namespace

InputDoc parse_input_json(const Json& j) {
    if (!j.is_object()) fail(ErrorCode::BadInput, "input document must be a JSON object");
    if (j.value("schema", std::string{}) != "conicdisc/1")
        fail(ErrorCode::BadInput, "missing or unsupported schema tag (want \"conicdisc/1\")");
    InputDoc doc;
    doc.field = field_from_json(j.at("field"));
    const Json& base = j.at("base");
    std::string kind = base.value("kind", std::string{});
    if (kind == "field") {
        doc.kind = BaseKind::Field;
    } else if (kind == "poly" || kind == "proj-poly") {
        doc.kind = kind == "poly" ? BaseKind::PolyBase : BaseKind::ProjPolyBase;
        doc.vars = base.at("vars").get<std::vector<std::string>>();
        if (doc.vars.empty()) fail(ErrorCode::BadInput, "polynomial base needs variables");
    } else if (kind == "series") {
        doc.kind = BaseKind::SeriesBase;
        doc.series_var = base.at("var").get<std::string>();
        doc.precision = base.value("precision", 32);
        if (doc.precision < 1) fail(ErrorCode::BadInput, "precision must be >= 1");
        doc.vars = {doc.series_var};
    } else {
        fail(ErrorCode::BadInput, "base kind must be field / poly / series / proj-poly");
    }
    doc.ring = make_poly_ring(doc.field, doc.vars);
    const Json& form = j.at("form");
    auto coefficient = [&](const char* name) {
        if (!form.contains(name))
            fail(ErrorCode::BadInput, std::string("form misses coefficient '") + name + "'");
        return parse_expression(form.at(name).get<std::string>(), doc.ring);
    };
    doc.form = make_form(coefficient("a"), coefficient("b"), coefficient("c"),
                         coefficient("alpha"), coefficient("beta"), coefficient("gamma"));
    if (doc.form.is_zero()) fail(ErrorCode::ZeroForm, "all six coefficients are zero");
    return doc;
}

InputDoc parse_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        fail(ErrorCode::BadInput, std::string("invalid JSON: ") + e.what());
    }
    return parse_input_json(j);
}

TernaryForm<Scalar> doc_scalar_form(const InputDoc& doc) {
    if (doc.kind != BaseKind::Field)
        fail(ErrorCode::BadInput, "this command needs a point base ({\"kind\":\"field\"})");
    auto constant = [&](const Poly& p) { return p.constant_term(); };
    return make_form(constant(doc.form.a), constant(doc.form.b), constant(doc.form.c),
                     constant(doc.form.alpha), constant(doc.form.beta),
                     constant(doc.form.gamma));
}

TernaryForm<Series> doc_series_form(const InputDoc& doc, int precision_override) {
    if (doc.kind != BaseKind::SeriesBase)
        fail(ErrorCode::BadInput, "this command needs a series base");
    int prec = precision_override > 0 ? precision_override : doc.precision;
    auto to_series = [&](const Poly& p) {
        std::vector<Scalar> c(prec, Scalar::zero(doc.field));
        for (const auto& [e, coef] : p.terms())
            if (e[0] < prec) c[e[0]] = coef;
        return Series::from_coeffs(doc.field, doc.series_var, prec, std::move(c));
    };
    return make_form(to_series(doc.form.a), to_series(doc.form.b), to_series(doc.form.c),
                     to_series(doc.form.alpha), to_series(doc.form.beta),
                     to_series(doc.form.gamma));
}

Family doc_family(const InputDoc& doc) {
    if (doc.kind != BaseKind::PolyBase && doc.kind != BaseKind::ProjPolyBase)
        fail(ErrorCode::BadInput, "this command needs a polynomial base");
    return make_family(doc.ring, doc.form, doc.kind == BaseKind::ProjPolyBase);
}

Json form_to_json(const TernaryForm<Poly>& form) {
    Json j;
    j["a"] = form.a.str();
    j["b"] = form.b.str();
    j["c"] = form.c.str();
    j["alpha"] = form.alpha.str();
    j["beta"] = form.beta.str();
    j["gamma"] = form.gamma.str();
    return j;
}

namespace {

Json series_form_to_json(const TernaryForm<Series>& form) {
    Json j;
    j["a"] = form.a.str();
    j["b"] = form.b.str();
    j["c"] = form.c.str();
    j["alpha"] = form.alpha.str();
    j["beta"] = form.beta.str();
    j["gamma"] = form.gamma.str();
    return j;
}

} // namespace

Json local_form_to_json(const LocalFormResult& r) {
    Json j;
    j["tag"] = local_form_tag_name(r.tag);
    if (r.tag != LocalFormTag::Smooth) j["n"] = r.n;
    j["precision"] = r.precision;
    j["canonical"] = series_form_to_json(r.canonical);
    Json rows = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (int k = 0; k < 3; ++k) row.push_back(r.transform.at(i, k).str());
        rows.push_back(row);
    }
    j["transform"] = rows;
    j["unit"] = r.unit.str();
    j["swap_retries"] = r.swap_retries;
    j["auto_extended"] = r.auto_extended;
    j["field"] = r.field->describe();
    return j;
}

Json scan_report_to_json(const ScanReport& r) {
    Json j;
    j["extension_degree"] = r.extension_degree;
    j["points_scanned"] = r.points_scanned;
    j["verdict"] = r.found() ? "SingularPointsFound" : "NoSingularPointFound";
    Json pts = Json::array();
    for (const auto& sp : r.singular_points) {
        Json p;
        Json bp = Json::array();
        for (const auto& c : sp.base_point) bp.push_back(c.str());
        Json fp = Json::array();
        for (const auto& c : sp.fiber_point) fp.push_back(c.str());
        p["base"] = bp;
        p["fiber"] = fp;
        pts.push_back(p);
    }
    j["singular_points"] = pts;
    return j;
}

Json nonreg_report_to_json(const NonregReport& r) {
    Json j;
    j["extension_degree"] = r.extension_degree;
    j["zero_locus_points"] = r.zero_locus_points;
    j["holds"] = r.holds();
    Json ms = Json::array();
    for (const auto& pt : r.mismatches) {
        Json p = Json::array();
        for (const auto& c : pt) p.push_back(c.str());
        ms.push_back(p);
    }
    j["mismatches"] = ms;
    j["assumptions"] = "total space and base assumed regular; bundle assumed generically smooth";
    return j;
}

Json singularity_report_to_json(const SingularityReport& r) {
    Json j;
    j["deg_delta"] = r.deg_delta;
    j["central_reduced"] = r.central_reduced;
    j["m"] = r.m;
    j["verdict"] = surface_verdict_name(r.verdict);
    if (r.verdict == SurfaceVerdict::UniqueA || r.verdict == SurfaceVerdict::UniqueD)
        j["index"] = r.index;
    return j;
}

} // namespace conicdisc
