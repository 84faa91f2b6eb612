#include "conicdisc/cliapp.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

namespace conicdisc {

namespace {

Json delta_command(const InputDoc& doc, const CommandFlags& flags) {
    Json j;
    if (doc.kind == BaseKind::SeriesBase) {
        TernaryForm<Series> q = doc_series_form(doc, flags.precision);
        Series d = delta(q);
        j["delta"] = d.str();
        Valuation v = series_valuation(d);
        if (v.exact)
            j["valuation"] = v.value;
        else
            j["valuation"] = Json{{"at_least_precision", v.value}};
    } else if (doc.kind == BaseKind::Field) {
        j["delta"] = delta(doc_scalar_form(doc)).str();
    } else {
        j["delta"] = discriminant_poly(doc_family(doc)).str();
    }
    return j;
}

Json sigma_command(const InputDoc& doc, const CommandFlags& flags) {
    Json j;
    Json gens = Json::array();
    if (doc.kind == BaseKind::SeriesBase) {
        auto g = sigma_generators(doc_series_form(doc, flags.precision));
        for (const auto& s : g) gens.push_back(s.str());
    } else if (doc.kind == BaseKind::Field) {
        auto g = sigma_generators(doc_scalar_form(doc));
        for (const auto& s : g) gens.push_back(s.str());
    } else {
        auto g = sigma_ideal_gens(doc_family(doc));
        for (const auto& s : g) gens.push_back(s.str());
    }
    j["sigma"] = gens;
    return j;
}

Json sigma_prime_command(const InputDoc& doc, const CommandFlags& flags) {
    Json j;
    Json gens = Json::array();
    if (doc.kind == BaseKind::SeriesBase) {
        auto g = sigma_prime(doc_series_form(doc, flags.precision));
        for (const auto& s : g) gens.push_back(s.str());
    } else if (doc.kind == BaseKind::Field) {
        auto g = sigma_prime(doc_scalar_form(doc));
        for (const auto& s : g) gens.push_back(s.str());
    } else {
        auto g = sigma_prime_gens(doc_family(doc));
        for (const auto& s : g) gens.push_back(s.str());
    }
    j["sigma_prime"] = gens;
    return j;
}

Json classify_fiber_command(const InputDoc& doc) {
    TernaryForm<Scalar> q = doc_scalar_form(doc);
    Json j;
    j["class"] = fiber_type_name(classify_fiber(q));
    return j;
}

Json normal_form_command(const InputDoc& doc, const CommandFlags& flags) {
    if (doc.kind == BaseKind::Field) {
        FieldNormalForm nf = field_normal_form(doc_scalar_form(doc));
        Json j;
        j["tag"] = field_form_tag_name(nf.tag);
        Json rows = Json::array();
        for (int i = 0; i < 3; ++i) {
            Json row = Json::array();
            for (int k = 0; k < 3; ++k) row.push_back(nf.transform.at(i, k).str());
            rows.push_back(row);
        }
        j["transform"] = rows;
        j["unit"] = nf.unit.str();
        Json canon;
        canon["a"] = nf.canonical.a.str();
        canon["b"] = nf.canonical.b.str();
        canon["c"] = nf.canonical.c.str();
        canon["alpha"] = nf.canonical.alpha.str();
        canon["beta"] = nf.canonical.beta.str();
        canon["gamma"] = nf.canonical.gamma.str();
        j["canonical"] = canon;
        return j;
    }
    TernaryForm<Series> q = doc_series_form(doc, flags.precision);
    NormalizeOptions opts;
    opts.auto_extend = flags.auto_extend;
    LocalFormResult r = normalize_local(q, opts);
    return local_form_to_json(r);
}

Json classify_sing_command(const InputDoc& doc, const CommandFlags& flags) {
    TernaryForm<Series> q = doc_series_form(doc, flags.precision);
    if (!is_conic_bundle_local(q))
        fail(ErrorCode::NotConicBundle, "every coefficient lies in the maximal ideal");
    int deg = delta_valuation(q);
    if (deg > q.a.precision() - 4)
        fail(ErrorCode::PrecisionExhausted, "discriminant valuation beyond the guard band");
    FiberType cls = classify_fiber(central_fiber(q));
    bool reduced = cls != FiberType::NonReduced;
    SingularityReport report = classify_surface_singularity(deg, reduced);
    Json j = singularity_report_to_json(report);
    j["central_fiber"] = fiber_type_name(cls);
    return j;
}

Json smooth_scan_command(const InputDoc& doc, const CommandFlags& flags) {
    Family f = doc_family(doc);
    ScanReport r = singular_points_scan(f, flags.ext_degree);
    return scan_report_to_json(r);
}

Json power_profile_command(const InputDoc& doc) {
    Family f = doc_family(doc);
    PowerProfile p = delta_power_profile(f);
    Json j;
    j["e"] = p.e;
    j["h"] = p.h.str();
    j["delta"] = discriminant_poly(f).str();
    return j;
}

Json nonreg_check_command(const InputDoc& doc, const CommandFlags& flags) {
    Family f = doc_family(doc);
    NonregReport r = nonreg_equals_sigma_check(f, flags.ext_degree);
    return nonreg_report_to_json(r);
}

Json wild_note(const InputDoc& doc, Json j) {
    // annotate wild candidates outside characteristic 2
    if (doc.kind == BaseKind::PolyBase || doc.kind == BaseKind::ProjPolyBase) {
        Family f = doc_family(doc);
        if (is_wild_candidate(f)) {
            j["wild_candidate"] = true;
            if (doc.field->characteristic() != 2)
                j["note"] =
                    "identically vanishing discriminant outside characteristic 2: a normal "
                    "total space would force generic smoothness; check normality";
        }
    }
    return j;
}

} // namespace

Json run_command(const std::string& cmd, const InputDoc& doc, const CommandFlags& flags) {
    if (cmd == "delta") return wild_note(doc, delta_command(doc, flags));
    if (cmd == "sigma") return sigma_command(doc, flags);
    if (cmd == "sigma-prime") return sigma_prime_command(doc, flags);
    if (cmd == "classify-fiber") return classify_fiber_command(doc);
    if (cmd == "normal-form") return normal_form_command(doc, flags);
    if (cmd == "classify-sing") return classify_sing_command(doc, flags);
    if (cmd == "smooth-scan") return smooth_scan_command(doc, flags);
    if (cmd == "power-profile") return power_profile_command(doc);
    if (cmd == "nonreg-check") return nonreg_check_command(doc, flags);
    fail(ErrorCode::BadInput, "unknown command: " + cmd);
}

namespace {

struct MiniRng {
    std::mt19937_64 eng;
    explicit MiniRng(std::uint64_t seed) : eng(seed) {}
    std::int64_t pick(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

} // namespace

Json run_selftest() {
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
        checks.push_back(Json{{"check", name}, {"passed", ok}});
        all = all && ok;
    };

    // symbolic witness identity over Q[a,b,c,alpha,beta,gamma]
    {
        auto ring = make_poly_ring(FieldSpec::rationals(),
                                   {"a", "b", "c", "alpha", "beta", "gamma"});
        TernaryForm<Poly> q = make_form(
            Poly::variable(ring, "a"), Poly::variable(ring, "b"), Poly::variable(ring, "c"),
            Poly::variable(ring, "alpha"), Poly::variable(ring, "beta"),
            Poly::variable(ring, "gamma"));
        bool ok = true;
        try {
            auto w = delta_sigma_witness(q); // re-verifies by expansion
            (void)w;
        } catch (const ConicError&) {
            ok = false;
        }
        record("witness identity (symbolic expansion)", ok);
    }

    // det(Gram) = 2 delta and delta covariance over random prime fields
    {
        MiniRng rng(20240901);
        bool det_ok = true, cov_ok = true;
        for (std::int64_t p : {2, 3, 5, 7}) {
            FieldPtr f = FieldSpec::prime_field(p);
            for (int trial = 0; trial < 200; ++trial) {
                auto rnd = [&] { return Scalar::from_int(f, rng.pick(0, p - 1)); };
                TernaryForm<Scalar> q = make_form(rnd(), rnd(), rnd(), rnd(), rnd(), rnd());
                if (q.is_zero()) continue;
                Scalar two_delta = Scalar::from_int(f, 2) * delta(q);
                if (!(gram_matrix(q).det() == two_delta)) det_ok = false;
                // random elementary move
                ElementaryMove<Scalar> mv;
                int kind = static_cast<int>(rng.pick(0, 2));
                Axis ax = static_cast<Axis>(rng.pick(0, 2));
                Axis bx = static_cast<Axis>((static_cast<int>(ax) + 1 + rng.pick(0, 1)) % 3);
                if (kind == 0) {
                    mv = {ElementaryMove<Scalar>::Kind::Scale, ax, ax,
                          Scalar::from_int(f, rng.pick(1, p - 1))};
                } else if (kind == 1) {
                    mv = {ElementaryMove<Scalar>::Kind::Swap, ax, bx, Scalar::zero(f)};
                } else {
                    mv = {ElementaryMove<Scalar>::Kind::Shear, ax, bx,
                          Scalar::from_int(f, rng.pick(0, p - 1))};
                }
                Mat3<Scalar> m = move_matrix(mv, q.a);
                Scalar lhs = delta(act(q, m));
                Scalar rhs = m.det() * m.det() * delta(q);
                if (!(lhs == rhs)) cov_ok = false;
            }
        }
        record("Gram determinant = 2 delta (seeded)", det_ok);
        record("delta covariance under elementary moves (seeded)", cov_ok);
    }

    Json j;
    j["checks"] = checks;
    j["all_passed"] = all;
    return j;
}

CorpusSummary run_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    CorpusSummary summary;
    std::vector<fs::path> files;
    if (fs::exists(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    summary.total = static_cast<int>(files.size());

    struct CaseResult {
        std::string id;
        bool passed = true;
        Json detail;
    };

    auto run_case = [](const fs::path& path) {
        CaseResult res;
        Json detail;
        try {
            std::ifstream in(path);
            Json j;
            in >> j;
            res.id = j.value("id", path.filename().string());
            detail["id"] = res.id;
            detail["provenance"] = j.value("provenance", "");
            InputDoc doc = parse_input_json(j.at("input"));
            CommandFlags flags;
            if (j.contains("flags")) {
                flags.ext_degree = j["flags"].value("ext_degree", 1);
                flags.precision = j["flags"].value("precision", 0);
                flags.auto_extend = j["flags"].value("auto_extend", false);
            }
            Json commands = Json::array();
            for (const auto& [cmd, expected] : j.at("expected").items()) {
                Json got = run_command(cmd, doc, flags);
                bool ok = got == expected;
                Json c;
                c["command"] = cmd;
                c["passed"] = ok;
                if (!ok) {
                    c["expected"] = expected;
                    c["got"] = got;
                    res.passed = false;
                }
                commands.push_back(c);
            }
            detail["commands"] = commands;
        } catch (const ConicError& e) {
            res.passed = false;
            detail["error"] = std::string(error_code_name(e.code())) + ": " + e.what();
        } catch (const std::exception& e) {
            res.passed = false;
            detail["error"] = e.what();
        }
        detail["passed"] = res.passed;
        res.detail = detail;
        return res;
    };

    int workers = 1;
    if (const char* env = std::getenv("CONICDISC_WORKERS")) {
        workers = std::max(1, std::atoi(env));
    }
    std::vector<CaseResult> results(files.size());
    if (workers <= 1 || files.size() <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) results[i] = run_case(files[i]);
    } else {
        std::vector<std::future<CaseResult>> futs;
        futs.reserve(files.size());
        for (const auto& f : files)
            futs.push_back(std::async(std::launch::async, run_case, f));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    }

    Json cases = Json::array();
    for (const auto& r : results) {
        cases.push_back(r.detail);
        if (r.passed)
            ++summary.passed;
        else
            summary.failures.push_back(r.id.empty() ? "(unnamed)" : r.id);
    }
    summary.report["cases"] = cases;
    summary.report["total"] = summary.total;
    summary.report["passed"] = summary.passed;
    summary.report["all_passed"] = summary.passed == summary.total;
    if (summary.total == 0) summary.report["warning"] = "corpus directory is empty";
    return summary;
}

} // namespace conicdisc
