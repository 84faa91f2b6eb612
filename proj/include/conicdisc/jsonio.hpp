#ifndef CONICDISC_JSONIO_HPP
#define CONICDISC_JSONIO_HPP

#include <json.hpp>
#include <string>

#include "conicdisc/familyscan.hpp"
#include "conicdisc/localforms.hpp"

namespace conicdisc {

using Json = nlohmann::json;

enum class BaseKind { Field, PolyBase, SeriesBase, ProjPolyBase };

// Validated input document (schema tag "conicdisc/1"): a field, a base
// (point / polynomial / truncated series / projective polynomial) and six
// coefficient expressions parsed over the declared variables.
struct InputDoc {
    FieldPtr field;
    BaseKind kind = BaseKind::Field;
    std::vector<std::string> vars; // poly/proj-poly base variables
    std::string series_var;        // series base variable
    int precision = 32;            // series base precision
    PolyRingPtr ring;              // parsing ring
    TernaryForm<Poly> form;        // coefficients over `ring`
};

InputDoc parse_input(const std::string& path);
InputDoc parse_input_json(const Json& j);

TernaryForm<Scalar> doc_scalar_form(const InputDoc& doc);
TernaryForm<Series> doc_series_form(const InputDoc& doc, int precision_override = 0);
Family doc_family(const InputDoc& doc);

Json form_to_json(const TernaryForm<Poly>& form);
Json local_form_to_json(const LocalFormResult& r);
Json scan_report_to_json(const ScanReport& r);
Json nonreg_report_to_json(const NonregReport& r);
Json singularity_report_to_json(const SingularityReport& r);

} // namespace conicdisc

#endif
