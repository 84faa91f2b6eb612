#ifndef CONICDISC_LOCALFORMS_HPP
#define CONICDISC_LOCALFORMS_HPP

#include <optional>

#include "conicdisc/fiberlab.hpp"
#include "conicdisc/quadform.hpp"

namespace conicdisc {

// Canonical families over k[[t]]:
//   Char0Red(n):      x^2 + y^2 + t^{n+1} z^2          (char != 2)
//   Char0NonRed(n):   x^2 + t y^2 + t^{n-1} z^2, n >= 2 (char != 2)
//   Char2Red(n):      x y + t^{n+1} z^2                 (char 2)
//   Char2NonRedI(n):  t x^2 + z^2 + t^n x y             (char 2)
//   Char2NonRedII(n): x^2 + t z^2 + t^n x y             (char 2)
enum class LocalFormTag { Smooth, Char0Red, Char0NonRed, Char2Red, Char2NonRedI, Char2NonRedII };

const char* local_form_tag_name(LocalFormTag t);

struct LocalFormResult {
    LocalFormTag tag;
    int n = -1; // family parameter; -1 for the Smooth marker
    TernaryForm<Series> canonical;
    Mat3<Series> transform;
    Series unit;
    int precision = 0; // unit * act(input, transform) == canonical mod t^precision
    int swap_retries = 0; // [0:0:1] relocation retries that were needed
    bool auto_extended = false;
    FieldPtr field; // coefficient field of the certificate (possibly extended)
};

struct NormalizeOptions {
    bool auto_extend = false;
};

// True iff some coefficient has valuation 0 (flatness over the local base).
bool is_conic_bundle_local(const TernaryForm<Series>& q);

// Reduction of the six coefficients mod t. Errors NotConicBundle.
TernaryForm<Scalar> central_fiber(const TernaryForm<Series>& q);

// Characteristic != 2 reduction to the canonical families. Errors
// NoResidueRoot / NotCanonicalTotalSpace / PrecisionExhausted.
LocalFormResult normalize_char_ne2(const TernaryForm<Series>& q);

// Characteristic 2, geometrically reduced central fibre.
LocalFormResult normalize_char2_reduced(const TernaryForm<Series>& q);

// Stage 1 of the char-2 non-reduced reduction: reach the shape
// a x^2 + b y^2 + c z^2 + t^n x y. Errors WildOrPrecision when all three
// cross coefficients vanish mod t^N.
struct Stage1Result {
    TernaryForm<Series> form;
    Mat3<Series> transform;
    Series unit;
    int n = 0;
};
Stage1Result normalize_char2_nonreduced_stage1(const TernaryForm<Series>& q);

// Singular-point location on a stage-1 form: moves the singular point to
// [0:1:0] when any singular point has a usable x- or y-coordinate, else
// reports [0:0:1]. Errors NotCanonicalTotalSpace when the singular locus
// is a line, NoResidueRoot when the points only exist after extension.
struct LocateResult {
    Axis point_axis; // Axis::Y for [0:1:0], Axis::Z for [0:0:1]
    TernaryForm<Series> form;
    Mat3<Series> transform; // additional transform applied after stage 1
};
LocateResult locate_singularity_char2(const Stage1Result& s);

// Characteristic 2, non-reduced central fibre: full reduction to
// Char2NonRedI / Char2NonRedII, with the y<->z swap-and-restage retry
// (bound 3) when the singularity sits at [0:0:1]. Errors Unnormalizable
// when the retries are exhausted.
LocalFormResult normalize_char2_nonreduced(const TernaryForm<Series>& q);

// Dispatch on characteristic and central-fibre class; optional doubling
// field extensions on NoResidueRoot (cap: extension degree 16).
LocalFormResult normalize_local(const TernaryForm<Series>& q, const NormalizeOptions& opts);

enum class SurfaceVerdict { RegularTotalSpace, UniqueA, TwoA1, UniqueD };

const char* surface_verdict_name(SurfaceVerdict v);

struct SingularityReport {
    int deg_delta;
    bool central_reduced;
    int m; // components of the resolved central fibre: deg_delta + 1
    SurfaceVerdict verdict;
    int index = 0; // n of A_n / D_n when applicable
};

// The (deg delta, reducedness) -> {regular, A_n, two A_1, D_n} law.
// Errors Inconsistent on (deg <= 1, non-reduced).
SingularityReport classify_surface_singularity(int deg_delta, bool central_reduced);

enum class ArtinFamily { DEven, DOdd, D0Even, D0Odd, TwoA1Family };

struct ArtinLabel {
    ArtinFamily family;
    int r = 0;          // superscript of D^r_n (0 for the D0 families)
    int subscript = 0;  // n of D^r_n
    int param_r = 0, param_s = 0, param_n = 0;
    // the local equation x^2 + t y^2 + t^s xy + t^{r+s} y for the even
    // family, as a polynomial in (t, x, y)
    std::optional<Poly> artin_local_equation;
};

// Pattern-match the recognized char-2 families (exact monomial
// coefficients, alpha = beta = 0):
//   x^2 + t y^2 + t^{2r}   z^2 + t^s xy  -> D^r_{2r+2s}  (with equation)
//   x^2 + t y^2 + t^{2r+1} z^2 + t^s xy  -> D^r_{2r+2s+1}
//   t x^2 + z^2 + t^n xy  (n >= 2)       -> D^0_{2n}
//   t x^2 + z^2 + t   xy                 -> two A_1 (no D label)
//   x^2 + t z^2 + t^n xy                 -> D^0_{2n+1}
// Errors UnrecognizedFamily otherwise.
ArtinLabel artin_refine(const TernaryForm<Series>& q);

// Valuation of delta(q) with the working-precision guard applied; errors
// PrecisionExhausted when delta vanishes within the window.
int delta_valuation(const TernaryForm<Series>& q);

// Certificate check (exposed for tests): unit * act(input, transform)
// equals result.canonical mod t^result.precision.
bool verify_certificate(const TernaryForm<Series>& input, const LocalFormResult& r);

} // namespace conicdisc

#endif
