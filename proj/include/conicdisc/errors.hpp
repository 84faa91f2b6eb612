#ifndef CONICDISC_ERRORS_HPP
#define CONICDISC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conicdisc {

// Machine-readable failure codes. The CLI maps MathError to exit code 2
// and InputError to exit code 1; the code string appears verbatim in the
// JSON error report.
enum class ErrorCode {
    NotAUnit,
    NoResidueRoot,
    PrecisionExhausted,
    NotCanonicalTotalSpace,
    WildOrPrecision,
    Unnormalizable,
    TooLarge,
    WrongCharacteristic,
    ZeroForm,
    ZeroDiscriminant,
    NotInvertible,
    NotConicBundle,
    Inconsistent,
    UnrecognizedFamily,
    BadInput,
};

const char* error_code_name(ErrorCode c);

class ConicError : public std::runtime_error {
public:
    ConicError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw ConicError(code, what);
}

} // namespace conicdisc

#endif
