#ifndef PDMLAB_ERRORS_HPP
#define PDMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdmlab {

// Error categories; mirrored one-to-one by the C API status codes.
enum class errc {
    domain,        // evaluation outside a validity domain (m <= 0, out of image, ...)
    input,         // non-finite or malformed numeric input
    lookup,        // unknown catalog name
    parameter,     // infeasible parameter set (e.g. non-positive squared frequency)
    singularity,   // evaluation at a pole (isotonic q_j = 0)
    monotonicity,  // f <= 0: the time reparametrisation would not be invertible
    unsupported,   // operation not defined for this family
    parse,         // config text could not be parsed
    validation,    // config parsed but inconsistent
    truncated,     // integration stopped early, partial trajectory available
    step_limit,    // integrator exhausted its step budget
    io,            // file system failure
    internal       // invariant of the implementation itself violated
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(errc::domain, w) {}
};
struct InputError : Error {
    explicit InputError(const std::string& w) : Error(errc::input, w) {}
};
struct LookupError : Error {
    explicit LookupError(const std::string& w) : Error(errc::lookup, w) {}
};
struct ParameterError : Error {
    explicit ParameterError(const std::string& w) : Error(errc::parameter, w) {}
};
struct SingularityError : Error {
    explicit SingularityError(const std::string& w) : Error(errc::singularity, w) {}
};
struct MonotonicityError : Error {
    explicit MonotonicityError(const std::string& w) : Error(errc::monotonicity, w) {}
};
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& w) : Error(errc::unsupported, w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(errc::validation, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(errc::io, w) {}
};
struct InternalError : Error {
    explicit InternalError(const std::string& w) : Error(errc::internal, w) {}
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& w)
        : Error(errc::parse,
                "parse error at line " + std::to_string(line) + ", column "
                    + std::to_string(column) + ": " + w),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace pdmlab

#endif
