#pragma once

#include <stdexcept>
#include <string>

namespace mvt {

enum class ErrorKind {
    Parse,          // malformed matrix CSV
    NonFinite,      // NaN/Inf encountered where finite values are required
    Dimension,      // shape mismatch or invalid size
    Index,          // index out of range
    Parameter,      // invalid numeric parameter (q, K, L, ...)
    Degenerate,     // undefined statistic (constant input, zero spread)
    InputNotFound,  // missing input file
    Io              // other I/O failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    // Stable machine-readable tag, used by the CLI's JSON error objects.
    const char* kind_name() const {
        switch (kind_) {
            case ErrorKind::Parse:         return "parse";
            case ErrorKind::NonFinite:     return "nonfinite";
            case ErrorKind::Dimension:     return "dimension";
            case ErrorKind::Index:         return "index";
            case ErrorKind::Parameter:     return "parameter";
            case ErrorKind::Degenerate:    return "degenerate";
            case ErrorKind::InputNotFound: return "input-not-found";
            case ErrorKind::Io:            return "io";
        }
        return "internal";
    }

    // Distinct process exit code per kind (0 = success, 1 = unexpected).
    int exit_code() const {
        switch (kind_) {
            case ErrorKind::Parse:         return 10;
            case ErrorKind::NonFinite:     return 11;
            case ErrorKind::Dimension:     return 12;
            case ErrorKind::Index:         return 13;
            case ErrorKind::Parameter:     return 14;
            case ErrorKind::Degenerate:    return 15;
            case ErrorKind::InputNotFound: return 16;
            case ErrorKind::Io:            return 17;
        }
        return 1;
    }

private:
    ErrorKind kind_;
};

} // namespace mvt
