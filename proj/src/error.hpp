#ifndef ADAVU_ERROR_HPP
#define ADAVU_ERROR_HPP

#include <stdexcept>
#include <string>

namespace adavu {

// Fatal error categories. Non-fatal findings travel as diagnostics strings
// attached to results instead.
enum class ErrorKind {
    Io,          // file missing / unreadable / unwritable
    Parse,       // malformed input (CSV, JSON, XML)
    Validation,  // well-formed input violating a domain rule
    Domain,      // bad argument to an operation
    NotFound,    // lookup miss (posture id, adavu name, ...)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NotFound: return "not-found";
    }
    return "unknown";
}

} // namespace adavu

#endif
