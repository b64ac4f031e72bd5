#pragma once

#include <stdexcept>
#include <string>

namespace rankguard {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct NotASubspace : Error {
    using Error::Error;
};

struct BadLength : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct BadBudget : Error {
    using Error::Error;
};

struct UnverifiedCertificate : Error {
    using Error::Error;
};

/// A request would exceed a hard enumeration or storage cap.  Carries the
/// offending size (saturated at the maximum representable value when the
/// true count does not fit in 64 bits).
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, unsigned long long computed)
        : Error(what), computed_(computed) {}

    unsigned long long computed() const noexcept { return computed_; }

private:
    unsigned long long computed_;
};

}  // namespace rankguard
