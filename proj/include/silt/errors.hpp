#pragma once

#include <stdexcept>
#include <string>

namespace silt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    using Error::Error;
};
struct AlgebraMismatch : Error {
    using Error::Error;
};
struct EmptyQuiver : Error {
    using Error::Error;
};
struct AdmissibilityFailure : Error {
    using Error::Error;
};
struct NotAnIdeal : Error {
    using Error::Error;
};
struct NotAnnihilated : Error {
    using Error::Error;
};
struct NotProjective : Error {
    using Error::Error;
};
struct IsoTestInconclusive : Error {
    using Error::Error;
};
struct DecompositionInconclusive : Error {
    using Error::Error;
};
struct PreconditionViolated : Error {
    using Error::Error;
};
struct WorkBoundExceeded : Error {
    using Error::Error;
};
struct FactorizationCheckFailed : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace silt
