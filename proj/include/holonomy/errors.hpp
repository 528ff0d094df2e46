#pragma once

#include <stdexcept>
#include <string>

namespace holo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by constructors and parsers on malformed values (bad shapes,
// non-finite entries, out-of-range parameters).
struct InvalidInput : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotUnitary : Error {
    using Error::Error;
};

struct NotOrthogonal : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    using Error::Error;
};

struct InsufficientComplement : Error {
    using Error::Error;
};

struct MeshTooCoarse : Error {
    using Error::Error;
};

struct NotClosed : Error {
    using Error::Error;
};

}  // namespace holo
