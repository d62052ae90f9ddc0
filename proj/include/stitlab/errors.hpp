#pragma once

#include <stdexcept>
#include <string>

namespace stitlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSplit : Error { using Error::Error; };
struct NoIntersection : Error { using Error::Error; };
struct RejectionOverflow : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct EmptySample : Error { using Error::Error; };
struct CellLimitExceeded : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace stitlab
