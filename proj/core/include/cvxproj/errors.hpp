#pragma once

#include <stdexcept>
#include <string>

namespace cvx {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// projective core
struct KernelPoint : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotCollinear : Error { using Error::Error; };
struct DegenerateConfiguration : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };

// convex bodies and metric
struct NotInterior : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct NotProper : Error { using Error::Error; };
struct ImageEscapes : Error { using Error::Error; };
struct NotAutomorphism : Error { using Error::Error; };
struct NotInCone : Error { using Error::Error; };

// group actions
struct Exploded : Error { using Error::Error; };
struct NoConsistentSign : Error { using Error::Error; };

// cone structure
struct SplitUnverified : Error { using Error::Error; };

// equivariant maps
struct KernelNotInvariant : Error { using Error::Error; };
struct NoComplement : Error { using Error::Error; };
struct InconsistentBoundaryData : Error { using Error::Error; };
struct NotInSpace : Error { using Error::Error; };
struct NotComparable : Error { using Error::Error; };

// catalog and harness
struct UnknownScene : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };
struct SceneIncompatible : Error { using Error::Error; };

} // namespace cvx
